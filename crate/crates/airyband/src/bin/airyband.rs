use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use airyband::bands::PhysicalConstants;
use airyband::cli::{run, Command, Format, RunConfig, Scale, TOL_RANGE};

/// Bands, gaps and zeros of the periodic Airy (triangular-wave) operator.
///
/// Energies are rescaled (E_rescaled = theta E) unless --physical is given.
/// Floats are printed with 15 significant digits. Exit status: 0 ok,
/// 1 computation or verification failure, 2 usage error.
#[derive(Parser)]
#[command(name = "airyband", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Integrator tolerance, in [1e-13, 1e-6].
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = parse_tol)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Json)]
    format: Fmt,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ScaleArgs {
    /// Semiclassical parameter; c = h^(-2/3).
    #[arg(long)]
    h: Option<f64>,
    /// Counting parameter c.
    #[arg(long)]
    c: Option<f64>,
    /// Physical constants as hbar,m,V0,L0.
    #[arg(long, value_parser = parse_physical)]
    physical: Option<PhysicalConstants>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptScaleArgs {
    /// Also compare solver and oracle edges at c = h^(-2/3).
    #[arg(long)]
    h: Option<f64>,
    /// Also compare solver and oracle edges at this c.
    #[arg(long)]
    c: Option<f64>,
}

#[derive(Subcommand)]
enum Sub {
    /// Zeros c_p, c~_p and phases. CSV columns: p,c_p,c_tilde_p,xi_p,xi_tilde_p.
    /// With --ratios: x,v_over_u,vp_over_up on [-10, 5], empty at poles.
    Zeros {
        #[arg(long, default_value_t = 10)]
        max_index: usize,
        #[arg(long)]
        ratios: bool,
    },
    /// Band edges, widths and gaps. CSV: one row per edge with columns
    /// p,kind,energy,equation,in_range,residual[,energy_physical].
    Bands {
        #[command(flatten)]
        scale: ScaleArgs,
        /// Highest band index; default: every band meeting [-c, 0].
        #[arg(long)]
        max_band: Option<usize>,
    },
    /// Integrated density of band widths D(c), for c > c_0.
    Density {
        #[command(flatten)]
        scale: ScaleArgs,
    },
    /// Floquet discriminant on a grid. CSV columns: E,delta.
    /// JSON adds the refined |delta| = 2 crossings.
    Discriminant {
        #[command(flatten)]
        scale: ScaleArgs,
        #[arg(long, allow_hyphen_values = true)]
        e_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        e_max: Option<f64>,
        #[arg(long, default_value_t = 801)]
        samples: usize,
    },
    /// Run the claim suite; exit status 1 if any claim fails.
    Verify {
        /// Run only claims whose id contains this string.
        #[arg(long)]
        claims: Option<String>,
        #[command(flatten)]
        scale: OptScaleArgs,
    },
    /// Zero curves, comparison identities and sign patterns of f_x, g_x.
    Sturm {
        #[arg(long, default_value_t = 6)]
        max_index: usize,
    },
    /// Print h, c and theta for the given parameters.
    Convert {
        #[command(flatten)]
        scale: ScaleArgs,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    let (lo, hi) = TOL_RANGE;
    if (lo..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(format!("tol must lie in [{lo:e}, {hi:e}]"))
    }
}

fn parse_physical(s: &str) -> Result<PhysicalConstants, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [hbar, mass, v0, l0] => Ok(PhysicalConstants { hbar, mass, v0, l0 }),
        _ => Err(format!("expected hbar,m,V0,L0 and got {} values", v.len())),
    }
}

impl ScaleArgs {
    fn scale(&self) -> Scale {
        match (self.h, self.c, self.physical) {
            (Some(h), _, _) => Scale::H(h),
            (_, Some(c), _) => Scale::C(c),
            (_, _, Some(k)) => Scale::Physical(k),
            // The argument group requires one of the three.
            _ => unreachable!("clap enforces one scale argument"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        Fmt::Json => Format::Json,
        Fmt::Csv => Format::Csv,
    };
    let command = match cli.command {
        Sub::Zeros { max_index, ratios } => Command::Zeros { max_index, ratios },
        Sub::Bands { scale, max_band } => Command::Bands { scale: scale.scale(), max_band },
        Sub::Density { scale } => Command::Density { scale: scale.scale() },
        Sub::Discriminant { scale, e_min, e_max, samples } => {
            let range = match (e_min, e_max) {
                (Some(a), Some(b)) => Some((a, b)),
                (None, None) => None,
                _ => {
                    eprintln!("error: --e-min and --e-max must be given together");
                    return ExitCode::from(2);
                }
            };
            Command::Discriminant { scale: scale.scale(), range, samples }
        }
        Sub::Verify { claims, scale } => Command::Verify {
            claims,
            scale: scale.h.map(Scale::H).or(scale.c.map(Scale::C)),
        },
        Sub::Sturm { max_index } => Command::Sturm { max_index },
        Sub::Convert { scale } => Command::Convert { scale: scale.scale() },
    };
    let cfg = RunConfig { command, tol: cli.tol, format };
    let artifact = match run(&cfg) {
        Ok(a) => a,
        Err(e) => {
            let msg = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &artifact.text),
        None => std::io::stdout().lock().write_all(artifact.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("{}", serde_json::json!({ "error": "io", "message": e.to_string() }));
        return ExitCode::from(1);
    }
    if artifact.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
