//! Airy functions, the canonical pair u, v and the ratio v/u on a small grid.
use airyband::airy::airy_eval;
use airyband::canonical::{canonical_eval, ratio_vu};

fn main() -> airyband::error::Result<()> {
    println!("{:>6} {:>22} {:>22} {:>22} {:>22}", "x", "Ai", "Bi", "u", "v");
    for i in -6..=2 {
        let x = 2.0 * i as f64;
        let a = airy_eval(x)?;
        let c = canonical_eval(x)?;
        println!("{x:>6.1} {:>22.15e} {:>22.15e} {:>22.15e} {:>22.15e}", a.ai, a.bi, c.u, c.v);
    }
    println!("pi * W(Ai, Bi) at x = -30: {:.15}", std::f64::consts::PI * airy_eval(-30.0)?.wronskian());
    println!("v/u at x = -1: {:.15}", ratio_vu(-1.0)?);
    Ok(())
}
