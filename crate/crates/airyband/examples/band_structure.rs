//! Bands and gaps at a chosen c (default 8): `cargo run --example band_structure -- 12`.
use airyband::bands::{count_k0, solve_band_structure, ScaleParams};

fn main() -> airyband::error::Result<()> {
    let c: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8.0);
    let k0 = count_k0(c)?;
    let s = solve_band_structure(ScaleParams::from_c(c)?, k0)?;
    println!("c = {c}, k0 = {k0}, bands meeting [-c, 0]: {}", s.bands_in_range());
    for b in &s.bands {
        let gap = b.gap_after.map_or("-".to_string(), |g| format!("{g:.6}"));
        println!(
            "p = {:>2}  [{:>19.15}, {:>19.15}]  ln(width) = {:>9.3}  gap = {gap}",
            b.p, b.e_min, b.e_max, b.log_width
        );
    }
    if let Some(d) = s.density {
        println!("D(c) = {d:.15}");
    }
    Ok(())
}
