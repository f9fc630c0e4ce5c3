//! Physical units and the density of band widths D(c).
use airyband::bands::{density, solve_band_structure, PhysicalConstants, ScaleParams};

fn main() -> airyband::error::Result<()> {
    // Electron-like units: hbar = m = 1, a well of depth 20 and half-period 3.
    let k = PhysicalConstants { hbar: 1.0, mass: 1.0, v0: 20.0, l0: 3.0 };
    let params = ScaleParams::from_physical(k)?;
    println!("theta = {:.15}, c = {:.15}, h = {:.15}", params.theta, params.c, params.h);
    let s = solve_band_structure(params, 2)?;
    for b in &s.bands {
        println!(
            "band {}: [{:.10}, {:.10}] in physical energy",
            b.p,
            b.e_min / params.theta,
            b.e_max / params.theta
        );
    }
    for &c in &[10.0, 30.0, 100.0] {
        println!("D({c}) = {:.15}", density(c)?);
    }
    Ok(())
}
