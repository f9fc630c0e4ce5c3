//! Zero curves z_k(x) and the comparison checks behind them.
use airyband::sturm::{sturm_probe, sturm_report};

fn main() -> airyband::error::Result<()> {
    for &x in &[0.0, 1.0, 2.5, 5.0] {
        let p = sturm_probe(x, 4)?;
        let z: Vec<String> = p.z.iter().map(|v| format!("{v:.10}")).collect();
        println!("x = {x:>4}: {}", z.join("  "));
    }
    let r = sturm_report(4)?;
    println!("Sturm identity residual {:.3e}", r.sturm_residual);
    println!("Picone residual {:.3e}, bracket {:.3e}", r.picone.residual, r.picone.boundary_bracket);
    println!("sign audit holds: {}", r.signs.all_hold());
    println!("all checks pass: {}", r.passes(1e-8));
    Ok(())
}
