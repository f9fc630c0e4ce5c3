//! Exponentially small widths: the semiclassical formula against the solver.
use airyband::semiclassics::{estimate_width, residual_ratio};

fn main() -> airyband::error::Result<()> {
    println!("{:>6} {:>4} {:>14} {:>14} {:>10}", "h", "p", "ln(formula)", "solver", "ratio");
    for &h in &[0.2, 0.1, 0.05, 0.03] {
        for p in 0..2 {
            let est = match estimate_width(p, h) {
                Ok(e) => e,
                Err(e) => {
                    println!("{h:>6} {p:>4} {e}");
                    continue;
                }
            };
            let cmp = residual_ratio(&est)?;
            println!(
                "{h:>6} {p:>4} {:>14.6} {:>14.6e} {:>10.6}",
                est.log_exponential, cmp.solver, cmp.ratio
            );
        }
    }
    Ok(())
}
