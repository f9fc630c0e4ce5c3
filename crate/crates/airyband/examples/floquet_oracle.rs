//! Band edges from direct integration of one period, paired with the solver.
use airyband::verify::oracle_check;

fn main() -> airyband::error::Result<()> {
    for &c in &[2.0, 4.5, 9.0] {
        let check = oracle_check(c, 1e-10)?;
        let p = &check.pairing;
        println!(
            "c = {c}: {} solver edges, {} oracle edges, max deviation {:.3e}",
            p.solver_count, p.oracle_count, p.max_deviation
        );
        for pair in p.pairs.iter().take(4) {
            println!("    {:>20.15} {:>20.15}", pair.solver, pair.oracle);
        }
    }
    Ok(())
}
