//! Zeros c_p, c̃_p next to their large-p estimates.
use airyband::zeros::{tables, zero_asymptotics};

fn main() -> airyband::error::Result<()> {
    let t = tables(12)?;
    println!("{:>3} {:>20} {:>20} {:>14} {:>14}", "p", "c_p", "c~_p", "(3p pi/4)^2/3", "gap");
    for p in 0..=12 {
        let est = zero_asymptotics(p);
        println!(
            "{p:>3} {:>20.15} {:>20.15} {:>14.6} {:>14.6}",
            t.c(p),
            t.c_tilde(p),
            est.c_estimate,
            t.c_tilde(p) - t.c(p)
        );
    }
    t.check_interlacing()?;
    println!("interlacing holds");
    Ok(())
}
