//! Closed form against the ODE cascade on the window used for route checks.

use oscint::closedform::i_k;
use oscint::oracle::{ode_cascade, GridSpec};
use std::time::Instant;

fn main() -> oscint::Result<()> {
    let k_max = 5;
    let t0 = Instant::now();
    let grid = GridSpec::window(-6.0, 10.0, 321);
    let curves = ode_cascade(k_max, grid)?;
    println!("cascade: {:.2?}", t0.elapsed());

    let t1 = Instant::now();
    for (l, curve) in curves.iter().enumerate() {
        let k = l + 1;
        let mut worst = (0.0f64, 0.0);
        for (&tau, &ode) in curve.tau.iter().zip(&curve.values) {
            let d = (i_k(k, tau)?.value - ode).abs();
            if d > worst.0 {
                worst = (d, tau);
            }
        }
        println!(
            "k={k}  max |closed - ode| = {:.2e} at tau = {}",
            worst.0, worst.1
        );
    }
    println!("closed form: {:.2?}", t1.elapsed());
    Ok(())
}
