//! Finite-time Landau–Zener populations three ways: the PCF formula, the
//! Bloch equations, and the weak-coupling series Σ (−ν)^k 2^{3k} I_k.

use oscint::closedform::{i_k, plz};
use oscint::oracle::{bloch_integrate, GridSpec};

fn main() -> oscint::Result<()> {
    for nu in [0.25, 1.0] {
        let curve = bloch_integrate(nu, GridSpec::window(-6.0, 10.0, 9).with_start(-60.0))?;
        println!("ν = {nu}");
        for i in 0..curve.len() {
            let (tau, u, _) = curve.at(i);
            let p = plz(tau, nu)?;
            println!(
                "  τ = {tau:>5}: u_z = {:>13.10}  1 − 2P = {:>13.10}",
                u[2],
                1.0 - 2.0 * p
            );
        }
        println!(
            "  P(∞) = 1 − e^(−2πν) = {:.10}",
            1.0 - (-2.0 * std::f64::consts::PI * nu).exp()
        );
    }

    let nu = 0.05;
    let tau = 3.0;
    let exact = 1.0 - 2.0 * plz(tau, nu)?;
    println!("\nweak coupling, ν = {nu}, τ = {tau}: u_z = {exact:.12}");
    let mut partial = 1.0;
    for k in 1..=6 {
        partial += (-nu as f64).powi(k as i32) * 8f64.powi(k as i32) * i_k(k, tau)?.value;
        println!(
            "  K = {k}: {partial:.12}  error {:.2e}",
            (partial - exact).abs()
        );
    }
    Ok(())
}
