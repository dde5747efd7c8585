//! The companion sine integral J₁ and the trajectory 𝓩 = I₁ + iJ₁.
//! J₁ diverges logarithmically at −∞, so it is anchored at a finite τ_s.

use oscint::closedform::{i1_closed_fresnel, i1_closed_r, j1_closed};
use oscint::oracle::{ode_j1, GridSpec};

fn main() -> oscint::Result<()> {
    let tau_s = -60.0;
    let ode = ode_j1(GridSpec::window(-6.0, 10.0, 9).with_start(tau_s))?;
    println!(
        "{:>5}  {:>14}  {:>14}  {:>14}  {:>14}",
        "τ", "I₁ (𝓡)", "I₁ (Fresnel)", "J₁ closed", "J₁ ode"
    );
    for i in 0..ode.len() {
        let (tau, j, _) = ode.at(i);
        println!(
            "{tau:>5}  {:>14.10}  {:>14.10}  {:>14.10}  {:>14.10}",
            i1_closed_r(tau)?,
            i1_closed_fresnel(tau),
            j1_closed(tau, tau_s)?,
            j
        );
    }
    println!("\nJ₁(60; −60) = {:.6}", j1_closed(60.0, tau_s)?);
    Ok(())
}
