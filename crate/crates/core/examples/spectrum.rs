//! Windowed Fourier modulus of f(τ) = |D_{−1}(−iμ₀τ)|² on [−40, 40], with its
//! deep minima near the
//! central lobe listed.

use oscint::closedform::ray_orders;
use oscint::oracle::{fourier_spectrum, GridSpec, SampledCurve};

fn main() -> oscint::Result<()> {
    let tau = GridSpec::window(-40.0, 40.0, 801)
        .with_start(-40.0)
        .samples();
    let values = tau
        .iter()
        .map(|&t| Ok(ray_orders(0, t)?[0].norm_sqr()))
        .collect::<oscint::Result<Vec<_>>>()?;
    let err = vec![0.0; values.len()];
    let spec = fourier_spectrum(&SampledCurve { tau, values, err })?;
    let peak = spec.values.iter().cloned().fold(0.0, f64::max);
    println!("peak |F| = {peak:.6}");
    for i in 1..spec.len() - 1 {
        let v = spec.values[i];
        if spec.tau[i].abs() <= 1.5
            && v < spec.values[i - 1]
            && v < spec.values[i + 1]
            && v < 0.05 * peak
        {
            println!("  minimum at ω = {:>8.4}: |F| = {:.3e}", spec.tau[i], v);
        }
    }
    Ok(())
}
