//! Modified PCFs 𝒟^{(k)}_{−1}(−iμ₀τ) along the Landau–Zener ray, comparing
//! the power series with the steepest-descent contour where both apply.

use oscint::specfun::{
    pcf, pcf_minus_one_erf, pcf_modified_contour_orders, pcf_modified_series_orders,
    SeriesTruncation,
};
use oscint::{lz_arg, Complex64};

fn main() -> oscint::Result<()> {
    let nu = Complex64::new(-1.0, 0.0);
    println!(
        "{:>5}  {:>3}  {:>44}  {:>9}",
        "τ", "k", "𝒟^(k)_{-1}(z)", "|Δ|"
    );
    for tau in [-3.0, -1.0, 0.0, 1.0, 2.5] {
        let z = lz_arg(tau);
        let series = pcf_modified_series_orders(3, nu, z, SeriesTruncation::default())?;
        let contour = pcf_modified_contour_orders(3, nu, z, 1e-13)?;
        for k in 0..=3 {
            let (s, c) = (series.values[k], contour[k]);
            println!(
                "{tau:>5}  {k:>3}  {:>21.14e} {:>+21.14e}i  {:>9.2e}",
                s.re,
                s.im,
                (s - c).norm()
            );
        }
    }

    // D_{-1} has a closed form through erf
    println!();
    for tau in [-6.0, 0.0, 6.0, 12.0] {
        let z = lz_arg(tau);
        let d = pcf(nu, z)?;
        let e = pcf_minus_one_erf(z)?;
        println!(
            "τ = {tau:>5}: |D_-1|² = {:.15}  erf form differs by {:.1e}",
            d.norm_sqr(),
            (d - e).norm()
        );
    }
    Ok(())
}
