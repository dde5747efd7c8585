//! I_k at the crossing τ = 0 and far past it, against the exact limits.

use oscint::closedform::{i_k, known_limits};

fn main() -> oscint::Result<()> {
    println!(
        "{:>2}  {:>22}  {:>22}  {:>10}",
        "k", "I_k(0)", "π^k/(2^3k k!)", "rel.err"
    );
    for k in 1..=8 {
        let v = i_k(k, 0.0)?;
        let (zero, _) = known_limits(k);
        println!(
            "{k:>2}  {:>22.16e}  {:>22.16e}  {:>10.2e}",
            v.value,
            zero,
            (v.value / zero - 1.0).abs()
        );
    }
    println!();
    println!(
        "{:>2}  {:>12}  {:>12}  {:>12}",
        "k", "I_k(10)", "I_k(30)", "I_k(∞)"
    );
    for k in 1..=5 {
        let (_, inf) = known_limits(k);
        println!(
            "{k:>2}  {:>12.8}  {:>12.8}  {:>12.8}",
            i_k(k, 10.0)?.value,
            i_k(k, 30.0)?.value,
            inf
        );
    }
    Ok(())
}
