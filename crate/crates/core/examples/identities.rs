//! Residuals of the PCF integral identities at a few (τ, ν) samples.

use oscint::oracle::{verify_identity, Identity};

fn main() {
    let samples = [(-2.0, 0.3), (0.5, 0.5), (1.5, 1.0)];
    for which in Identity::ALL {
        let t0 = std::time::Instant::now();
        let report = verify_identity(which, &samples, 1e-8);
        println!(
            "{:<22} max residual {:>10.3e}  {}  ({:.2?})",
            report.id,
            report.max_residual(),
            if report.pass() { "ok" } else { "FAIL" },
            t0.elapsed()
        );
        for s in &report.samples {
            if let Some(e) = &s.error {
                println!("    τ={} ν={}: {e}", s.tau, s.nu);
            } else if !s.pass {
                println!(
                    "    τ={} ν={}: lhs {:?} rhs {:?}",
                    s.tau, s.nu, s.lhs, s.rhs
                );
            }
        }
    }
}
