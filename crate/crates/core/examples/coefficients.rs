//! Exact coefficient expressions for I_1..I_6 and the transcendental
//! cancellation check behind them.

use oscint::symbolic::{render, sym_expression, verify_cancellation, Format};

fn main() -> oscint::Result<()> {
    for k in 1..=6 {
        let expr = sym_expression(k)?;
        println!(
            "{}",
            render(&expr, Format::Text)?.lines().next().unwrap_or("")
        );
        let report = verify_cancellation(&expr);
        println!("    {report}");
        println!("    I_{k}(1.5) = {:.12}", expr.evaluate(1.5)?);
    }
    println!();
    println!("{}", render(&sym_expression(2)?, Format::Structured)?);
    Ok(())
}
