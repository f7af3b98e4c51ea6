//! Bound calculators and the comparison table against stored expectations.
//!
//! Run with `cargo run --example bounds_table`.

use blockperm::bounds::{bound_report, check_table1, format_table1, published_table1};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, d, exact) in [(7, 5, true), (7, 4, true), (10, 5, false)] {
        let report = bound_report(n, d, exact)?;
        println!("{}", serde_json::to_string(&report)?);
    }
    println!();

    let checks = check_table1(&published_table1())?;
    print!("{}", format_table1(&checks));
    let failing: Vec<_> = checks
        .iter()
        .filter(|c| !c.passes())
        .map(|c| (c.row.n, c.row.d))
        .collect();
    println!("rows outside tolerance: {failing:?}");
    Ok(())
}
