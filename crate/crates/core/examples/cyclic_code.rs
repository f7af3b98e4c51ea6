//! Cyclic-shift classes: each class of S_n contributes one representative,
//! giving a code with minimum distance 2.
//!
//! Run with `cargo run --example cyclic_code`.

use blockperm::constructions::{cyclic_class_code, verify_min_distance};
use blockperm::perm::cyclic_shifts;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut code = cyclic_class_code(4)?;
    println!(
        "{} representatives, min distance {}",
        code.len(),
        verify_min_distance(&mut code)?
    );
    for w in code.words() {
        let class: Vec<String> = cyclic_shifts(w).iter().map(|p| format!("[{p}]")).collect();
        println!("{w}  <- {}", class.join(" "));
    }
    Ok(())
}
