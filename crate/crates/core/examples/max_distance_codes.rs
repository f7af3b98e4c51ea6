//! Codes with minimum distance n - 1: even-n steps, multiplication mod n + 1
//! and Hamiltonian decomposition search.
//!
//! Run with `cargo run --release --example max_distance_codes`.

use blockperm::constructions::{even_n_code, ham_decomp_code, verify_min_distance, zn1_code, HamDecompOutcome};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut even = even_n_code(6)?;
    println!("even-n code, n = 6, min distance {}", verify_min_distance(&mut even)?);
    print!("{}", even.to_text());

    let mut zn1 = zn1_code(10)?;
    println!(
        "\nmultiplicative code, n = 10: {} words, min distance {}",
        zn1.len(),
        verify_min_distance(&mut zn1)?
    );

    for n in [3, 5, 7] {
        match ham_decomp_code(n)? {
            HamDecompOutcome::Found { mut code, nodes } => {
                let min = verify_min_distance(&mut code)?;
                println!("\ndecomposition n = {n}: found after {nodes} nodes, min distance {min}");
                print!("{}", code.to_text());
            }
            HamDecompOutcome::NotFound { nodes } => {
                println!("\ndecomposition n = {n}: none exists ({nodes} nodes searched)");
            }
        }
    }
    Ok(())
}
