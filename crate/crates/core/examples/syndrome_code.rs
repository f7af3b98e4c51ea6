//! Syndrome construction: partition S_n by syndrome and inspect the classes.
//!
//! Run with `cargo run --release --example syndrome_code -- 6 3`.

use blockperm::constructions::{select_prime, syndrome_partition, verify_min_distance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(6);
    let d: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);

    let field = select_prime(n)?;
    let partition = syndrome_partition(n, d)?;
    println!("n = {n}, d = {d}, field GF({})", field.modulus());
    println!(
        "{} nonempty classes covering {} permutations",
        partition.classes.len(),
        partition.total()
    );

    let (values, words) = partition.largest().ok_or("no classes")?;
    println!("largest class f = {values:?} with {} words", words.len());

    let mut code = partition.codebook(values);
    let min = verify_min_distance(&mut code)?;
    println!("verified minimum distance = {min} (design {d})");

    let sizes: Vec<usize> = partition.classes.values().map(Vec::len).collect();
    let smallest = sizes.iter().min().copied().unwrap_or(0);
    println!("class sizes range {smallest}..={}", words.len());
    Ok(())
}
