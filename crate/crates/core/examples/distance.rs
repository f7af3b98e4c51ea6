//! Block distance, characteristic sets and the cut-and-reorder definition.
//!
//! Run with `cargo run --example distance`.

use blockperm::perm::{distance_by_definition, is_minimal};
use blockperm::{block_distance, char_set, Permutation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a: Permutation = "4 8 3 2 6 7 5 1 9".parse()?;
    let b: Permutation = "6 7 8 3 2 5 1 9 4".parse()?;

    println!("pi1 = {a}");
    println!("pi2 = {b}");
    println!(
        "A(pi1) = {:?}",
        char_set(&a).iter().map(|p| (p.first(), p.second())).collect::<Vec<_>>()
    );
    println!(
        "A(pi2) = {:?}",
        char_set(&b).iter().map(|p| (p.first(), p.second())).collect::<Vec<_>>()
    );

    let ca = char_set(&a);
    let cb = char_set(&b);
    let missing: Vec<_> = ca.difference(&cb).map(|p| (p.first(), p.second())).collect();
    println!("A(pi1) \\ A(pi2) = {missing:?}");
    println!("d_B via characteristic sets = {}", block_distance(&a, &b)?);
    println!("d_B via block cutting       = {}", distance_by_definition(&a, &b)?);

    let id = Permutation::identity(5);
    let p: Permutation = "3 4 5 1 2".parse()?;
    println!();
    println!("{p} is minimal: {}", is_minimal(&p));
    println!("d_B({id}, {p}) = {}", block_distance(&id, &p)?);
    Ok(())
}
