//! Sphere and ball sizes around the identity, with the closed form and the
//! product bracket.
//!
//! Run with `cargo run --release --example spheres -- 7`.

use blockperm::enumeration::{ball_bound_hypothesis, ball_size_bounds, enumerate_spheres, myers_count};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    let profile = enumerate_spheres(n)?;

    println!("n = {n}");
    println!("{:>3} {:>10} {:>10}", "k", "|R(n,k)|", "formula");
    for (k, count) in profile.counts.iter().enumerate() {
        let formula = if k == 0 {
            "1".to_string()
        } else {
            myers_count(n, k)?.to_string()
        };
        println!("{k:>3} {count:>10} {formula:>10}");
    }
    println!("total = {}", profile.total());

    println!();
    println!("{:>3} {:>10} {:>12} {:>12}", "t", "|B(n,t)|", "lower", "upper");
    for t in 0..n {
        let ball = profile.ball(t);
        if ball_bound_hypothesis(n, t) {
            let (lo, hi) = ball_size_bounds(n, t)?;
            println!("{t:>3} {ball:>10} {lo:>12} {hi:>12}");
        } else {
            println!("{t:>3} {ball:>10} {:>12} {:>12}", "-", "-");
        }
    }
    Ok(())
}
