//! Round-trip a codebook through the text and JSON formats and re-verify it.
//!
//! Run with `cargo run --example verify_file`.

use blockperm::constructions::{verify_min_distance, zn1_code};
use blockperm::CodeBook;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut code = zn1_code(6)?;
    verify_min_distance(&mut code)?;

    let text = code.to_text();
    let json = serde_json::to_string_pretty(&code)?;
    println!("text form:\n{text}");
    println!("json form:\n{json}\n");

    let mut from_text = CodeBook::from_text(&text)?;
    let from_json: CodeBook = serde_json::from_str(&json)?;
    println!("text round-trip min distance {}", verify_min_distance(&mut from_text)?);
    println!(
        "json round-trip recorded distance {:?}",
        from_json.verified_min_distance()
    );

    let broken = "3 2 file\n1 2 3\n1 2 3\n";
    match CodeBook::from_text(broken) {
        Ok(_) => println!("unexpected: duplicate accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
