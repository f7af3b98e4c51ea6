//! The block permutation graph G(n, d): neighbourhood statistics, greedy and
//! exact independent sets, and the independence-number formula.
//!
//! Run with `cargo run --release --example block_graph`.

use blockperm::graph::{
    build_graph, exact_independent_set, greedy_independent_set, jv_lower_formula, neighborhood_stats, GreedyOrder,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, d) in [(4, 3), (5, 3), (5, 4)] {
        let g = build_graph(n, d)?;
        let stats = neighborhood_stats(n, d)?;
        let greedy = greedy_independent_set(&g, GreedyOrder::Degree)?;
        let exact = exact_independent_set(&g)?;
        let formula = jv_lower_formula(&stats)?;
        println!(
            "G({n},{d}): {} vertices, degree {:?}, {} edges, triangles in H {}, zero-x edges {}",
            g.vertex_count(),
            g.regular_degree(),
            g.edge_count(),
            stats.triangle_count,
            stats.zero_x_edge_count
        );
        println!(
            "  greedy {} <= alpha {}; formula value {formula:.4}",
            greedy.len(),
            exact.len()
        );
    }
    Ok(())
}
