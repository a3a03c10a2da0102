//! First-order biased walks from every vertex of a small edge list.
//!
//! Run with: cargo run --release --example deepwalk

use std::io::Cursor;

use radixwalk::{deepwalk_walks, BiasMode, DynGraph, GroupThresholds};

const EDGES: &str = "\
# src dst bias
0 1 5
0 2 4
1 2 3
2 3 2
3 0 1
3 4 6
4 1 2
";

fn main() -> radixwalk::Result<()> {
    let g = DynGraph::load_edge_list(
        Cursor::new(EDGES),
        BiasMode::Integer,
        false,
        GroupThresholds::default(),
    )?;
    let starts: Vec<u32> = g.vertices().collect();
    let walks = deepwalk_walks(&g, &starts, 10, 123)?;
    for w in &walks {
        let path: Vec<String> = w.vertices.iter().map(|v| v.to_string()).collect();
        println!("{}", path.join(" -> "));
    }
    Ok(())
}
