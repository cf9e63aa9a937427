//! Building a weighted graph, round-tripping both file formats, and asking
//! for distances and r-components.

use asdim::{r_components, weak_diameter, DistanceOracle, VertexSet, WeightedGraph};

pub fn run_example() -> asdim::Result<()> {
    // a square with one heavy diagonal
    let g = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 3.0)])?;
    let text = g.to_text();
    println!("{text}");
    assert_eq!(WeightedGraph::parse(&text)?.to_text(), text);
    assert_eq!(WeightedGraph::parse(&g.to_json())?.to_text(), text);

    let oracle = DistanceOracle::new(&g);
    println!("d(0,2) = {}", oracle.distance(0, 2));

    let s = VertexSet::from([0, 2]);
    let comps = r_components(&oracle, &s, 1.0)?;
    println!("1-components of {{0,2}}: {}", comps.len());
    assert_eq!(comps.len(), 2);
    assert_eq!(r_components(&oracle, &s, 2.0)?.len(), 1);
    println!("weak diameter: {}", weak_diameter(&oracle, &s)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
