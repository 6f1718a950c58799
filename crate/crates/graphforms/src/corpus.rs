//! Bundled example graphs used by the verification suites and the CLI.

use crate::graph::{parse_graph_text, EdgeSet, Graph};

pub const THETA: &str = include_str!("../corpus/theta.g");
pub const DUNCES_CAP: &str = include_str!("../corpus/dunces_cap.g");
pub const DOUBLE_TRIANGLE: &str = include_str!("../corpus/double_triangle.g");
pub const DIPOLE5: &str = include_str!("../corpus/dipole5.g");
pub const TRIANGLE: &str = include_str!("../corpus/triangle.g");
pub const SINGLE_EDGE: &str = include_str!("../corpus/single_edge.g");
pub const SELF_LOOP: &str = include_str!("../corpus/self_loop.g");

/// Name/graph pairs for every bundled example.
pub fn bundled() -> Vec<(&'static str, Graph)> {
    [
        ("theta", THETA),
        ("dunces-cap", DUNCES_CAP),
        ("double-triangle", DOUBLE_TRIANGLE),
        ("dipole-5", DIPOLE5),
        ("triangle", TRIANGLE),
        ("single-edge", SINGLE_EDGE),
        ("self-loop", SELF_LOOP),
    ]
    .into_iter()
    .map(|(name, text)| {
        (
            name,
            parse_graph_text(text).expect("bundled graph parses"),
        )
    })
    .collect()
}

pub fn theta() -> Graph {
    parse_graph_text(THETA).unwrap()
}

pub fn dunces_cap() -> Graph {
    parse_graph_text(DUNCES_CAP).unwrap()
}

pub fn double_triangle() -> Graph {
    parse_graph_text(DOUBLE_TRIANGLE).unwrap()
}

pub fn triangle() -> Graph {
    parse_graph_text(TRIANGLE).unwrap()
}

/// The dipole with `2i+1` parallel edges from vertex 1 to vertex 2.
pub fn dipole(i: usize) -> Graph {
    let edges = vec![(1, 2); 2 * i + 1];
    Graph::new(2, edges, None).expect("dipole is connected")
}

/// The spanning tree whose fundamental basis the theta-graph golden tests pin.
pub fn theta_golden_tree() -> EdgeSet {
    EdgeSet::new(vec![3]).unwrap()
}

/// The spanning tree whose fundamental basis the dunce's-cap golden tests pin.
pub fn dunces_cap_golden_tree() -> EdgeSet {
    EdgeSet::new(vec![2, 4]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_graphs_parse_and_connect() {
        let all = bundled();
        assert_eq!(all.len(), 7);
        for (name, g) in &all {
            assert!(g.num_edges() >= 1, "{name}");
        }
    }

    #[test]
    fn self_loop_graph_has_even_loop_number() {
        let g = bundled()
            .into_iter()
            .find(|(n, _)| *n == "self-loop")
            .unwrap()
            .1;
        assert!(g.has_self_loop());
        assert_eq!(g.loop_number() % 2, 0);
    }

    #[test]
    fn dipole_matches_bundled_file() {
        assert_eq!(dipole(2), parse_graph_text(DIPOLE5).unwrap());
    }
}
