//! Parse graphs in both formats, enumerate spanning trees, and apply the
//! three surgeries (contract, delete, subdivide).
//!
//! ```bash
//! cargo run --example graph_basics
//! ```

use graphforms::graph::{graph_to_json, graph_to_text, parse_graph_json, parse_graph_text};

fn main() {
    let dunce = parse_graph_text(
        "# dunce's cap\n\
         e 1 2 1\n\
         e 2 1 3\n\
         e 3 2 3\n\
         e 4 2 3\n",
    )
    .unwrap();
    println!("dunce's cap: {}", dunce.fingerprint());
    println!("  loop number {}", dunce.loop_number());

    // the same graph as a structured document
    let from_json = parse_graph_json(r#"{"edges":[[2,1],[1,3],[2,3],[2,3]],"v_star":3}"#).unwrap();
    assert_eq!(dunce, from_json);
    println!("  round trips: {}", graph_to_json(&dunce));

    println!("  spanning trees:");
    for tree in dunce.spanning_trees() {
        println!("    {tree}");
    }

    let theta = dunce.contract_edge(1).unwrap();
    println!("contracting edge 1 gives the theta graph:");
    print!("{}", graph_to_text(&theta));

    let banana = theta.delete_edge(3).unwrap();
    println!("deleting edge 3 of the theta graph leaves {}", banana.fingerprint());

    let back = theta.subdivide_edge(1).unwrap();
    println!("subdividing edge 1 of the theta graph restores the dunce's cap: {}", back == dunce);

    // matrices: paths against incidence give the identity, cycles are
    // annihilated by it
    let inc = dunce.incidence_matrix();
    let path = dunce.path_matrix(None).unwrap();
    let basis = dunce.default_basis();
    println!("incidence matrix:\n{inc}");
    println!("P^T I:\n{}", path.transpose().mul(&inc));
    println!("I^T C:\n{}", inc.transpose().mul(&basis.matrix()));
}
