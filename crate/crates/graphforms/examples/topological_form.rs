//! The topological form via its spanning-tree Dodgson expansion, including
//! the degenerate cases (trees, odd loop numbers, self-loops).
//!
//! ```bash
//! cargo run --example topological_form
//! ```

use graphforms::corpus;
use graphforms::forms::alpha_form;
use graphforms::graph::parse_graph_text;

fn main() {
    let g = corpus::dunces_cap();
    let alpha = alpha_form(&g).unwrap();
    println!("dunce's cap:");
    println!("  alpha = {alpha}");
    println!("  closed: {}", alpha.exterior_derivative().is_zero());
    println!("  scaling weight: {:?}", alpha.homogeneity_weight());

    let tree = parse_graph_text("e 1 1 2\ne 2 2 3\ne 3 3 4\n").unwrap();
    println!("path graph (a tree): alpha = {}", alpha_form(&tree).unwrap());

    let triangle = corpus::triangle();
    println!(
        "triangle (odd loop number): alpha = {}",
        alpha_form(&triangle).unwrap()
    );

    let tadpole = parse_graph_text(corpus::SELF_LOOP).unwrap();
    println!(
        "two-banana with a self-loop: alpha = {}",
        alpha_form(&tadpole).unwrap()
    );
}
