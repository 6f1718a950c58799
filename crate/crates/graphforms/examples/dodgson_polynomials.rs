//! Dodgson polynomials two ways, plus the contraction-deletion identity they
//! satisfy.
//!
//! ```bash
//! cargo run --example dodgson_polynomials
//! ```

use graphforms::corpus;
use graphforms::poly::MultiPoly;
use graphforms::polynomials::{dodgson, symanzik_contracted, symanzik_trees, DodgsonMethod};

fn main() {
    let g = corpus::dunces_cap();
    println!("graph: {}", g.fingerprint());
    let psi = symanzik_trees(&g);
    println!("psi = {psi}");

    println!("single-pair Dodgson polynomials (determinant route = expansion route):");
    for i in 1..=g.num_edges() {
        for j in i..=g.num_edges() {
            let det = dodgson(&g, &[i], &[j], DodgsonMethod::Det).unwrap();
            let exp = dodgson(&g, &[i], &[j], DodgsonMethod::Expansion).unwrap();
            assert_eq!(det, exp);
            println!("  psi^{{{i},{j}}} = {det}");
        }
    }

    // contraction-deletion: psi = a_e psi^{e,e} + psi|_{a_e = 0}
    println!("contraction-deletion splits psi along every edge:");
    for e in 1..=g.num_edges() {
        let deleted = dodgson(&g, &[e], &[e], DodgsonMethod::Det).unwrap();
        let contracted = symanzik_contracted(&g, e);
        let rebuilt = MultiPoly::var(e - 1).mul(&deleted).add(&contracted);
        assert_eq!(rebuilt, psi);
        println!("  edge {e}: a{e} * ({deleted}) + ({contracted})");
    }
}
