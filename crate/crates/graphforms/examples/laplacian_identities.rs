//! The Laplacian identity suites on one graph: inverse entries as Dodgson
//! polynomials, the projector identity, and the concatenated-determinant
//! family including the all-subsets sign relation.
//!
//! ```bash
//! cargo run --example laplacian_identities
//! ```

use graphforms::corpus;
use graphforms::identities::{concatenated_determinant_report, laplacian_inverse_report};
use graphforms::polynomials::laplacian_bundle;

fn main() {
    let g = corpus::dunces_cap();
    let basis = g
        .fundamental_cycle_basis(&corpus::dunces_cap_golden_tree())
        .unwrap();
    let bundle = laplacian_bundle(&g, &basis);
    println!("cycle Laplacian for the tree {{2,4}} basis:\n{}", bundle.cycle);

    let report = laplacian_inverse_report(&g, &basis);
    print!("{}", report.render_text());
    assert!(report.passed());

    let path = g.path_matrix(None).unwrap();
    let report = concatenated_determinant_report(&g, &basis, &path);
    print!("{}", report.render_text());
    assert!(report.passed());
}
