//! The Symanzik polynomial by its three routes: spanning-tree sum, expanded
//! vertex Laplacian determinant, cycle Laplacian determinant.
//!
//! ```bash
//! cargo run --example symanzik_routes
//! ```

use num_rational::BigRational;
use num_traits::One;

use graphforms::corpus;
use graphforms::polynomials::{symanzik, SymanzikMethod};

fn main() {
    for (name, g) in corpus::bundled() {
        let trees = symanzik(&g, SymanzikMethod::Trees);
        let expanded = symanzik(&g, SymanzikMethod::ExpandedDet);
        let cycle = symanzik(&g, SymanzikMethod::CycleDet);
        assert_eq!(trees, expanded);
        assert_eq!(trees, cycle);
        println!("{name}: psi = {trees}");

        // the matrix-tree count: psi at a_e = 1 counts spanning trees
        let ones = vec![BigRational::one(); g.num_edges()];
        println!(
            "  psi(1,...,1) = {} = number of spanning trees ({})",
            trees.eval_rational(&ones),
            g.spanning_trees().len()
        );
    }
}
