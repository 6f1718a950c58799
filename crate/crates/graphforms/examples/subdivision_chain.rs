//! Subdivision compatibility along the chain
//! theta graph -> dunce's cap -> double triangle: `phi` pulls back on the
//! nose, `alpha` picks up `(-1)^(e+1)`, and the labelling sign follows suit.
//!
//! ```bash
//! cargo run --example subdivision_chain
//! ```

use graphforms::corpus;
use graphforms::forms::{alpha_form, subdivision_check};

fn main() {
    let theta = corpus::theta();

    // splitting edge 1 of the theta graph produces the dunce's cap
    let report = subdivision_check(&theta, 1);
    print!("{}", report.render_text());
    assert!(report.passed());
    assert_eq!(theta.subdivide_edge(1).unwrap(), corpus::dunces_cap());

    // splitting edge 3 first and then edge 1 produces the double triangle
    let mid = theta.subdivide_edge(3).unwrap();
    let report = subdivision_check(&mid, 1);
    print!("{}", report.render_text());
    assert!(report.passed());
    let double = mid.subdivide_edge(1).unwrap();
    assert_eq!(double, corpus::double_triangle());

    // both subdivided edges are odd, so the iterated pullback carries no sign
    let alpha_theta = alpha_form(&theta).unwrap();
    let alpha_double = alpha_form(&double).unwrap();
    let pulled = alpha_theta.pullback_subdivide(3).pullback_subdivide(1);
    assert!(alpha_double.equals(&pulled).unwrap());
    println!("double triangle alpha = {alpha_double}");
    println!("matches the iterated pullback of the theta-graph form (signs +1, +1)");
}
