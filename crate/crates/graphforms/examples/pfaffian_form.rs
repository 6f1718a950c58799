//! The Pfaffian form of the theta graph by all three routes, and its
//! covariance under a change of cycle basis.
//!
//! ```bash
//! cargo run --example pfaffian_form
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use graphforms::corpus;
use graphforms::forms::{phi_form, phi_form_hafnian, PhiMethod};
use graphforms::Matrix;

fn main() {
    let g = corpus::theta();
    let basis = g
        .fundamental_cycle_basis(&corpus::theta_golden_tree())
        .unwrap();
    println!("theta graph, cycle basis from the tree {{3}}:");
    println!("C =\n{}", basis.matrix());

    let direct = phi_form(&g, &basis, PhiMethod::Direct).unwrap();
    let tree_sum = phi_form(&g, &basis, PhiMethod::DodgsonTrees).unwrap();
    let hafnian = phi_form_hafnian(&g, &basis).unwrap();
    println!("phi (Pfaffian route)  = {direct}");
    println!("phi (tree-sum route)  = {tree_sum}");
    println!("phi (hafnian route)   = {hafnian}");
    assert!(direct.equals(&tree_sum).unwrap());
    assert!(direct.equals(&hafnian).unwrap());

    // swapping the two basis cycles has determinant -1 and flips the form
    let swap = Matrix::from_rows(vec![
        vec![BigInt::from(0), BigInt::from(1)],
        vec![BigInt::from(1), BigInt::from(0)],
    ]);
    let swapped = basis.apply_change(&swap).unwrap();
    let phi_swapped = phi_form(&g, &swapped, PhiMethod::Direct).unwrap();
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    assert!(phi_swapped.equals(&direct.scale(&minus_one, 0)).unwrap());
    println!("swapping the basis cycles flips the sign: {phi_swapped}");
}
