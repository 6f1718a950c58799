//! Graph polynomials: the Symanzik polynomial (three routes), Dodgson
//! polynomials (two routes) and the Laplacian matrices they come from.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::graph::{CycleBasis, EdgeSet, Graph};
use crate::matrix::{Matrix, MinorMode};
use crate::poly::MultiPoly;

#[derive(Debug, Error, PartialEq)]
pub enum DodgsonError {
    #[error("row and column sets must have equal size")]
    SizeMismatch,
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("the expansion route needs edge indices only")]
    ExpansionNeedsEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymanzikMethod {
    /// Sum over spanning trees of the complement edge product.
    Trees,
    /// Determinant of the expanded vertex Laplacian.
    ExpandedDet,
    /// Determinant of the cycle Laplacian for the default basis.
    CycleDet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DodgsonMethod {
    /// Determinant of the expanded Laplacian with rows/columns removed.
    Det,
    /// Alternating sum over complements of spanning trees.
    Expansion,
}

/// Diagonal matrix of the edge variables `a_e`.
pub fn edge_matrix(g: &Graph) -> Matrix<MultiPoly> {
    let m = g.num_edges();
    Matrix::from_fn(m, m, |i, j| {
        if i == j {
            MultiPoly::var(i)
        } else {
            MultiPoly::zero()
        }
    })
}

/// Product of all edge variables.
pub fn all_edges_product(g: &Graph) -> MultiPoly {
    let mut p = MultiPoly::one();
    for v in 0..g.num_edges() {
        p = p.mul(&MultiPoly::var(v));
    }
    p
}

/// Expanded vertex Laplacian: block matrix `[[D, I], [-I^T, 0]]` of size
/// `|E| + |V| - 1`, edge indices first.
pub fn expanded_laplacian(g: &Graph) -> Matrix<MultiPoly> {
    let m = g.num_edges();
    let n1 = g.num_vertices() - 1;
    let inc = g.incidence_matrix();
    Matrix::from_fn(m + n1, m + n1, |i, j| {
        if i < m && j < m {
            if i == j {
                MultiPoly::var(i)
            } else {
                MultiPoly::zero()
            }
        } else if i < m {
            int_to_poly(inc.at(i, j - m))
        } else if j < m {
            int_to_poly(&(-inc.at(j, i - m)))
        } else {
            MultiPoly::zero()
        }
    })
}

/// Cycle Laplacian `C^T D C` for the given basis.
pub fn cycle_laplacian(g: &Graph, basis: &CycleBasis) -> Matrix<MultiPoly> {
    assert_eq!(basis.num_edges(), g.num_edges(), "basis/graph mismatch");
    let l = basis.len();
    let cols = basis.columns();
    Matrix::from_fn(l, l, |i, j| {
        let mut acc = MultiPoly::zero();
        for e in 0..g.num_edges() {
            let c = cols[i][e] * cols[j][e];
            if c != 0 {
                acc = acc.add(&MultiPoly::var(e).scale(&BigRational::from_integer(BigInt::from(c))));
            }
        }
        acc
    })
}

/// Vertex Laplacian cleared of denominators:
/// `I^T adj(D) I = (prod a_e) * I^T D^-1 I`. The adjugate of `D` is diagonal
/// with entries `prod_{f != e} a_f`.
pub fn vertex_laplacian_cleared(g: &Graph) -> Matrix<MultiPoly> {
    let m = g.num_edges();
    let adj_d = Matrix::from_fn(m, m, |i, j| {
        if i == j {
            let mut p = MultiPoly::one();
            for f in 0..m {
                if f != i {
                    p = p.mul(&MultiPoly::var(f));
                }
            }
            p
        } else {
            MultiPoly::zero()
        }
    });
    let inc = g.incidence_matrix().map(int_to_poly);
    inc.transpose().mul(&adj_d).mul(&inc)
}

fn int_to_poly(x: &BigInt) -> MultiPoly {
    MultiPoly::constant(BigRational::from_integer(x.clone()))
}

/// All graph matrices needed downstream, built consistently in label order.
pub struct LaplacianBundle {
    pub edge_vars: Matrix<MultiPoly>,
    pub incidence: Matrix<BigInt>,
    pub expanded: Matrix<MultiPoly>,
    /// `(prod a_e) * I^T D^-1 I`; divide by the edge product to recover the
    /// rational-function vertex Laplacian.
    pub vertex_cleared: Matrix<MultiPoly>,
    pub cycle: Matrix<MultiPoly>,
}

pub fn laplacian_bundle(g: &Graph, basis: &CycleBasis) -> LaplacianBundle {
    LaplacianBundle {
        edge_vars: edge_matrix(g),
        incidence: g.incidence_matrix(),
        expanded: expanded_laplacian(g),
        vertex_cleared: vertex_laplacian_cleared(g),
        cycle: cycle_laplacian(g, basis),
    }
}

/// Symanzik polynomial by the requested route. All three agree identically.
pub fn symanzik(g: &Graph, method: SymanzikMethod) -> MultiPoly {
    match method {
        SymanzikMethod::Trees => symanzik_trees(g),
        SymanzikMethod::ExpandedDet => expanded_laplacian(g)
            .determinant()
            .expect("square matrix over a domain"),
        SymanzikMethod::CycleDet => cycle_laplacian(g, &g.default_basis())
            .determinant()
            .expect("square matrix over a domain"),
    }
}

/// `sum over spanning trees T of prod_{e not in T} a_e`.
pub fn symanzik_trees(g: &Graph) -> MultiPoly {
    let m = g.num_edges();
    let mut psi = MultiPoly::zero();
    for tree in g.spanning_trees() {
        let mut term = MultiPoly::one();
        for e in tree.complement(m).iter() {
            term = term.mul(&MultiPoly::var(e - 1));
        }
        psi = psi.add(&term);
    }
    psi
}

/// Contraction polynomial `psi_{G/e}` as `psi_G` with `a_e` set to zero,
/// staying in the original variables.
pub fn symanzik_contracted(g: &Graph, edge: usize) -> MultiPoly {
    symanzik_trees(g).substitute_var(edge - 1, &MultiPoly::zero())
}

fn validate_indices(g: &Graph, set: &[usize]) -> Result<(), DodgsonError> {
    let dim = g.num_edges() + g.num_vertices() - 1;
    let mut seen = std::collections::BTreeSet::new();
    for &i in set {
        if i == 0 || i > dim {
            return Err(DodgsonError::IndexOutOfRange(i, dim));
        }
        if !seen.insert(i) {
            return Err(DodgsonError::DuplicateIndex(i));
        }
    }
    Ok(())
}

/// Dodgson polynomial `det M(A,B)` for 1-based row/column index sets of the
/// expanded Laplacian; indices `1..=|E|` are edges, `|E|+p` is the `p`-th
/// vertex column (vertices other than `v_star` in label order).
pub fn dodgson(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    method: DodgsonMethod,
) -> Result<MultiPoly, DodgsonError> {
    if a.len() != b.len() {
        return Err(DodgsonError::SizeMismatch);
    }
    validate_indices(g, a)?;
    validate_indices(g, b)?;
    match method {
        DodgsonMethod::Det => {
            let m = expanded_laplacian(g);
            let rows: Vec<usize> = a.iter().map(|&i| i - 1).collect();
            let cols: Vec<usize> = b.iter().map(|&i| i - 1).collect();
            let sub = m
                .minor(&rows, &cols, MinorMode::Remove)
                .expect("indices validated");
            Ok(sub.determinant().expect("square matrix over a domain"))
        }
        DodgsonMethod::Expansion => dodgson_expansion(g, a, b),
    }
}

/// Alternating tree-complement expansion of an edge-indexed Dodgson
/// polynomial:
/// `sum_U (-1)^{sum_{e in U} |A_<e| - |B_<e|} det(I(U+A)) det(I(U+B)) prod_{e in U} a_e`
/// over subsets `U` of `E \ (A u B)` with `|U| = loops - |A|`.
fn dodgson_expansion(g: &Graph, a: &[usize], b: &[usize]) -> Result<MultiPoly, DodgsonError> {
    let m = g.num_edges();
    if a.iter().chain(b).any(|&i| i > m) {
        return Err(DodgsonError::ExpansionNeedsEdges);
    }
    let loops = g.loop_number();
    if a.len() > loops {
        return Ok(MultiPoly::zero());
    }
    let size = loops - a.len();
    let pool: Vec<usize> = (1..=m)
        .filter(|e| !a.contains(e) && !b.contains(e))
        .collect();
    let inc = g.incidence_matrix();
    let mut acc = MultiPoly::zero();
    let mut subset = Vec::with_capacity(size);
    enumerate_subsets(&pool, size, 0, &mut subset, &mut |u: &[usize]| {
        let mut rows_a: Vec<usize> = u.iter().chain(a).map(|&e| e - 1).collect();
        let mut rows_b: Vec<usize> = u.iter().chain(b).map(|&e| e - 1).collect();
        rows_a.sort_unstable();
        rows_b.sort_unstable();
        let det_a = inc.remove_rows(&rows_a).determinant().expect("square");
        if num_traits::Zero::is_zero(&det_a) {
            return;
        }
        let det_b = inc.remove_rows(&rows_b).determinant().expect("square");
        if num_traits::Zero::is_zero(&det_b) {
            return;
        }
        let mut sign_exp = 0usize;
        for &e in u {
            sign_exp += a.iter().filter(|&&x| x < e).count();
            sign_exp += b.iter().filter(|&&x| x < e).count();
        }
        let mut coeff = BigRational::from_integer(det_a * det_b);
        if sign_exp % 2 == 1 {
            coeff = -coeff;
        }
        let mut term = MultiPoly::constant(coeff);
        for &e in u {
            term = term.mul(&MultiPoly::var(e - 1));
        }
        acc = acc.add(&term);
    });
    Ok(acc)
}

fn enumerate_subsets(
    pool: &[usize],
    size: usize,
    start: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == size {
        visit(cur);
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < size - cur.len() {
            break;
        }
        cur.push(pool[i]);
        enumerate_subsets(pool, size, i + 1, cur, visit);
        cur.pop();
    }
}

/// Memoized single-pair edge Dodgson polynomials. The polynomial is
/// symmetric in its two edge indices, so pairs are cached unordered; any
/// `(-1)^{i+j}` factors are applied at the use sites.
pub struct DodgsonCache {
    expanded: Matrix<MultiPoly>,
    pairs: Mutex<HashMap<(usize, usize), MultiPoly>>,
}

impl DodgsonCache {
    pub fn new(g: &Graph) -> Self {
        DodgsonCache {
            expanded: expanded_laplacian(g),
            pairs: Mutex::new(HashMap::new()),
        }
    }

    /// `psi^{e_i, e_j}` for 1-based edge labels.
    pub fn edge_pair(&self, i: usize, j: usize) -> MultiPoly {
        let key = (i.min(j), i.max(j));
        if let Some(hit) = self.pairs.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let sub = self
            .expanded
            .minor(&[key.0 - 1], &[key.1 - 1], MinorMode::Remove)
            .expect("edge labels in range");
        let value = sub.determinant().expect("square matrix over a domain");
        self.pairs
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(value)
            .clone()
    }
}

/// Signed determinant of the incidence rows picked by a tree candidate;
/// `±1` exactly when the set is a spanning tree.
pub fn incidence_tree_det(g: &Graph, set: &EdgeSet) -> BigInt {
    let rows: Vec<usize> = set.iter().map(|e| e - 1).collect();
    g.incidence_matrix()
        .keep_rows(&rows)
        .determinant()
        .expect("square integer matrix")
}

/// Determinant of the cycle rows picked by the complement of a tree
/// candidate.
pub fn cycle_complement_det(basis: &CycleBasis, complement: &EdgeSet) -> BigInt {
    let rows: Vec<usize> = complement.iter().map(|e| e - 1).collect();
    basis
        .matrix()
        .keep_rows(&rows)
        .determinant()
        .expect("square integer matrix")
}
