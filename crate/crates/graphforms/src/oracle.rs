//! Independent reference implementations used to cross-check the fast paths.
//!
//! Everything here is deliberately naive: full permutation sums, brute-force
//! subset scans. None of it shares code with the implementations it checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::ring::Ring;

/// All permutations of `0..n`; signs are recomputed per permutation.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permute(&mut perm, n, &mut out);
    out
}

fn heap_permute(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permute(perm, k - 1, out);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Pfaffian as the full permutation sum
/// `(1 / (2^n n!)) * sum_sigma sgn(sigma) * prod_k M[sigma(2k-1), sigma(2k)]`,
/// evaluated over the rationals and returned as an integer (the division is
/// exact for skew-symmetric integer input).
pub fn pfaffian_permutation_sum(m: &Matrix<BigInt>) -> BigInt {
    let dim = m.rows();
    if dim % 2 == 1 {
        return BigInt::from(0);
    }
    let n = dim / 2;
    let mut total = <BigRational as Zero>::zero();
    for perm in permutations(dim) {
        let sign = permutation_sign(&perm);
        let mut prod = BigInt::from(sign);
        for k in 0..n {
            prod *= m.at(perm[2 * k], perm[2 * k + 1]);
        }
        total += BigRational::from_integer(prod);
    }
    let mut norm = BigInt::from(1);
    for k in 1..=n {
        norm *= BigInt::from(2) * BigInt::from(k);
    }
    let result = total / BigRational::from_integer(norm);
    assert!(result.is_integer(), "pfaffian permutation sum not integral");
    result.to_integer()
}

/// Hafnian as the full permutation sum (same normalization, no signs).
pub fn hafnian_permutation_sum(m: &Matrix<BigInt>) -> BigInt {
    let dim = m.rows();
    assert!(dim % 2 == 0, "hafnian oracle needs even dimension");
    let n = dim / 2;
    let mut total = <BigRational as Zero>::zero();
    for perm in permutations(dim) {
        let mut prod = <BigInt as One>::one();
        for k in 0..n {
            prod *= m.at(perm[2 * k], perm[2 * k + 1]);
        }
        total += BigRational::from_integer(prod);
    }
    let mut norm = BigInt::from(1);
    for k in 1..=n {
        norm *= BigInt::from(2) * BigInt::from(k);
    }
    let result = total / BigRational::from_integer(norm);
    assert!(result.is_integer(), "hafnian permutation sum not integral");
    result.to_integer()
}

/// Determinant as the full signed permutation sum.
pub fn determinant_permutation_sum<R: Ring>(m: &Matrix<R>) -> R {
    assert!(m.is_square());
    let n = m.rows();
    let mut acc = R::zero();
    for perm in permutations(n) {
        let sign = permutation_sign(&perm);
        let mut prod = R::one();
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(m.at(i, j));
        }
        if sign > 0 {
            acc = acc.add(&prod);
        } else {
            acc = acc.sub(&prod);
        }
    }
    acc
}

/// Spanning trees by brute force: every edge subset of size |V|-1 whose
/// edges connect all vertices. Connectivity of |V|-1 edges implies acyclicity,
/// so no separate cycle check is needed. Returns sorted subsets of 1-based
/// edge labels in lexicographic order.
pub fn spanning_trees_brute_force(g: &Graph) -> Vec<Vec<usize>> {
    let m = g.num_edges();
    let need = g.num_vertices() - 1;
    let mut out = Vec::new();
    let mut subset = Vec::new();
    subsets_rec(m, need, 1, &mut subset, &mut |s: &[usize]| {
        if connects_all(g, s) {
            out.push(s.to_vec());
        }
    });
    out
}

fn subsets_rec(
    m: usize,
    need: usize,
    start: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == need {
        visit(cur);
        return;
    }
    for e in start..=m {
        if m - e + 1 < need - cur.len() {
            break;
        }
        cur.push(e);
        subsets_rec(m, need, e + 1, cur, visit);
        cur.pop();
    }
}

fn connects_all(g: &Graph, edges: &[usize]) -> bool {
    let n = g.num_vertices();
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n + 1];
    for &e in edges {
        let (t, h) = g.edge(e);
        adj[t].push(h);
        adj[h].push(t);
    }
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1usize];
    seen[1] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_sign_matches_inversion_count() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
    }

    #[test]
    fn all_permutations_generated() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        let mut sorted: Vec<Vec<usize>> = perms;
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
    }
}
