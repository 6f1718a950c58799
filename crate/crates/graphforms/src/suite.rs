//! Seeded random inputs and the batched verification suites behind
//! `graphforms verify`. Everything is deterministic for a given seed.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::corpus;
use crate::forms::{
    alpha_form, dipole_report, phi_form, phi_form_hafnian, property_checks, sign_factor,
    subdivision_check, verify_main_identity, PhiMethod,
};
use crate::graph::Graph;
use crate::integrate::SplitMix64;
use crate::matrix::Matrix;
use crate::oracle;
use crate::polynomials::{dodgson, symanzik, DodgsonMethod, SymanzikMethod};
use crate::report::{CheckReport, FormReport};

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Number of random graphs in the randomized suites.
    pub count: usize,
    pub max_edges: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            count: 50,
            max_edges: 9,
        }
    }
}

/// Either kind of report, so suites can mix them.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(untagged)]
pub enum Report {
    Form(FormReport),
    Check(CheckReport),
}

impl Report {
    pub fn passed(&self) -> bool {
        match self {
            Report::Form(r) => r.passed(),
            Report::Check(r) => r.passed(),
        }
    }

    pub fn render_text(&self) -> String {
        match self {
            Report::Form(r) => r.render_text(),
            Report::Check(r) => r.render_text(),
        }
    }
}

/// Random connected multigraph with the requested loop number: a random
/// spanning tree plus `loops` extra edges (self-loops allowed), labels
/// shuffled afterwards.
pub fn random_connected_graph(rng: &mut SplitMix64, loops: usize, max_edges: usize) -> Graph {
    let min_edges = if loops == 0 { 1 } else { loops + 1 };
    let max_edges = max_edges.max(min_edges);
    let m = rng.range(min_edges, max_edges);
    let n = m - loops + 1;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    for v in 2..=n {
        let anchor = rng.range(1, v - 1);
        if rng.below(2) == 0 {
            edges.push((anchor, v));
        } else {
            edges.push((v, anchor));
        }
    }
    for _ in 0..loops {
        // mostly proper edges, occasionally a self-loop
        let t = rng.range(1, n);
        let h = if rng.below(8) == 0 {
            t
        } else {
            rng.range(1, n)
        };
        edges.push((t, h));
    }
    // shuffle the labels
    for i in (1..edges.len()).rev() {
        edges.swap(i, rng.below(i + 1));
    }
    Graph::new(n, edges, None).expect("construction keeps the graph connected")
}

/// Random unimodular matrix: a product of elementary column operations.
pub fn random_unimodular(rng: &mut SplitMix64, n: usize) -> Matrix<BigInt> {
    let mut m: Matrix<BigInt> = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        match rng.below(3) {
            0 => {
                // swap two columns
                let i = rng.below(n);
                let mut j = rng.below(n);
                if i == j {
                    j = (j + 1) % n;
                }
                for r in 0..n {
                    let tmp = m.at(r, i).clone();
                    *m.at_mut(r, i) = m.at(r, j).clone();
                    *m.at_mut(r, j) = tmp;
                }
            }
            1 => {
                // negate a column
                let i = rng.below(n);
                for r in 0..n {
                    *m.at_mut(r, i) = -m.at(r, i);
                }
            }
            _ => {
                // add +-1 times another column
                let i = rng.below(n);
                let mut j = rng.below(n);
                if i == j {
                    j = (j + 1) % n;
                }
                let sign = if rng.below(2) == 0 { 1 } else { -1 };
                for r in 0..n {
                    let val = m.at(r, i) + BigInt::from(sign) * m.at(r, j);
                    *m.at_mut(r, i) = val;
                }
            }
        }
    }
    m
}

/// The deterministic random-graph sample behind the randomized suites: loop
/// numbers cycle through 0, 2, 4.
pub fn random_graphs(opts: &SuiteOptions) -> Vec<Graph> {
    let mut rng = SplitMix64::new(opts.seed);
    (0..opts.count)
        .map(|k| random_connected_graph(&mut rng, [0, 2, 4][k % 3], opts.max_edges))
        .collect()
}

fn corpus_with_randoms(opts: &SuiteOptions) -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = corpus::bundled()
        .into_iter()
        .map(|(n, g)| (n.to_string(), g))
        .collect();
    for (k, g) in random_graphs(opts).into_iter().enumerate() {
        out.push((format!("random-{k}"), g));
    }
    out
}

/// Main identity on the corpus plus the seeded random sample.
pub fn main_identity_suite(opts: &SuiteOptions) -> Vec<Report> {
    corpus_with_randoms(opts)
        .into_iter()
        .map(|(_, g)| Report::Form(verify_main_identity(&g, &g.default_basis())))
        .collect()
}

/// Route equivalence: the graph polynomial three ways, single-pair Dodgson
/// polynomials two ways, and the Pfaffian form by its three routes.
pub fn route_equivalence_suite(opts: &SuiteOptions) -> Vec<Report> {
    let mut out = Vec::new();
    for (name, g) in corpus_with_randoms(opts) {
        let mut report = CheckReport::new(g.fingerprint(), format!("route equivalence ({name})"));
        let trees = symanzik(&g, SymanzikMethod::Trees);
        let expanded = symanzik(&g, SymanzikMethod::ExpandedDet);
        let cycle = symanzik(&g, SymanzikMethod::CycleDet);
        report.add(
            "graph polynomial: tree sum vs expanded determinant",
            trees == expanded,
            "",
        );
        report.add(
            "graph polynomial: tree sum vs cycle determinant",
            trees == cycle,
            "",
        );
        let mut dodgson_ok = true;
        let mut detail = String::new();
        'pairs: for i in 1..=g.num_edges() {
            for j in 1..=g.num_edges() {
                let det = dodgson(&g, &[i], &[j], DodgsonMethod::Det).expect("edge indices");
                let exp =
                    dodgson(&g, &[i], &[j], DodgsonMethod::Expansion).expect("edge indices");
                if det != exp {
                    dodgson_ok = false;
                    detail = format!("pair ({i},{j})");
                    break 'pairs;
                }
            }
        }
        report.add(
            "Dodgson polynomials: determinant vs tree expansion",
            dodgson_ok,
            detail,
        );
        let basis = g.default_basis();
        match (
            phi_form(&g, &basis, PhiMethod::Direct),
            phi_form(&g, &basis, PhiMethod::DodgsonTrees),
            phi_form_hafnian(&g, &basis),
        ) {
            (Ok(direct), Ok(tree_sum), Ok(haf)) => {
                report.add(
                    "Pfaffian form: direct vs tree-sum route",
                    direct.equals(&tree_sum).unwrap_or(false),
                    "",
                );
                report.add(
                    "Pfaffian form: direct vs hafnian route",
                    direct.equals(&haf).unwrap_or(false),
                    "",
                );
            }
            _ => report.add("Pfaffian form routes computed", false, "loop cap exceeded"),
        }
        out.push(Report::Check(report));
    }
    out
}

/// Laplacian-inverse and concatenated-determinant identity suites.
pub fn laplacian_suite(opts: &SuiteOptions) -> Vec<Report> {
    let mut out = Vec::new();
    for (_, g) in corpus_with_randoms(opts) {
        let basis = g.default_basis();
        let path = g.path_matrix(None).expect("connected");
        out.push(Report::Check(crate::identities::laplacian_inverse_report(
            &g, &basis,
        )));
        out.push(Report::Check(
            crate::identities::concatenated_determinant_report(&g, &basis, &path),
        ));
    }
    out
}

fn random_skew(rng: &mut SplitMix64, n: usize) -> Matrix<BigInt> {
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.range(0, 18) as i64 - 9;
            *m.at_mut(i, j) = BigInt::from(v);
            *m.at_mut(j, i) = BigInt::from(-v);
        }
    }
    m
}

fn random_int_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> Matrix<BigInt> {
    Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.range(0, 8) as i64 - 4))
}

fn random_symmetric(rng: &mut SplitMix64, n: usize) -> Matrix<BigInt> {
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v = BigInt::from(rng.range(0, 12) as i64 - 6);
            *m.at_mut(i, j) = v.clone();
            *m.at_mut(j, i) = v;
        }
    }
    m
}

fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Pfaffian/hafnian/determinant oracle checks plus the sign machinery for
/// concatenated matrices on random graphs.
pub fn signs_suite(opts: &SuiteOptions) -> Vec<Report> {
    let mut rng = SplitMix64::new(opts.seed ^ 0x5157_ab1e);
    let mut out = Vec::new();

    let mut oracle_report = CheckReport::new("random matrices", "exact linear algebra oracles");
    // matching-sum Pfaffian against the full permutation sum, including odd
    // dimensions (both vanish) and one 8x8 instance
    let mut ok = true;
    let mut detail = String::new();
    for n in 2..=6 {
        for _ in 0..4 {
            let m = random_skew(&mut rng, n);
            let fast = m.pfaffian().expect("skew");
            let slow = oracle::pfaffian_permutation_sum(&m);
            if fast != slow {
                ok = false;
                detail = format!("dimension {n}");
            }
        }
    }
    let m8 = random_skew(&mut rng, 8);
    if m8.pfaffian().expect("skew") != oracle::pfaffian_permutation_sum(&m8) {
        ok = false;
        detail = "dimension 8".into();
    }
    oracle_report.add("Pfaffian matching sum vs permutation sum", ok, detail);

    // Pf(M)^2 = det(M)
    let mut ok = true;
    for n in [2, 4, 6, 8] {
        for _ in 0..4 {
            let m = random_skew(&mut rng, n);
            let pf = m.pfaffian().expect("skew");
            let det = m.determinant().expect("square");
            if pf.clone() * pf != det {
                ok = false;
            }
        }
    }
    oracle_report.add("Pfaffian squares to the determinant", ok, "");

    // Pf(A^T B A) = det(A) Pf(B) for square A
    let mut ok = true;
    for n in [2, 4] {
        for _ in 0..4 {
            let a = random_int_matrix(&mut rng, n, n);
            let b = random_skew(&mut rng, n);
            let lhs = a
                .transpose()
                .mul(&b)
                .mul(&a)
                .pfaffian()
                .expect("conjugation preserves skewness");
            let rhs = a.determinant().expect("square") * b.pfaffian().expect("skew");
            if lhs != rhs {
                ok = false;
            }
        }
    }
    oracle_report.add("Pfaffian of a congruence is det times Pfaffian", ok, "");

    // minor summation: Pf(A B A^T) = sum_U det(A[-,U]) Pf(B[U,U])
    let mut ok = true;
    for (rows, cols) in [(2, 5), (4, 6), (6, 8), (4, 8)] {
        let a = random_int_matrix(&mut rng, rows, cols);
        let b = random_skew(&mut rng, cols);
        let lhs = a
            .mul(&b)
            .mul(&a.transpose())
            .pfaffian()
            .expect("A B A^T is skew");
        let mut rhs = BigInt::from(0);
        let all_rows: Vec<usize> = (0..rows).collect();
        for u in subsets_of(cols, rows) {
            let sub_a = a
                .minor(&all_rows, &u, crate::matrix::MinorMode::Keep)
                .expect("in range");
            let det_a = sub_a.determinant().expect("square");
            if num_traits::Zero::is_zero(&det_a) {
                continue;
            }
            let sub_b = b.minor(&u, &u, crate::matrix::MinorMode::Keep).expect("in range");
            rhs += det_a * sub_b.pfaffian().expect("principal minor of skew");
        }
        if lhs != rhs {
            ok = false;
        }
    }
    oracle_report.add("Pfaffian minor summation over column subsets", ok, "");

    // hafnian matching sum vs permutation sum
    let mut ok = true;
    for n in [2, 4, 6] {
        for _ in 0..3 {
            let m = random_symmetric(&mut rng, n);
            if m.hafnian().expect("symmetric") != oracle::hafnian_permutation_sum(&m) {
                ok = false;
            }
        }
    }
    oracle_report.add("hafnian matching sum vs permutation sum", ok, "");

    // fraction-free determinant against the cofactor oracle, and
    // multiplicativity
    let mut ok = true;
    for _ in 0..6 {
        let a = random_int_matrix(&mut rng, 4, 4);
        if a.determinant().expect("square") != a.determinant_cofactor().expect("square") {
            ok = false;
        }
        let b = random_int_matrix(&mut rng, 4, 4);
        let ab = a.mul(&b);
        if ab.determinant().expect("square")
            != a.determinant().expect("square") * b.determinant().expect("square")
        {
            ok = false;
        }
    }
    oracle_report.add("determinant vs cofactor oracle and multiplicativity", ok, "");
    out.push(Report::Check(oracle_report));

    // sign machinery on random graphs: unit determinant, path independence,
    // subdivision sign, basis covariance
    let graphs = random_graphs(&SuiteOptions {
        count: opts.count.min(12),
        ..*opts
    });
    for g in graphs {
        let mut report = CheckReport::new(g.fingerprint(), "labelling signs");
        let basis = g.default_basis();
        let path = g.path_matrix(None).expect("connected");
        match sign_factor(&g, &basis, &path) {
            Ok(s) => {
                report.add(
                    "concatenated determinant is a path-independent unit",
                    true,
                    format!("det[C|P] = {s}"),
                );
                // a changed basis flips the sign by det(P)
                let l = g.loop_number();
                if l > 0 {
                    let p = random_unimodular(&mut rng, l);
                    let det_p = p.determinant().expect("square");
                    let changed = basis.apply_change(&p).expect("unimodular");
                    match sign_factor(&g, &changed, &path) {
                        Ok(s2) => {
                            let expect = if det_p == BigInt::from(1) { s } else { -s };
                            report.add(
                                "sign transforms by the basis-change determinant",
                                s2 == expect,
                                format!("det(P) = {det_p}"),
                            );
                        }
                        Err(e) => report.add(
                            "sign transforms by the basis-change determinant",
                            false,
                            e.to_string(),
                        ),
                    }
                }
            }
            Err(e) => report.add(
                "concatenated determinant is a path-independent unit",
                false,
                e.to_string(),
            ),
        }
        let edge = rng.range(1, g.num_edges());
        let sub_report = subdivision_check(&g, edge);
        report.add(
            "subdivision sign checks",
            sub_report.passed(),
            format!("edge {edge}"),
        );
        out.push(Report::Check(report));
    }
    out
}

/// Form-level property checks: corpus properties, the subdivision chain from
/// the theta graph, dipole closed forms, and basis covariance of `phi`.
pub fn forms_suite(opts: &SuiteOptions) -> Vec<Report> {
    let mut out = Vec::new();
    for (_, g) in corpus::bundled() {
        out.push(Report::Form(property_checks(&g)));
    }
    // subdivision chain: theta -> dunce's cap -> double triangle
    let theta = corpus::theta();
    out.push(Report::Form(subdivision_check(&theta, 1)));
    let mid = theta.subdivide_edge(3).expect("valid edge");
    out.push(Report::Form(subdivision_check(&mid, 1)));
    let mut chain = CheckReport::new("theta subdivision chain", "derived graphs");
    chain.add(
        "subdividing edge 1 yields the dunce's cap",
        theta.subdivide_edge(1).expect("valid edge") == corpus::dunces_cap(),
        "",
    );
    chain.add(
        "subdividing edges 3 then 1 yields the double triangle",
        mid.subdivide_edge(1).expect("valid edge") == corpus::double_triangle(),
        "",
    );
    // the doubly subdivided topological form pulls back with signs +1, +1
    let alpha_theta = alpha_form(&theta).expect("small loop number");
    let alpha_dt = alpha_form(&corpus::double_triangle()).expect("small loop number");
    let pulled = alpha_theta.pullback_subdivide(3).pullback_subdivide(1);
    chain.add(
        "double-triangle topological form is the iterated pullback",
        alpha_dt.equals(&pulled).unwrap_or(false),
        "signs (+1)(+1)",
    );
    out.push(Report::Check(chain));

    for i in [1, 2] {
        out.push(Report::Form(dipole_report(i)));
    }

    // basis covariance on random graphs
    let mut rng = SplitMix64::new(opts.seed ^ 0x0f0f_1234);
    let graphs = random_graphs(&SuiteOptions {
        count: opts.count.min(10),
        ..*opts
    });
    for g in graphs {
        let l = g.loop_number();
        if l == 0 || l % 2 == 1 {
            continue;
        }
        let basis = g.default_basis();
        let mut report = CheckReport::new(g.fingerprint(), "basis covariance of phi");
        let phi = phi_form(&g, &basis, PhiMethod::Direct).expect("even loops");
        let p = random_unimodular(&mut rng, l);
        let det_p = p.determinant().expect("square");
        let changed = basis.apply_change(&p).expect("unimodular");
        let phi2 = phi_form(&g, &changed, PhiMethod::Direct).expect("even loops");
        let factor = BigRational::from_integer(det_p.clone());
        report.add(
            "phi transforms by det(P)",
            phi2.equals(&phi.scale(&factor, 0)).unwrap_or(false),
            format!("det(P) = {det_p}"),
        );
        out.push(Report::Check(report));
    }
    out
}

/// Everything: used by `verify --suite all`.
pub fn all_suites(opts: &SuiteOptions) -> Vec<Report> {
    let mut out = main_identity_suite(opts);
    out.extend(route_equivalence_suite(opts));
    out.extend(laplacian_suite(opts));
    out.extend(signs_suite(opts));
    out.extend(forms_suite(opts));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_graphs_are_deterministic() {
        let opts = SuiteOptions {
            seed: 3,
            count: 10,
            max_edges: 9,
        };
        let a = random_graphs(&opts);
        let b = random_graphs(&opts);
        assert_eq!(a, b);
        for (k, g) in a.iter().enumerate() {
            assert_eq!(g.loop_number(), [0, 2, 4][k % 3]);
            assert!(g.num_edges() <= 9);
        }
    }

    #[test]
    fn random_unimodular_has_unit_determinant() {
        let mut rng = SplitMix64::new(11);
        for n in 1..=4 {
            for _ in 0..5 {
                let m = random_unimodular(&mut rng, n);
                let det = m.determinant().unwrap();
                assert!(det == BigInt::from(1) || det == BigInt::from(-1));
            }
        }
    }

    #[test]
    fn small_main_suite_passes() {
        let opts = SuiteOptions {
            seed: 0,
            count: 6,
            max_edges: 7,
        };
        for report in main_identity_suite(&opts) {
            assert!(report.passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn small_signs_suite_passes() {
        let opts = SuiteOptions {
            seed: 1,
            count: 4,
            max_edges: 7,
        };
        for report in signs_suite(&opts) {
            assert!(report.passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn small_forms_suite_passes() {
        let opts = SuiteOptions {
            seed: 2,
            count: 4,
            max_edges: 7,
        };
        for report in forms_suite(&opts) {
            assert!(report.passed(), "{}", report.render_text());
        }
    }
}
