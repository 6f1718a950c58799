//! The topological form `alpha` and the Pfaffian form `phi` of a graph, each
//! computed by independent routes, together with the identity checks that
//! relate them.
//!
//! Conventions: `l` is the loop number, `psi` the graph polynomial. Both
//! forms are degree-`l` projective forms with denominator `psi^((l+1)/2)`;
//! odd `l` gives the zero form. The central identity is
//! `alpha = det[C|P] / 2^l * phi`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::exterior::ExtElem;
use crate::form::FormExpression;
use crate::graph::{CycleBasis, EdgeSet, Graph};
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::polynomials::{
    cycle_complement_det, cycle_laplacian, incidence_tree_det, symanzik_trees, DodgsonCache,
};
use crate::report::FormReport;

/// Largest loop number accepted by the permutation-sum routes
/// (`l! = 720` terms per spanning tree at the cap).
pub const PERMUTATION_SUM_LOOP_CAP: usize = 6;

#[derive(Debug, Error, PartialEq)]
pub enum FormsError {
    #[error("loop number {0} exceeds the permutation-sum cap {1}")]
    LoopCapExceeded(usize, usize),
    #[error("cycle basis does not match the graph")]
    BasisMismatch,
    #[error("concatenated determinant {0} is not a unit (invalid basis or path matrix)")]
    NotAUnit(String),
    #[error("internal skew-symmetry violation at ({0},{1})")]
    SkewViolation(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiMethod {
    /// Pfaffian of `dLambda adj(Lambda) dLambda` over the even form ring.
    Direct,
    /// Spanning-tree sum over Dodgson polynomial pairings.
    DodgsonTrees,
}

fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=k {
        acc *= BigInt::from(i as i64);
    }
    acc
}

fn permutations_of(labels: &[usize]) -> Vec<Vec<usize>> {
    if labels.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut work = labels.to_vec();
    permute_rec(&mut work, 0, &mut out);
    out
}

fn permute_rec(work: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at + 1 == work.len() {
        out.push(work.clone());
        return;
    }
    for i in at..work.len() {
        work.swap(at, i);
        permute_rec(work, at + 1, out);
        work.swap(at, i);
    }
}

/// Sum over all permutations of the complement edges of products of paired
/// Dodgson polynomials `psi^{s(f1),s(f2)} ... psi^{s(f_{l-1}),s(f_l)}`.
fn pairing_sum(cache: &DodgsonCache, complement: &[usize]) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for perm in permutations_of(complement) {
        let mut prod = MultiPoly::one();
        for pair in perm.chunks(2) {
            prod = prod.mul(&cache.edge_pair(pair[0], pair[1]));
            if prod.is_zero() {
                break;
            }
        }
        acc = acc.add(&prod);
    }
    acc
}

/// The topological form via its spanning-tree Dodgson expansion:
/// prefactor `1 / (pi^(l/2) 4^l (l/2)!)`, denominator `psi^((l+1)/2)`, and
/// for each spanning tree `T` the summand
/// `det(I[T]) * (pairing sum over the complement) * da_{complement}`.
pub fn alpha_form(g: &Graph) -> Result<FormExpression, FormsError> {
    let l = g.loop_number();
    let m = g.num_edges();
    let psi = symanzik_trees(g);
    if l % 2 == 1 {
        return Ok(FormExpression::zero(psi, m));
    }
    if l > PERMUTATION_SUM_LOOP_CAP {
        return Err(FormsError::LoopCapExceeded(l, PERMUTATION_SUM_LOOP_CAP));
    }
    let cache = DodgsonCache::new(g);
    let mut num = ExtElem::zero();
    for tree in g.spanning_trees() {
        let det = incidence_tree_det(g, &tree);
        if num_traits::Zero::is_zero(&det) {
            continue;
        }
        let complement: Vec<usize> = tree.complement(m).iter().collect();
        let paired = pairing_sum(&cache, &complement);
        if paired.is_zero() {
            continue;
        }
        let coeff = paired.scale(&BigRational::from_integer(det));
        num = num.add(&ExtElem::term(&complement, coeff));
    }
    let scalar = BigRational::new(
        BigInt::from(1),
        BigInt::from(4).pow(l as u32) * factorial(l / 2),
    );
    Ok(FormExpression::new(
        scalar,
        -((l / 2) as i32),
        (l + 1) as u32,
        num,
        psi,
        m,
    ))
}

/// The Pfaffian form for a chosen cycle basis.
pub fn phi_form(
    g: &Graph,
    basis: &CycleBasis,
    method: PhiMethod,
) -> Result<FormExpression, FormsError> {
    if basis.num_edges() != g.num_edges() || basis.len() != g.loop_number() {
        return Err(FormsError::BasisMismatch);
    }
    let l = g.loop_number();
    let m = g.num_edges();
    let psi = symanzik_trees(g);
    if l % 2 == 1 {
        return Ok(FormExpression::zero(psi, m));
    }
    match method {
        PhiMethod::Direct => phi_direct(g, basis, psi),
        PhiMethod::DodgsonTrees => phi_dodgson_trees(g, basis, psi),
    }
}

/// `phi = Pf(dLambda adj(Lambda) dLambda) / ((-2 pi)^(l/2) psi^((l+1)/2))`.
///
/// The adjugate keeps everything polynomial; the Pfaffian is degree-(l/2)
/// homogeneous in the matrix entries, which absorbs the `adj = psi *
/// inverse` bookkeeping into the single `psi^((l+1)/2)` denominator.
fn phi_direct(
    g: &Graph,
    basis: &CycleBasis,
    psi: MultiPoly,
) -> Result<FormExpression, FormsError> {
    let l = g.loop_number();
    let m = g.num_edges();
    let lambda = cycle_laplacian(g, basis);
    let adj = lambda.adjugate().expect("square");
    let cols = basis.columns();
    // dLambda_{ij} = sum_e C_{e,i} C_{e,j} da_e
    let dlambda: Matrix<ExtElem> = Matrix::from_fn(l, l, |i, j| {
        let mut acc = ExtElem::zero();
        for e in 0..m {
            let c = cols[i][e] * cols[j][e];
            if c != 0 {
                acc = acc.add(
                    &ExtElem::da(e + 1)
                        .scale_rat(&BigRational::from_integer(BigInt::from(c))),
                );
            }
        }
        acc
    });
    let adj_ext = adj.map(|p| ExtElem::from_poly(p.clone()));
    let b = dlambda.mul(&adj_ext).mul(&dlambda);
    // entries are 2-forms, hence central; the product must be skew
    for i in 0..l {
        for j in 0..l {
            if !b.at(i, j).is_even_graded() {
                return Err(FormsError::SkewViolation(i, j));
            }
        }
    }
    b.is_skew_symmetric()
        .map_err(|_| FormsError::SkewViolation(0, 0))?;
    let pf = b.pfaffian().expect("skew-symmetry checked");
    let half = l / 2;
    let mut scalar = BigRational::new(BigInt::from(1), BigInt::from(2).pow(half as u32));
    if half % 2 == 1 {
        scalar = -scalar;
    }
    Ok(FormExpression::new(
        scalar,
        -(half as i32),
        (l + 1) as u32,
        pf,
        psi,
        m,
    ))
}

/// Spanning-tree expansion of `phi`: prefactor
/// `1 / ((-pi)^(l/2) 2^l (l/2)!)`, and per tree the sign
/// `(-1)^{sum of complement labels} det(C[complement])` times the same
/// Dodgson pairing sum as in `alpha`.
fn phi_dodgson_trees(
    g: &Graph,
    basis: &CycleBasis,
    psi: MultiPoly,
) -> Result<FormExpression, FormsError> {
    let l = g.loop_number();
    let m = g.num_edges();
    if l > PERMUTATION_SUM_LOOP_CAP {
        return Err(FormsError::LoopCapExceeded(l, PERMUTATION_SUM_LOOP_CAP));
    }
    let cache = DodgsonCache::new(g);
    let mut num = ExtElem::zero();
    for tree in g.spanning_trees() {
        let comp_set = tree.complement(m);
        let det = cycle_complement_det(basis, &comp_set);
        if num_traits::Zero::is_zero(&det) {
            continue;
        }
        let complement: Vec<usize> = comp_set.iter().collect();
        let label_sum: usize = complement.iter().sum();
        let paired = pairing_sum(&cache, &complement);
        if paired.is_zero() {
            continue;
        }
        let mut coeff = paired.scale(&BigRational::from_integer(det));
        if label_sum % 2 == 1 {
            coeff = coeff.neg();
        }
        num = num.add(&ExtElem::term(&complement, coeff));
    }
    let half = l / 2;
    let mut scalar = BigRational::new(
        BigInt::from(1),
        BigInt::from(2).pow(l as u32) * factorial(half),
    );
    if half % 2 == 1 {
        scalar = -scalar;
    }
    Ok(FormExpression::new(
        scalar,
        -(half as i32),
        (l + 1) as u32,
        num,
        psi,
        m,
    ))
}

/// Hafnian variant of the spanning-tree expansion:
/// `phi = sum_T det(C[complement]) haf(adj(Lambda_T)) da_complement` over
/// `(-2 pi)^(l/2) psi^((l+1)/2)`, with `Lambda_T` the cycle Laplacian of the
/// fundamental basis induced by `T`. An independent third route.
pub fn phi_form_hafnian(g: &Graph, basis: &CycleBasis) -> Result<FormExpression, FormsError> {
    if basis.num_edges() != g.num_edges() || basis.len() != g.loop_number() {
        return Err(FormsError::BasisMismatch);
    }
    let l = g.loop_number();
    let m = g.num_edges();
    let psi = symanzik_trees(g);
    if l % 2 == 1 {
        return Ok(FormExpression::zero(psi, m));
    }
    let mut num = ExtElem::zero();
    for tree in g.spanning_trees() {
        let comp_set = tree.complement(m);
        let det = cycle_complement_det(basis, &comp_set);
        if num_traits::Zero::is_zero(&det) {
            continue;
        }
        let fund = g.fundamental_cycle_basis(&tree).expect("spanning tree");
        let adj = cycle_laplacian(g, &fund).adjugate().expect("square");
        let haf = adj.hafnian().expect("symmetric, even dimension");
        let complement: Vec<usize> = comp_set.iter().collect();
        num = num.add(&ExtElem::term(
            &complement,
            haf.scale(&BigRational::from_integer(det)),
        ));
    }
    let half = l / 2;
    let mut scalar = BigRational::new(BigInt::from(1), BigInt::from(2).pow(half as u32));
    if half % 2 == 1 {
        scalar = -scalar;
    }
    Ok(FormExpression::new(
        scalar,
        -(half as i32),
        (l + 1) as u32,
        num,
        psi,
        m,
    ))
}

/// `det[C|P]`: the labelling sign relating the two forms. Checked to be a
/// unit and to be independent of the path matrix.
pub fn sign_factor(
    g: &Graph,
    basis: &CycleBasis,
    path: &Matrix<BigInt>,
) -> Result<i64, FormsError> {
    if basis.num_edges() != g.num_edges() || basis.len() != g.loop_number() {
        return Err(FormsError::BasisMismatch);
    }
    let cp = basis.matrix().hconcat(path);
    let det = cp.determinant().expect("square integer matrix");
    let value = if det == BigInt::from(1) {
        1
    } else if det == BigInt::from(-1) {
        -1
    } else {
        return Err(FormsError::NotAUnit(det.to_string()));
    };
    let alt_path = g
        .path_matrix(Some(&g.max_label_tree()))
        .expect("greedy tree is spanning");
    let alt = basis.matrix().hconcat(&alt_path).determinant().expect("square");
    if alt != det {
        return Err(FormsError::NotAUnit(format!(
            "path-matrix dependence: {det} vs {alt}"
        )));
    }
    Ok(value)
}

fn describe_basis(basis: &CycleBasis) -> String {
    match (basis.tree(), basis.defining_edges()) {
        (Some(tree), _) => format!("fundamental basis of tree {tree}"),
        (None, _) => {
            let cols: Vec<String> = basis
                .columns()
                .iter()
                .map(|c| {
                    let entries: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    format!("({})", entries.join(","))
                })
                .collect();
            format!("explicit columns {}", cols.join(" "))
        }
    }
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Verify `alpha = det[C|P] / 2^l * phi` with `phi` computed by both routes.
pub fn verify_main_identity(g: &Graph, basis: &CycleBasis) -> FormReport {
    let mut report = FormReport::new(g.fingerprint(), Some(describe_basis(basis)));
    let l = g.loop_number();
    let alpha = match alpha_form(g) {
        Ok(a) => a,
        Err(e) => {
            report.add_check("alpha computed", false, e.to_string());
            return report;
        }
    };
    let phi_direct = match phi_form(g, basis, PhiMethod::Direct) {
        Ok(p) => p,
        Err(e) => {
            report.add_check("phi computed", false, e.to_string());
            return report;
        }
    };
    let phi_trees = match phi_form(g, basis, PhiMethod::DodgsonTrees) {
        Ok(p) => p,
        Err(e) => {
            report.add_check("phi computed", false, e.to_string());
            return report;
        }
    };
    report.add_form("alpha", alpha.to_string());
    report.add_form("phi", phi_direct.to_string());
    report.add_check(
        "phi direct and tree-sum routes agree",
        phi_direct.equals(&phi_trees).unwrap_or(false),
        "",
    );
    let path = g.path_matrix(None).expect("connected graph");
    let sign = match sign_factor(g, basis, &path) {
        Ok(s) => s,
        Err(e) => {
            report.add_check("labelling sign is a unit", false, e.to_string());
            return report;
        }
    };
    report.add_check("labelling sign is a unit", true, format!("det[C|P] = {sign}"));
    let factor = BigRational::new(BigInt::from(sign), BigInt::from(2).pow(l as u32));
    let scaled_phi = phi_direct.scale(&factor, 0);
    let main_ok = alpha.equals(&scaled_phi).unwrap_or(false);
    let detail = if alpha.is_zero() && phi_direct.is_zero() {
        "both forms vanish".to_string()
    } else {
        match alpha.scale_ratio(&phi_direct) {
            Ok(Some((c, 0))) => format!("alpha = {} * phi", rational_str(&c)),
            _ => "no constant ratio".to_string(),
        }
    };
    report.add_check(
        "main identity alpha = (det[C|P]/2^l) phi",
        main_ok,
        detail,
    );
    report
}

/// Closed form of the Pfaffian form of the dipole with `2i+1` parallel
/// edges: `(2i)!/((4 pi)^i i!) (a_1...a_{2i+1})^{i-1} / psi^(i+1/2)` times
/// the alternating sum `sum_e (-1)^{e-1} a_e da_{all but e}`.
pub fn dipole_phi(i: usize) -> FormExpression {
    assert!(i >= 1, "dipole index starts at 1");
    let g = crate::corpus::dipole(i);
    let m = 2 * i + 1;
    let psi = symanzik_trees(&g);
    let product_pow = {
        let mut p = MultiPoly::one();
        for _ in 0..i.saturating_sub(1) {
            let mut all = MultiPoly::one();
            for v in 0..m {
                all = all.mul(&MultiPoly::var(v));
            }
            p = p.mul(&all);
        }
        p
    };
    let mut num = ExtElem::zero();
    for e in 1..=m {
        let labels: Vec<usize> = (1..=m).filter(|&f| f != e).collect();
        let mut coeff = MultiPoly::var(e - 1).mul(&product_pow);
        if (e - 1) % 2 == 1 {
            coeff = coeff.neg();
        }
        num = num.add(&ExtElem::term(&labels, coeff));
    }
    let scalar = BigRational::new(factorial(2 * i), BigInt::from(4).pow(i as u32) * factorial(i));
    FormExpression::new(scalar, -(i as i32), (2 * i + 1) as u32, num, psi, m)
}

/// Check the dipole closed form against the general Pfaffian-form routes
/// (fundamental basis for the tree consisting of the last edge).
pub fn dipole_report(i: usize) -> FormReport {
    let g = crate::corpus::dipole(i);
    let m = 2 * i + 1;
    let tree = EdgeSet::new(vec![m]).expect("single label");
    let basis = g.fundamental_cycle_basis(&tree).expect("spanning tree");
    let mut report = FormReport::new(g.fingerprint(), Some(describe_basis(&basis)));
    let closed = dipole_phi(i);
    report.add_form("phi (closed form)", closed.to_string());
    match phi_form(&g, &basis, PhiMethod::Direct) {
        Ok(direct) => {
            report.add_check(
                "closed form equals the Pfaffian route",
                closed.equals(&direct).unwrap_or(false),
                "",
            );
        }
        Err(e) => report.add_check("closed form equals the Pfaffian route", false, e.to_string()),
    }
    match phi_form(&g, &basis, PhiMethod::DodgsonTrees) {
        Ok(trees_route) => {
            report.add_check(
                "closed form equals the tree-sum route",
                closed.equals(&trees_route).unwrap_or(false),
                "",
            );
        }
        Err(e) => {
            // beyond the permutation cap only the closed form and the direct
            // route are compared
            report.add_check(
                "closed form equals the tree-sum route",
                false,
                e.to_string(),
            );
        }
    }
    report.add_check(
        "wedge degree equals the loop number",
        closed.degree() == Some(2 * i),
        format!("degree {:?}", closed.degree()),
    );
    report
}

/// Subdivision compatibility: subdivide edge `e`, pull back along
/// `a_e -> a_e' + a_e''` and compare. `phi` is invariant for the induced
/// basis; `alpha` and `det[C|P]` change by `(-1)^{e+1}`.
pub fn subdivision_check(g: &Graph, e: usize) -> FormReport {
    let basis = g.default_basis();
    let mut report = FormReport::new(
        g.fingerprint(),
        Some(format!("subdividing edge {e}; {}", describe_basis(&basis))),
    );
    let sub = match g.subdivide_edge(e) {
        Ok(s) => s,
        Err(err) => {
            report.add_check("subdivision valid", false, err.to_string());
            return report;
        }
    };
    let induced = basis.subdivide(e);
    let sign = if e % 2 == 1 { 1i64 } else { -1i64 };

    // the ambient polynomial pulls back onto the subdivided graph polynomial
    let psi_sub = symanzik_trees(&sub);

    let phi = phi_form(g, &basis, PhiMethod::Direct);
    let phi_sub = phi_form(&sub, &induced, PhiMethod::Direct);
    match (phi, phi_sub) {
        (Ok(phi), Ok(phi_sub)) => {
            let pulled = phi.pullback_subdivide(e);
            report.add_check(
                "graph polynomial pulls back to the subdivided one",
                *pulled.psi() == psi_sub,
                "",
            );
            report.add_check(
                "phi matches its pullback under subdivision",
                phi_sub.equals(&pulled).unwrap_or(false),
                "",
            );
        }
        _ => report.add_check("phi matches its pullback under subdivision", false, "error"),
    }

    match (alpha_form(g), alpha_form(&sub)) {
        (Ok(alpha), Ok(alpha_sub)) => {
            let pulled = alpha
                .pullback_subdivide(e)
                .scale(&BigRational::from_integer(BigInt::from(sign)), 0);
            report.add_check(
                "alpha matches its signed pullback under subdivision",
                alpha_sub.equals(&pulled).unwrap_or(false),
                format!("sign (-1)^(e+1) = {sign}"),
            );
        }
        _ => report.add_check(
            "alpha matches its signed pullback under subdivision",
            false,
            "error",
        ),
    }

    // det[C'|P'] = (-1)^{e+1} det[C|P]
    let path = g.path_matrix(None).expect("connected");
    let path_sub = sub.path_matrix(None).expect("connected");
    match (
        sign_factor(g, &basis, &path),
        sign_factor(&sub, &induced, &path_sub),
    ) {
        (Ok(s), Ok(s_sub)) => {
            report.add_check(
                "labelling sign changes by (-1)^(e+1)",
                s_sub == sign * s,
                format!("before {s}, after {s_sub}"),
            );
        }
        _ => report.add_check("labelling sign changes by (-1)^(e+1)", false, "error"),
    }
    report
}

/// Symbolic property checks for one graph: closedness of both forms, the
/// vanishing of `phi ^ phi`, odd-loop and self-loop vanishing, and the
/// projective homogeneity grading.
pub fn property_checks(g: &Graph) -> FormReport {
    let basis = g.default_basis();
    let mut report = FormReport::new(g.fingerprint(), Some(describe_basis(&basis)));
    let l = g.loop_number();
    let m = g.num_edges();
    let alpha = alpha_form(g);
    let phi = phi_form(g, &basis, PhiMethod::Direct);
    let (alpha, phi) = match (alpha, phi) {
        (Ok(a), Ok(p)) => (a, p),
        _ => {
            report.add_check("forms computed", false, "loop cap exceeded");
            return report;
        }
    };
    report.add_form("alpha", alpha.to_string());
    report.add_form("phi", phi.to_string());

    report.add_check("phi is closed", phi.exterior_derivative().is_zero(), "");
    report.add_check("alpha is closed", alpha.exterior_derivative().is_zero(), "");

    // the wedge square vanishes except for trees, where phi is the constant 1
    let square = phi.wedge(&phi).expect("same ambient");
    if l == 0 {
        report.add_check(
            "phi wedge phi vanishes",
            !square.is_zero(),
            "tree: the square is the scalar phi^2, excluded from the vanishing statement",
        );
    } else {
        let trivially = 2 * l > m;
        report.add_check(
            "phi wedge phi vanishes",
            square.is_zero(),
            if trivially {
                "trivially by degree"
            } else {
                "nontrivial degree range"
            },
        );
    }

    if l % 2 == 1 {
        report.add_check("odd loop number forces phi = 0", phi.is_zero(), "");
        report.add_check("odd loop number forces alpha = 0", alpha.is_zero(), "");
    }
    if g.has_self_loop() {
        report.add_check("self-loop forces phi = 0", phi.is_zero(), "");
        report.add_check("self-loop forces alpha = 0", alpha.is_zero(), "");
    }

    report.add_check(
        "phi homogeneity weight is zero",
        phi.homogeneity_weight() == Some(0),
        format!("weight {:?}", phi.homogeneity_weight()),
    );
    report.add_check(
        "alpha homogeneity weight is zero",
        alpha.homogeneity_weight() == Some(0),
        format!("weight {:?}", alpha.homogeneity_weight()),
    );
    report
}
