//! Mechanical verification of the factor-structure, path-deletion, coverage
//! and distinct-eigenvalue bounds on constructed and sampled instances, plus
//! multiplicity-list screening and the infeasibility certificate for the
//! worked 10-vertex counterexample.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exactpoly::{count_real_roots, isolate_real_roots, refine_interval, Interval, Poly, PolyError, Rational};
use crate::graphs::{
    self, figure14_graph, figure2_tree, max_coverage_by_k_paths, max_coverage_dp,
    path_cover_number, random_path_family, random_tree, Figure14, Graph, GraphError, PathFamily,
    Tree, Whirl,
};
use crate::polymatrix::{MatError, PolyMatrix};
use crate::rngutil::{rng_index, rng_range};
use crate::spectra::{
    eigen_structure, planted_spectrum_matrix, sample_s, twin_pendant_fixture, EigenStructure,
    EntryPool, RatSymMatrix, SpectraError,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditError {
    Precondition(String),
    /// The audited instance is not in the family the bound targets.
    FamilyMismatch(String),
    MalformedStep(String),
    /// A deduction step claims more than the licensed arithmetic allows.
    UnlicensedStep(String),
    SigmaShape(String),
    /// The derived trace constraint cannot be evaluated on the supplied
    /// symmetric-function data.
    NotEvaluable(String),
    UnknownClaim(String),
    Graph(GraphError),
    Spectra(SpectraError),
    Mat(MatError),
    Poly(PolyError),
}

impl fmt::Display for AuditError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditError::Precondition(s) => write!(f, "precondition failed: {s}"),
            AuditError::FamilyMismatch(s) => write!(f, "family mismatch: {s}"),
            AuditError::MalformedStep(s) => write!(f, "malformed deduction step: {s}"),
            AuditError::UnlicensedStep(s) => write!(f, "unlicensed deduction step: {s}"),
            AuditError::SigmaShape(s) => write!(f, "sigma shape mismatch: {s}"),
            AuditError::NotEvaluable(s) => write!(f, "constraint not evaluable: {s}"),
            AuditError::UnknownClaim(s) => write!(f, "unknown claim id: {s}"),
            AuditError::Graph(e) => write!(f, "{e}"),
            AuditError::Spectra(e) => write!(f, "{e}"),
            AuditError::Mat(e) => write!(f, "{e}"),
            AuditError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for AuditError {}

impl From<GraphError> for AuditError {
    fn from(e: GraphError) -> Self {
        AuditError::Graph(e)
    }
}

impl From<SpectraError> for AuditError {
    fn from(e: SpectraError) -> Self {
        AuditError::Spectra(e)
    }
}

impl From<MatError> for AuditError {
    fn from(e: MatError) -> Self {
        AuditError::Mat(e)
    }
}

impl From<PolyError> for AuditError {
    fn from(e: PolyError) -> Self {
        AuditError::Poly(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub instance: String,
    pub expected: String,
    pub observed: String,
}

/// Outcome of checking one claim over some number of instances; passed
/// exactly when no violation was recorded.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub claim: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn new(claim: impl Into<String>) -> Self {
        AuditReport {
            claim: claim.into(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, instance: &str, expected: &str, observed: &str, ok: bool) {
        if !ok {
            self.violations.push(Violation {
                instance: instance.to_string(),
                expected: expected.to_string(),
                observed: observed.to_string(),
            });
        }
    }

    pub fn absorb(&mut self, other: AuditReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

// ---------------------------------------------------------------------------
// Factor structure of determinantal divisors and invariant factors
// ---------------------------------------------------------------------------

/// Checks the full factor placement for every multiplicity group (g, m) of a
/// symmetric matrix: no root of g divides Delta_k or e_k for k <= n-m; for
/// k > n-m, g^(k-n+m) divides Delta_k exactly and g divides e_k exactly once;
/// and e_(n-k) is the product of the group factors with multiplicity above k.
pub fn audit_factor_structure(a: &RatSymMatrix) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("factor-structure");
    let n = a.n();
    let s = eigen_structure(a);
    let snf = a.characteristic_matrix().smith_normal_form()?;
    let e = |i: usize| -> Poly {
        if i == 0 {
            Poly::one()
        } else {
            snf.invariant_factors[i - 1].clone()
        }
    };
    let mut deltas = Vec::with_capacity(n + 1);
    deltas.push(Poly::one());
    for k in 1..=n {
        deltas.push(snf.determinantal_divisor(k)?);
    }
    for (g, m) in &s.factors {
        for k in 1..=n {
            let inst = format!("factor {g} (mult {m}), k={k}");
            if k <= n - m {
                let d_ok = Poly::gcd(g, &deltas[k])?.is_constant();
                report.check(&inst, "no root of g divides Delta_k", "a root divides", d_ok);
                let e_ok = Poly::gcd(g, &e(k))?.is_constant();
                report.check(&inst, "no root of g divides e_k", "a root divides", e_ok);
            } else {
                let exp = k - (n - m);
                let power = g.pow(exp);
                let divides = power.divides(&deltas[k]);
                report.check(&inst, "g^(k-n+m) divides Delta_k", "does not divide", divides);
                if divides {
                    let quotient = deltas[k].exact_div(&power)?;
                    let exact = Poly::gcd(&quotient, g)?.is_constant();
                    report.check(&inst, "g^(k-n+m) exactly divides Delta_k", "higher power divides", exact);
                }
                let lin = g.divides(&e(k));
                report.check(&inst, "g divides e_k", "does not divide", lin);
                if lin {
                    let quotient = e(k).exact_div(g)?;
                    let once = Poly::gcd(&quotient, g)?.is_constant();
                    report.check(&inst, "g is a linear-type factor of e_k (exactly once)", "divides twice", once);
                }
            }
        }
    }
    for k in 0..n {
        let mut expected = Poly::one();
        for (g, m) in &s.factors {
            if *m > k {
                expected = &expected * g;
            }
        }
        let inst = format!("e_(n-k) product form, k={k}");
        let got = e(n - k);
        report.check(
            &inst,
            &format!("{expected}"),
            &format!("{got}"),
            got == expected,
        );
    }
    report.checked = 1;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Submatrix determinant identity
// ---------------------------------------------------------------------------

/// Off-diagonal nonzero pattern of a symmetric polynomial matrix as a graph.
fn pattern_graph(m: &PolyMatrix) -> Result<Graph, AuditError> {
    if !m.is_symmetric() {
        return Err(AuditError::Precondition(String::from(
            "matrix must be symmetric",
        )));
    }
    let n = m.rows();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !m.get(i, j).is_zero() {
                edges.push(((i + 1) as u32, (j + 1) as u32));
            }
        }
    }
    Ok(Graph::new(n, edges)?)
}

/// Verifies `det M({j_s},{i_s}) = +/- prod wt(P_(i_s -> j_s)) * det M[rest]`
/// by computing both sides independently; the undetermined sign is resolved
/// per instance and exactly one of the two signs must match.
pub fn audit_submatrix_identity(
    m: &PolyMatrix,
    tree: &Tree,
    family: &PathFamily,
) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("submatrix-identity");
    if pattern_graph(m)? != *tree.as_graph() {
        return Err(AuditError::Precondition(String::from(
            "matrix pattern is not the given tree",
        )));
    }
    let family = PathFamily::new(tree.as_graph(), family.paths().to_vec())?;
    let mut delete_rows = Vec::new();
    let mut delete_cols = Vec::new();
    let mut weight = Poly::one();
    for path in family.paths() {
        let i_s = path[0];
        let j_s = *path.last().unwrap();
        delete_cols.push((i_s - 1) as usize);
        delete_rows.push((j_s - 1) as usize);
        for w in path.windows(2) {
            weight = &weight * m.get((w[0] - 1) as usize, (w[1] - 1) as usize);
        }
    }
    let lhs = m.submatrix(&delete_rows, &delete_cols)?.det()?;
    let covered = family.covered();
    let rest: Vec<usize> = (1..=tree.n() as u32)
        .filter(|v| !covered.contains(v))
        .map(|v| (v - 1) as usize)
        .collect();
    let rhs = &weight * &m.principal_submatrix(&rest)?.det()?;
    let plus = lhs == rhs;
    let minus = lhs == -&rhs;
    report.check(
        &format!("paths {:?}", family.paths()),
        "lhs = +rhs or lhs = -rhs",
        &format!("lhs {lhs}, rhs {rhs}"),
        plus || minus,
    );
    report.checked = 1;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Path deletion and coverage count bounds
// ---------------------------------------------------------------------------

/// Minimum multiplicity among the roots of the square-free g inside the
/// eigen structure `sub`; 0 when some root of g is not an eigenvalue at all.
fn min_multiplicity_of_roots(g: &Poly, sub: &EigenStructure) -> Result<usize, AuditError> {
    let mut total = 0usize;
    let mut min_mult = usize::MAX;
    for (h, j) in &sub.factors {
        let shared = Poly::gcd(g, h)?;
        if let Some(d) = shared.degree() {
            if d > 0 {
                total += d;
                min_mult = min_mult.min(*j);
            }
        }
    }
    if total < g.degree().unwrap_or(0) {
        return Ok(0);
    }
    Ok(if min_mult == usize::MAX { 0 } else { min_mult })
}

/// For k deleted disjoint paths: every multiplicity group (g, m) with
/// m >= k+1 must divide the charpoly of the remaining principal submatrix to
/// the power m-k (checked directly and via the submatrix eigen structure),
/// and deg Delta_(n-k) <= #uncovered.
pub fn audit_path_deletion(
    a: &RatSymMatrix,
    tree: &Tree,
    family: &PathFamily,
) -> Result<AuditReport, AuditError> {
    if !a.member_of_s(tree.as_graph())? {
        return Err(AuditError::Precondition(String::from(
            "matrix is not in S(tree)",
        )));
    }
    let family = PathFamily::new(tree.as_graph(), family.paths().to_vec())?;
    let mut report = AuditReport::new("path-deletion");
    let k = family.len();
    let covered = family.covered();
    let rest: Vec<u32> = tree.vertices().filter(|v| !covered.contains(v)).collect();
    let t = rest.len();
    let sub = a.principal_submatrix(&rest)?;
    let sub_charpoly = sub.charpoly();
    let s = eigen_structure(a);
    for (g, m) in &s.factors {
        if *m < k + 1 {
            continue;
        }
        let inst = format!("factor {g} (mult {m}), {k} paths");
        let power = g.pow(m - k);
        report.check(
            &inst,
            "g^(m-k) divides charpoly of the remaining block",
            &format!("{sub_charpoly}"),
            power.divides(&sub_charpoly),
        );
        // independent route through the submatrix eigen structure
        let sub_structure = eigen_structure(&sub);
        let min_mult = min_multiplicity_of_roots(g, &sub_structure)?;
        report.check(
            &inst,
            &format!("every root of g has multiplicity >= {} in the block", m - k),
            &format!("minimum multiplicity {min_mult}"),
            min_mult >= m - k,
        );
    }
    let n = a.n();
    if k < n {
        let snf = a.characteristic_matrix().smith_normal_form()?;
        let delta = snf.determinantal_divisor(n - k)?;
        report.check(
            &format!("Delta_(n-k) divides the block charpoly, {k} paths"),
            &format!("{delta} divides {sub_charpoly}"),
            "does not divide",
            delta.divides(&sub_charpoly),
        );
        let deg = delta.degree_or_zero();
        report.check(
            &format!("deg Delta_(n-k), {k} paths, {t} uncovered"),
            &format!("deg <= {t}"),
            &format!("deg = {deg}"),
            delta.is_zero() || deg <= t,
        );
    }
    report.checked = 1;
    Ok(report)
}

/// For each k up to p(T): at most n - maxcov(k) eigenvalues can have
/// multiplicity k+1 or more. The exhaustive coverage maximum is cross-checked
/// against the rooted DP.
pub fn audit_count_bound(
    a: &RatSymMatrix,
    tree: &Tree,
    cap: usize,
) -> Result<AuditReport, AuditError> {
    if !a.member_of_s(tree.as_graph())? {
        return Err(AuditError::Precondition(String::from(
            "matrix is not in S(tree)",
        )));
    }
    let mut report = AuditReport::new("count-bound");
    let s = eigen_structure(a);
    let n = a.n();
    let (p, _) = path_cover_number(tree);
    for k in 1..=p {
        let (cov, _) = max_coverage_by_k_paths(tree, k, cap)?;
        let dp = max_coverage_dp(tree, k);
        assert_eq!(cov, dp, "coverage strategies disagree");
        let t_k = n - cov;
        let observed = s.count_mult_at_least(k + 1);
        report.check(
            &format!("k={k}"),
            &format!("at most {t_k} eigenvalues of multiplicity >= {}", k + 1),
            &format!("{observed}"),
            observed <= t_k,
        );
    }
    report.checked = 1;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Distinct-eigenvalue and maximum-multiplicity bounds
// ---------------------------------------------------------------------------

/// Which inequality to audit for a sampled matrix.
pub enum BoundCheck<'a> {
    /// max multiplicity <= p(T), trees only
    MaxMultLePathCover,
    /// q(A) >= d(T) + 1, trees only
    QGeDiameterPlusOne,
    /// 3-whirl with l >= 2: q(A) >= 9 d / 8 + 1/2
    Whirl52(&'a Whirl),
    /// (k,l)-whirl, k >= 3, l >= 2: q(A) >= d + 1 + (k-2)(l-1)/(k-1)^2
    Whirl54(&'a Whirl),
    /// legged connected graph: q(A) >= 9 l / 4 - 2 m + 15/2
    Graph61(&'a Figure14),
    /// first and last eigenvalue are simple, trees only
    ExtremesSimple,
}

pub fn audit_bounds(
    a: &RatSymMatrix,
    g: &Graph,
    check: &BoundCheck<'_>,
) -> Result<AuditReport, AuditError> {
    if !a.member_of_s(g)? {
        return Err(AuditError::Precondition(String::from("matrix is not in S(g)")));
    }
    let mut report = AuditReport::new("bounds");
    let s = eigen_structure(a);
    let q = s.q as i64;
    match check {
        BoundCheck::MaxMultLePathCover => {
            let tree = Tree::new(g.clone())
                .map_err(|_| AuditError::FamilyMismatch(String::from("expected a tree")))?;
            let (p, _) = path_cover_number(&tree);
            let m = s.max_multiplicity();
            report.check("M <= p", &format!("max mult <= {p}"), &format!("{m}"), m <= p);
        }
        BoundCheck::QGeDiameterPlusOne => {
            if !g.is_tree() {
                return Err(AuditError::FamilyMismatch(String::from("expected a tree")));
            }
            let d = g.diameter()? as i64;
            report.check("q >= d+1", &format!("q >= {}", d + 1), &format!("{q}"), q >= d + 1);
        }
        BoundCheck::Whirl52(w) => {
            if w.k != 3 || w.ell < 2 {
                return Err(AuditError::FamilyMismatch(format!(
                    "expected a (3,l)-whirl with l >= 2, got ({},{})",
                    w.k, w.ell
                )));
            }
            if g != w.tree.as_graph() {
                return Err(AuditError::FamilyMismatch(String::from("graph is not the given whirl")));
            }
            let d = g.diameter()? as i64;
            report.check(
                "q >= 9d/8 + 1/2",
                &format!("8q >= {}", 9 * d + 4),
                &format!("8q = {}", 8 * q),
                8 * q >= 9 * d + 4,
            );
        }
        BoundCheck::Whirl54(w) => {
            if w.k < 3 || w.ell < 2 {
                return Err(AuditError::FamilyMismatch(format!(
                    "expected a (k,l)-whirl with k >= 3 and l >= 2, got ({},{})",
                    w.k, w.ell
                )));
            }
            if g != w.tree.as_graph() {
                return Err(AuditError::FamilyMismatch(String::from("graph is not the given whirl")));
            }
            let d = g.diameter()? as i64;
            let k = w.k as i64;
            let ell = w.ell as i64;
            let lhs = (k - 1) * (k - 1) * (q - d - 1);
            let rhs = (k - 2) * (ell - 1);
            report.check(
                "q >= d+1+(k-2)(l-1)/(k-1)^2",
                &format!("(k-1)^2 (q-d-1) >= {rhs}"),
                &format!("{lhs}"),
                lhs >= rhs,
            );
        }
        BoundCheck::Graph61(fig) => {
            if g != &fig.graph {
                return Err(AuditError::FamilyMismatch(String::from(
                    "graph is not the given legged instance",
                )));
            }
            let ell = fig.ell as i64;
            let m = fig.m as i64;
            report.check(
                "q >= 9l/4 - 2m + 15/2",
                &format!("4q >= {}", 9 * ell - 8 * m + 30),
                &format!("4q = {}", 4 * q),
                4 * q >= 9 * ell - 8 * m + 30,
            );
        }
        BoundCheck::ExtremesSimple => {
            if !g.is_tree() {
                return Err(AuditError::FamilyMismatch(String::from("expected a tree")));
            }
            let first = s.groups.first().map_or(0, |gr| gr.multiplicity);
            let last = s.groups.last().map_or(0, |gr| gr.multiplicity);
            report.check(
                "extreme eigenvalues simple",
                "multiplicity 1 at both ends",
                &format!("first {first}, last {last}"),
                first == 1 && last == 1,
            );
        }
    }
    report.checked = 1;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Whirl multiplicity lemma
// ---------------------------------------------------------------------------

/// Multiplicity-1 factor of a polynomial (1 when all roots repeat).
fn simple_part(p: &Poly) -> Result<Poly, AuditError> {
    if p.is_constant() {
        return Ok(Poly::one());
    }
    for (g, m) in p.squarefree_decomposition()? {
        if m == 1 {
            return Ok(g);
        }
    }
    Ok(Poly::one())
}

/// Parts (a)-(d) of the generalized-whirl multiplicity lemma for a sampled
/// matrix on a (k,l)-whirl.
pub fn audit_whirl_lemma(a: &RatSymMatrix, w: &Whirl) -> Result<AuditReport, AuditError> {
    if !a.member_of_s(w.tree.as_graph())? {
        return Err(AuditError::Precondition(String::from(
            "matrix is not in S(whirl)",
        )));
    }
    let mut report = AuditReport::new("whirl-lemma");
    let s = eigen_structure(a);
    let k = w.k;
    let n = a.n();
    let count_exact =
        |j: usize| -> usize { s.groups.iter().filter(|g| g.multiplicity == j).count() };
    let n_k = count_exact(k);
    let n_k1 = count_exact(k + 1);
    report.check(
        "(a) top multiplicity",
        "n_(k+1) <= 1 and none above k+1",
        &format!("n_(k+1) = {n_k1}, max = {}", s.max_multiplicity()),
        n_k1 <= 1 && s.max_multiplicity() <= k + 1,
    );
    let leg_charpolys: Vec<Poly> = w
        .legs
        .iter()
        .map(|leg| a.principal_submatrix(leg).map(|m| m.charpoly()))
        .collect::<Result<_, _>>()?;
    if let Some(g) = s.factor_of_multiplicity(k + 1) {
        for (li, cp) in leg_charpolys.iter().enumerate() {
            let divides = g.divides(cp);
            let once = divides && Poly::gcd(&cp.exact_div(g)?, g)?.is_constant();
            report.check(
                &format!("(b) leg {li}"),
                "multiplicity-(k+1) factor divides the leg charpoly exactly once",
                &format!("{cp}"),
                divides && once,
            );
        }
    }
    if let Some(g) = s.factor_of_multiplicity(k) {
        let simples: Vec<Poly> = leg_charpolys
            .iter()
            .map(simple_part)
            .collect::<Result<_, _>>()?;
        for i in 0..2 * k {
            for j in i + 1..2 * k {
                if i / 2 == j / 2 {
                    // same spoke: the lemma only constrains legs on distinct spokes
                    continue;
                }
                let product = &simples[i] * &simples[j];
                report.check(
                    &format!("(c) legs {i},{j}"),
                    "each multiplicity-k root is simple in at least one leg of the pair",
                    &format!("{product}"),
                    g.divides(&product),
                );
            }
        }
    }
    let lhs = (2 * k - 2) * n_k + 2 * k * n_k1;
    report.check(
        "(d) leg capacity",
        &format!("(2k-2) n_k + 2k n_(k+1) <= {}", n - (k + 1)),
        &format!("{lhs}"),
        lhs <= n - (k + 1),
    );
    report.checked = 1;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Multiplicity-list screening
// ---------------------------------------------------------------------------

/// Necessary conditions for a multiplicity multiset on a tree; the first
/// violated condition is reported.
pub fn screen_multiplicity_list(
    t: &Tree,
    mults: &[usize],
    cap: usize,
) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("screen");
    report.checked = 1;
    let n = t.n();
    let total: usize = mults.iter().sum();
    if total != n {
        report.check("sum", &format!("multiplicities sum to {n}"), &format!("{total}"), false);
        return Ok(report);
    }
    let max = mults.iter().copied().max().unwrap_or(0);
    let (p, _) = path_cover_number(t);
    if max > p {
        report.check("max multiplicity", &format!("<= p = {p}"), &format!("{max}"), false);
        return Ok(report);
    }
    let d = t.diameter()?;
    if mults.len() < d + 1 {
        report.check(
            "distinct count",
            &format!(">= d+1 = {}", d + 1),
            &format!("{}", mults.len()),
            false,
        );
        return Ok(report);
    }
    for k in 1..=p {
        let (cov, _) = max_coverage_by_k_paths(t, k, cap)?;
        let t_k = n - cov;
        let count = mults.iter().filter(|&&m| m >= k + 1).count();
        if count > t_k {
            report.check(
                &format!("coverage bound k={k}"),
                &format!("at most {t_k} entries of multiplicity >= {}", k + 1),
                &format!("{count}"),
                false,
            );
            return Ok(report);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// The worked counterexample's certificate
// ---------------------------------------------------------------------------

/// One claimed eigenvalue membership derived from a path deletion.
#[derive(Debug, Clone)]
pub struct Membership {
    /// Eigenvalue tag 1..=5 (lambda_1 < ... < lambda_5).
    pub tag: usize,
    /// Target block: must be a connected component of the uncovered set.
    pub target: BTreeSet<u32>,
    pub min_mult: usize,
}

/// A deduction step: delete the family, observe the remaining vertices, and
/// claim memberships licensed by the multiplicity arithmetic.
#[derive(Debug, Clone)]
pub struct DeductionStep {
    pub paths: Vec<Vec<u32>>,
    pub remaining: BTreeSet<u32>,
    pub asserted: Vec<Membership>,
}

/// Spectrum data for the certificate: ten explicit rationals, or the
/// per-multiplicity square-free factors (supporting irrational spectra whose
/// relevant symmetric functions are rational).
#[derive(Debug, Clone)]
pub enum SpectrumData {
    Explicit(Vec<Rational>),
    /// multiplicity -> monic square-free factor carrying those eigenvalues
    Grouped(BTreeMap<usize, Poly>),
}

/// Ordered multiplicity list the certificate is about.
const EX36_MULTS: [usize; 5] = [1, 2, 4, 2, 1];

fn step(paths: &[&[u32]], remaining: &[u32], asserted: &[(usize, &[u32], usize)]) -> DeductionStep {
    DeductionStep {
        paths: paths.iter().map(|p| p.to_vec()).collect(),
        remaining: remaining.iter().copied().collect(),
        asserted: asserted
            .iter()
            .map(|(tag, target, min_mult)| Membership {
                tag: *tag,
                target: target.iter().copied().collect(),
                min_mult: *min_mult,
            })
            .collect(),
    }
}

/// The built-in deduction scenarios: three-path families pinning each
/// single vertex to lambda_3, the three-block families pinning lambda_3, and
/// single-path families forcing lambda_2 and lambda_4 into each 3-block.
pub fn example36_builtin_steps() -> Vec<DeductionStep> {
    vec![
        // each singleton pinned to lambda_3 (m=4, k=3 paths)
        step(&[&[4, 1, 5], &[7, 2, 8], &[10, 3, 9]], &[6], &[(3, &[6], 1)]),
        step(&[&[4, 1, 6, 2, 7], &[10, 3, 9], &[8]], &[5], &[(3, &[5], 1)]),
        step(&[&[5, 1, 6, 2, 7], &[10, 3, 9], &[8]], &[4], &[(3, &[4], 1)]),
        step(&[&[4, 1, 6, 2, 8], &[10, 3, 9], &[5]], &[7], &[(3, &[7], 1)]),
        step(&[&[4, 1, 6, 2, 7], &[10, 3, 9], &[5]], &[8], &[(3, &[8], 1)]),
        step(&[&[4, 1, 6, 3, 10], &[7, 2, 8], &[5]], &[9], &[(3, &[9], 1)]),
        step(&[&[4, 1, 6, 3, 9], &[7, 2, 8], &[5]], &[10], &[(3, &[10], 1)]),
        // lambda_3 lands in each 3-vertex block
        step(
            &[&[7, 2, 6, 3, 10], &[8], &[9]],
            &[4, 1, 5],
            &[(3, &[4, 1, 5], 1)],
        ),
        step(
            &[&[4, 1, 6, 3, 10], &[5], &[9]],
            &[7, 2, 8],
            &[(3, &[7, 2, 8], 1)],
        ),
        step(
            &[&[4, 1, 6, 2, 7], &[5], &[8]],
            &[10, 3, 9],
            &[(3, &[10, 3, 9], 1)],
        ),
        // single long paths force the multiplicity-2 pair into each block,
        // using the already-pinned singletons
        step(
            &[&[7, 2, 6, 3, 10]],
            &[4, 1, 5, 8, 9],
            &[(2, &[4, 1, 5], 1), (4, &[4, 1, 5], 1)],
        ),
        step(
            &[&[4, 1, 6, 3, 10]],
            &[5, 7, 2, 8, 9],
            &[(2, &[7, 2, 8], 1), (4, &[7, 2, 8], 1)],
        ),
        step(
            &[&[4, 1, 6, 2, 7]],
            &[5, 8, 10, 3, 9],
            &[(2, &[10, 3, 9], 1), (4, &[10, 3, 9], 1)],
        ),
    ]
}

/// Validates the deduction chain on the 10-vertex tree and evaluates the
/// derived trace constraint on the supplied spectrum data. Each step must be
/// licensed: the paths disjoint in the tree, the remaining set the exact
/// complement, and every membership claim justified by the multiplicity
/// arithmetic plus the blocks already pinned.
pub fn example36_certificate(
    steps: &[DeductionStep],
    sigma: &SpectrumData,
) -> Result<AuditReport, AuditError> {
    let tree = figure2_tree();
    let all: BTreeSet<u32> = tree.vertices().collect();
    let mut report = AuditReport::new("ex-3.6");
    // forced minimum multiplicities and exactly-pinned blocks
    let mut forced: BTreeMap<BTreeSet<u32>, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut pinned: BTreeMap<BTreeSet<u32>, BTreeMap<usize, usize>> = BTreeMap::new();
    for (si, step) in steps.iter().enumerate() {
        let family = PathFamily::new(tree.as_graph(), step.paths.clone())
            .map_err(|e| AuditError::MalformedStep(format!("step {si}: {e}")))?;
        let covered = family.covered();
        let complement: BTreeSet<u32> = all.difference(&covered).copied().collect();
        if complement != step.remaining {
            return Err(AuditError::MalformedStep(format!(
                "step {si}: remaining set is not the complement of the covered vertices"
            )));
        }
        let (rest_graph, labels) = tree.as_graph().induced(&step.remaining)?;
        let comps: Vec<BTreeSet<u32>> = rest_graph
            .connected_components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| labels[(v - 1) as usize]).collect())
            .collect();
        let k = family.len();
        for claim in &step.asserted {
            if claim.tag == 0 || claim.tag > 5 {
                return Err(AuditError::MalformedStep(format!(
                    "step {si}: eigenvalue tag {} out of range",
                    claim.tag
                )));
            }
            if !comps.contains(&claim.target) {
                return Err(AuditError::MalformedStep(format!(
                    "step {si}: target block is not a component of the remainder"
                )));
            }
            let m = EX36_MULTS[claim.tag - 1];
            if m < k + 1 {
                return Err(AuditError::UnlicensedStep(format!(
                    "step {si}: multiplicity {m} needs at least {} for {k} paths",
                    k + 1
                )));
            }
            let base = m - k;
            // other components can absorb at most their pinned count of this
            // tag, or their own maximum-multiplicity bound when unpinned
            let mut absorbed = 0usize;
            for comp in &comps {
                if comp == &claim.target {
                    continue;
                }
                if let Some(pin) = pinned.get(comp) {
                    absorbed += pin.get(&claim.tag).copied().unwrap_or(0);
                } else {
                    let (comp_graph, _) = tree.as_graph().induced(comp)?;
                    let comp_tree = Tree::new(comp_graph)
                        .expect("tree minus paths leaves subtree components");
                    let (p_comp, _) = path_cover_number(&comp_tree);
                    absorbed += comp.len().min(p_comp);
                }
            }
            let licensed = base.saturating_sub(absorbed);
            if claim.min_mult > licensed {
                return Err(AuditError::UnlicensedStep(format!(
                    "step {si}: claims multiplicity {} of lambda_{} in {:?} but only {licensed} is licensed",
                    claim.min_mult, claim.tag, claim.target
                )));
            }
            let entry = forced.entry(claim.target.clone()).or_default();
            let slot = entry.entry(claim.tag).or_insert(0);
            *slot = (*slot).max(claim.min_mult);
        }
        // pin blocks whose forced multiplicities exhaust their size
        for (block, tags) in &forced {
            let total: usize = tags.values().sum();
            if total == block.len() && !pinned.contains_key(block) {
                pinned.insert(block.clone(), tags.clone());
            }
        }
    }
    // a partition of the vertex set into pinned blocks drives the trace
    let blocks: Vec<&BTreeSet<u32>> = pinned.keys().collect();
    let partition = find_exact_cover(&all, &blocks).ok_or_else(|| {
        AuditError::MalformedStep(String::from(
            "pinned blocks do not contain a partition of the vertex set",
        ))
    })?;
    // trace identity at the tag level: sum over the full matrix minus the sum
    // over the pinned partition leaves a linear constraint on the lambdas
    let mut constraint: [i64; 5] = [0; 5];
    for (tag, c) in constraint.iter_mut().enumerate() {
        *c = EX36_MULTS[tag] as i64;
    }
    for &bi in &partition {
        for (tag, mult) in &pinned[blocks[bi]] {
            constraint[tag - 1] -= *mult as i64;
        }
    }
    let value = evaluate_constraint(&constraint, sigma)?;
    report.check(
        "trace consistency",
        "lambda_1 + lambda_5 = lambda_2 + lambda_4 (derived constraint = 0)",
        &format!("constraint value {value}"),
        value.is_zero(),
    );
    report.checked = 1;
    Ok(report)
}

/// DFS exact cover over the candidate blocks; returns indices into `blocks`.
fn find_exact_cover(universe: &BTreeSet<u32>, blocks: &[&BTreeSet<u32>]) -> Option<Vec<usize>> {
    fn go(
        rest: BTreeSet<u32>,
        blocks: &[&BTreeSet<u32>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let Some(&lowest) = rest.iter().next() else {
            return true;
        };
        for (bi, block) in blocks.iter().enumerate() {
            if !block.contains(&lowest) || !block.is_subset(&rest) {
                continue;
            }
            let next: BTreeSet<u32> = rest.difference(block).copied().collect();
            chosen.push(bi);
            if go(next, blocks, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    if go(universe.clone(), blocks, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

/// Evaluates sum c_j lambda_j on the spectrum data, exactly.
fn evaluate_constraint(c: &[i64; 5], sigma: &SpectrumData) -> Result<Rational, AuditError> {
    match sigma {
        SpectrumData::Explicit(values) => {
            if values.len() != 10 {
                return Err(AuditError::SigmaShape(format!(
                    "expected 10 values, got {}",
                    values.len()
                )));
            }
            let mut sorted = values.clone();
            sorted.sort();
            let mut groups: Vec<(Rational, usize)> = Vec::new();
            for v in sorted {
                match groups.last_mut() {
                    Some((val, count)) if *val == v => *count += 1,
                    _ => groups.push((v, 1)),
                }
            }
            let observed: Vec<usize> = groups.iter().map(|(_, c)| *c).collect();
            if observed != EX36_MULTS {
                return Err(AuditError::SigmaShape(format!(
                    "ordered multiplicity list {observed:?} != {EX36_MULTS:?}"
                )));
            }
            let mut acc = Rational::zero();
            for (tag, (value, _)) in groups.iter().enumerate() {
                acc += &(Rational::from_int(c[tag]) * value);
            }
            Ok(acc)
        }
        SpectrumData::Grouped(factors) => {
            // shape: for each multiplicity m, the factor degree must equal the
            // number of tags carrying m
            let mut expected_deg: BTreeMap<usize, usize> = BTreeMap::new();
            for m in EX36_MULTS {
                *expected_deg.entry(m).or_insert(0) += 1;
            }
            if factors.keys().copied().collect::<Vec<_>>()
                != expected_deg.keys().copied().collect::<Vec<_>>()
            {
                return Err(AuditError::SigmaShape(format!(
                    "multiplicities {:?} do not match {EX36_MULTS:?}",
                    factors.keys().collect::<Vec<_>>()
                )));
            }
            for (m, f) in factors {
                let want = expected_deg[m];
                if f.degree() != Some(want) {
                    return Err(AuditError::SigmaShape(format!(
                        "factor for multiplicity {m} must have degree {want}"
                    )));
                }
                if count_real_roots(f).map_err(AuditError::Poly)? != want {
                    return Err(AuditError::SigmaShape(format!(
                        "factor for multiplicity {m} must have all roots real and distinct"
                    )));
                }
            }
            let keys: Vec<usize> = factors.keys().copied().collect();
            for (ai, &ka) in keys.iter().enumerate() {
                for &kb in keys.iter().skip(ai + 1) {
                    if !Poly::gcd(&factors[&ka], &factors[&kb])
                        .map_err(AuditError::Poly)?
                        .is_constant()
                    {
                        return Err(AuditError::SigmaShape(String::from(
                            "factors must be pairwise coprime",
                        )));
                    }
                }
            }
            // order all roots and check the multiplicity pattern comes out as
            // <1,2,4,2,1>
            let mut roots: Vec<(Interval, usize)> = Vec::new();
            for (m, f) in factors {
                for iv in isolate_real_roots(f).map_err(AuditError::Poly)? {
                    roots.push((iv, *m));
                }
            }
            loop {
                roots.sort_by(|(a, _), (b, _)| a.lo().cmp(b.lo()).then_with(|| a.hi().cmp(b.hi())));
                let clash = (0..roots.len().saturating_sub(1))
                    .find(|&i| roots[i].0.touches(&roots[i + 1].0));
                match clash {
                    None => break,
                    Some(i) => {
                        for idx in [i, i + 1] {
                            let m = roots[idx].1;
                            roots[idx].0 = refine_interval(&factors[&m], &roots[idx].0);
                        }
                    }
                }
            }
            let pattern: Vec<usize> = roots.iter().map(|(_, m)| *m).collect();
            if pattern != EX36_MULTS {
                return Err(AuditError::SigmaShape(format!(
                    "ordered multiplicity list {pattern:?} != {EX36_MULTS:?}"
                )));
            }
            // evaluable iff within each factor all tags share one coefficient;
            // the factor's root sum is then rational by Vieta
            let mut acc = Rational::zero();
            for (m, f) in factors {
                let tags: Vec<usize> = (0..5).filter(|&t| EX36_MULTS[t] == *m).collect();
                let coeff = c[tags[0]];
                if tags.iter().any(|&t| c[t] != coeff) {
                    return Err(AuditError::NotEvaluable(format!(
                        "tags of multiplicity {m} carry different coefficients"
                    )));
                }
                if coeff == 0 {
                    continue;
                }
                let d = f.degree().unwrap();
                let sum_roots = -(f.coeff(d - 1) / f.coeff(d));
                acc += &(Rational::from_int(coeff) * sum_roots);
            }
            Ok(acc)
        }
    }
}

// ---------------------------------------------------------------------------
// Claim registry
// ---------------------------------------------------------------------------

/// Batch configuration: number of seeded samples per claim, the base seed,
/// the entry pool, and the brute-force size cap.
#[derive(Clone, Copy, Debug)]
pub struct AuditConfig {
    pub seeds: u64,
    pub base_seed: u64,
    pub pool: EntryPool,
    pub exhaustive_cap: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            seeds: 200,
            base_seed: 1,
            pool: EntryPool::default(),
            exhaustive_cap: graphs::DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

/// Claim identifiers runnable through the batch auditor.
pub fn claim_ids() -> &'static [&'static str] {
    &[
        "thm-2.3", "thm-3.3", "cor-3.4", "cor-3.5", "cor-4.1", "thm-5.1", "lem-5.3", "thm-5.2",
        "thm-5.4", "thm-6.1", "ex-3.6",
    ]
}

/// The worked example's acyclic matrix: adjacency matrix of the 10-vertex
/// tree (zero diagonal, unit weights).
pub fn example36_matrix() -> RatSymMatrix {
    RatSymMatrix::adjacency(figure2_tree().as_graph())
}

fn random_planted_pattern(rng: &mut dyn RngCore, max_n: usize) -> Vec<(Rational, usize)> {
    let mut remaining = 3 + rng_index(rng, max_n - 2);
    let mut out: Vec<(Rational, usize)> = Vec::new();
    let mut value = rng_range(rng, -4, 4);
    while remaining > 0 {
        let m = 1 + rng_index(rng, remaining.min(3));
        out.push((Rational::from_int(value), m));
        value += 1 + rng_range(rng, 0, 2);
        remaining -= m;
    }
    out
}

fn random_degree_one_poly(rng: &mut dyn RngCore, pool: EntryPool, nonzero: bool) -> Poly {
    loop {
        let c0 = rng_range(rng, pool.lo, pool.hi);
        let c1 = rng_range(rng, pool.lo, pool.hi);
        let p = Poly::from_ints(&[c0, c1]);
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

/// Random symmetric polynomial matrix whose off-diagonal pattern is exactly
/// the tree (degree <= 1 entries).
fn random_acyclic_polymatrix(t: &Tree, rng: &mut dyn RngCore, pool: EntryPool) -> PolyMatrix {
    let n = t.n();
    let mut m = PolyMatrix::zero(n, n);
    for &(u, v) in t.edges() {
        let p = random_degree_one_poly(rng, pool, true);
        m.set((u - 1) as usize, (v - 1) as usize, p.clone());
        m.set((v - 1) as usize, (u - 1) as usize, p);
    }
    for i in 0..n {
        m.set(i, i, random_degree_one_poly(rng, pool, false));
    }
    m
}

fn claim_thm_2_3(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("thm-2.3");
    report.absorb(audit_factor_structure(&example36_matrix())?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.base_seed);
    let instances = (cfg.seeds / 2).max(1);
    for i in 0..instances {
        let planted = random_planted_pattern(&mut rng, 6);
        let a = planted_spectrum_matrix(&planted, cfg.base_seed.wrapping_add(i), cfg.pool)?;
        report.absorb(audit_factor_structure(&a)?);
    }
    Ok(report)
}

fn claim_thm_3_3(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("thm-3.3");
    for i in 0..cfg.seeds.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.base_seed.wrapping_add(i));
        let n = 2 + rng_index(&mut rng, 8);
        let t = random_tree(n, &mut rng);
        let m = random_acyclic_polymatrix(&t, &mut rng, cfg.pool);
        let k = 1 + rng_index(&mut rng, n.min(3));
        let family = random_path_family(&t, k, &mut rng);
        report.absorb(audit_submatrix_identity(&m, &t, &family)?);
    }
    Ok(report)
}

fn claim_cor_3_4(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("cor-3.4");
    let a = example36_matrix();
    let tree = figure2_tree();
    let figure3 = PathFamily::new(
        tree.as_graph(),
        vec![vec![4, 1, 5], vec![7, 2, 8], vec![10, 3, 9]],
    )?;
    report.absorb(audit_path_deletion(&a, &tree, &figure3)?);
    let figure5 = PathFamily::new(
        tree.as_graph(),
        vec![vec![7, 2, 6, 3, 10], vec![8], vec![9]],
    )?;
    report.absorb(audit_path_deletion(&a, &tree, &figure5)?);
    for i in 0..cfg.seeds.max(1) {
        let seed = cfg.base_seed.wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
        let base_n = 4 + rng_index(&mut rng, 4);
        let (t, m, _) = twin_pendant_fixture(base_n, seed, cfg.pool);
        let k = 1 + rng_index(&mut rng, 2);
        let family = random_path_family(&t, k, &mut rng);
        report.absorb(audit_path_deletion(&m, &t, &family)?);
    }
    Ok(report)
}

fn claim_cor_3_5(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("cor-3.5");
    // the worked instance: three paths leave exactly one vertex, so exactly
    // one eigenvalue of multiplicity 4 is allowed (and realized)
    let a = example36_matrix();
    let tree = figure2_tree();
    let (cov, _) = max_coverage_by_k_paths(&tree, 3, cfg.exhaustive_cap)?;
    let t3 = tree.n() - cov;
    let s = eigen_structure(&a);
    report.check(
        "worked example, k=3",
        "t = 1 and exactly one eigenvalue of multiplicity >= 4",
        &format!("t = {t3}, count = {}", s.count_mult_at_least(4)),
        t3 == 1 && s.count_mult_at_least(4) == 1,
    );
    report.checked += 1;
    report.absorb(audit_count_bound(&a, &tree, cfg.exhaustive_cap)?);
    for i in 0..cfg.seeds.max(1) {
        let seed = cfg.base_seed.wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3c6e);
        let base_n = 4 + rng_index(&mut rng, 5);
        let (t, m, _) = twin_pendant_fixture(base_n, seed, cfg.pool);
        report.absorb(audit_count_bound(&m, &t, cfg.exhaustive_cap)?);
    }
    Ok(report)
}

fn claim_cor_4_1(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("cor-4.1");
    let tree = figure2_tree();
    report.absorb(audit_bounds(
        &example36_matrix(),
        tree.as_graph(),
        &BoundCheck::MaxMultLePathCover,
    )?);
    for i in 0..cfg.seeds.max(1) {
        let seed = cfg.base_seed.wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51f1);
        if i % 2 == 0 {
            let n = 3 + rng_index(&mut rng, 8);
            let t = random_tree(n, &mut rng);
            let a = sample_s(t.as_graph(), seed, cfg.pool);
            report.absorb(audit_bounds(&a, t.as_graph(), &BoundCheck::MaxMultLePathCover)?);
        } else {
            let base_n = 4 + rng_index(&mut rng, 5);
            let (t, a, _) = twin_pendant_fixture(base_n, seed, cfg.pool);
            report.absorb(audit_bounds(&a, t.as_graph(), &BoundCheck::MaxMultLePathCover)?);
        }
    }
    Ok(report)
}

fn claim_thm_5_1(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("thm-5.1");
    let trees = 20u64;
    for ti in 0..trees {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.base_seed.wrapping_add(1000 + ti));
        let n = 5 + rng_index(&mut rng, 5);
        let t = random_tree(n, &mut rng);
        let per_tree = (cfg.seeds / trees).max(1);
        for i in 0..per_tree {
            let seed = cfg.base_seed.wrapping_add(ti * 10_000 + i);
            let a = sample_s(t.as_graph(), seed, cfg.pool);
            report.absorb(audit_bounds(&a, t.as_graph(), &BoundCheck::QGeDiameterPlusOne)?);
            report.absorb(audit_bounds(&a, t.as_graph(), &BoundCheck::ExtremesSimple)?);
        }
    }
    Ok(report)
}

fn claim_lem_5_3(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("lem-5.3");
    // the worked matrix sits on a (3,1)-whirl with its eigenvalue 0 at the
    // top multiplicity k+1 = 4, exercising part (b) nontrivially
    let fig2 = figure2_tree();
    let w = Whirl::detect(fig2.as_graph())
        .expect("the 10-vertex example tree is a (3,1)-whirl");
    report.absorb(audit_whirl_lemma(&example36_matrix(), &w)?);
    let w31 = graphs::whirl(3, 1)?;
    let w32 = graphs::whirl(3, 2)?;
    let w42 = graphs::whirl(4, 2)?;
    // adjacency matrices carry genuine multiplicities k and k+1, so parts
    // (b) and (c) are exercised nontrivially
    for w in [&w31, &w32, &w42] {
        let a = RatSymMatrix::adjacency(w.tree.as_graph());
        report.absorb(audit_whirl_lemma(&a, w)?);
    }
    let half = (cfg.seeds / 2).max(1);
    let quarter = (cfg.seeds / 4).max(1);
    for i in 0..half {
        let a = sample_s(w31.tree.as_graph(), cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_whirl_lemma(&a, &w31)?);
    }
    for i in 0..quarter {
        let a = sample_s(w32.tree.as_graph(), cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_whirl_lemma(&a, &w32)?);
    }
    for i in 0..quarter {
        let a = sample_s(w42.tree.as_graph(), cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_whirl_lemma(&a, &w42)?);
    }
    Ok(report)
}

fn claim_thm_5_2(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("thm-5.2");
    let w = graphs::whirl(3, 2)?;
    for i in 0..cfg.seeds.max(1) {
        let a = sample_s(w.tree.as_graph(), cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_bounds(&a, w.tree.as_graph(), &BoundCheck::Whirl52(&w))?);
    }
    Ok(report)
}

fn claim_thm_5_4(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("thm-5.4");
    let w42 = graphs::whirl(4, 2)?;
    let samples42 = (cfg.seeds / 4).max(1);
    for i in 0..samples42 {
        let a = sample_s(w42.tree.as_graph(), cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_bounds(&a, w42.tree.as_graph(), &BoundCheck::Whirl54(&w42))?);
    }
    let w43 = graphs::whirl(4, 3)?;
    let samples43 = (cfg.seeds / 40).max(2);
    for i in 0..samples43 {
        let a = sample_s(w43.tree.as_graph(), cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_bounds(&a, w43.tree.as_graph(), &BoundCheck::Whirl54(&w43))?);
    }
    Ok(report)
}

fn claim_thm_6_1(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("thm-6.1");
    let hexagon = graphs::cycle_graph(6)?;
    // l = 4 makes the bound bite: q >= 9 - 12 + 15/2 = 4.5, so q >= 5
    let big = figure14_graph(&hexagon, (1, 3, 5), 4)?;
    let samples_big = (cfg.seeds / 40).max(2);
    for i in 0..samples_big {
        let a = sample_s(&big.graph, cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_bounds(&a, &big.graph, &BoundCheck::Graph61(&big))?);
    }
    let small = figure14_graph(&hexagon, (1, 3, 5), 1)?;
    let samples_small = (cfg.seeds / 10).max(2);
    for i in 0..samples_small {
        let a = sample_s(&small.graph, cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_bounds(&a, &small.graph, &BoundCheck::Graph61(&small))?);
    }
    // a star host with the leaves as anchors: every anchor pair has a unique
    // two-edge route through the hub, and the legged graph is a tree
    let star = graphs::star_graph(4)?.into_graph();
    let spider = figure14_graph(&star, (2, 3, 4), 2)?;
    for i in 0..2 {
        let a = sample_s(&spider.graph, cfg.base_seed.wrapping_add(i), cfg.pool);
        report.absorb(audit_bounds(&a, &spider.graph, &BoundCheck::Graph61(&spider))?);
    }
    Ok(report)
}

fn claim_ex_3_6(_cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    let mut report = AuditReport::new("ex-3.6");
    // the realized spectrum reproduces exactly
    let s = eigen_structure(&example36_matrix());
    report.check(
        "realized spectrum",
        "charpoly x^10 - 9x^8 + 24x^6 - 20x^4, q = 5, list <1,2,4,2,1>",
        &format!("charpoly {}, q = {}, list {:?}", s.charpoly, s.q, s.multiplicity_list()),
        s.charpoly == "x^10 - 9*x^8 + 24*x^6 - 20*x^4".parse().unwrap()
            && s.q == 5
            && s.multiplicity_list() == vec![1, 2, 4, 2, 1],
    );
    report.checked += 1;
    let steps = example36_builtin_steps();
    // realized spectrum via its minimal-polynomial data: must pass
    let mut grouped = BTreeMap::new();
    grouped.insert(1usize, "x^2 - 5".parse::<Poly>().unwrap());
    grouped.insert(2usize, "x^2 - 2".parse::<Poly>().unwrap());
    grouped.insert(4usize, Poly::x());
    let realized = example36_certificate(&steps, &SpectrumData::Grouped(grouped))?;
    report.check(
        "realized symmetric-function data",
        "certificate accepts",
        if realized.passed() { "accepted" } else { "rejected" },
        realized.passed(),
    );
    report.checked += 1;
    // the infeasible sigma must be rejected
    let bad: Vec<Rational> = [2, 3, 3, 5, 5, 5, 5, 7, 7, 10]
        .iter()
        .map(|&v| Rational::from_int(v))
        .collect();
    let rejected = example36_certificate(&steps, &SpectrumData::Explicit(bad))?;
    report.check(
        "sigma (2,3,3,5,5,5,5,7,7,10)",
        "certificate rejects (2+10 != 3+7)",
        if rejected.passed() { "accepted" } else { "rejected" },
        !rejected.passed(),
    );
    report.checked += 1;
    // and a sigma satisfying the constraint passes
    let good: Vec<Rational> = [1, 2, 2, 4, 4, 4, 4, 6, 6, 7]
        .iter()
        .map(|&v| Rational::from_int(v))
        .collect();
    let accepted = example36_certificate(&steps, &SpectrumData::Explicit(good))?;
    report.check(
        "sigma (1,2,2,4,4,4,4,6,6,7)",
        "certificate accepts (1+7 = 2+6)",
        if accepted.passed() { "accepted" } else { "rejected" },
        accepted.passed(),
    );
    report.checked += 1;
    Ok(report)
}

/// Runs one claim's audit batch. Reports are deterministic in the config.
pub fn run_claim(id: &str, cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    match id {
        "thm-2.3" => claim_thm_2_3(cfg),
        "thm-3.3" => claim_thm_3_3(cfg),
        "cor-3.4" => claim_cor_3_4(cfg),
        "cor-3.5" => claim_cor_3_5(cfg),
        "cor-4.1" => claim_cor_4_1(cfg),
        "thm-5.1" => claim_thm_5_1(cfg),
        "lem-5.3" => claim_lem_5_3(cfg),
        "thm-5.2" => claim_thm_5_2(cfg),
        "thm-5.4" => claim_thm_5_4(cfg),
        "thm-6.1" => claim_thm_6_1(cfg),
        "ex-3.6" => claim_ex_3_6(cfg),
        other => Err(AuditError::UnknownClaim(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymatrix::{invariant_factor_multiplicities, RatMatrix};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn diag(vals: &[i64]) -> RatSymMatrix {
        let n = vals.len();
        let mut m = RatMatrix::zero(n, n);
        for (i, &v) in vals.iter().enumerate() {
            m.set(i, i, Rational::from_int(v));
        }
        RatSymMatrix::new(m).unwrap()
    }

    #[test]
    fn factor_structure_cases() {
        assert!(audit_factor_structure(&diag(&[1, 2, 3])).unwrap().passed());
        assert!(audit_factor_structure(&example36_matrix()).unwrap().passed());
        // e_9 of the worked example is x(x^2-2)
        let snf = example36_matrix()
            .characteristic_matrix()
            .smith_normal_form()
            .unwrap();
        assert_eq!(snf.invariant_factors[8], Poly::x() * p("x^2-2"));
        assert_eq!(snf.invariant_factors[7], Poly::x());
        assert_eq!(snf.invariant_factors[6], Poly::x());
        assert_eq!(snf.invariant_factors[5], Poly::one());
        assert_eq!(
            snf.invariant_factors[9],
            Poly::x() * p("x^2-2") * p("x^2-5")
        );
        let mults = invariant_factor_multiplicities(&snf).unwrap();
        assert_eq!(mults[&4], Poly::x());
        assert_eq!(mults[&2], p("x^2-2"));
        assert_eq!(mults[&1], p("x^2-5"));
        // Delta_9 = x^3 (x^2-2) and Delta_10 = x^4 (x^2-2)^2 (x^2-5)
        assert_eq!(
            snf.determinantal_divisor(9).unwrap(),
            Poly::x().pow(3) * p("x^2-2")
        );
        assert_eq!(
            snf.determinantal_divisor(10).unwrap(),
            Poly::x().pow(4) * p("x^2-2").pow(2) * p("x^2-5")
        );
    }

    #[test]
    fn submatrix_identity_on_the_worked_matrix() {
        // deleting the three 2-path family rows/columns leaves +/- c * x
        let tree = figure2_tree();
        let m = example36_matrix().characteristic_matrix();
        let f = PathFamily::new(
            tree.as_graph(),
            vec![vec![4, 1, 5], vec![7, 2, 8], vec![10, 3, 9]],
        )
        .unwrap();
        let report = audit_submatrix_identity(&m, &tree, &f).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        // both sides are a constant multiple of x: the lone uncovered vertex
        // contributes det [x] and the path weights are constants
        let lhs = m
            .submatrix(&[4, 7, 8], &[3, 6, 9]) // rows j_s - 1, cols i_s - 1
            .unwrap()
            .det()
            .unwrap();
        assert_eq!(lhs.degree(), Some(1));
        assert!(lhs.coeff(0).is_zero());
    }

    #[test]
    fn planted_double_eigenvalue_forces_e2() {
        let planted = [
            (Rational::from_int(1), 2usize),
            (Rational::from_int(2), 1usize),
        ];
        let a = planted_spectrum_matrix(&planted, 9, EntryPool::default()).unwrap();
        assert!(audit_factor_structure(&a).unwrap().passed());
        let snf = a.characteristic_matrix().smith_normal_form().unwrap();
        assert_eq!(snf.invariant_factors[1], p("x - 1"));
    }

    #[test]
    fn submatrix_identity_tiny() {
        // 3-vertex path, single-edge path deletion: both sides are degree-1
        let t = crate::graphs::path_graph(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_acyclic_polymatrix(&t, &mut rng, EntryPool::default());
        let f = PathFamily::new(t.as_graph(), vec![vec![1, 2]]).unwrap();
        assert!(audit_submatrix_identity(&m, &t, &f).unwrap().passed());
        let f = PathFamily::new(t.as_graph(), vec![vec![2]]).unwrap();
        assert!(audit_submatrix_identity(&m, &t, &f).unwrap().passed());
    }

    #[test]
    fn path_deletion_worked_example() {
        let a = example36_matrix();
        let tree = figure2_tree();
        // three paths leave vertex 6 and the top eigenvalue 0 descends there
        let f = PathFamily::new(
            tree.as_graph(),
            vec![vec![4, 1, 5], vec![7, 2, 8], vec![10, 3, 9]],
        )
        .unwrap();
        let sub = a.principal_submatrix(&[6]).unwrap();
        assert_eq!(sub.charpoly(), Poly::x());
        assert!(audit_path_deletion(&a, &tree, &f).unwrap().passed());
        // full path cover: vacuous pass
        let (_, cover) = path_cover_number(&tree);
        assert!(audit_path_deletion(&a, &tree, &cover).unwrap().passed());
    }

    #[test]
    fn count_bound_worked_example() {
        let a = example36_matrix();
        assert!(audit_count_bound(&a, &figure2_tree(), 14).unwrap().passed());
    }

    #[test]
    fn whirl_lemma_worked_example() {
        let w = Whirl::detect(figure2_tree().as_graph()).unwrap();
        let report = audit_whirl_lemma(&example36_matrix(), &w).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn whirl_lemma_with_split_multiplicity_roots() {
        // a (2,1)-whirl matrix where the two multiplicity-k eigenvalues live
        // in different spokes' legs: 0 in the legs of spoke 2, 3 in the legs
        // of spoke 3. Each root is simple in one leg of every cross-spoke
        // pair, but no single leg carries the whole multiplicity-k factor.
        let w = graphs::whirl(2, 1).unwrap();
        let mut m = RatMatrix::zero(7, 7);
        let mut sym = |m: &mut RatMatrix, i: usize, j: usize, v: Rational| {
            m.set(i - 1, j - 1, v.clone());
            m.set(j - 1, i - 1, v);
        };
        sym(&mut m, 1, 2, Rational::from_int(2));
        sym(&mut m, 1, 3, Rational::from_int(1));
        for leg in [4, 5] {
            sym(&mut m, 2, leg, Rational::from_int(1));
        }
        for leg in [6, 7] {
            sym(&mut m, 3, leg, Rational::from_int(1));
        }
        m.set(0, 0, Rational::from_int(1));
        m.set(1, 1, Rational::ratio(1, 3));
        m.set(2, 2, Rational::ratio(5, 3));
        for v in [6, 7] {
            m.set(v - 1, v - 1, Rational::from_int(3));
        }
        let a = RatSymMatrix::new(m).unwrap();
        assert!(a.member_of_s(w.tree.as_graph()).unwrap());
        let s = eigen_structure(&a);
        assert_eq!(s.multiplicity_list(), vec![1, 2, 1, 2, 1]);
        let g = s.factor_of_multiplicity(2).unwrap();
        assert_eq!(g, &p("x^2 - 3*x"));
        // no leg charpoly is divisible by the whole factor, so the per-root
        // form of part (c) is genuinely weaker than whole-factor divisibility
        for leg in &w.legs {
            let cp = a.principal_submatrix(leg).unwrap().charpoly();
            assert!(!g.divides(&cp));
        }
        let report = audit_whirl_lemma(&a, &w).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn bounds_on_path_samples() {
        // path matrices have simple spectrum: q = n = d+1 exactly
        let t = crate::graphs::path_graph(5).unwrap();
        let a = sample_s(t.as_graph(), 3, EntryPool::default());
        assert!(audit_bounds(&a, t.as_graph(), &BoundCheck::QGeDiameterPlusOne)
            .unwrap()
            .passed());
        assert!(audit_bounds(&a, t.as_graph(), &BoundCheck::MaxMultLePathCover)
            .unwrap()
            .passed());
        assert!(audit_bounds(&a, t.as_graph(), &BoundCheck::ExtremesSimple)
            .unwrap()
            .passed());
    }

    #[test]
    fn whirl_bound_family_mismatch() {
        let w31 = graphs::whirl(3, 1).unwrap();
        let a = sample_s(w31.tree.as_graph(), 1, EntryPool::default());
        // the 3-whirl distinct-eigenvalue bound needs legs of length at least 2
        assert!(matches!(
            audit_bounds(&a, w31.tree.as_graph(), &BoundCheck::Whirl52(&w31)),
            Err(AuditError::FamilyMismatch(_))
        ));
    }

    #[test]
    fn screening_cases() {
        let t = figure2_tree();
        assert!(screen_multiplicity_list(&t, &[1, 2, 4, 2, 1], 14).unwrap().passed());
        // a 5 exceeds p = 4
        let r = screen_multiplicity_list(&t, &[5, 2, 1, 1, 1], 14).unwrap();
        assert!(!r.passed());
        // too few distinct eigenvalues for the diameter
        let r = screen_multiplicity_list(&t, &[4, 4, 2], 14).unwrap();
        assert!(!r.passed());
        // wrong total
        let r = screen_multiplicity_list(&t, &[1, 1], 14).unwrap();
        assert!(!r.passed());
        // max multiplicity above 3 on the caterpillar is impossible (p = 3)
        let r = screen_multiplicity_list(&crate::graphs::figure6_tree(), &[1, 1, 4, 2, 1, 1], 14)
            .unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn certificate_decides_the_three_sigmas() {
        let steps = example36_builtin_steps();

        let mut grouped = BTreeMap::new();
        grouped.insert(1usize, p("x^2 - 5"));
        grouped.insert(2usize, p("x^2 - 2"));
        grouped.insert(4usize, Poly::x());
        assert!(example36_certificate(&steps, &SpectrumData::Grouped(grouped))
            .unwrap()
            .passed());

        let bad: Vec<Rational> = [2, 3, 3, 5, 5, 5, 5, 7, 7, 10]
            .iter()
            .map(|&v| Rational::from_int(v))
            .collect();
        assert!(!example36_certificate(&steps, &SpectrumData::Explicit(bad))
            .unwrap()
            .passed());

        let good: Vec<Rational> = [1, 2, 2, 4, 4, 4, 4, 6, 6, 7]
            .iter()
            .map(|&v| Rational::from_int(v))
            .collect();
        assert!(example36_certificate(&steps, &SpectrumData::Explicit(good))
            .unwrap()
            .passed());
    }

    #[test]
    fn certificate_rejects_malformed_and_unlicensed_steps() {
        // remaining set not the complement
        let bad = vec![step(&[&[4, 1, 5]], &[6], &[(3, &[6], 1)])];
        let sigma = SpectrumData::Explicit(
            [1, 2, 2, 4, 4, 4, 4, 6, 6, 7]
                .iter()
                .map(|&v| Rational::from_int(v))
                .collect(),
        );
        assert!(matches!(
            example36_certificate(&bad, &sigma),
            Err(AuditError::MalformedStep(_))
        ));
        // claiming lambda_1 (simple) after one path deletion is unlicensed
        let unlicensed = vec![step(
            &[&[7, 2, 6, 3, 10]],
            &[4, 1, 5, 8, 9],
            &[(1, &[4, 1, 5], 1)],
        )];
        assert!(matches!(
            example36_certificate(&unlicensed, &sigma),
            Err(AuditError::UnlicensedStep(_))
        ));
        // wrong sigma shape
        let steps = example36_builtin_steps();
        let short = SpectrumData::Explicit(vec![Rational::one(); 9]);
        assert!(matches!(
            example36_certificate(&steps, &short),
            Err(AuditError::SigmaShape(_))
        ));
    }

    #[test]
    fn claims_are_deterministic() {
        let cfg = AuditConfig {
            seeds: 3,
            ..AuditConfig::default()
        };
        for id in ["cor-3.4", "thm-5.1", "ex-3.6"] {
            let a = run_claim(id, &cfg).unwrap();
            let b = run_claim(id, &cfg).unwrap();
            assert_eq!(a.claim, b.claim);
            assert_eq!(a.checked, b.checked);
            assert_eq!(a.violations, b.violations);
        }
    }

    #[test]
    fn exact_cover_search() {
        let universe: BTreeSet<u32> = (1..=4).collect();
        let b1: BTreeSet<u32> = [1, 2].into_iter().collect();
        let b2: BTreeSet<u32> = [3].into_iter().collect();
        let b3: BTreeSet<u32> = [3, 4].into_iter().collect();
        let blocks = [&b1, &b2, &b3];
        let cover = find_exact_cover(&universe, &blocks).unwrap();
        assert_eq!(cover, vec![0, 2]);
        let blocks = [&b1, &b2];
        assert!(find_exact_cover(&universe, &blocks).is_none());
    }
}
