//! Symmetric rational matrices with a prescribed graph: membership in S(G),
//! characteristic and minimal polynomials, exact eigenvalue multiplicity
//! structure with ordered root locators, and seeded sampling of S(G).

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exactpoly::{isolate_real_roots, refine_interval, Interval, Poly, PolyError, Rational};
use crate::graphs::{random_tree, Graph, GraphError, Tree};
use crate::polymatrix::{MatError, PolyMatrix, RatMatrix};
use crate::rngutil::{rng_index, rng_range};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectraError {
    OrderMismatch { matrix: usize, graph: usize },
    NotSymmetric,
    NotSquare,
    NotSkewSymmetric,
    BadPool(String),
    Graph(GraphError),
    Mat(MatError),
    Poly(PolyError),
}

impl fmt::Display for SpectraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectraError::OrderMismatch { matrix, graph } => {
                write!(f, "matrix order {matrix} does not match graph order {graph}")
            }
            SpectraError::NotSymmetric => write!(f, "matrix is not symmetric"),
            SpectraError::NotSquare => write!(f, "matrix is not square"),
            SpectraError::NotSkewSymmetric => write!(f, "matrix is not skew-symmetric"),
            SpectraError::BadPool(s) => write!(f, "invalid entry pool: {s}"),
            SpectraError::Graph(e) => write!(f, "{e}"),
            SpectraError::Mat(e) => write!(f, "{e}"),
            SpectraError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SpectraError {}

impl From<GraphError> for SpectraError {
    fn from(e: GraphError) -> Self {
        SpectraError::Graph(e)
    }
}

impl From<MatError> for SpectraError {
    fn from(e: MatError) -> Self {
        SpectraError::Mat(e)
    }
}

impl From<PolyError> for SpectraError {
    fn from(e: PolyError) -> Self {
        SpectraError::Poly(e)
    }
}

/// Symmetric matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatSymMatrix {
    mat: RatMatrix,
}

impl RatSymMatrix {
    pub fn new(mat: RatMatrix) -> Result<Self, SpectraError> {
        if !mat.is_square() {
            return Err(SpectraError::NotSquare);
        }
        if !mat.is_symmetric() {
            return Err(SpectraError::NotSymmetric);
        }
        Ok(RatSymMatrix { mat })
    }

    /// 0/1 adjacency matrix of a graph (zero diagonal).
    pub fn adjacency(g: &Graph) -> RatSymMatrix {
        let n = g.n();
        let mut mat = RatMatrix::zero(n, n);
        for &(u, v) in g.edges() {
            mat.set((u - 1) as usize, (v - 1) as usize, Rational::one());
            mat.set((v - 1) as usize, (u - 1) as usize, Rational::one());
        }
        RatSymMatrix { mat }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.mat.get(i, j)
    }

    pub fn mat(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn trace(&self) -> Rational {
        self.mat.trace()
    }

    pub fn to_text(&self) -> String {
        self.mat.to_text()
    }

    pub fn from_text(text: &str) -> Result<Self, SpectraError> {
        RatSymMatrix::new(RatMatrix::from_text(text)?)
    }

    /// The graph on 1..=n with edges exactly at nonzero off-diagonal
    /// entries; the diagonal is ignored.
    pub fn graph_of(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.get(i, j).is_zero() {
                    edges.push(((i + 1) as u32, (j + 1) as u32));
                }
            }
        }
        Graph::new(n, edges).expect("valid by construction")
    }

    /// Exact membership in S(g): the graph of the matrix equals g.
    pub fn member_of_s(&self, g: &Graph) -> Result<bool, SpectraError> {
        if self.n() != g.n() {
            return Err(SpectraError::OrderMismatch {
                matrix: self.n(),
                graph: g.n(),
            });
        }
        Ok(&self.graph_of() == g)
    }

    /// xI - A.
    pub fn characteristic_matrix(&self) -> PolyMatrix {
        PolyMatrix::characteristic_matrix(&self.mat).expect("square")
    }

    /// det(xI - A), by fraction-free elimination.
    pub fn charpoly(&self) -> Poly {
        self.characteristic_matrix().det().expect("square")
    }

    /// Principal submatrix indexed by 1-based vertex labels, order preserved.
    pub fn principal_submatrix(&self, vertices: &[u32]) -> Result<RatSymMatrix, SpectraError> {
        let n = self.n();
        for &v in vertices {
            if v == 0 || v as usize > n {
                return Err(SpectraError::Graph(GraphError::InvalidVertex { v, n }));
            }
        }
        let k = vertices.len();
        let mut mat = RatMatrix::zero(k, k);
        for (oi, &i) in vertices.iter().enumerate() {
            for (oj, &j) in vertices.iter().enumerate() {
                mat.set(oi, oj, self.get((i - 1) as usize, (j - 1) as usize).clone());
            }
        }
        Ok(RatSymMatrix { mat })
    }
}

/// Location of one distinct eigenvalue: an exact rational or an isolating
/// interval with rational endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootLocator {
    Exact(Rational),
    Range(Interval),
}

impl RootLocator {
    fn from_interval(iv: Interval) -> RootLocator {
        if iv.is_point() {
            RootLocator::Exact(iv.lo().clone())
        } else {
            RootLocator::Range(iv)
        }
    }

    /// Lower endpoint, used for ordering assertions.
    pub fn lo(&self) -> &Rational {
        match self {
            RootLocator::Exact(r) => r,
            RootLocator::Range(iv) => iv.lo(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EigenGroup {
    pub root: RootLocator,
    pub multiplicity: usize,
}

/// Exact eigenvalue multiplicity structure: the characteristic polynomial,
/// its square-free (Yun) factors keyed by multiplicity, and the distinct
/// eigenvalues in ascending order with their multiplicities.
#[derive(Clone, Debug)]
pub struct EigenStructure {
    pub charpoly: Poly,
    /// Yun decomposition of the characteristic polynomial: (factor, i) with
    /// the factor collecting exactly the eigenvalues of multiplicity i.
    pub factors: Vec<(Poly, usize)>,
    pub groups: Vec<EigenGroup>,
    /// Number of distinct eigenvalues.
    pub q: usize,
}

impl EigenStructure {
    /// Ordered multiplicity list <m_1, ..., m_q>.
    pub fn multiplicity_list(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.multiplicity).collect()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).max().unwrap_or(0)
    }

    /// Square-free factor collecting the eigenvalues of multiplicity m.
    pub fn factor_of_multiplicity(&self, m: usize) -> Option<&Poly> {
        self.factors.iter().find(|&&(_, i)| i == m).map(|(p, _)| p)
    }

    /// Count of eigenvalues with multiplicity >= m.
    pub fn count_mult_at_least(&self, m: usize) -> usize {
        self.groups.iter().filter(|g| g.multiplicity >= m).count()
    }
}

/// Computes the exact eigenvalue structure of a symmetric rational matrix:
/// square-free decomposition assigns multiplicities, Sturm isolation orders
/// the roots. Symmetry guarantees all roots are real and that the algebraic
/// multiplicity equals the Yun exponent.
pub fn eigen_structure(a: &RatSymMatrix) -> EigenStructure {
    let charpoly = a.charpoly();
    let factors = charpoly
        .squarefree_decomposition()
        .expect("charpoly is nonzero");
    // (interval, factor index) for every distinct root
    let mut roots: Vec<(Interval, usize)> = Vec::new();
    for (fi, (g, _)) in factors.iter().enumerate() {
        let ivs = isolate_real_roots(g).expect("Yun factors are square-free");
        assert_eq!(
            ivs.len(),
            g.degree().unwrap(),
            "symmetric matrix charpoly factor must have all roots real"
        );
        for iv in ivs {
            roots.push((iv, fi));
        }
    }
    // factors are pairwise coprime so all roots are distinct; refine until the
    // closures are pairwise disjoint, which certifies the global order
    loop {
        roots.sort_by(|(a, _), (b, _)| a.lo().cmp(b.lo()).then_with(|| a.hi().cmp(b.hi())));
        let mut clash = None;
        for i in 0..roots.len().saturating_sub(1) {
            if roots[i].0.touches(&roots[i + 1].0) {
                clash = Some(i);
                break;
            }
        }
        match clash {
            None => break,
            Some(i) => {
                for idx in [i, i + 1] {
                    let (iv, fi) = &roots[idx];
                    let refined = refine_interval(&factors[*fi].0, iv);
                    roots[idx].0 = refined;
                }
            }
        }
    }
    let groups: Vec<EigenGroup> = roots
        .into_iter()
        .map(|(iv, fi)| EigenGroup {
            root: RootLocator::from_interval(iv),
            multiplicity: factors[fi].1,
        })
        .collect();
    let n = a.n();
    let total: usize = groups.iter().map(|g| g.multiplicity).sum();
    assert_eq!(total, n, "multiplicities must sum to the order");
    let q = groups.len();
    EigenStructure {
        charpoly,
        factors,
        groups,
        q,
    }
}

/// Minimal polynomial of a symmetric rational matrix: the square-free part of
/// the characteristic polynomial, cross-checked against the last invariant
/// factor e_n of the SNF of xI - A, together with q(A) = n - deg(Delta_{n-1}).
pub fn minimal_polynomial(a: &RatSymMatrix) -> Result<Poly, SpectraError> {
    let charpoly = a.charpoly();
    let sq = charpoly.squarefree_part()?;
    let snf = a.characteristic_matrix().smith_normal_form()?;
    let e_n = snf
        .invariant_factors
        .last()
        .cloned()
        .expect("full rank for a characteristic matrix");
    assert_eq!(
        e_n, sq,
        "minimal polynomial routes disagree: e_n != squarefree(charpoly)"
    );
    let n = a.n();
    let delta_prev = snf.determinantal_divisor(n - 1).map(|d| d.degree_or_zero());
    if n >= 2 {
        let q = n - delta_prev?;
        assert_eq!(q, sq.degree().unwrap(), "q(A) must equal n - deg(Delta_(n-1))");
    }
    Ok(sq)
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// Integer pool for sampled entries; edge entries are drawn nonzero, the
/// diagonal may take zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryPool {
    pub lo: i64,
    pub hi: i64,
}

impl Default for EntryPool {
    fn default() -> Self {
        EntryPool { lo: -5, hi: 5 }
    }
}

impl EntryPool {
    pub fn new(lo: i64, hi: i64) -> Result<Self, SpectraError> {
        if lo > hi {
            return Err(SpectraError::BadPool(format!("empty range {lo}..={hi}")));
        }
        if lo == 0 && hi == 0 {
            return Err(SpectraError::BadPool(String::from(
                "pool must contain a nonzero value for edge entries",
            )));
        }
        Ok(EntryPool { lo, hi })
    }

    fn draw(&self, rng: &mut dyn RngCore) -> Rational {
        Rational::from_int(rng_range(rng, self.lo, self.hi))
    }

    fn draw_nonzero(&self, rng: &mut dyn RngCore) -> Rational {
        loop {
            let v = rng_range(rng, self.lo, self.hi);
            if v != 0 {
                return Rational::from_int(v);
            }
        }
    }
}

/// Seeded deterministic sample from S(g): nonzero pool entries on the edges,
/// pool entries (zero allowed) on the diagonal.
pub fn sample_s(g: &Graph, seed: u64, pool: EntryPool) -> RatSymMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let mut mat = RatMatrix::zero(n, n);
    for &(u, v) in g.edges() {
        let w = pool.draw_nonzero(&mut rng);
        mat.set((u - 1) as usize, (v - 1) as usize, w.clone());
        mat.set((v - 1) as usize, (u - 1) as usize, w);
    }
    for i in 0..n {
        mat.set(i, i, pool.draw(&mut rng));
    }
    let a = RatSymMatrix { mat };
    debug_assert!(a.member_of_s(g).unwrap());
    a
}

/// Rational orthogonal matrix from a skew-symmetric one via the Cayley
/// transform U = (I - S)(I + S)^{-1}; I + S is always invertible.
pub fn cayley_orthogonal(s: &RatMatrix) -> Result<RatMatrix, SpectraError> {
    if !s.is_square() {
        return Err(SpectraError::NotSquare);
    }
    let n = s.rows();
    for i in 0..n {
        for j in 0..n {
            if *s.get(i, j) != -s.get(j, i) {
                return Err(SpectraError::NotSkewSymmetric);
            }
        }
    }
    let id = RatMatrix::identity(n);
    let i_minus = id.sub(s)?;
    let mut i_plus = id.clone();
    for i in 0..n {
        for j in 0..n {
            i_plus.set(i, j, i_plus.get(i, j) + s.get(i, j));
        }
    }
    let u = i_minus.mul(&i_plus.inverse()?)?;
    debug_assert_eq!(u.transpose().mul(&u).unwrap(), id);
    Ok(u)
}

/// U diag(values) U^T for a rational orthogonal U: a symmetric matrix whose
/// spectrum is exactly the given multiset.
pub fn conjugate_diagonal(values: &[Rational], u: &RatMatrix) -> Result<RatSymMatrix, SpectraError> {
    let n = values.len();
    if u.rows() != n || u.cols() != n {
        return Err(SpectraError::OrderMismatch {
            matrix: u.rows(),
            graph: n,
        });
    }
    let mut d = RatMatrix::zero(n, n);
    for (i, v) in values.iter().enumerate() {
        d.set(i, i, v.clone());
    }
    let a = u.mul(&d)?.mul(&u.transpose())?;
    RatSymMatrix::new(a)
}

/// Random skew-symmetric matrix with strictly-upper entries from the pool.
pub fn random_skew(n: usize, rng: &mut dyn RngCore, pool: EntryPool) -> RatMatrix {
    let mut s = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = pool.draw(rng);
            s.set(i, j, v.clone());
            s.set(j, i, -v);
        }
    }
    s
}

/// Seeded symmetric matrix with an exactly planted spectrum, built by Cayley
/// conjugation of a diagonal with the requested repeats. Random samples from
/// S(G) are generically simple-spectrum, so genuine multiplicities come from
/// fixtures like this one.
pub fn planted_spectrum_matrix(
    planted: &[(Rational, usize)],
    seed: u64,
    pool: EntryPool,
) -> Result<RatSymMatrix, SpectraError> {
    let mut values = Vec::new();
    for (v, m) in planted {
        for _ in 0..*m {
            values.push(v.clone());
        }
    }
    let n = values.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_skew(n, &mut rng, pool);
    let u = cayley_orthogonal(&s)?;
    conjugate_diagonal(&values, &u)
}

/// Seeded tree matrix with a forced multiple eigenvalue: three pendant twins
/// (equal edge weight, equal diagonal) hang off one vertex of a random base
/// tree, so the twin diagonal value has multiplicity at least 2.
pub fn twin_pendant_fixture(
    base_n: usize,
    seed: u64,
    pool: EntryPool,
) -> (Tree, RatSymMatrix, Rational) {
    assert!(base_n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random_tree(base_n, &mut rng);
    let attach = 1 + rng_index(&mut rng, base_n) as u32;
    let n = base_n + 3;
    let mut edges: Vec<(u32, u32)> = base.edges().iter().copied().collect();
    let twins: Vec<u32> = (base_n as u32 + 1..=n as u32).collect();
    for &t in &twins {
        edges.push((attach, t));
    }
    let tree = Tree::new(Graph::new(n, edges).expect("valid")).expect("still a tree");
    let mut mat = RatMatrix::zero(n, n);
    for &(u, v) in base.edges() {
        let w = pool.draw_nonzero(&mut rng);
        mat.set((u - 1) as usize, (v - 1) as usize, w.clone());
        mat.set((v - 1) as usize, (u - 1) as usize, w);
    }
    for i in 0..base_n {
        mat.set(i, i, pool.draw(&mut rng));
    }
    let twin_weight = pool.draw_nonzero(&mut rng);
    let twin_diag = pool.draw(&mut rng);
    for &t in &twins {
        let ti = (t - 1) as usize;
        let ai = (attach - 1) as usize;
        mat.set(ti, ai, twin_weight.clone());
        mat.set(ai, ti, twin_weight.clone());
        mat.set(ti, ti, twin_diag.clone());
    }
    let a = RatSymMatrix { mat };
    debug_assert!(a.member_of_s(tree.as_graph()).unwrap());
    (tree, a, twin_diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{figure2_tree, path_graph};
    use crate::polymatrix::invariant_factor_multiplicities;

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

    /// The worked example's acyclic matrix: adjacency of the Figure-2 tree.
    fn example_matrix() -> RatSymMatrix {
        RatSymMatrix::adjacency(figure2_tree().as_graph())
    }

    #[test]
    fn graph_of_cases() {
        assert_eq!(example_matrix().graph_of(), *figure2_tree().as_graph());
        assert_eq!(diag(&[1, 2, 3]).graph_of().edges().len(), 0);
        let mut ones = RatMatrix::zero(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                ones.set(i, j, Rational::one());
            }
        }
        let ones = RatSymMatrix::new(ones).unwrap();
        assert_eq!(ones.graph_of().edges().len(), 3);
    }

    #[test]
    fn membership() {
        let a = example_matrix();
        assert!(a.member_of_s(figure2_tree().as_graph()).unwrap());
        let zero = diag(&[0, 0]);
        let edge = Graph::new(2, [(1, 2)]).unwrap();
        assert!(!zero.member_of_s(&edge).unwrap());
        let id = diag(&[1, 1]);
        let edgeless = Graph::new(2, []).unwrap();
        assert!(id.member_of_s(&edgeless).unwrap());
        assert!(id.member_of_s(&Graph::new(3, []).unwrap()).is_err());
    }

    #[test]
    fn example_matrix_structure() {
        let a = example_matrix();
        let s = eigen_structure(&a);
        assert_eq!(s.charpoly, p("x^10 - 9*x^8 + 24*x^6 - 20*x^4"));
        assert_eq!(s.q, 5);
        assert_eq!(s.multiplicity_list(), vec![1, 2, 4, 2, 1]);
        // the middle eigenvalue is exactly zero
        assert_eq!(s.groups[2].root, RootLocator::Exact(Rational::zero()));
        assert_eq!(s.factor_of_multiplicity(4).unwrap(), &Poly::x());
        assert_eq!(s.factor_of_multiplicity(2).unwrap(), &p("x^2 - 2"));
        assert_eq!(s.factor_of_multiplicity(1).unwrap(), &p("x^2 - 5"));
    }

    #[test]
    fn simple_structures() {
        let s = eigen_structure(&diag(&[1, 2, 2]));
        assert_eq!(s.q, 2);
        assert_eq!(s.multiplicity_list(), vec![1, 2]);
        let s = eigen_structure(&diag(&[0, 0, 0, 0]));
        assert_eq!(s.q, 1);
        assert_eq!(s.multiplicity_list(), vec![4]);
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(
            minimal_polynomial(&example_matrix()).unwrap(),
            Poly::x() * p("x^2-2") * p("x^2-5")
        );
        assert_eq!(minimal_polynomial(&diag(&[7, 7])).unwrap(), p("x - 7"));
        assert_eq!(minimal_polynomial(&diag(&[1, 2])).unwrap(), p("x^2 - 3*x + 2"));
    }

    #[test]
    fn trace_matches_charpoly_coefficient() {
        let a = twin_pendant_fixture(5, 3, EntryPool::default()).1;
        let cp = a.charpoly();
        let n = a.n();
        assert_eq!(a.trace(), -cp.coeff(n - 1));
    }

    #[test]
    fn sampling_is_deterministic_and_member() {
        let w = crate::graphs::whirl(3, 1).unwrap();
        let a = sample_s(w.tree.as_graph(), 17, EntryPool::default());
        let b = sample_s(w.tree.as_graph(), 17, EntryPool::default());
        assert_eq!(a, b);
        assert!(a.member_of_s(w.tree.as_graph()).unwrap());
        let c = sample_s(w.tree.as_graph(), 18, EntryPool::default());
        assert!(a != c);
    }

    #[test]
    fn cayley_plants_exact_spectrum() {
        let planted = [
            (Rational::from_int(1), 2usize),
            (Rational::from_int(2), 1usize),
        ];
        let a = planted_spectrum_matrix(&planted, 5, EntryPool::default()).unwrap();
        let s = eigen_structure(&a);
        assert_eq!(s.multiplicity_list(), vec![2, 1]);
        assert_eq!(s.groups[0].root, RootLocator::Exact(Rational::from_int(1)));
        assert_eq!(s.groups[1].root, RootLocator::Exact(Rational::from_int(2)));
    }

    #[test]
    fn charpoly_pipeline_matches_snf_multiplicities() {
        // the two multiplicity routes must agree: Yun exponents from the
        // charpoly equal the per-multiplicity factors from the SNF route
        let planted = [
            (Rational::from_int(-1), 2usize),
            (Rational::from_int(3), 3usize),
        ];
        let a = planted_spectrum_matrix(&planted, 11, EntryPool::default()).unwrap();
        let s = eigen_structure(&a);
        let snf = a.characteristic_matrix().smith_normal_form().unwrap();
        let by_snf = invariant_factor_multiplicities(&snf).unwrap();
        assert_eq!(by_snf.len(), s.factors.len());
        for (g, m) in &s.factors {
            assert_eq!(by_snf.get(m).unwrap(), g);
        }
    }

    #[test]
    fn twin_pendant_forces_multiplicity() {
        for seed in 0..5 {
            let (tree, a, planted) = twin_pendant_fixture(6, seed, EntryPool::default());
            assert!(a.member_of_s(tree.as_graph()).unwrap());
            let s = eigen_structure(&a);
            let found = s
                .groups
                .iter()
                .find(|g| g.root == RootLocator::Exact(planted.clone()))
                .expect("planted eigenvalue present");
            assert!(found.multiplicity >= 2);
        }
    }

    #[test]
    fn submatrix_by_vertices() {
        let a = example_matrix();
        // B[6] for the example tree: the 1x1 zero block
        let sub = a.principal_submatrix(&[6]).unwrap();
        assert_eq!(sub.charpoly(), Poly::x());
        let sub = a.principal_submatrix(&[4, 1, 5]).unwrap();
        assert_eq!(sub.n(), 3);
        assert!(a.principal_submatrix(&[11]).is_err());
    }

    #[test]
    fn path_matrices_have_simple_spectrum() {
        let t = path_graph(5).unwrap();
        for seed in 0..8 {
            let a = sample_s(t.as_graph(), seed, EntryPool::default());
            let s = eigen_structure(&a);
            assert_eq!(s.q, 5, "Jacobi matrices have simple spectrum");
        }
    }
}
