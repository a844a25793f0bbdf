//! Matrices over the rational polynomial ring: Smith Normal Form with
//! unimodular witnesses, determinantal divisors, invariant factors, exact
//! determinants (fraction-free elimination and a cycle-cover oracle), and the
//! characteristic matrix xI - A of a rational matrix.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;
use core::str::FromStr;

use crate::exactpoly::{Poly, PolyError, Rational};

/// Size cap for the cycle-cover determinant oracle.
pub const DEFAULT_CYCLE_COVER_CAP: usize = 8;
/// Size cap for brute-force determinantal divisors (all k x k minors).
pub const DEFAULT_MINOR_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    NonSquare,
    DimensionMismatch,
    IndexOutOfRange,
    /// Brute-force operation beyond its size cap.
    SizeCapExceeded { n: usize, cap: usize },
    KOutOfRange { k: usize, max: usize },
    /// Operation requires a full-rank SNF.
    RankDeficient,
    Singular,
    Parse(String),
    Poly(PolyError),
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::NonSquare => write!(f, "matrix is not square"),
            MatError::DimensionMismatch => write!(f, "matrix dimensions do not match"),
            MatError::IndexOutOfRange => write!(f, "index out of range"),
            MatError::SizeCapExceeded { n, cap } => {
                write!(f, "size {n} exceeds brute-force cap {cap}")
            }
            MatError::KOutOfRange { k, max } => write!(f, "k = {k} out of range 1..={max}"),
            MatError::RankDeficient => write!(f, "rank-deficient Smith Normal Form"),
            MatError::Singular => write!(f, "matrix is singular"),
            MatError::Parse(s) => write!(f, "invalid matrix: {s}"),
            MatError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MatError {}

impl From<PolyError> for MatError {
    fn from(e: PolyError) -> Self {
        MatError::Poly(e)
    }
}

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatError::DimensionMismatch);
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, MatError> {
        if self.cols != rhs.rows {
            return Err(MatError::DimensionMismatch);
        }
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.get(k, j);
                    let cur = out.get(i, j) + &add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &RatMatrix) -> Result<RatMatrix, MatError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatError::DimensionMismatch);
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j) - rhs.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Gauss-Jordan inverse; errors on non-square or singular input.
    pub fn inverse(&self) -> Result<RatMatrix, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(MatError::Singular)?;
            if pivot_row != col {
                for j in 0..n {
                    let x = a.get(pivot_row, j).clone();
                    let y = a.get(col, j).clone();
                    a.set(pivot_row, j, y);
                    a.set(col, j, x);
                    let x = inv.get(pivot_row, j).clone();
                    let y = inv.get(col, j).clone();
                    inv.set(pivot_row, j, y);
                    inv.set(col, j, x);
                }
            }
            let inv_pivot = a.get(col, col).recip().expect("pivot nonzero");
            for j in 0..n {
                a.set(col, j, a.get(col, j) * &inv_pivot);
                inv.set(col, j, inv.get(col, j) * &inv_pivot);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &(&factor * a.get(col, j));
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &(&factor * inv.get(col, j));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Square-matrix text format: first line `n`, then n lines of n rationals.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.rows);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, MatError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| MatError::Parse(String::from("empty input")))?
            .parse()
            .map_err(|_| MatError::Parse(String::from("first line must be the order n")))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| MatError::Parse(format!("expected {n} rows")))?;
            let row: Result<Vec<Rational>, _> = line
                .split_whitespace()
                .map(|t| Rational::from_str(t).map_err(|e| MatError::Parse(format!("{e}"))))
                .collect();
            let row = row?;
            if row.len() != n {
                return Err(MatError::Parse(format!("expected {n} entries per row")));
            }
            rows.push(row);
        }
        RatMatrix::from_rows(rows)
    }
}

// ---------------------------------------------------------------------------
// Polynomial matrices
// ---------------------------------------------------------------------------

/// Dense matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self, MatError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatError::DimensionMismatch);
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, MatError> {
        if self.cols != rhs.rows {
            return Err(MatError::DimensionMismatch);
        }
        let mut out = PolyMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs.get(k, j).is_zero() {
                        continue;
                    }
                    let add = a * rhs.get(k, j);
                    let cur = out.get(i, j) + &add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// xI - A for a square rational matrix A.
    pub fn characteristic_matrix(a: &RatMatrix) -> Result<PolyMatrix, MatError> {
        if !a.is_square() {
            return Err(MatError::NonSquare);
        }
        let n = a.rows();
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let e = if i == j {
                    Poly::from_coeffs(vec![-a.get(i, i), Rational::one()])
                } else {
                    Poly::constant(-a.get(i, j))
                };
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination; every
    /// intermediate division is exact in the polynomial ring.
    pub fn det(&self) -> Result<Poly, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut w: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if w[k][k].is_zero() {
                match (k + 1..n).find(|&i| !w[i][k].is_zero()) {
                    Some(i) => {
                        w.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&w[k][k] * &w[i][j]) - &(&w[i][k] * &w[k][j]);
                    w[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = w[k][k].clone();
        }
        let d = w[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }

    /// Determinant as the signed-weight sum over all sets of disjoint
    /// directed cycles (loops included) covering every vertex of D(M).
    /// Independent oracle for `det`; capped because enumeration is
    /// exponential.
    pub fn det_via_cycle_covers(&self, cap: usize) -> Result<Poly, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        if n > cap {
            return Err(MatError::SizeCapExceeded { n, cap });
        }
        if n == 0 {
            return Ok(Poly::one());
        }
        let full: u32 = (1u32 << n) - 1;
        let mut memo: BTreeMap<u32, Poly> = BTreeMap::new();
        Ok(self.cover_sum(0, full, &mut memo))
    }

    /// Sum of signed weights over cycle covers of the vertices still in
    /// `mask`.
    fn cover_sum(&self, used: u32, full: u32, memo: &mut BTreeMap<u32, Poly>) -> Poly {
        if used == full {
            return Poly::one();
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let v = (0..self.rows).find(|i| used & (1 << i) == 0).unwrap();
        let mut acc = Poly::zero();
        // enumerate directed cycles through v over unused vertices
        let mut path = vec![v];
        let mut weight = vec![Poly::one()];
        self.extend_cycle(v, used | (1 << v), full, &mut path, &mut weight, &mut acc, memo);
        memo.insert(used, acc.clone());
        acc
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_cycle(
        &self,
        v: usize,
        used: u32,
        full: u32,
        path: &mut Vec<usize>,
        weight: &mut Vec<Poly>,
        acc: &mut Poly,
        memo: &mut BTreeMap<u32, Poly>,
    ) {
        let cur = *path.last().unwrap();
        // close the cycle with the arc back to v
        let closing = self.get(cur, v);
        if !closing.is_zero() {
            let len = path.len();
            let wt = weight.last().unwrap() * closing;
            let signed = if len % 2 == 0 { -&wt } else { wt };
            let rest = self.cover_sum(used, full, memo);
            *acc = &*acc + &(&signed * &rest);
        }
        for w in 0..self.rows {
            if used & (1 << w) != 0 {
                continue;
            }
            let arc = self.get(cur, w);
            if arc.is_zero() {
                continue;
            }
            path.push(w);
            weight.push(weight.last().unwrap() * arc);
            self.extend_cycle(v, used | (1 << w), full, path, weight, acc, memo);
            path.pop();
            weight.pop();
        }
    }

    /// M(alpha, beta): delete the given rows and columns (0-based).
    pub fn submatrix(
        &self,
        delete_rows: &[usize],
        delete_cols: &[usize],
    ) -> Result<PolyMatrix, MatError> {
        if delete_rows.iter().any(|&i| i >= self.rows)
            || delete_cols.iter().any(|&j| j >= self.cols)
        {
            return Err(MatError::IndexOutOfRange);
        }
        let keep_rows: Vec<usize> = (0..self.rows).filter(|i| !delete_rows.contains(i)).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|j| !delete_cols.contains(j)).collect();
        let mut out = PolyMatrix::zero(keep_rows.len(), keep_cols.len());
        for (oi, &i) in keep_rows.iter().enumerate() {
            for (oj, &j) in keep_cols.iter().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// `M[alpha]`: retain the listed rows and columns, in the given order.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<PolyMatrix, MatError> {
        if keep.iter().any(|&i| i >= self.rows || i >= self.cols) {
            return Err(MatError::IndexOutOfRange);
        }
        let mut out = PolyMatrix::zero(keep.len(), keep.len());
        for (oi, &i) in keep.iter().enumerate() {
            for (oj, &j) in keep.iter().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// k-th determinantal divisor as the monic gcd of all k x k minors,
    /// by direct enumeration. Zero if every minor vanishes.
    pub fn determinantal_divisor_bruteforce(&self, k: usize, cap: usize) -> Result<Poly, MatError> {
        let max = self.rows.min(self.cols);
        if k == 0 || k > max {
            return Err(MatError::KOutOfRange { k, max });
        }
        let n = self.rows.max(self.cols);
        if n > cap {
            return Err(MatError::SizeCapExceeded { n, cap });
        }
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        let mut acc: Option<Poly> = None;
        for rs in &row_sets {
            for cs in &col_sets {
                let mut sub = PolyMatrix::zero(k, k);
                for (oi, &i) in rs.iter().enumerate() {
                    for (oj, &j) in cs.iter().enumerate() {
                        sub.set(oi, oj, self.get(i, j).clone());
                    }
                }
                let minor = sub.det()?;
                if minor.is_zero() {
                    continue;
                }
                acc = Some(match acc {
                    None => minor.monic()?,
                    Some(g) => {
                        if g.is_constant() {
                            g
                        } else {
                            Poly::gcd(&g, &minor)?
                        }
                    }
                });
            }
        }
        Ok(acc.unwrap_or_else(Poly::zero))
    }

    /// Matrix text format: first line `rows cols`, then one polynomial entry
    /// per line in row-major order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for e in &self.data {
            out.push_str(&format!("{e}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, MatError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| MatError::Parse(String::from("empty input")))?;
        let mut parts = header.split_whitespace();
        let rows: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| MatError::Parse(String::from("first line must be `rows cols`")))?;
        let cols: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| MatError::Parse(String::from("first line must be `rows cols`")))?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let line = lines
                .next()
                .ok_or_else(|| MatError::Parse(format!("expected {} entries", rows * cols)))?;
            data.push(Poly::from_str(line).map_err(|e| MatError::Parse(format!("{e}")))?);
        }
        Ok(PolyMatrix { rows, cols, data })
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        if idx[i] == i + n - k {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Smith Normal Form
// ---------------------------------------------------------------------------

/// Result of a Smith Normal Form computation: `P * M * Q = S` with P, Q
/// unimodular (constant nonzero determinant, tracked exactly) and S diagonal
/// with monic invariant factors e_1 | e_2 | ... | e_r followed by zeros.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub s: PolyMatrix,
    pub p: PolyMatrix,
    pub q: PolyMatrix,
    pub invariant_factors: Vec<Poly>,
    pub det_p: Rational,
    pub det_q: Rational,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Delta_k = e_1 * ... * e_k; zero when k exceeds the rank.
    pub fn determinantal_divisor(&self, k: usize) -> Result<Poly, MatError> {
        let max = self.s.rows().min(self.s.cols());
        if k == 0 || k > max {
            return Err(MatError::KOutOfRange { k, max });
        }
        if k > self.invariant_factors.len() {
            return Ok(Poly::zero());
        }
        let mut acc = Poly::one();
        for e in &self.invariant_factors[..k] {
            acc = &acc * e;
        }
        Ok(acc)
    }
}

struct SnfCalc {
    s: PolyMatrix,
    p: PolyMatrix,
    q: PolyMatrix,
    det_p: Rational,
    det_q: Rational,
}

impl SnfCalc {
    fn new(m: &PolyMatrix) -> SnfCalc {
        SnfCalc {
            s: m.clone(),
            p: PolyMatrix::identity(m.rows()),
            q: PolyMatrix::identity(m.cols()),
            det_p: Rational::one(),
            det_q: Rational::one(),
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.s.cols() {
            let a = self.s.get(i, c).clone();
            let b = self.s.get(j, c).clone();
            self.s.set(i, c, b);
            self.s.set(j, c, a);
        }
        for c in 0..self.p.cols() {
            let a = self.p.get(i, c).clone();
            let b = self.p.get(j, c).clone();
            self.p.set(i, c, b);
            self.p.set(j, c, a);
        }
        self.det_p = -&self.det_p;
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.s.rows() {
            let a = self.s.get(r, i).clone();
            let b = self.s.get(r, j).clone();
            self.s.set(r, i, b);
            self.s.set(r, j, a);
        }
        for r in 0..self.q.rows() {
            let a = self.q.get(r, i).clone();
            let b = self.q.get(r, j).clone();
            self.q.set(r, i, b);
            self.q.set(r, j, a);
        }
        self.det_q = -&self.det_q;
    }

    /// row_dst -= f * row_src
    fn row_sub(&mut self, dst: usize, src: usize, f: &Poly) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.s.cols() {
            let v = self.s.get(dst, c) - &(f * self.s.get(src, c));
            self.s.set(dst, c, v);
        }
        for c in 0..self.p.cols() {
            let v = self.p.get(dst, c) - &(f * self.p.get(src, c));
            self.p.set(dst, c, v);
        }
    }

    /// col_dst -= f * col_src
    fn col_sub(&mut self, dst: usize, src: usize, f: &Poly) {
        if f.is_zero() {
            return;
        }
        for r in 0..self.s.rows() {
            let v = self.s.get(r, dst) - &(f * self.s.get(r, src));
            self.s.set(r, dst, v);
        }
        for r in 0..self.q.rows() {
            let v = self.q.get(r, dst) - &(f * self.q.get(r, src));
            self.q.set(r, dst, v);
        }
    }

    fn row_scale(&mut self, i: usize, c: &Rational) {
        for col in 0..self.s.cols() {
            let v = self.s.get(i, col).scale(c);
            self.s.set(i, col, v);
        }
        for col in 0..self.p.cols() {
            let v = self.p.get(i, col).scale(c);
            self.p.set(i, col, v);
        }
        self.det_p = &self.det_p * c;
    }

    /// Minimal-degree nonzero entry of S[lo..hi, lo..hi]; ties broken by
    /// smallest (row, col).
    fn select_pivot(&self, lo: usize, hi: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in lo..hi {
            for j in lo..hi {
                let e = self.s.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let d = e.degree().unwrap();
                if best.as_ref().map_or(true, |&(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Diagonalizes S[lo..hi, lo..hi] by repeated pivoting on a
    /// minimal-degree entry and row/column reduction.
    fn diagonalize(&mut self, lo: usize, hi: usize) {
        for t in lo..hi {
            loop {
                let Some((pi, pj)) = self.select_pivot(t, hi) else {
                    return;
                };
                self.row_swap(t, pi);
                self.col_swap(t, pj);
                let mut clean = true;
                for i in t + 1..hi {
                    if self.s.get(i, t).is_zero() {
                        continue;
                    }
                    let (quot, rem) = self
                        .s
                        .get(i, t)
                        .divrem(self.s.get(t, t))
                        .expect("pivot nonzero");
                    self.row_sub(i, t, &quot);
                    if !rem.is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..hi {
                    if self.s.get(t, j).is_zero() {
                        continue;
                    }
                    let (quot, rem) = self
                        .s
                        .get(t, j)
                        .divrem(self.s.get(t, t))
                        .expect("pivot nonzero");
                    self.col_sub(j, t, &quot);
                    if !rem.is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
        }
    }

    /// Moves zero diagonal entries after the nonzero ones.
    fn push_zeros_back(&mut self, n: usize) {
        let mut target = 0;
        for i in 0..n {
            if !self.s.get(i, i).is_zero() {
                self.row_swap(i, target);
                self.col_swap(i, target);
                target += 1;
            }
        }
    }

    /// Divisibility repair: when e_i does not divide e_{i+1}, add row i+1 to
    /// row i and re-diagonalize the 2x2 block (standard SNF fix-up).
    fn repair_divisibility(&mut self, n: usize) {
        loop {
            let mut fixed = true;
            for i in 0..n.saturating_sub(1) {
                let a = self.s.get(i, i);
                let b = self.s.get(i + 1, i + 1);
                if b.is_zero() {
                    break;
                }
                if a.divides(b) {
                    continue;
                }
                let minus_one = Poly::constant(-Rational::one());
                self.row_sub(i, i + 1, &minus_one);
                self.diagonalize(i, i + 2);
                fixed = false;
                break;
            }
            if fixed {
                return;
            }
        }
    }
}

impl PolyMatrix {
    /// Smith Normal Form over the rational polynomial ring with accumulated
    /// unimodular witnesses. The product identity P*M*Q = S is verified
    /// before returning; a failure there is a defect and panics.
    pub fn smith_normal_form(&self) -> Result<SnfResult, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        let mut calc = SnfCalc::new(self);
        calc.diagonalize(0, n);
        calc.push_zeros_back(n);
        calc.repair_divisibility(n);
        // monic normalization by constant row scalings
        for i in 0..n {
            if let Some(lead) = calc.s.get(i, i).leading() {
                if !lead.is_one() {
                    let inv = lead.recip().expect("leading coefficient nonzero");
                    calc.row_scale(i, &inv);
                }
            }
        }
        let mut invariant_factors = Vec::new();
        for i in 0..n {
            let e = calc.s.get(i, i);
            if e.is_zero() {
                break;
            }
            invariant_factors.push(e.clone());
        }
        let result = SnfResult {
            s: calc.s,
            p: calc.p,
            q: calc.q,
            invariant_factors,
            det_p: calc.det_p,
            det_q: calc.det_q,
        };
        // re-verify the witness identity before handing the result out
        let product = result.p.mul(self)?.mul(&result.q)?;
        assert!(
            product == result.s,
            "SNF witness verification failed: P*M*Q != S"
        );
        assert!(!result.det_p.is_zero() && !result.det_q.is_zero());
        for w in result.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]), "invariant factor chain broken");
        }
        Ok(result)
    }
}

/// Per-multiplicity square-free factors from a full-rank SNF of a
/// characteristic matrix: the entry at key k is the monic square-free
/// polynomial whose roots are exactly the eigenvalues of multiplicity k
/// (e_{n-k+1} / e_{n-k}).
pub fn invariant_factor_multiplicities(
    snf: &SnfResult,
) -> Result<BTreeMap<usize, Poly>, MatError> {
    let n = snf.s.rows();
    if snf.rank() != n {
        return Err(MatError::RankDeficient);
    }
    let e = |i: usize| -> Poly {
        if i == 0 {
            Poly::one()
        } else {
            snf.invariant_factors[i - 1].clone()
        }
    };
    let mut out = BTreeMap::new();
    for k in 1..=n {
        let g = e(n - k + 1).exact_div(&e(n - k))?;
        if !g.is_constant() {
            out.insert(k, g);
        }
    }
    Ok(out)
}
