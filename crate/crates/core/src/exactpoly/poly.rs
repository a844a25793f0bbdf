use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Division (or gcd) against the zero polynomial.
    DivisionByZero,
    /// gcd of two zero polynomials.
    BothZero,
    /// An operation required a nonzero polynomial.
    ZeroPolynomial,
    /// Real-root isolation requires a square-free input.
    NotSquareFree,
    /// A division expected to be exact left a remainder.
    InexactDivision,
    /// Text that does not parse as a polynomial.
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "division by zero polynomial"),
            PolyError::BothZero => write!(f, "gcd of two zero polynomials"),
            PolyError::ZeroPolynomial => write!(f, "operation requires a nonzero polynomial"),
            PolyError::NotSquareFree => write!(f, "polynomial is not square-free"),
            PolyError::InexactDivision => write!(f, "division was not exact"),
            PolyError::Parse(s) => write!(f, "invalid polynomial: {s}"),
        }
    }
}

impl core::error::Error for PolyError {}

/// Dense univariate polynomial over the rationals.
///
/// Coefficients are stored from degree 0 upward; the leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// `x - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Poly {
            coeffs: vec![-a, Rational::one()],
        }
    }

    /// From coefficients in degree-ascending order; trailing zeros trimmed.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from machine integers, degree-ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 for constants and the zero polynomial alike.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rational::from_int(i as i64) * c)
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Scales to leading coefficient 1. Errors on the zero polynomial.
    pub fn monic(&self) -> Result<Poly, PolyError> {
        let lead = self.leading().ok_or(PolyError::ZeroPolynomial)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lead.recip().expect("leading coefficient nonzero")))
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let d_lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let d_deg = divisor.degree().unwrap();
        if self.degree().map_or(true, |n| n < d_deg) {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = d_lead.recip().expect("leading coefficient nonzero");
        let n_deg = self.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); n_deg - d_deg + 1];
        for k in (0..=n_deg - d_deg).rev() {
            let lead = rem[k + d_deg].clone();
            if lead.is_zero() {
                continue;
            }
            let q = lead * &inv;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let delta = &q * dc;
                rem[k + i] -= &delta;
            }
            quot[k] = q;
        }
        rem.truncate(d_deg);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Division known to be exact; errors if a remainder is left.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    /// Does `self` divide `other` exactly? Zero divides only zero.
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let (_, r) = other.divrem(self).expect("nonzero divisor");
        r.is_zero()
    }

    /// Monic greatest common divisor. Errors if both inputs are zero.
    ///
    /// Computed on primitive integer polynomials with a subresultant remainder
    /// sequence; naive rational Euclid blows up on degree-10+ inputs.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::BothZero);
        }
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Ok(Poly::one());
        }
        let pa = IntPoly::from_poly(a).primitive();
        let pb = IntPoly::from_poly(b).primitive();
        let g = IntPoly::subresultant_gcd(pa, pb);
        g.to_poly().monic()
    }

    /// Largest `k` with `(x-a)^k` dividing `self` exactly.
    pub fn exact_power(&self, a: &Rational) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let lin = Poly::linear_root(a);
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                return Ok(k);
            }
            k += 1;
            cur = q;
        }
    }

    /// Yun square-free decomposition: returns `[(g_i, i)]` with each `g_i`
    /// monic, square-free and pairwise coprime, such that
    /// `self = c * prod g_i^i` for the leading coefficient `c`. Constant
    /// factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let p = self.monic()?;
        let dp = p.derivative();
        let g = Poly::gcd(&p, &dp)?;
        if g.is_constant() {
            return Ok(vec![(p, 1)]);
        }
        let mut out = Vec::new();
        let mut b = p.exact_div(&g)?;
        let c = dp.exact_div(&g)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = Poly::gcd(&b, &d)?;
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            let c_next = d.exact_div(&a)?;
            d = &c_next - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors (radical).
    pub fn squarefree_part(&self) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(Poly::one());
        }
        let g = Poly::gcd(self, &self.derivative())?;
        self.monic()?.exact_div(&g)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Integer polynomial used internally for gcd and Sturm chains, where
/// fraction-free remainder sequences keep coefficient growth in check.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn trim(mut coeffs: Vec<BigInt>) -> IntPoly {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Clears denominators: `p` times the lcm of its coefficient denominators.
    pub fn from_poly(p: &Poly) -> IntPoly {
        let mut lcm = BigInt::one();
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly::trim(coeffs)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| Rational::from_big(c.clone()))
                .collect(),
        )
    }

    /// Content: positive gcd of the coefficients (zero for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly { coeffs: Vec::new() };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| BigInt::from(i) * c)
            .collect();
        IntPoly::trim(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly { coeffs: Vec::new() };
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn exact_div_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, the classic
    /// fraction-free remainder.
    pub fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let db = b.degree();
        let c = b.leading().clone();
        let mut r = a.clone();
        let mut e = a.degree() as i64 - db as i64 + 1;
        while !r.is_zero() && r.degree() >= db {
            let s = r.leading().clone();
            let dr = r.degree();
            let mut coeffs = vec![BigInt::zero(); dr + 1];
            for (i, rc) in r.coeffs.iter().enumerate() {
                coeffs[i] = rc * &c;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                coeffs[dr - db + i] -= bc * &s;
            }
            r = IntPoly::trim(coeffs);
            e -= 1;
        }
        if e > 0 {
            let mut mult = BigInt::one();
            for _ in 0..e {
                mult *= &c;
            }
            r = r.scale(&mult);
        }
        r
    }

    /// Subresultant PRS gcd of two nonzero primitive polynomials; the result
    /// is primitive (up to sign).
    pub fn subresultant_gcd(a: IntPoly, b: IntPoly) -> IntPoly {
        let (mut a, mut b) = if a.degree() >= b.degree() {
            (a, b)
        } else {
            (b, a)
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree() - b.degree();
            let r = IntPoly::pseudo_rem(&a, &b);
            if r.is_zero() {
                return b.primitive();
            }
            if r.degree() == 0 {
                return IntPoly {
                    coeffs: vec![BigInt::one()],
                };
            }
            a = b;
            // divisor g*h^delta from the subresultant recurrence
            let mut div = g.clone();
            for _ in 0..delta {
                div *= &h;
            }
            b = r.exact_div_scalar(&div);
            g = a.leading().clone();
            // h <- g^delta * h^(1-delta), exact in the integers
            if delta == 0 {
                // h unchanged
            } else {
                let mut gn = BigInt::one();
                for _ in 0..delta {
                    gn *= &g;
                }
                let mut hd = BigInt::one();
                for _ in 0..delta - 1 {
                    hd *= &h;
                }
                h = gn / hd;
            }
        }
    }

    /// Sign of the value at `t = u/v` (v > 0) via homogeneous evaluation
    /// `sum c_i u^i v^(d-i)`, avoiding rational arithmetic.
    pub fn sign_at(&self, t: &Rational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let u = t.numer();
        let v = t.denom();
        let d = self.degree();
        let mut upow = BigInt::one();
        let mut vpows = vec![BigInt::one(); d + 1];
        for i in (0..d).rev() {
            vpows[i] = &vpows[i + 1] * v;
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &upow * &vpows[i];
            if i < d {
                upow *= u;
            }
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

// ---------------------------------------------------------------------------
// Text syntax: terms like `3/2*x^2 - x + 1/3`, whitespace-insensitive.
// ---------------------------------------------------------------------------

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse(String::from(s)));
        }
        let bad = || PolyError::Parse(String::from(s));
        let bytes = compact.as_bytes();
        let mut terms: Vec<(Rational, usize)> = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            if i >= bytes.len() {
                return Err(bad());
            }
            // optional coefficient
            let num_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff = if i > num_start {
                let n = BigInt::from_str(&compact[num_start..i]).map_err(|_| bad())?;
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let den_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == den_start {
                        return Err(bad());
                    }
                    let d = BigInt::from_str(&compact[den_start..i]).map_err(|_| bad())?;
                    Rational::new(n, d).ok_or_else(bad)?
                } else {
                    Rational::from_big(n)
                }
            } else {
                Rational::one()
            };
            if sign < 0 {
                coeff = -coeff;
            }
            // optional '*' then variable part
            let had_coeff = i > num_start;
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                if i >= bytes.len() || bytes[i] != b'x' {
                    return Err(bad());
                }
            }
            let power = if i < bytes.len() && bytes[i] == b'x' {
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let exp_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == exp_start {
                        return Err(bad());
                    }
                    compact[exp_start..i].parse::<usize>().map_err(|_| bad())?
                } else {
                    1
                }
            } else {
                if !had_coeff {
                    return Err(bad());
                }
                0
            };
            terms.push((coeff, power));
        }
        let deg = terms.iter().map(|&(_, p)| p).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (c, p) in terms {
            coeffs[p] += &c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn mul_expands() {
        // (x-1)(x-2) = x^2 - 3x + 2
        let a = p("x - 1");
        let b = p("x - 2");
        assert_eq!(&a * &b, p("x^2 - 3*x + 2"));
    }

    #[test]
    fn divrem_monomial() {
        let (q, r) = p("x^2 - 2").divrem(&p("x")).unwrap();
        assert_eq!(q, p("x"));
        assert_eq!(r, p("-2"));
        assert!(p("x").divrem(&Poly::zero()).is_err());
    }

    #[test]
    fn big_expansion_matches_evaluation() {
        // (x^2-2)^2 (x^2-5) x^4, cross-checked by evaluation at x = 2, 3, 5
        let prod = p("x^2-2").pow(2) * p("x^2-5") * Poly::x().pow(4);
        assert_eq!(prod, p("x^10 - 9*x^8 + 24*x^6 - 20*x^4"));
        for v in [2i64, 3, 5] {
            let x = Rational::from_int(v);
            let f1 = p("x^2-2").eval(&x);
            let f2 = p("x^2-5").eval(&x);
            let x4 = &x * &x * &x * &x;
            assert_eq!(prod.eval(&x), &f1 * &f1 * f2 * x4);
        }
    }

    #[test]
    fn gcd_cases() {
        assert_eq!(Poly::gcd(&p("x-1"), &p("x-2")).unwrap(), Poly::one());
        // gcd((x-1)^2 (x-2), (x-1)(x-3)) = x-1, checked by trial division
        let a = p("x-1").pow(2) * p("x-2");
        let b = p("x-1") * p("x-3");
        let g = Poly::gcd(&a, &b).unwrap();
        assert_eq!(g, p("x-1"));
        assert!(g.divides(&a) && g.divides(&b));
        // gcd(p, 0) = monic(p)
        let q = p("3*x^2 - 6");
        assert_eq!(Poly::gcd(&q, &Poly::zero()).unwrap(), p("x^2 - 2"));
        assert!(Poly::gcd(&Poly::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn gcd_survives_coefficient_growth() {
        // two degree-12 polynomials with a known degree-3 common factor
        let g = p("x^3 - 7*x + 3");
        let a = &g * &p("x^9 + 5*x^4 - 11*x + 13");
        let b = &g * &p("x^9 - 4*x^7 + 9*x^2 + 17");
        assert_eq!(Poly::gcd(&a, &b).unwrap(), g);
    }

    #[test]
    fn exact_power_counts() {
        let q = Poly::x().pow(4) * p("x^2-2").pow(2);
        assert_eq!(q.exact_power(&Rational::zero()).unwrap(), 4);
        assert_eq!(p("x-5").exact_power(&Rational::from_int(3)).unwrap(), 0);
        let r = p("x-1").pow(3) * p("x+1");
        assert_eq!(r.exact_power(&Rational::from_int(1)).unwrap(), 3);
        assert!(Poly::zero().exact_power(&Rational::zero()).is_err());
    }

    #[test]
    fn yun_decomposition() {
        let q = p("x^10 - 9*x^8 + 24*x^6 - 20*x^4");
        let dec = q.squarefree_decomposition().unwrap();
        assert_eq!(
            dec,
            vec![(p("x^2-5"), 1), (p("x^2-2"), 2), (Poly::x(), 4)]
        );
        assert_eq!(
            p("x^2-2").squarefree_decomposition().unwrap(),
            vec![(p("x^2-2"), 1)]
        );
        let sq = p("x-1").pow(2) * p("x-2").pow(2);
        assert_eq!(
            sq.squarefree_decomposition().unwrap(),
            vec![(p("x-1") * p("x-2"), 2)]
        );
    }

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "3/2*x^2 - x + 1/3",
            "x^10 - 9*x^8 + 24*x^6 - 20*x^4",
            "0",
            "-x",
            "7",
            "-5/9",
        ] {
            let q = p(s);
            assert_eq!(format!("{q}"), s);
        }
        // whitespace-insensitive, '*' optional
        assert_eq!(p("3/2x^2-x+1/3"), p(" 3/2 * x^2 - x + 1/3 "));
        assert!(Poly::from_str("x^").is_err());
        assert!(Poly::from_str("").is_err());
        assert!(Poly::from_str("2y").is_err());
    }
}
