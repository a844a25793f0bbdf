use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::poly::{IntPoly, Poly, PolyError};
use super::rational::Rational;

/// Closed interval with exact rational endpoints; `lo == hi` marks an exact
/// rational root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Option<Self> {
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    pub fn point(r: Rational) -> Self {
        Interval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::ratio(1, 2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Do the closures intersect?
    pub fn touches(&self, other: &Interval) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }
}

struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    /// Builds a primitive integer Sturm chain for a square-free polynomial.
    /// Each element is a positive rational multiple of the classical chain
    /// element, so sign variations are unchanged.
    fn new(p: &Poly) -> Sturm {
        let s0 = IntPoly::from_poly(p).primitive();
        let s1 = s0.derivative().primitive();
        let mut chain = Vec::new();
        chain.push(s0);
        if !s1.is_zero() {
            chain.push(s1);
        }
        loop {
            let n = chain.len();
            if n < 2 || chain[n - 1].degree() == 0 {
                break;
            }
            let a = &chain[n - 2];
            let b = &chain[n - 1];
            let delta = a.degree() - b.degree();
            let r = IntPoly::pseudo_rem(a, b);
            if r.is_zero() {
                break;
            }
            // multiplier lc(b)^(delta+1): flip so the stored element is a
            // positive multiple of -rem(a, b)
            let lead_negative = b.leading().is_negative();
            let mult_negative = lead_negative && (delta + 1) % 2 == 1;
            let next = if mult_negative { r } else { r.neg() };
            chain.push(next.primitive());
        }
        Sturm { chain }
    }

    fn variations_at(&self, t: &Rational) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for s in &self.chain {
            let sg = s.sign_at(t);
            if sg == 0 {
                continue;
            }
            if last != 0 && sg != last {
                count += 1;
            }
            last = sg;
        }
        count
    }
}

/// `1 + max |c_i / c_n| + 1`: every real root lies strictly inside `(-B, B)`.
fn root_bound(p: &Poly) -> Rational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let mut m = Rational::zero();
    let d = p.degree().unwrap();
    for k in 0..d {
        let q = p.coeff(k).abs() / lead.clone();
        m = m.max(q);
    }
    m + Rational::from_int(2)
}

fn sign_of(p: &IntPoly, at: &Rational) -> i8 {
    p.sign_at(at)
}

/// Divisors of `|l|`, or `None` when `l` is too large to enumerate cheaply.
fn small_divisors(l: &BigInt) -> Option<Vec<BigInt>> {
    let v = l.abs().to_u64()?;
    if v == 0 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    let mut steps = 0u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= v) {
        steps += 1;
        if steps > 1_000_000 {
            return None;
        }
        if v % d == 0 {
            divs.push(BigInt::from(d));
            if d != v / d {
                divs.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    divs.sort();
    Some(divs)
}

/// One bisection step on an isolating interval. Point intervals are returned
/// unchanged; if the midpoint is a root the result collapses to a point.
pub fn refine_interval(p: &Poly, iv: &Interval) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let ip = IntPoly::from_poly(p);
    refine_with(&ip, iv)
}

fn refine_with(ip: &IntPoly, iv: &Interval) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let m = iv.midpoint();
    let sm = sign_of(ip, &m);
    if sm == 0 {
        return Interval::point(m);
    }
    let slo = sign_of(ip, iv.lo());
    debug_assert!(slo != 0 && sign_of(ip, iv.hi()) == -slo);
    if sm == slo {
        Interval::new(m, iv.hi().clone()).unwrap()
    } else {
        Interval::new(iv.lo().clone(), m).unwrap()
    }
}

/// Isolates all real roots of a square-free polynomial.
///
/// Returns disjoint closed intervals with rational endpoints, sorted in
/// ascending root order, each containing exactly one real root and jointly
/// containing all of them. Rational roots come back as point intervals.
pub fn isolate_real_roots(p: &Poly) -> Result<Vec<Interval>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = Poly::gcd(p, &p.derivative())?;
    if !g.is_constant() {
        return Err(PolyError::NotSquareFree);
    }

    let mut exact: Vec<Rational> = Vec::new();
    let mut work = p.monic()?;
    if work.coeff(0).is_zero() {
        exact.push(Rational::zero());
        work = work.exact_div(&Poly::x())?;
    }

    // Sturm bisection; an exact hit at a midpoint deflates the polynomial and
    // restarts with a fresh chain.
    let mut ranges: Vec<Interval> = Vec::new();
    'restart: loop {
        ranges.clear();
        if work.is_constant() {
            break;
        }
        let sturm = Sturm::new(&work);
        let bound = root_bound(&work);
        let lo = -&bound;
        let hi = bound.clone();
        let mut stack = Vec::new();
        let vlo = sturm.variations_at(&lo);
        let vhi = sturm.variations_at(&hi);
        stack.push((lo, vlo, hi, vhi));
        while let Some((a, va, b, vb)) = stack.pop() {
            let count = va - vb;
            if count == 0 {
                continue;
            }
            if count == 1 {
                ranges.push(Interval::new(a, b).unwrap());
                continue;
            }
            let m = (&a + &b) * Rational::ratio(1, 2);
            if work.eval(&m).is_zero() {
                exact.push(m.clone());
                work = work.exact_div(&Poly::linear_root(&m))?;
                continue 'restart;
            }
            let vm = sturm.variations_at(&m);
            stack.push((a, va, m.clone(), vm));
            stack.push((m, vm, b, vb));
        }
        break;
    }

    // Exact detection of rational roots: the lowest-terms denominator of any
    // rational root divides the integer leading coefficient, so once an
    // isolating interval is narrower than 1/L^2 there is at most one
    // candidate to test per divisor.
    let ip = IntPoly::from_poly(&work);
    let divisors = if work.is_constant() {
        None
    } else {
        small_divisors(ip.leading())
    };
    let mut located: Vec<Interval> = Vec::new();
    for mut iv in ranges {
        if let Some(divs) = &divisors {
            let lead = Rational::from_big(ip.leading().abs());
            let threshold = (&lead * &lead + Rational::one())
                .recip()
                .expect("positive");
            while !iv.is_point() && iv.width() >= threshold {
                iv = refine_with(&ip, &iv);
            }
            if !iv.is_point() {
                'candidates: for e in divs {
                    let er = Rational::from_big(e.clone());
                    let lo_scaled = iv.lo() * &er;
                    let hi_scaled = iv.hi() * &er;
                    let mut d = lo_scaled.floor_int() + 1i32;
                    let stop = hi_scaled.ceil_int();
                    while d < stop {
                        let cand = Rational::new(d.clone(), e.clone()).expect("nonzero divisor");
                        if work.eval(&cand).is_zero() {
                            iv = Interval::point(cand);
                            break 'candidates;
                        }
                        d += 1i32;
                    }
                }
            }
        }
        located.push(iv);
    }
    for r in exact {
        located.push(Interval::point(r));
    }

    // Refine until closures are pairwise disjoint, then ascending order is
    // certified exactly.
    loop {
        located.sort_by(|a, b| a.lo().cmp(b.lo()).then_with(|| a.hi().cmp(b.hi())));
        let mut clash = None;
        for i in 0..located.len().saturating_sub(1) {
            if located[i].touches(&located[i + 1]) {
                clash = Some(i);
                break;
            }
        }
        match clash {
            None => break,
            Some(i) => {
                located[i] = refine_with(&ip, &located[i]);
                located[i + 1] = refine_with(&ip, &located[i + 1]);
            }
        }
    }
    Ok(located)
}

/// Number of distinct real roots of a square-free polynomial.
pub(crate) fn count_real_roots(p: &Poly) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(0);
    }
    let g = Poly::gcd(p, &p.derivative())?;
    if !g.is_constant() {
        return Err(PolyError::NotSquareFree);
    }
    let sturm = Sturm::new(p);
    let bound = root_bound(p);
    Ok(sturm.variations_at(&-&bound) - sturm.variations_at(&bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn single_rational_root() {
        let ivs = isolate_real_roots(&Poly::x()).unwrap();
        assert_eq!(ivs, vec![Interval::point(Rational::zero())]);
    }

    #[test]
    fn sqrt_two_pair() {
        let ivs = isolate_real_roots(&p("x^2 - 2")).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(*ivs[0].lo() >= rat(-2, 1) && *ivs[0].hi() <= rat(-1, 1));
        assert!(*ivs[1].lo() >= rat(1, 1) && *ivs[1].hi() <= rat(2, 1));
        assert!(!ivs[0].touches(&ivs[1]));
    }

    #[test]
    fn example_spectrum_ordering() {
        // x(x^2-2)(x^2-5): five roots ordered -sqrt5 < -sqrt2 < 0 < sqrt2 < sqrt5
        let q = Poly::x() * p("x^2-2") * p("x^2-5");
        let ivs = isolate_real_roots(&q).unwrap();
        assert_eq!(ivs.len(), 5);
        assert!(ivs[2].is_point() && ivs[2].lo().is_zero());
        for w in ivs.windows(2) {
            assert!(w[0].hi() < w[1].lo());
        }
        // the last two intervals bracket sqrt2 and sqrt5: lo^2 < r^2 < hi^2
        let sq = |r: &Rational| r * r;
        assert!(sq(ivs[3].lo()) < rat(2, 1) && sq(ivs[3].hi()) > rat(2, 1));
        assert!(sq(ivs[4].lo()) < rat(5, 1) && sq(ivs[4].hi()) > rat(5, 1));
        // mirrored on the negative side
        assert!(sq(ivs[0].lo()) > rat(5, 1) && sq(ivs[0].hi()) < rat(5, 1));
        assert!(sq(ivs[1].lo()) > rat(2, 1) && sq(ivs[1].hi()) < rat(2, 1));
    }

    #[test]
    fn rational_roots_reported_exactly() {
        // roots 3/2, -1, 7
        let q = p("2*x - 3") * p("x + 1") * p("x - 7");
        let ivs = isolate_real_roots(&q).unwrap();
        assert_eq!(
            ivs,
            vec![
                Interval::point(rat(-1, 1)),
                Interval::point(rat(3, 2)),
                Interval::point(rat(7, 1)),
            ]
        );
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p("x^2 + 1")).unwrap().is_empty());
        assert_eq!(count_real_roots(&p("x^2 + 1")).unwrap(), 0);
        assert_eq!(count_real_roots(&p("x^2 - 2")).unwrap(), 2);
    }

    #[test]
    fn rejects_non_squarefree() {
        let q = p("x-1").pow(2);
        assert_eq!(
            isolate_real_roots(&q).unwrap_err(),
            PolyError::NotSquareFree
        );
    }

    #[test]
    fn mixed_rational_and_irrational() {
        // (x^2 - 3)(x - 1): irrational pair around a rational root
        let q = p("x^2 - 3") * p("x - 1");
        let ivs = isolate_real_roots(&q).unwrap();
        assert_eq!(ivs.len(), 3);
        assert!(ivs[1].is_point());
        assert_eq!(*ivs[1].lo(), rat(1, 1));
        assert!(ivs[0].hi() < ivs[1].lo() && ivs[1].hi() < ivs[2].lo());
    }
}
