//! Real root isolation and exact arithmetic with single real algebraic
//! numbers.
//!
//! An [`AlgebraicNumber`] is a square-free integer polynomial together with
//! an isolating rational interval; rational roots collapse to an exact
//! representation. Sign decisions (`sign_of_poly_at`) are certified: a gcd
//! step decides exact vanishing, Sturm counts bound the remaining cases,
//! and the interval is refined on demand.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

use crate::exact::poly::{count_roots_half_open, Bound, IntPoly, RatPoly};
use crate::exact::rat::simplest_in_interval;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RootError {
    #[error("cannot isolate roots of the zero polynomial")]
    ZeroPolynomial,
}

/// Range over which roots are requested.
#[derive(Clone, Debug)]
pub enum RootRange {
    /// `[lo, hi]` with optional open endpoints.
    Interval {
        lo: BigRational,
        hi: BigRational,
        include_lo: bool,
        include_hi: bool,
    },
    /// `[lo, +inf)` (or open at `lo`).
    HalfLine { lo: BigRational, include_lo: bool },
    All,
}

impl RootRange {
    pub fn closed(lo: BigRational, hi: BigRational) -> Self {
        RootRange::Interval { lo, hi, include_lo: true, include_hi: true }
    }

    pub fn open(lo: BigRational, hi: BigRational) -> Self {
        RootRange::Interval { lo, hi, include_lo: false, include_hi: false }
    }

    pub fn half_line_closed(lo: BigRational) -> Self {
        RootRange::HalfLine { lo, include_lo: true }
    }

    pub fn half_line_open(lo: BigRational) -> Self {
        RootRange::HalfLine { lo, include_lo: false }
    }
}

/// A real algebraic number: one real root of a square-free integer
/// polynomial, pinned by an isolating interval. `lo == hi` encodes an
/// exact rational value.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    poly: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicNumber {
    pub fn from_rational(r: BigRational) -> Self {
        AlgebraicNumber {
            poly: IntPoly::from_rational_root(&r),
            lo: r.clone(),
            hi: r,
        }
    }

    /// Isolated irrational root: `poly` must change sign across `(lo, hi)`
    /// and contain exactly one root there.
    pub fn from_isolating(poly: IntPoly, lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo < hi);
        debug_assert!(poly.sign_at(&lo) * poly.sign_at(&hi) < 0);
        AlgebraicNumber { poly, lo, hi }
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.lo == self.hi {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// One bisection step; collapses to exact if the midpoint is the root.
    pub fn refine(&mut self) {
        if self.is_rational() {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        let s = self.poly.sign_at(&mid);
        if s == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        if self.poly.sign_at(&self.lo) * s < 0 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to_width(&mut self, eps: &BigRational) {
        while !self.is_rational() && &self.width() > eps {
            self.refine();
        }
    }

    /// Certified enclosure with width at most `2^-bits`.
    pub fn approx(&mut self, bits: u32) -> (BigRational, BigRational) {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        self.refine_to_width(&eps);
        (self.lo.clone(), self.hi.clone())
    }

    /// Certified sign of `g` evaluated at this number.
    pub fn sign_of_poly_at(&mut self, g: &IntPoly) -> i8 {
        if g.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return g.sign_at(&r.clone());
        }
        // Exact-vanishing test: g(alpha) == 0 iff gcd(f, g) has the unique
        // in-interval root, which it signals by a sign change (divisors of a
        // square-free f are square-free, and f's endpoints are non-roots).
        let h = self.poly.gcd(g);
        if h.degree().unwrap_or(0) >= 1 && h.sign_at(&self.lo) * h.sign_at(&self.hi) < 0 {
            return 0;
        }
        // Nonzero at alpha: refine until the interval is free of g's roots.
        let gsf = g.squarefree_part();
        let seq = gsf.sturm_sequence();
        loop {
            // Endpoints must avoid g's roots for the Sturm count to mean
            // what we need; bisect past them (alpha itself is not a root).
            if gsf.sign_at(&self.lo) == 0 || gsf.sign_at(&self.hi) == 0 {
                self.refine();
                if self.is_rational() {
                    return g.sign_at(&self.lo.clone());
                }
                continue;
            }
            let c = count_roots_half_open(
                &seq,
                &Bound::Finite(self.lo.clone()),
                &Bound::Finite(self.hi.clone()),
            );
            if c == 0 {
                return g.sign_at(&self.lo);
            }
            self.refine();
            if self.is_rational() {
                return g.sign_at(&self.lo.clone());
            }
        }
    }

    pub fn is_root_of(&mut self, g: &IntPoly) -> bool {
        self.sign_of_poly_at(g) == 0
    }

    /// Sign of `c0 + c1 * alpha`.
    pub fn sign_of_linear(&mut self, c0: &BigRational, c1: &BigRational) -> i8 {
        let (p, _) = RatPoly::new(vec![c0.clone(), c1.clone()]).to_int_scaled();
        self.sign_of_poly_at(&p)
    }

    /// Sign of the number itself.
    pub fn sign(&mut self) -> i8 {
        self.cmp_rational(&BigRational::zero()) as i8
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&mut self, q: &BigRational) -> Ordering {
        loop {
            if let Some(r) = self.as_rational() {
                return r.cmp(q);
            }
            if q <= &self.lo {
                return Ordering::Greater;
            }
            if q >= &self.hi {
                return Ordering::Less;
            }
            if self.poly.sign_at(q) == 0 {
                // q lies in the isolating interval and is a root: it is us.
                return Ordering::Equal;
            }
            self.refine();
        }
    }

    /// Compare two algebraic numbers by refinement. Returns `None` when the
    /// enclosures still overlap after `effort` rounds (possible equality).
    pub fn try_cmp(&mut self, other: &mut AlgebraicNumber, effort: u32) -> Option<Ordering> {
        if let Some(r) = self.as_rational().cloned() {
            return match other.cmp_rational(&r) {
                Ordering::Less => Some(Ordering::Greater),
                Ordering::Equal => Some(Ordering::Equal),
                Ordering::Greater => Some(Ordering::Less),
            };
        }
        if let Some(r) = other.as_rational().cloned() {
            return Some(self.cmp_rational(&r));
        }
        for _ in 0..effort {
            if self.hi <= other.lo {
                return Some(Ordering::Less);
            }
            if other.hi <= self.lo {
                return Some(Ordering::Greater);
            }
            self.refine();
            other.refine();
            if self.is_rational() || other.is_rational() {
                return self.try_cmp(other, effort);
            }
        }
        None
    }

    /// Exact interval evaluation of `g` over the current enclosure
    /// (interval Horner; no refinement).
    pub fn eval_interval(&self, g: &IntPoly) -> (BigRational, BigRational) {
        eval_on_interval(g, &self.lo, &self.hi)
    }

    /// Refine until the enclosure of `g(alpha)` has width at most `eps`.
    pub fn eval_to_width(&mut self, g: &IntPoly, eps: &BigRational) -> (BigRational, BigRational) {
        loop {
            let (lo, hi) = self.eval_interval(g);
            if &(&hi - &lo) <= eps || self.is_rational() {
                return (lo, hi);
            }
            self.refine();
        }
    }
}

/// Interval Horner evaluation of `g` over `[lo, hi]`.
pub fn eval_on_interval(
    g: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> (BigRational, BigRational) {
    let mut alo = BigRational::zero();
    let mut ahi = BigRational::zero();
    for c in g.coeffs().iter().rev() {
        // [alo, ahi] * [lo, hi]
        let p1 = &alo * lo;
        let p2 = &alo * hi;
        let p3 = &ahi * lo;
        let p4 = &ahi * hi;
        let mut nlo = p1.clone();
        let mut nhi = p1;
        for p in [p2, p3, p4] {
            if p < nlo {
                nlo = p.clone();
            }
            if p > nhi {
                nhi = p;
            }
        }
        let c = BigRational::from_integer(c.clone());
        alo = nlo + &c;
        ahi = nhi + c;
    }
    (alo, ahi)
}

/// One isolated real root with its multiplicity in the input polynomial.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub value: AlgebraicNumber,
    pub multiplicity: usize,
}

/// Isolate the distinct real roots of `p` in `range`.
///
/// The square-free part is taken first; multiplicities are reported per
/// root. Isolating intervals of the returned roots are pairwise disjoint
/// and the list is sorted in increasing order.
pub fn isolate_real_roots(p: &IntPoly, range: &RootRange) -> Result<Vec<IsolatedRoot>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let mut all: Vec<IsolatedRoot> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        for root in isolate_squarefree(&factor, range) {
            all.push(IsolatedRoot { value: root, multiplicity: mult });
        }
    }
    // Make enclosures pairwise disjoint (roots of coprime factors are
    // distinct reals, so refinement separates them).
    let n = all.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = all.split_at_mut(j);
            let x = &mut a[i].value;
            let y = &mut b[0].value;
            loop {
                let disjoint = x.hi < y.lo
                    || y.hi < x.lo
                    || (x.is_rational() && y.is_rational());
                if disjoint {
                    break;
                }
                x.refine();
                y.refine();
            }
        }
    }
    all.sort_by(|a, b| {
        let mut x = a.value.clone();
        let mut y = b.value.clone();
        x.try_cmp(&mut y, 256).unwrap_or(Ordering::Equal)
    });
    Ok(all)
}

fn isolate_squarefree(p: &IntPoly, range: &RootRange) -> Vec<AlgebraicNumber> {
    let bound = p.root_bound();
    let (lo, hi, include_lo, include_hi) = match range {
        RootRange::Interval { lo, hi, include_lo, include_hi } => {
            (lo.clone(), hi.clone(), *include_lo, *include_hi)
        }
        RootRange::HalfLine { lo, include_lo } => {
            let hi = if &bound > lo { bound.clone() } else { lo + BigRational::one() };
            (lo.clone(), hi, *include_lo, true)
        }
        RootRange::All => (-bound.clone(), bound.clone(), true, true),
    };
    if lo > hi {
        return vec![];
    }
    let mut out = Vec::new();
    if lo == hi {
        if include_lo && include_hi && p.sign_at(&lo) == 0 {
            out.push(AlgebraicNumber::from_rational(lo));
        }
        return out;
    }
    // Endpoint roots are detected exactly up front.
    if include_lo && p.sign_at(&lo) == 0 {
        out.push(AlgebraicNumber::from_rational(lo.clone()));
    }
    if include_hi && p.sign_at(&hi) == 0 {
        out.push(AlgebraicNumber::from_rational(hi.clone()));
    }
    let seq = p.sturm_sequence();
    // Roots strictly inside (lo, hi): count over (a, b], discounting b.
    let count_open = |a: &BigRational, b: &BigRational| -> usize {
        let c = count_roots_half_open(&seq, &Bound::Finite(a.clone()), &Bound::Finite(b.clone()));
        if p.sign_at(b) == 0 {
            c.saturating_sub(1)
        } else {
            c
        }
    };
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let c = count_open(&a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 && p.sign_at(&a) != 0 && p.sign_at(&b) != 0 {
            out.push(pin_root(p, a, b));
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        if p.sign_at(&mid) == 0 {
            out.push(AlgebraicNumber::from_rational(mid.clone()));
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out
}

/// Finish an isolated bracket: tighten and probe for a small rational root;
/// otherwise return the interval representation.
fn pin_root(p: &IntPoly, mut lo: BigRational, mut hi: BigRational) -> AlgebraicNumber {
    let two = BigRational::from_integer(BigInt::from(2));
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 64usize);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at(&mid);
        if s == 0 {
            return AlgebraicNumber::from_rational(mid);
        }
        if p.sign_at(&lo) * s < 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let probe = simplest_in_interval(&lo, &hi);
    if p.sign_at(&probe) == 0 {
        return AlgebraicNumber::from_rational(probe);
    }
    AlgebraicNumber::from_isolating(p.clone(), lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn sqrt_two_on_half_line() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        assert_eq!(roots.len(), 1);
        let mut r = roots[0].value.clone();
        let (lo, hi) = r.approx(40);
        assert!(&lo * &lo <= rat(2, 1));
        assert!(&hi * &hi >= rat(2, 1));
        assert_eq!(roots[0].multiplicity, 1);
    }

    #[test]
    fn no_roots_inside_unit_interval() {
        // 1 + t - t^2 has roots (1 +- sqrt 5)/2, both outside [0, 1].
        let p = IntPoly::from_i64(&[1, 1, -1]);
        let roots =
            isolate_real_roots(&p, &RootRange::closed(rat(0, 1), rat(1, 1))).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn golden_ratio_isolated() {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let roots = isolate_real_roots(&p, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        assert_eq!(roots.len(), 1);
        let mut tau = roots[0].value.clone();
        assert_eq!(tau.cmp_rational(&rat(8, 5)), Ordering::Greater);
        assert_eq!(tau.cmp_rational(&rat(13, 8)), Ordering::Less);
        // tau^2 = tau + 1, so tau is a root of t^2 - t - 1 and of
        // (t^2 - t - 1)(t - 3).
        let g = IntPoly::from_i64(&[-1, -1, 1]).mul(&IntPoly::from_i64(&[-3, 1]));
        assert!(tau.clone().is_root_of(&g));
        // And 2*tau - 1 = sqrt 5 > 0.
        assert_eq!(tau.sign_of_linear(&rat(-1, 1), &rat(2, 1)), 1);
    }

    #[test]
    fn rational_roots_detected_exactly() {
        // (2t - 1)(t^2 - 3): roots 1/2, +-sqrt3
        let p = IntPoly::from_i64(&[-1, 2]).mul(&IntPoly::from_i64(&[-3, 0, 1]));
        let roots = isolate_real_roots(&p, &RootRange::All).unwrap();
        assert_eq!(roots.len(), 3);
        let rationals: Vec<_> = roots
            .iter()
            .filter_map(|r| r.value.as_rational().cloned())
            .collect();
        assert_eq!(rationals, vec![rat(1, 2)]);
    }

    #[test]
    fn multiplicity_reported() {
        // (t - 1)^2 (t + 2)
        let p = IntPoly::from_i64(&[2, -3, 0, 1]);
        let roots = isolate_real_roots(&p, &RootRange::All).unwrap();
        assert_eq!(roots.len(), 2);
        let m: Vec<usize> = roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(m, vec![1, 2]); // -2 then 1
        assert_eq!(roots[1].value.as_rational(), Some(&rat(1, 1)));
    }

    #[test]
    fn refinement_keeps_single_sign_change() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        let mut r = roots[0].value.clone();
        for _ in 0..10 {
            r.refine();
            if r.is_rational() {
                break;
            }
            assert!(p.sign_at(r.lo()) * p.sign_at(r.hi()) < 0);
        }
    }

    #[test]
    fn open_interval_excludes_endpoint_roots() {
        let p = IntPoly::from_i64(&[0, 1]); // root at 0
        let closed = isolate_real_roots(&p, &RootRange::closed(rat(0, 1), rat(1, 1))).unwrap();
        assert_eq!(closed.len(), 1);
        let open = isolate_real_roots(&p, &RootRange::open(rat(0, 1), rat(1, 1))).unwrap();
        assert!(open.is_empty());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            isolate_real_roots(&IntPoly::zero(), &RootRange::All),
            Err(RootError::ZeroPolynomial)
        ));
    }

    #[test]
    fn sign_of_poly_at_certified() {
        // alpha = sqrt 2; g = t^2 - 2 vanishes, h = t^3 - 3t is
        // sqrt2(2 - 3) < 0, k = t + 5 > 0.
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&f, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        let mut a = roots[0].value.clone();
        assert_eq!(a.sign_of_poly_at(&IntPoly::from_i64(&[-2, 0, 1])), 0);
        assert_eq!(a.sign_of_poly_at(&IntPoly::from_i64(&[0, -3, 0, 1])), -1);
        assert_eq!(a.sign_of_poly_at(&IntPoly::from_i64(&[5, 1])), 1);
    }
}
