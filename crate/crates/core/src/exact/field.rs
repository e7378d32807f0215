//! Exact arithmetic in Q(alpha) for a single real algebraic alpha.
//!
//! Elements are rational polynomials in alpha reduced modulo a square-free
//! defining polynomial `g`. The defining polynomial need not be
//! irreducible: whenever a gcd exposes a factor, the context shrinks `g`
//! to the factor that still has alpha as a root (dynamic evaluation), so
//! zero tests and inversions are always exact, without integer factoring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::rc::Rc;

use crate::exact::poly::{IntPoly, RatPoly};
use crate::exact::roots::AlgebraicNumber;

struct FieldInner {
    /// Current defining polynomial; divides the original, `g(alpha) = 0`.
    g: IntPoly,
    /// Shared root with refinable isolating interval.
    alpha: AlgebraicNumber,
}

#[derive(Clone)]
pub struct AlgebraicField {
    inner: Rc<RefCell<FieldInner>>,
}

impl AlgebraicField {
    pub fn new(alpha: AlgebraicNumber) -> Self {
        let g = alpha.defining_poly().clone();
        AlgebraicField { inner: Rc::new(RefCell::new(FieldInner { g, alpha })) }
    }

    pub fn alpha(&self) -> Elem {
        self.element(RatPoly::new(vec![BigRational::zero(), BigRational::one()]))
    }

    pub fn from_rat(&self, r: BigRational) -> Elem {
        self.element(RatPoly::constant(r))
    }

    pub fn zero(&self) -> Elem {
        self.from_rat(BigRational::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_rat(BigRational::one())
    }

    pub fn element(&self, c: RatPoly) -> Elem {
        let c = self.reduce(&c);
        Elem { c, field: self.clone() }
    }

    pub fn alpha_number(&self) -> AlgebraicNumber {
        self.inner.borrow().alpha.clone()
    }

    fn reduce(&self, c: &RatPoly) -> RatPoly {
        let g = self.inner.borrow().g.to_rational();
        if c.degree() < g.degree() {
            return c.clone();
        }
        let (_, r) = c.div_rem(&g);
        r
    }

    /// Certified sign of `c(alpha)`.
    fn sign_of(&self, c: &RatPoly) -> i8 {
        let c = self.reduce(c);
        if c.is_zero() {
            return 0;
        }
        let (ip, _) = c.to_int_scaled();
        // gcd against the current defining polynomial decides exact zero;
        // shrink the context if a factor is exposed.
        let mut inner = self.inner.borrow_mut();
        let h = inner.g.gcd(&ip);
        if h.degree().unwrap_or(0) >= 1 && Self::has_alpha(&mut inner, &h) {
            inner.g = h;
            return 0;
        }
        inner.alpha.sign_of_poly_at(&ip)
    }

    /// Does the divisor `h` of the original defining polynomial vanish at
    /// alpha? Roots of `h` are roots of the isolating polynomial, so a sign
    /// change over the isolating interval is decisive.
    fn has_alpha(inner: &mut FieldInner, h: &IntPoly) -> bool {
        if let Some(r) = inner.alpha.as_rational() {
            return h.sign_at(&r.clone()) == 0;
        }
        h.sign_at(inner.alpha.lo()) * h.sign_at(inner.alpha.hi()) < 0
    }

    /// Multiplicative inverse of a nonzero element.
    fn invert(&self, c: &RatPoly) -> RatPoly {
        loop {
            let c = self.reduce(c);
            assert!(!c.is_zero(), "inverse of zero element");
            let (ic, _) = c.to_int_scaled();
            let mut inner = self.inner.borrow_mut();
            let h = inner.g.gcd(&ic);
            if h.degree().unwrap_or(0) >= 1 {
                if Self::has_alpha(&mut inner, &h) {
                    panic!("inverse of zero element (gcd factor vanishes at alpha)");
                }
                // Shrink g to the cofactor that keeps alpha.
                inner.g = inner.g.div_exact(&h).primitive_positive();
                drop(inner);
                continue;
            }
            // gcd(c, g) = 1: extended Euclid over Q[x].
            let g = inner.g.to_rational();
            let (d, s, _) = ext_gcd(&c, &g);
            // d is a nonzero constant.
            let dc = d.coeff(0);
            drop(inner);
            return self.reduce(&s.scale(&(BigRational::one() / dc)));
        }
    }

    /// Rational enclosure of `c(alpha)` with width at most `eps`.
    fn approx(&self, c: &RatPoly, eps: &BigRational) -> (BigRational, BigRational) {
        let c = self.reduce(c);
        let (ip, scale) = c.to_int_scaled();
        let mut inner = self.inner.borrow_mut();
        let seps = eps * BigRational::from_integer(scale.clone());
        let (lo, hi) = inner.alpha.eval_to_width(&ip, &seps);
        let s = BigRational::from_integer(scale);
        (lo / &s, hi / &s)
    }
}

/// Extended gcd over Q[x]: returns `(g, s, t)` with `s a + t b = g`.
fn ext_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = RatPoly::constant(BigRational::one());
    let mut s1 = RatPoly::zero();
    let mut t0 = RatPoly::zero();
    let mut t1 = RatPoly::constant(BigRational::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let ns = s0.sub(&q.mul(&s1));
        let nt = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    (r0, s0, t0)
}

/// An element of Q(alpha).
#[derive(Clone)]
pub struct Elem {
    c: RatPoly,
    field: AlgebraicField,
}

impl std::fmt::Debug for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Elem({:?})", self.c)
    }
}

impl Elem {
    pub fn field(&self) -> &AlgebraicField {
        &self.field
    }

    pub fn poly(&self) -> &RatPoly {
        &self.c
    }

    pub fn add(&self, o: &Elem) -> Elem {
        self.field.element(self.c.add(&o.c))
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        self.field.element(self.c.sub(&o.c))
    }

    pub fn mul(&self, o: &Elem) -> Elem {
        self.field.element(self.c.mul(&o.c))
    }

    pub fn neg(&self) -> Elem {
        self.field.element(self.c.scale(&-BigRational::one()))
    }

    pub fn inv(&self) -> Elem {
        self.field.element(self.field.invert(&self.c))
    }

    pub fn div(&self, o: &Elem) -> Elem {
        self.mul(&o.inv())
    }

    pub fn sign(&self) -> i8 {
        self.field.sign_of(&self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    /// Exact rational value when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        let r = self.field.reduce(&self.c);
        match r.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(r.coeff(0)),
            _ => {
                // Could still be rational if c - q vanishes at alpha; probe
                // with the midpoint-simplest rational of a tight enclosure.
                let eps = BigRational::new(BigInt::one(), BigInt::one() << 80usize);
                let (lo, hi) = self.field.approx(&r, &eps);
                let probe = crate::exact::rat::simplest_in_interval(&lo, &hi);
                let diff = r.sub(&RatPoly::constant(probe.clone()));
                if self.field.sign_of(&diff) == 0 {
                    Some(probe)
                } else {
                    None
                }
            }
        }
    }

    pub fn approx(&self, eps: &BigRational) -> (BigRational, BigRational) {
        self.field.approx(&self.c, eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use crate::exact::roots::{isolate_real_roots, RootRange};

    fn golden_field() -> AlgebraicField {
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let roots = isolate_real_roots(&p, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        AlgebraicField::new(roots[0].value.clone())
    }

    #[test]
    fn golden_ratio_identities() {
        let f = golden_field();
        let tau = f.alpha();
        // tau^2 = tau + 1
        let lhs = tau.mul(&tau);
        let rhs = tau.add(&f.one());
        assert!(lhs.sub(&rhs).is_zero());
        // 1/tau = tau - 1
        let inv = tau.inv();
        assert!(inv.sub(&tau.sub(&f.one())).is_zero());
        // tau > 8/5
        assert_eq!(tau.sub(&f.from_rat(rat(8, 5))).sign(), 1);
        // tau^2 - tau - 1 = 0 exactly, as rational 0.
        assert_eq!(lhs.sub(&rhs).as_rational(), Some(rat(0, 1)));
    }

    #[test]
    fn dynamic_shrinking_with_reducible_defining_poly() {
        // Define sqrt2 by the reducible (t^2-2)(t^2-3); the first zero or
        // inverse decision involving t^2-2 must shrink the context rather
        // than misbehave.
        let p = IntPoly::from_i64(&[-2, 0, 1]).mul(&IntPoly::from_i64(&[-3, 0, 1]));
        let roots = isolate_real_roots(&p, &RootRange::closed(rat(1, 1), rat(3, 2))).unwrap();
        assert_eq!(roots.len(), 1); // sqrt2 only
        let f = AlgebraicField::new(roots[0].value.clone());
        let a = f.alpha();
        // alpha^2 - 2 = 0 even though the defining poly is quartic.
        let sq = a.mul(&a).sub(&f.from_rat(rat(2, 1)));
        assert!(sq.is_zero());
        // alpha^2 - 3 != 0, and must be invertible: (alpha^2-3) = -1.
        let other = a.mul(&a).sub(&f.from_rat(rat(3, 1)));
        assert_eq!(other.sign(), -1);
        let inv = other.inv();
        assert!(inv.mul(&other).sub(&f.one()).is_zero());
        assert_eq!(other.as_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn rational_alpha_degenerates_cleanly() {
        let f = AlgebraicField::new(AlgebraicNumber::from_rational(rat(3, 2)));
        let a = f.alpha();
        assert_eq!(a.as_rational(), Some(rat(3, 2)));
        let v = a.mul(&a).sub(&f.from_rat(rat(9, 4)));
        assert!(v.is_zero());
        let i = a.inv();
        assert_eq!(i.as_rational(), Some(rat(2, 3)));
    }

    #[test]
    fn approx_encloses_value() {
        let f = golden_field();
        let tau = f.alpha();
        let eps = rat(1, 1 << 30);
        let (lo, hi) = tau.approx(&eps);
        assert!(&hi - &lo <= eps);
        // 1.618033...
        assert!(lo < rat(16181, 10000));
        assert!(hi > rat(16180, 10000));
    }
}
