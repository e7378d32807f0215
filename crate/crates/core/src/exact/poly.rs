//! Univariate polynomials with exact integer and rational coefficients.
//!
//! Coefficients are stored lowest degree first; the leading coefficient is
//! nonzero unless the polynomial is zero. Integer polynomials carry the
//! Sturm machinery used for real root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monic-degree-one polynomial `den*t - num`, whose root is `r`.
    pub fn from_rational_root(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i8 {
        sign_of(&self.eval_rat(x))
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Content: nonnegative gcd of the coefficients (zero for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.clone());
        }
        g
    }

    /// Primitive part, sign preserved (divides by the positive content).
    pub fn primitive(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_positive(&self) -> IntPoly {
        let p = self.primitive();
        if p.leading().is_some_and(|l| l.is_negative()) {
            p.neg()
        } else {
            p
        }
    }

    /// Exact quotient in Z[t]; panics if the division is not exact.
    /// Only used where exactness is guaranteed (Bareiss minors, Yun steps).
    pub fn div_exact(&self, other: &IntPoly) -> IntPoly {
        let (q, r) = self.to_rational().div_rem(&other.to_rational());
        assert!(r.is_zero(), "div_exact: nonzero remainder");
        let (ip, scale) = q.to_int_scaled();
        assert!(scale.is_one(), "div_exact: non-integer quotient");
        ip
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Primitive PRS gcd; result is primitive with positive leading coeff.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_positive();
        let mut b = other.primitive_positive();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let (_, r) = a.to_rational().div_rem(&b.to_rational());
            let r = r.to_int_scaled().0.primitive_positive();
            a = b;
            b = r;
        }
        a.primitive_positive()
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_positive();
        }
        self.div_rational(&g).primitive_positive()
    }

    /// Quotient over Q (remainder discarded), scaled back to a primitive
    /// integer polynomial with the quotient's sign.
    fn div_rational(&self, other: &IntPoly) -> IntPoly {
        let (q, _) = self.to_rational().div_rem(&other.to_rational());
        q.to_int_scaled().0
    }

    /// Yun's square-free decomposition: returns `(factor, multiplicity)`
    /// pairs with distinct square-free factors.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let p = self.primitive_positive();
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.degree() == Some(0) {
            return vec![(p, 1)];
        }
        let mut out = Vec::new();
        let mut b = p.div_rational(&g);
        let mut d = dp.div_rational(&g).sub(&b.derivative());
        let mut i = 1usize;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rational(&a);
            d = d.div_rational(&a).sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// A strict upper bound on the absolute value of every real root.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().expect("root bound of zero polynomial").abs();
        let mut sum = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            sum += c.abs();
        }
        BigRational::one() + BigRational::new(sum, lead)
    }

    /// Sturm sequence of the (assumed square-free) polynomial.
    pub fn sturm_sequence(&self) -> Vec<IntPoly> {
        let mut seq = Vec::new();
        let p0 = self.primitive_positive();
        if p0.is_zero() {
            return seq;
        }
        seq.push(p0.clone());
        let mut prev = p0;
        let mut cur = self.derivative().primitive();
        while !cur.is_zero() {
            seq.push(cur.clone());
            let (_, r) = prev.to_rational().div_rem(&cur.to_rational());
            // Negated remainder, scaled by a positive rational only.
            let next = r.to_int_scaled().0.primitive().neg();
            prev = cur;
            cur = next;
        }
        seq
    }

    /// Substitute a rational polynomial for the variable.
    pub fn compose_rat(&self, arg: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(arg);
            acc = acc.add(&RatPoly::constant(BigRational::from_integer(c.clone())));
        }
        acc
    }
}

pub fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Where to evaluate a Sturm chain.
#[derive(Clone, Debug)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

/// Number of sign variations of the sequence at the given bound.
pub fn sign_variations(seq: &[IntPoly], at: &Bound) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| match at {
            Bound::Finite(x) => p.sign_at(x),
            Bound::PosInf => p.leading().map_or(0, |l| sign_of_int(l)),
            Bound::NegInf => p.leading().map_or(0, |l| {
                let s = sign_of_int(l);
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }),
        })
        .collect();
    let mut count = 0;
    let mut last: Option<i8> = None;
    for s in signs {
        if s == 0 {
            continue;
        }
        if let Some(l) = last {
            if l != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

fn sign_of_int(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Distinct real roots of the square-free `p` in the half-open `(a, b]`.
pub fn count_roots_half_open(seq: &[IntPoly], a: &Bound, b: &Bound) -> usize {
    let va = sign_variations(seq, a);
    let vb = sign_variations(seq, b);
    va.saturating_sub(vb)
}

/// Dense rational polynomial, used for intermediate quotients and
/// interpolation before clearing to integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Long division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!other.is_zero(), "polynomial division by zero");
        let dd = other.degree().unwrap();
        let lead = other.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k].clone() / &lead;
            if !c.is_zero() {
                quot[k - dd] = c.clone();
                for (i, oc) in other.coeffs.iter().enumerate() {
                    rem[k - dd + i] -= &c * oc;
                }
            }
            rem.pop();
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Clear denominators: returns `(p, s)` with `self = p / s` for a
    /// positive integer `s` and primitive integer polynomial `p`... the
    /// scale is returned so callers needing the exact value can keep it.
    pub fn to_int_scaled(&self) -> (IntPoly, BigInt) {
        if self.is_zero() {
            return (IntPoly::zero(), BigInt::one());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = num_integer::lcm(l, c.denom().clone());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        (IntPoly::new(ints), l)
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> RatPoly {
        let mut acc = RatPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut li = RatPoly::constant(BigRational::one());
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                li = li.mul(&RatPoly::new(vec![-xj.clone(), BigRational::one()]));
                denom *= xi - xj;
            }
            acc = acc.add(&li.scale(&(yi / denom)));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn arithmetic_basics() {
        let p = IntPoly::from_i64(&[1, 2, 3]); // 1 + 2t + 3t^2
        let q = IntPoly::from_i64(&[0, 1]); // t
        assert_eq!(p.mul(&q), IntPoly::from_i64(&[0, 1, 2, 3]));
        assert_eq!(p.add(&q), IntPoly::from_i64(&[1, 3, 3]));
        assert_eq!(p.derivative(), IntPoly::from_i64(&[2, 6]));
        assert_eq!(p.eval_rat(&rat(1, 2)), rat(11, 4));
        assert_eq!(p.degree(), Some(2));
        assert!(IntPoly::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2)
        let p = IntPoly::from_i64(&[2, -3, 0, 1]);
        let sf = p.squarefree_part();
        // (t-1)(t+2) = t^2 + t - 2
        assert_eq!(sf, IntPoly::from_i64(&[-2, 1, 1]));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (IntPoly::from_i64(&[2, 1]), 1));
        assert_eq!(dec[1], (IntPoly::from_i64(&[-1, 1]), 2));
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let q = IntPoly::from_i64(&[-3, 0, 1]);
        assert_eq!(p.gcd(&q).degree(), Some(0));
    }

    #[test]
    fn sturm_counts_roots() {
        // (t^2 - 2)(t - 3): roots -sqrt2, sqrt2, 3
        let p = IntPoly::from_i64(&[6, -2, -3, 1]);
        let seq = p.sturm_sequence();
        let count = count_roots_half_open(&seq, &Bound::NegInf, &Bound::PosInf);
        assert_eq!(count, 3);
        let count = count_roots_half_open(
            &seq,
            &Bound::Finite(rat(0, 1)),
            &Bound::Finite(rat(2, 1)),
        );
        assert_eq!(count, 1);
        let count = count_roots_half_open(
            &seq,
            &Bound::Finite(rat(0, 1)),
            &Bound::Finite(rat(3, 1)),
        );
        assert_eq!(count, 2);
    }

    #[test]
    fn interpolation_recovers_poly() {
        // p(t) = t^2 - t - 1 through t = 0, 1, 2
        let pts = vec![
            (rat(0, 1), rat(-1, 1)),
            (rat(1, 1), rat(-1, 1)),
            (rat(2, 1), rat(1, 1)),
        ];
        let p = RatPoly::interpolate(&pts);
        let (ip, _) = p.to_int_scaled();
        assert_eq!(ip, IntPoly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn division_and_exact_quotient() {
        let p = IntPoly::from_i64(&[-2, 1, 1]); // (t-1)(t+2)
        let q = IntPoly::from_i64(&[2, 1]);
        assert_eq!(p.div_exact(&q), IntPoly::from_i64(&[-1, 1]));
        let (quo, rem) = p.to_rational().div_rem(&IntPoly::from_i64(&[1, 1]).to_rational());
        assert_eq!(quo.coeff(1), rat(1, 1));
        assert_eq!(rem.coeff(0), rat(-2, 1));
    }

    #[test]
    fn root_bound_is_strict() {
        let p = IntPoly::from_i64(&[6, -2, -3, 1]);
        let b = p.root_bound();
        assert!(p.sign_at(&b) != 0);
        assert!(b > rat(3, 1));
    }

    #[test]
    fn compose_with_rational_poly() {
        // f(t) = t^2 - t - 1 at arg = (1 + 2t)/3 ... arg as RatPoly
        let f = IntPoly::from_i64(&[-1, -1, 1]);
        let arg = RatPoly::new(vec![rat(1, 3), rat(2, 3)]);
        let c = f.compose_rat(&arg);
        // f((1+2t)/3) at t=1: f(1) = -1
        assert_eq!(c.eval(&rat(1, 1)), rat(-1, 1));
    }
}
