//! Minimal exact-endpoint interval arithmetic over the rationals, used
//! where results are reported at a requested precision (coordinates,
//! densities) rather than decided (no branch in the engine ever tests an
//! interval where exact arithmetic is available).

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exact::rat::sqrt_interval;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iv {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Iv {
    pub fn point(x: BigRational) -> Self {
        Iv { lo: x.clone(), hi: x }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Iv { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Iv) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn add(&self, o: &Iv) -> Iv {
        Iv::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Iv) -> Iv {
        Iv::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Iv {
        Iv::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Iv) -> Iv {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        Iv::new(lo, hi)
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, o: &Iv) -> Iv {
        assert!(
            o.lo.is_positive() || o.hi.is_negative(),
            "interval division through zero"
        );
        let inv = Iv::new(
            BigRational::from_integer(1.into()) / &o.hi,
            BigRational::from_integer(1.into()) / &o.lo,
        );
        self.mul(&inv)
    }

    /// Square root of a nonnegative interval at `bits` of precision.
    pub fn sqrt(&self, bits: u32) -> Iv {
        let lo = if self.lo.is_negative() {
            BigRational::zero()
        } else {
            self.lo.clone()
        };
        let (slo, _) = sqrt_interval(&lo, bits);
        let (_, shi) = sqrt_interval(&self.hi, bits);
        Iv::new(slo, shi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn arithmetic() {
        let a = Iv::new(rat(1, 1), rat(2, 1));
        let b = Iv::new(rat(-1, 1), rat(1, 2));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat(-2, 1));
        assert_eq!(p.hi, rat(1, 1));
        let q = a.div(&Iv::new(rat(2, 1), rat(4, 1)));
        assert_eq!(q.lo, rat(1, 4));
        assert_eq!(q.hi, rat(1, 1));
        let s = Iv::new(rat(2, 1), rat(2, 1)).sqrt(32);
        assert!(s.lo.clone() * s.lo.clone() <= rat(2, 1));
        assert!(s.hi.clone() * s.hi.clone() >= rat(2, 1));
    }
}
