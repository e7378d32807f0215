//! Independent reference oracles and deterministic generators for the test
//! and acceptance suites.
//!
//! Everything here is deliberately naive: brute-force scans over boxes of
//! index vectors, subset enumeration for cones, and a tiny deterministic
//! RNG, so the production algorithms are checked against code sharing
//! nothing with them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::exact::mat::IntMatrix;
use crate::forms::{evaluate, GammaElement, IndexVector, PeriodicForm};

/// SplitMix64: deterministic, seedable, dependency-free.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform-ish integer in `[lo, hi]` inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// All `l` vectors of `E - E` (including zero) for `m` orbits.
pub fn all_l_values(m: usize) -> Vec<Vec<i8>> {
    let w = m - 1;
    let mut out = vec![vec![0i8; w]];
    for rep in crate::shortvec::l_class_representatives(m) {
        out.push(rep.iter().map(|&x| -x).collect());
        out.push(rep);
    }
    out
}

/// Brute-force sublevel scan over `|n_i| <= bound`, all translation
/// classes; sorted like [`crate::shortvec::SublevelSet`].
pub fn brute_force_sublevel(
    j: &PeriodicForm,
    c: &BigRational,
    bound: i64,
) -> Vec<(IndexVector, BigRational)> {
    let d = j.d();
    let mut out = Vec::new();
    let mut n = vec![-bound; d];
    'outer: loop {
        for l in all_l_values(j.m()) {
            let k = IndexVector::from_i64(
                &n.iter().map(|&x| x).collect::<Vec<i64>>(),
                &l,
            );
            if k.is_zero() {
                continue;
            }
            let v = evaluate(j, &k);
            if &v <= c {
                out.push((k, v));
            }
        }
        // Increment the counter vector.
        for i in 0..d {
            if n[i] < bound {
                n[i] += 1;
                continue 'outer;
            }
            n[i] = -bound;
        }
        break;
    }
    out.sort_by_key(|(k, _)| k.sort_key());
    out
}

pub fn brute_force_minimum(j: &PeriodicForm, bound: i64) -> BigRational {
    // A generous ceiling: the scan is complete for vectors within the box,
    // so taking the min over a sublevel at a large threshold is exact as
    // long as the true minimizers are inside the box.
    let big = BigRational::from_integer(BigInt::from(1_000_000));
    brute_force_sublevel(j, &big, bound)
        .into_iter()
        .map(|(_, v)| v)
        .min()
        .expect("nonempty scan")
}

/// Random positive definite periodic form: `Q = B^T B + I` with small
/// integer `B`, small random translations.
pub fn random_pd_form(rng: &mut Rng, d: usize) -> PeriodicForm {
    let b = IntMatrix::from_fn(d, d, |_, _| BigInt::from(rng.int_in(-2, 2)));
    let q = {
        let br = b.to_rational();
        let mut q = br.transpose().mul(&br);
        for i in 0..d {
            let v = q.at(i, i) + BigRational::one();
            q.set(i, i, v);
        }
        q
    };
    let n = d + 1;
    let mut mat = crate::exact::mat::RatMatrix::zeros(n, n);
    for i in 0..d {
        for jj in 0..d {
            mat.set(i, jj, q.at(i, jj).clone());
        }
    }
    for jj in 0..d {
        let r = crate::exact::rat::rat(rng.int_in(-2, 2), 1);
        mat.set(d, jj, r.clone());
        mat.set(jj, d, r);
    }
    mat.set(d, d, crate::exact::rat::rat(rng.int_in(1, 8), 1));
    PeriodicForm::new(d, 2, mat).expect("constructed shape")
}

/// Random unimodular matrix: a short product of elementary column
/// operations applied to the identity.
pub fn random_unimodular(rng: &mut Rng, d: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(d);
    if d == 1 {
        if rng.below(2) == 0 {
            u.negate_col(0);
        }
        return u;
    }
    for _ in 0..6 {
        match rng.below(3) {
            0 => {
                let i = rng.below(d as u64) as usize;
                let mut j = rng.below(d as u64) as usize;
                if i == j {
                    j = (j + 1) % d;
                }
                let r = BigInt::from(rng.int_in(-2, 2));
                u.sub_col(i, j, &r);
            }
            1 => {
                let i = rng.below(d as u64) as usize;
                let j = rng.below(d as u64) as usize;
                u.swap_cols(i, j);
            }
            _ => {
                let i = rng.below(d as u64) as usize;
                u.negate_col(i);
            }
        }
    }
    u
}

/// Random element of the symmetry group.
pub fn random_gamma(rng: &mut Rng, d: usize, m: usize) -> GammaElement {
    let u = random_unimodular(rng, d);
    let v = IntMatrix::from_fn(d, m - 1, |_, _| BigInt::from(rng.int_in(-2, 2)));
    let perms = crate::forms::permutations(m);
    let w = crate::forms::w_matrix(&perms[rng.below(perms.len() as u64) as usize]);
    let g = GammaElement { u, v, w };
    debug_assert!(g.is_valid());
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mat::is_unimodular;

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_unimodular_is_unimodular() {
        let mut rng = Rng::new(7);
        for _ in 0..20 {
            let u = random_unimodular(&mut rng, 4);
            assert!(is_unimodular(&u));
        }
    }

    #[test]
    fn random_forms_are_positive_definite() {
        let mut rng = Rng::new(3);
        for _ in 0..20 {
            let f = random_pd_form(&mut rng, 3);
            assert!(f.q_is_positive_definite().unwrap());
        }
    }
}

/// Subset-enumeration oracle for extreme rays: every (dim-1)-subset of
/// facet normals with full rank contributes its kernel line when one of
/// its two directions satisfies all constraints. Feasible only for small
/// cones; used to cross-check the double description method.
pub fn brute_force_extreme_rays(
    reps: &[IndexVector],
    n: usize,
) -> Vec<Vec<BigRational>> {
    use crate::exact::mat::{kernel_basis, RatMatrix};
    use crate::polyhedron::constraint_coords;
    let dim = n * (n + 1) / 2;
    let coords: Vec<Vec<BigRational>> =
        reps.iter().map(|k| constraint_coords(k, n)).collect();
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    let mut subset: Vec<usize> = Vec::new();
    fn combos(
        start: usize,
        need: usize,
        total: usize,
        subset: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if need == 0 {
            f(subset);
            return;
        }
        for i in start..=total.saturating_sub(need) {
            subset.push(i);
            combos(i + 1, need - 1, total, subset, f);
            subset.pop();
        }
    }
    let mut check = |subset: &[usize]| {
        let m = RatMatrix::from_fn(subset.len(), dim, |r, c| coords[subset[r]][c].clone());
        let kern = kernel_basis(&m);
        if kern.len() != 1 {
            return;
        }
        let ray = normalize_ray(&kern[0]);
        for candidate in [ray.clone(), ray.iter().map(|x| -x.clone()).collect::<Vec<_>>()] {
            let ok = coords.iter().all(|c| {
                let v: BigRational = c.iter().zip(&candidate).map(|(a, b)| a * b).sum();
                !v.is_negative()
            });
            if ok {
                out.push(candidate);
                return;
            }
        }
    };
    combos(0, dim - 1, reps.len(), &mut subset, &mut check);
    out.sort();
    out.dedup();
    out
}

fn normalize_ray(c: &[BigRational]) -> Vec<BigRational> {
    let mut l = BigInt::one();
    for x in c {
        l = num_integer::lcm(l, x.denom().clone());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::from(0);
    for v in &ints {
        g = num_integer::gcd(g, v.clone());
    }
    if g == BigInt::from(0) {
        g = BigInt::one();
    }
    ints.into_iter()
        .map(|v| BigRational::from_integer(v / &g))
        .collect()
}
