//! Minimum and sublevel-set enumeration of a periodic form over the index
//! set `M \ {0}`.
//!
//! Each translation class `l` contributes an inhomogeneous lattice
//! problem: `J(n, l) = (n+q)^T Q (n+q) + l^T S l - q^T Q q` with
//! `q = Q^{-1} R^T l`, so one homogeneous and finitely many closest-vector
//! instances cover all of `M`. Enumeration bounds come from an exact
//! rational LDL^T decomposition; there are no floating-point comparisons
//! anywhere on the facet-membership path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::mat::{psd_rank, RatMatrix};
use crate::exact::rat::{quadratic_integer_range, rat};
use crate::exact::roots::AlgebraicNumber;
use crate::forms::{evaluate, reduce, FormError, IndexVector, PeriodicForm};

/// Complete set of vectors of `M \ {0}` with value at most a threshold.
#[derive(Clone, Debug)]
pub struct SublevelSet {
    pub threshold: BigRational,
    /// Both signs stored; sorted lexicographically on `(l, n)`.
    pub vectors: Vec<IndexVector>,
    /// Values parallel to `vectors`.
    pub values: Vec<BigRational>,
}

impl SublevelSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// One representative per `{k, -k}` pair, in canonical order.
    pub fn pair_representatives(&self) -> Vec<IndexVector> {
        let mut out: Vec<IndexVector> =
            self.vectors.iter().map(|k| k.canonical_sign()).collect();
        out.sort_by_key(|k| k.sort_key());
        out.dedup();
        out
    }

    pub fn min_value(&self) -> Option<&BigRational> {
        self.values.iter().min()
    }

    /// Restrict to vectors with value exactly `v`.
    pub fn level_set(&self, v: &BigRational) -> Vec<IndexVector> {
        self.vectors
            .iter()
            .zip(self.values.iter())
            .filter(|(_, val)| *val == v)
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// Exact rational LDL^T of a positive definite matrix.
fn ldl(q: &RatMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = q.rows();
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut acc = q.at(i, j).clone();
            for k in 0..j {
                acc -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = acc / &d[j];
        }
        let mut acc = q.at(i, i).clone();
        for k in 0..i {
            acc -= &l[i][k] * &l[i][k] * &d[k];
        }
        assert!(acc.is_positive(), "LDL requires a positive definite matrix");
        d[i] = acc;
        l[i][i] = BigRational::one();
    }
    (l, d)
}

/// All integer `n` with `(n + offset)^T Q (n + offset) <= bound`.
///
/// Depth-first over coordinates from last to first; at each level the
/// remaining budget gives an exact integer interval for the coordinate.
fn enumerate_ellipsoid(
    q: &RatMatrix,
    offset: &[BigRational],
    bound: &BigRational,
) -> Vec<(Vec<BigInt>, BigRational)> {
    let n = q.rows();
    if bound.is_negative() {
        return vec![];
    }
    let (l, d) = ldl(q);
    let mut out = Vec::new();
    let mut x: Vec<BigInt> = vec![BigInt::zero(); n];
    // rec(level i): coordinates i+1..n are fixed; `used` is the partial sum
    // of D_k y_k^2 for k > i.
    fn rec(
        i: usize,
        q_l: &[Vec<BigRational>],
        d: &[BigRational],
        offset: &[BigRational],
        bound: &BigRational,
        used: &BigRational,
        x: &mut Vec<BigInt>,
        out: &mut Vec<(Vec<BigInt>, BigRational)>,
    ) {
        let rem = bound - used;
        // y_i = (x_i + offset_i) + sum_{j>i} L[j][i] (x_j + offset_j)
        let mut tail = BigRational::zero();
        for j in i + 1..x.len() {
            let zj = BigRational::from_integer(x[j].clone()) + &offset[j];
            tail += &q_l[j][i] * zj;
        }
        let t = &offset[i] + tail;
        let rho = rem / &d[i];
        let Some((lo, hi)) = quadratic_integer_range(&rho, &t) else {
            return;
        };
        let mut xi = lo;
        while xi <= hi {
            let y = BigRational::from_integer(xi.clone()) + &t;
            let contrib = &d[i] * &y * &y;
            let new_used = used + &contrib;
            x[i] = xi.clone();
            if i == 0 {
                out.push((x.clone(), new_used.clone()));
            } else {
                rec(i - 1, q_l, d, offset, bound, &new_used, x, out);
            }
            xi += BigInt::one();
        }
    }
    rec(n - 1, &l, &d, offset, bound, &BigRational::zero(), &mut x, &mut out);
    out
}

/// Representatives of the nonzero classes of `E - E` up to sign.
pub fn l_class_representatives(m: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    let w = m - 1;
    for i in 0..w {
        let mut v = vec![0i8; w];
        v[i] = 1;
        out.push(v);
    }
    for i in 0..w {
        for j in i + 1..w {
            let mut v = vec![0i8; w];
            v[i] = 1;
            v[j] = -1;
            out.push(v);
        }
    }
    out
}

/// Complete list of `k` in `M \ {0}` with `J(k) <= c`.
pub fn sublevel(j: &PeriodicForm, c: &BigRational) -> Result<SublevelSet, FormError> {
    let (jr, t) = reduce(j)?;
    let raw = sublevel_reduced(&jr, c)?;
    // Map back through T: vectors of J o T push forward by T.
    let mut vectors: Vec<IndexVector> = Vec::with_capacity(raw.len() * 2);
    let mut values: Vec<BigRational> = Vec::with_capacity(raw.len() * 2);
    for (k, v) in raw {
        let kk = t.apply_to_vector(&k);
        vectors.push(kk.negate());
        vectors.push(kk);
        values.push(v.clone());
        values.push(v);
    }
    let mut idx: Vec<usize> = (0..vectors.len()).collect();
    idx.sort_by_key(|&i| vectors[i].sort_key());
    idx.dedup_by(|a, b| vectors[*a] == vectors[*b]);
    let vectors: Vec<IndexVector> = idx.iter().map(|&i| vectors[i].clone()).collect();
    let values: Vec<BigRational> = idx.iter().map(|&i| values[i].clone()).collect();
    Ok(SublevelSet { threshold: c.clone(), vectors, values })
}

/// Sublevel enumeration on an already-reduced form; returns one vector per
/// found lattice point (not sign-closed).
fn sublevel_reduced(
    j: &PeriodicForm,
    c: &BigRational,
) -> Result<Vec<(IndexVector, BigRational)>, FormError> {
    let q = j.q_block();
    let mut out = Vec::new();
    // Lattice class l = 0.
    for (n, v) in enumerate_ellipsoid(&q, &vec![BigRational::zero(); j.d()], c) {
        if n.iter().all(|x| x.is_zero()) {
            continue;
        }
        out.push((IndexVector::new(n, vec![0; j.m() - 1]), v));
    }
    // Translation classes.
    let qinv_rt = j.translation_coordinates()?;
    for l in l_class_representatives(j.m()) {
        // q_off = Q^{-1} R^T l
        let mut q_off = vec![BigRational::zero(); j.d()];
        for (col, &lc) in l.iter().enumerate() {
            if lc == 0 {
                continue;
            }
            for (row, q_off_row) in q_off.iter_mut().enumerate() {
                *q_off_row += qinv_rt.at(row, col) * rat(lc as i64, 1);
            }
        }
        // constant = l^T S l - q_off^T Q q_off
        let s = j.s_block();
        let mut lsl = BigRational::zero();
        for (a, &la) in l.iter().enumerate() {
            for (b, &lb) in l.iter().enumerate() {
                if la != 0 && lb != 0 {
                    lsl += s.at(a, b) * rat((la * lb) as i64, 1);
                }
            }
        }
        let qoq = {
            let mut acc = BigRational::zero();
            for a in 0..j.d() {
                for b in 0..j.d() {
                    acc += &q_off[a] * &q_off[b] * q.at(a, b);
                }
            }
            acc
        };
        let constant = lsl - qoq;
        let budget = c - &constant;
        for (n, v) in enumerate_ellipsoid(&q, &q_off, &budget) {
            out.push((IndexVector::new(n, l.clone()), v + &constant));
        }
    }
    Ok(out)
}

/// Exact minimum of `J` over `M \ {0}`.
pub fn minimum(j: &PeriodicForm) -> Result<BigRational, FormError> {
    let (jr, _) = reduce(j)?;
    // Upper bound: cheapest lattice diagonal and one Babai point per class.
    let q = jr.q_block();
    let mut c = q.at(0, 0).clone();
    for i in 1..jr.d() {
        if q.at(i, i) < &c {
            c = q.at(i, i).clone();
        }
    }
    let qinv_rt = jr.translation_coordinates()?;
    for l in l_class_representatives(jr.m()) {
        let mut k = IndexVector::new(vec![BigInt::zero(); jr.d()], l.clone());
        for (row, ki) in k.n.iter_mut().enumerate() {
            let mut coord = BigRational::zero();
            for (col, &lc) in l.iter().enumerate() {
                if lc != 0 {
                    coord += qinv_rt.at(row, col) * rat(lc as i64, 1);
                }
            }
            // round to nearest
            *ki = crate::exact::rat::rat_floor(&(-coord + rat(1, 2)));
        }
        let v = evaluate(&jr, &k);
        if v < c {
            c = v;
        }
    }
    let s = sublevel_reduced(&jr, &c)?;
    Ok(s.into_iter()
        .map(|(_, v)| v)
        .min()
        .expect("bound is attained by construction"))
}

/// Minimal-vector set at the exact minimum.
pub fn minimal_vectors(j: &PeriodicForm) -> Result<(BigRational, SublevelSet), FormError> {
    let min = minimum(j)?;
    let s = sublevel(j, &min)?;
    Ok((min, s))
}

/// Average kissing number: lattice-type vectors weigh `m`.
pub fn kissing_number(j: &PeriodicForm) -> Result<BigRational, FormError> {
    let (_, s) = minimal_vectors(j)?;
    Ok(weighted_kissing(&s, j.m()))
}

pub fn weighted_kissing(minset: &SublevelSet, m: usize) -> BigRational {
    let lattice = minset.vectors.iter().filter(|k| k.is_lattice_type()).count();
    let other = minset.len() - lattice;
    rat((lattice * m + other) as i64, m as i64)
}

/// Sublevel set of the algebraic form `base + alpha*dir` with a rational
/// threshold. Returns vectors with their values as exact linear pairs
/// `(p, q)` meaning `p + q*alpha`.
///
/// Values are linear in the parameter, so over a bracketing interval
/// `[lo, hi]` every value is bounded below by an endpoint value; the two
/// rational endpoint enumerations therefore contain every candidate, and
/// exact linear sign tests settle membership.
pub fn algebraic_sublevel(
    base: &PeriodicForm,
    dir: &RatMatrix,
    alpha: &mut AlgebraicNumber,
    c: &BigRational,
) -> Result<Vec<(IndexVector, (BigRational, BigRational))>, FormError> {
    let (lo, hi) = pd_bracket(base, dir, alpha)?;
    let jlo = realize(base, dir, &lo)?;
    let jhi = realize(base, dir, &hi)?;
    let mut cands: Vec<IndexVector> = sublevel(&jlo, c)?.vectors;
    cands.extend(sublevel(&jhi, c)?.vectors);
    cands.sort_by_key(|k| k.sort_key());
    cands.dedup();
    let mut out = Vec::new();
    for k in cands {
        let p = evaluate(base, &k);
        let q = crate::forms::evaluate_matrix(dir, &k);
        // p + q*alpha <= c ?
        if alpha.sign_of_linear(&(&p - c), &q) <= 0 {
            out.push((k, (p, q)));
        }
    }
    Ok(out)
}

/// Minimal vectors and exact minimum `(p, q)` of an algebraic form.
pub fn algebraic_minimal_vectors(
    base: &PeriodicForm,
    dir: &RatMatrix,
    alpha: &mut AlgebraicNumber,
) -> Result<(Vec<IndexVector>, (BigRational, BigRational)), FormError> {
    let (lo, hi) = pd_bracket(base, dir, alpha)?;
    let jlo = realize(base, dir, &lo)?;
    let jhi = realize(base, dir, &hi)?;
    // Upper bound on the minimum: any vector's value maximum over the
    // bracket; take the endpoint argmins as candidates.
    let klo = minimal_vectors(&jlo)?.1.vectors[0].clone();
    let khi = minimal_vectors(&jhi)?.1.vectors[0].clone();
    let bound = |k: &IndexVector| -> BigRational {
        let a = evaluate(&jlo, k);
        let b = evaluate(&jhi, k);
        if a > b {
            a
        } else {
            b
        }
    };
    let mut c = bound(&klo);
    let c2 = bound(&khi);
    if c2 < c {
        c = c2;
    }
    let all = algebraic_sublevel(base, dir, alpha, &c)?;
    assert!(!all.is_empty());
    // Exact minimum among the candidates by pairwise linear comparison.
    let mut best = all[0].1.clone();
    for (_, v) in all.iter().skip(1) {
        // v < best  <=>  (v.0 - best.0) + (v.1 - best.1) alpha < 0
        if alpha.sign_of_linear(&(&v.0 - &best.0), &(&v.1 - &best.1)) < 0 {
            best = v.clone();
        }
    }
    let minset = all
        .into_iter()
        .filter(|(_, v)| {
            alpha
                .clone()
                .sign_of_linear(&(&v.0 - &best.0), &(&v.1 - &best.1))
                == 0
        })
        .map(|(k, _)| k)
        .collect();
    Ok((minset, best))
}

fn realize(
    base: &PeriodicForm,
    dir: &RatMatrix,
    t: &BigRational,
) -> Result<PeriodicForm, FormError> {
    PeriodicForm::new(base.d(), base.m(), base.matrix().add(&dir.scale(t)))
}

/// Shrink the isolating interval of `alpha` until both endpoint
/// realizations have positive definite `Q`.
fn pd_bracket(
    base: &PeriodicForm,
    dir: &RatMatrix,
    alpha: &mut AlgebraicNumber,
) -> Result<(BigRational, BigRational), FormError> {
    for _ in 0..256 {
        let lo = alpha.lo().clone();
        let hi = alpha.hi().clone();
        let pd = |t: &BigRational| -> Result<bool, FormError> {
            let j = realize(base, dir, t)?;
            let (psd, rank) = psd_rank(&j.q_block())?;
            Ok(psd && rank == j.d())
        };
        if pd(&lo)? && pd(&hi)? {
            return Ok((lo, hi));
        }
        if alpha.is_rational() {
            break;
        }
        alpha.refine();
    }
    Err(FormError::QNotPositiveDefinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::oracle;

    #[test]
    fn minimum_of_reference_forms() {
        for (_, f) in catalog::d3::extreme_forms() {
            assert_eq!(minimum(&f).unwrap(), rat(4, 1));
        }
        for (_, f) in catalog::d3::vertex_forms() {
            assert_eq!(minimum(&f).unwrap(), rat(4, 1));
        }
        assert_eq!(minimum(&catalog::d4::d4_vertex()).unwrap(), rat(4, 1));
        assert_eq!(minimum(&catalog::d5::d5_rep_vertex()).unwrap(), rat(4, 1));
    }

    #[test]
    fn diagonal_lattice_only_form() {
        // Q = diag(4, 9), R = 0, S = 4: minimum 4 at (e_1, 0) and (0, 1).
        let j = PeriodicForm::from_i64(2, 2, &[4, 0, 0, 0, 9, 0, 0, 0, 4]);
        assert_eq!(minimum(&j).unwrap(), rat(4, 1));
        let s = sublevel(&j, &rat(4, 1)).unwrap();
        let reps = s.pair_representatives();
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn minimal_vector_counts_in_d3() {
        let (_, s) = minimal_vectors(&catalog::d3::fcc_square()).unwrap();
        assert_eq!(s.len(), 20);
        let (_, s) = minimal_vectors(&catalog::d3::fcc_triangular()).unwrap();
        assert_eq!(s.len(), 18);
        let (_, s) = minimal_vectors(&catalog::d3::hcp()).unwrap();
        assert_eq!(s.len(), 18);
    }

    #[test]
    fn sublevel_below_minimum_is_empty() {
        let j = catalog::d3::fcc_square();
        let s = sublevel(&j, &rat(3, 1)).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn kissing_numbers() {
        assert_eq!(kissing_number(&catalog::d3::fcc_square()).unwrap(), rat(12, 1));
        assert_eq!(kissing_number(&catalog::d3::fcc_triangular()).unwrap(), rat(12, 1));
        assert_eq!(kissing_number(&catalog::d3::hcp()).unwrap(), rat(12, 1));
        assert_eq!(kissing_number(&catalog::d4::d4_vertex()).unwrap(), rat(24, 1));
    }

    #[test]
    fn negation_closed_and_even() {
        let (_, s) = minimal_vectors(&catalog::d3::hcp()).unwrap();
        assert_eq!(s.len() % 2, 0);
        for k in &s.vectors {
            assert!(s.vectors.contains(&k.negate()));
        }
    }

    #[test]
    fn agrees_with_brute_force_on_d3_forms() {
        for (_, f) in catalog::d3::extreme_forms().into_iter().chain(catalog::d3::vertex_forms()) {
            let c = rat(6, 1);
            let ours = sublevel(&f, &c).unwrap();
            let brute = oracle::brute_force_sublevel(&f, &c, 5);
            assert_eq!(ours.vectors, brute.iter().map(|(k, _)| k.clone()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_forms() {
        let mut rng = oracle::Rng::new(0xABCD_1234);
        for _ in 0..50 {
            let f = oracle::random_pd_form(&mut rng, 3);
            let min_ours = minimum(&f).unwrap();
            let min_brute = oracle::brute_force_minimum(&f, 5);
            assert_eq!(min_ours, min_brute, "form {:?}", f);
        }
    }

    #[test]
    fn gamma_equivariance_of_sublevel() {
        let mut rng = oracle::Rng::new(77);
        let j = catalog::d3::hcp();
        for _ in 0..5 {
            let t = oracle::random_gamma(&mut rng, 3, 2);
            let jt = crate::forms::apply(&j, &t);
            assert_eq!(minimum(&jt).unwrap(), minimum(&j).unwrap());
            let c = rat(5, 1);
            let s1 = sublevel(&j, &c).unwrap();
            let s2 = sublevel(&jt, &c).unwrap();
            assert_eq!(s1.len(), s2.len());
            // T maps vectors of J o T to vectors of J.
            let mut mapped: Vec<IndexVector> =
                s2.vectors.iter().map(|k| t.apply_to_vector(k)).collect();
            mapped.sort_by_key(|k| k.sort_key());
            assert_eq!(mapped, s1.vectors);
        }
    }

    #[test]
    fn algebraic_minset_kissing_34() {
        let parts = catalog::d5::nonlattice_sqrt6_kissing34();
        let base = PeriodicForm::new(5, 2, parts.base.clone()).unwrap();
        let mut alpha = parts.alpha.clone();
        let (minset, minval) =
            algebraic_minimal_vectors(&base, &parts.dir, &mut alpha).unwrap();
        // min = 4 exactly: p = 4, q = 0.
        assert_eq!(minval, (rat(4, 1), rat(0, 1)));
        let lattice = minset.iter().filter(|k| k.is_lattice_type()).count();
        let other = minset.len() - lattice;
        assert_eq!((lattice * 2 + other) as i64 % 2, 0);
        let kappa = (lattice * 2 + other) / 2;
        assert_eq!(kappa, 34);
    }
}
