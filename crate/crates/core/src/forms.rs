//! Periodic quadratic forms: the block matrix `J = [[Q, R^T], [R, S]]`
//! describing a `d`-dimensional point set with `m` translation orbits, the
//! symmetry group acting on it, reduction, and derived scalar quantities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::field::Elem;
use crate::exact::lll::lll_gram;
use crate::exact::mat::{det, invert, psd_rank, IntMatrix, MatError, RatMatrix};
use crate::exact::rat::{rat, rat_ceil, sqrt_interval};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FormError {
    #[error("matrix must be symmetric of size (d+m-1) x (d+m-1)")]
    BadShape,
    #[error("d must be >= 1 and m >= 1")]
    BadDims,
    #[error("Q block is not positive definite")]
    QNotPositiveDefinite,
    #[error("minimum of the form is zero")]
    ZeroMinimum,
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// A periodic quadratic form: symmetric `(d+m-1) x (d+m-1)` rational
/// matrix with distinguished blocks `Q` (`d x d` lattice Gram), `R`
/// (`(m-1) x d` translation-lattice products), `S` (`(m-1) x (m-1)`
/// translation products).
#[derive(Clone, PartialEq, Eq)]
pub struct PeriodicForm {
    d: usize,
    m: usize,
    matrix: RatMatrix,
}

impl std::fmt::Debug for PeriodicForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PeriodicForm(d={}, m={}, {:?})", self.d, self.m, self.matrix)
    }
}

impl PeriodicForm {
    pub fn new(d: usize, m: usize, matrix: RatMatrix) -> Result<Self, FormError> {
        if d < 1 || m < 1 {
            return Err(FormError::BadDims);
        }
        let n = d + m - 1;
        if matrix.rows() != n || matrix.cols() != n || !matrix.is_symmetric() {
            return Err(FormError::BadShape);
        }
        Ok(PeriodicForm { d, m, matrix })
    }

    /// Build from integer entries, row-major; fixture convenience.
    pub fn from_i64(d: usize, m: usize, entries: &[i64]) -> Self {
        let n = d + m - 1;
        Self::new(d, m, RatMatrix::from_i64(n, n, entries)).expect("valid form literal")
    }

    /// Same, scaled by a rational `num/den`.
    pub fn from_i64_scaled(d: usize, m: usize, num: i64, den: i64, entries: &[i64]) -> Self {
        let n = d + m - 1;
        let mat = RatMatrix::from_i64(n, n, entries).scale(&rat(num, den));
        Self::new(d, m, mat).expect("valid form literal")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Ambient symmetric dimension `d + m - 1`.
    pub fn n(&self) -> usize {
        self.d + self.m - 1
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn q_block(&self) -> RatMatrix {
        self.matrix.submatrix(0, 0, self.d, self.d)
    }

    pub fn r_block(&self) -> RatMatrix {
        self.matrix.submatrix(self.d, 0, self.m - 1, self.d)
    }

    pub fn s_block(&self) -> RatMatrix {
        self.matrix.submatrix(self.d, self.d, self.m - 1, self.m - 1)
    }

    pub fn q_is_positive_definite(&self) -> Result<bool, FormError> {
        let (psd, rank) = psd_rank(&self.q_block())?;
        Ok(psd && rank == self.d)
    }

    /// `Q^{-1} R^T`: the translation coordinates in the lattice basis,
    /// one column per translation vector.
    pub fn translation_coordinates(&self) -> Result<RatMatrix, FormError> {
        let qi = invert(&self.q_block())?;
        Ok(qi.mul(&self.r_block().transpose()))
    }
}

/// Element `k = (n, l)` of the index set `M = Z^d x (E - E)`, where `E`
/// is the standard basis of `Z^{m-1}` together with zero. Entries of `l`
/// lie in `{-1, 0, 1}` with at most one `+1` and at most one `-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector {
    pub n: Vec<BigInt>,
    pub l: Vec<i8>,
}

impl std::fmt::Debug for IndexVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?};{:?})", self.n, self.l)
    }
}

impl IndexVector {
    pub fn new(n: Vec<BigInt>, l: Vec<i8>) -> Self {
        let k = IndexVector { n, l };
        debug_assert!(k.is_valid());
        k
    }

    pub fn from_i64(n: &[i64], l: &[i8]) -> Self {
        Self::new(n.iter().map(|&x| BigInt::from(x)).collect(), l.to_vec())
    }

    pub fn zero(d: usize, m: usize) -> Self {
        IndexVector { n: vec![BigInt::zero(); d], l: vec![0; m - 1] }
    }

    pub fn is_valid(&self) -> bool {
        let pos = self.l.iter().filter(|&&x| x == 1).count();
        let neg = self.l.iter().filter(|&&x| x == -1).count();
        self.l.iter().all(|&x| (-1..=1).contains(&x)) && pos <= 1 && neg <= 1
    }

    pub fn is_zero(&self) -> bool {
        self.n.iter().all(|x| x.is_zero()) && self.l.iter().all(|&x| x == 0)
    }

    /// Pure lattice vector `(n, 0)`?
    pub fn is_lattice_type(&self) -> bool {
        self.l.iter().all(|&x| x == 0)
    }

    pub fn negate(&self) -> IndexVector {
        IndexVector {
            n: self.n.iter().map(|x| -x.clone()).collect(),
            l: self.l.iter().map(|&x| -x).collect(),
        }
    }

    /// Concatenated `(n, l)` as rationals.
    pub fn to_rational_vec(&self) -> Vec<BigRational> {
        self.n
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .chain(self.l.iter().map(|&x| rat(x as i64, 1)))
            .collect()
    }

    pub fn to_int_vec(&self) -> Vec<BigInt> {
        self.n
            .iter()
            .cloned()
            .chain(self.l.iter().map(|&x| BigInt::from(x)))
            .collect()
    }

    /// The rank-one symmetric matrix `k k^T`.
    pub fn outer(&self) -> RatMatrix {
        let v = self.to_rational_vec();
        RatMatrix::from_fn(v.len(), v.len(), |i, j| &v[i] * &v[j])
    }

    /// Canonical representative of the `{k, -k}` pair: first nonzero
    /// coordinate of `(l, n)` positive.
    pub fn canonical_sign(&self) -> IndexVector {
        for &x in &self.l {
            if x > 0 {
                return self.clone();
            }
            if x < 0 {
                return self.negate();
            }
        }
        for x in &self.n {
            if x.is_positive() {
                return self.clone();
            }
            if x.is_negative() {
                return self.negate();
            }
        }
        self.clone()
    }

    /// Sort key: lexicographic on `(l, n)`.
    pub fn sort_key(&self) -> (Vec<i8>, Vec<BigInt>) {
        (self.l.clone(), self.n.clone())
    }
}

/// Exact value `k^T J k`.
pub fn evaluate(j: &PeriodicForm, k: &IndexVector) -> BigRational {
    assert_eq!(k.n.len(), j.d);
    assert_eq!(k.l.len(), j.m - 1);
    let v = k.to_rational_vec();
    let mut acc = BigRational::zero();
    let mat = j.matrix();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (jj, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                acc += vi * vj * mat.at(i, jj);
            }
        }
    }
    acc
}

/// Value of `k` under an arbitrary symmetric matrix (used for ray
/// directions, which are not themselves periodic forms).
pub fn evaluate_matrix(mat: &RatMatrix, k: &IndexVector) -> BigRational {
    let v = k.to_rational_vec();
    assert_eq!(v.len(), mat.rows());
    let mut acc = BigRational::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (jj, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                acc += vi * vj * mat.at(i, jj);
            }
        }
    }
    acc
}

/// Block upper-triangular element of the symmetry group: maps the index
/// set onto itself by `(n, l) -> (U n + V l, W l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaElement {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub w: IntMatrix,
}

impl GammaElement {
    pub fn identity(d: usize, m: usize) -> Self {
        GammaElement {
            u: IntMatrix::identity(d),
            v: IntMatrix::zeros(d, m - 1),
            w: IntMatrix::identity(m - 1),
        }
    }

    pub fn d(&self) -> usize {
        self.u.rows()
    }

    pub fn m(&self) -> usize {
        self.w.rows() + 1
    }

    /// Assembled `(d+m-1) x (d+m-1)` integer matrix `[[U, V], [0, W]]`.
    pub fn assemble(&self) -> IntMatrix {
        let d = self.d();
        let mm = self.m() - 1;
        IntMatrix::from_fn(d + mm, d + mm, |i, j| {
            if i < d && j < d {
                self.u.at(i, j).clone()
            } else if i < d {
                self.v.at(i, j - d).clone()
            } else if j < d {
                BigInt::zero()
            } else {
                self.w.at(i - d, j - d).clone()
            }
        })
    }

    /// Build from an assembled integer matrix; checks the block shape.
    pub fn from_assembled(t: &IntMatrix, d: usize, m: usize) -> Option<Self> {
        let n = d + m - 1;
        if t.rows() != n || t.cols() != n {
            return None;
        }
        for i in d..n {
            for j in 0..d {
                if !t.at(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some(GammaElement {
            u: IntMatrix::from_fn(d, d, |i, j| t.at(i, j).clone()),
            v: IntMatrix::from_fn(d, m - 1, |i, j| t.at(i, j + d).clone()),
            w: IntMatrix::from_fn(m - 1, m - 1, |i, j| t.at(i + d, j + d).clone()),
        })
    }

    /// Group membership: `U` unimodular and `W` a permutation of `E`.
    pub fn is_valid(&self) -> bool {
        if !crate::exact::mat::is_unimodular(&self.u) {
            return false;
        }
        let m = self.m();
        permutations(m).iter().any(|p| &w_matrix(p) == &self.w)
    }

    /// Action on index vectors.
    pub fn apply_to_vector(&self, k: &IndexVector) -> IndexVector {
        let ln: Vec<BigInt> = k.l.iter().map(|&x| BigInt::from(x)).collect();
        let un = self.u.mul_vec(&k.n);
        let vl = self.v.mul_vec(&ln);
        let wl = self.w.mul_vec(&ln);
        IndexVector {
            n: un.iter().zip(vl.iter()).map(|(a, b)| a + b).collect(),
            l: wl
                .iter()
                .map(|x| {
                    use num_traits::ToPrimitive;
                    x.to_i8().expect("W image stays in E - E")
                })
                .collect(),
        }
    }

    pub fn compose(&self, other: &GammaElement) -> GammaElement {
        let t = self.assemble().mul(&other.assemble());
        GammaElement::from_assembled(&t, self.d(), self.m()).expect("block shape closed")
    }

    pub fn inverse(&self) -> Option<GammaElement> {
        let t = self.assemble().to_rational();
        let ti = invert(&t).ok()?;
        let n = ti.rows();
        let mut ints = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let e = ti.at(i, j);
                if !e.denom().is_one() {
                    return None;
                }
                *ints.at_mut(i, j) = e.numer().clone();
            }
        }
        GammaElement::from_assembled(&ints, self.d(), self.m())
    }
}

/// All permutations of `{0, .., m-1}`.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(m, &mut cur, &mut out);
    out.sort();
    out
}

/// The `(m-1) x (m-1)` block induced by permuting `E = {0, e_1, ..,
/// e_{m-1}}`: `W = [0 | I] Pi [[-1 .. -1], [I]]` with `Pi` the permutation
/// matrix of `perm` (`Pi e_j = e_{perm[j]}`).
pub fn w_matrix(perm: &[usize]) -> IntMatrix {
    let m = perm.len();
    let p = IntMatrix::from_fn(m - 1, m, |i, j| {
        if i + 1 == j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let pi = IntMatrix::from_fn(m, m, |i, j| {
        if perm[j] == i {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let nmat = IntMatrix::from_fn(m, m - 1, |i, j| {
        if i == 0 {
            -BigInt::one()
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    p.mul(&pi).mul(&nmat)
}

/// `J o T = T^T J T`.
pub fn apply(j: &PeriodicForm, t: &GammaElement) -> PeriodicForm {
    assert_eq!(j.d(), t.d());
    assert_eq!(j.m(), t.m());
    let tr = t.assemble().to_rational();
    let m = tr.transpose().mul(j.matrix()).mul(&tr);
    PeriodicForm::new(j.d(), j.m(), m).expect("group action preserves shape")
}

/// Lattice reduction followed by size reduction of the translations:
/// returns `(J o T, T)` with the `Q` block LLL-reduced and every entry of
/// `Q^{-1} R^T` in `[-1/2, 1/2]`.
pub fn reduce(j: &PeriodicForm) -> Result<(PeriodicForm, GammaElement), FormError> {
    if !j.q_is_positive_definite()? {
        return Err(FormError::QNotPositiveDefinite);
    }
    let d = j.d();
    let m = j.m();
    let u = lll_gram(&j.q_block());
    let t1 = GammaElement { u, v: IntMatrix::zeros(d, m - 1), w: IntMatrix::identity(m - 1) };
    let j1 = apply(j, &t1);
    // Size reduction: shift each translation by a lattice vector so its
    // coordinates land in [-1/2, 1/2]; entries already in range are left
    // alone (so boundary values stay put and reduce is idempotent).
    let coords = j1.translation_coordinates()?;
    let shift = |x: &BigRational| -> BigInt {
        if x >= &rat(-1, 2) && x <= &rat(1, 2) {
            BigInt::zero()
        } else {
            rat_ceil(&(x - rat(1, 2)))
        }
    };
    let v = IntMatrix::from_fn(d, m - 1, |i, jj| -shift(coords.at(i, jj)));
    let t2 = GammaElement { u: IntMatrix::identity(d), v, w: IntMatrix::identity(m - 1) };
    let j2 = apply(&j1, &t2);
    let t = t1.compose(&t2);
    debug_assert_eq!(apply(j, &t).matrix(), j2.matrix());
    Ok((j2, t))
}

/// Number density as an exact radicand: `delta = sqrt(radicand)` with
/// `radicand = m^2 (min/4)^d / det Q`. Rescaling the packing to radius 1
/// (min = 4) gives the familiar `m / sqrt(det Q)`.
#[derive(Clone, Debug)]
pub struct Density {
    pub radicand: Radicand,
}

#[derive(Clone, Debug)]
pub enum Radicand {
    Rational(BigRational),
    /// Value in Q(alpha) for forms realized at an algebraic edge parameter.
    Algebraic(Elem),
}

impl Density {
    pub fn from_rational(radicand: BigRational) -> Self {
        Density { radicand: Radicand::Rational(radicand) }
    }

    /// Certified enclosure of the density value.
    pub fn approx(&self, bits: u32) -> (BigRational, BigRational) {
        match &self.radicand {
            Radicand::Rational(r) => sqrt_interval(r, bits),
            Radicand::Algebraic(e) => {
                let eps = BigRational::new(BigInt::one(), BigInt::one() << (2 * bits) as usize);
                let (lo, hi) = e.approx(&eps);
                let lo = if lo.is_negative() { BigRational::zero() } else { lo };
                let (slo, _) = sqrt_interval(&lo, bits);
                let (_, shi) = sqrt_interval(&hi, bits);
                (slo, shi)
            }
        }
    }

    /// Decimal rendering with `places` digits after the point.
    pub fn decimal(&self, places: usize) -> String {
        let (lo, hi) = self.approx(224);
        let mid = (lo + hi) / rat(2, 1);
        crate::exact::rat::to_decimal_string(&mid, places)
    }

    pub fn radicand_rational(&self) -> Option<BigRational> {
        match &self.radicand {
            Radicand::Rational(r) => Some(r.clone()),
            Radicand::Algebraic(e) => e.as_rational(),
        }
    }
}

/// Density of a rational form given its exact minimum.
pub fn normalized_density(j: &PeriodicForm, min: &BigRational) -> Result<Density, FormError> {
    if min.is_zero() {
        return Err(FormError::ZeroMinimum);
    }
    if !j.q_is_positive_definite()? {
        return Err(FormError::QNotPositiveDefinite);
    }
    let dq = det(&j.q_block())?;
    let m2 = rat(j.m() as i64 * j.m() as i64, 1);
    let scale = min / rat(4, 1);
    let mut pow = BigRational::one();
    for _ in 0..j.d() {
        pow *= &scale;
    }
    Ok(Density::from_rational(m2 * pow / dq))
}

/// Is the form the representation of a lattice as an `m`-periodic set?
/// Exactly when every translation coordinate is a half-integer.
pub fn is_lattice_representation(j: &PeriodicForm) -> Result<bool, FormError> {
    let coords = j.translation_coordinates()?;
    for i in 0..coords.rows() {
        for jj in 0..coords.cols() {
            let twice = coords.at(i, jj) * rat(2, 1);
            if !twice.denom().is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn w_matrices_for_two_orbits() {
        let perms = permutations(2);
        assert_eq!(perms.len(), 2);
        let ws: Vec<IntMatrix> = perms.iter().map(|p| w_matrix(p)).collect();
        let vals: Vec<BigInt> = ws.iter().map(|w| w.at(0, 0).clone()).collect();
        assert!(vals.contains(&BigInt::one()));
        assert!(vals.contains(&(-BigInt::one())));
    }

    #[test]
    fn evaluate_on_fcc_square() {
        let j = catalog::d3::fcc_square();
        // k = (e_1, 0): the Q_11 entry.
        let k = IndexVector::from_i64(&[1, 0, 0], &[0]);
        assert_eq!(evaluate(&j, &k), rat(4, 1));
        // k = 0
        assert_eq!(evaluate(&j, &IndexVector::zero(3, 2)), rat(0, 1));
        // k = (0, 1): the S block.
        let k = IndexVector::from_i64(&[0, 0, 0], &[1]);
        assert_eq!(evaluate(&j, &k), rat(4, 1));
    }

    #[test]
    fn apply_identity_and_group_law() {
        let j = catalog::d3::fcc_square();
        let id = GammaElement::identity(3, 2);
        assert_eq!(apply(&j, &id), j);
        // Group action law on a couple of fixed elements.
        let t1 = GammaElement {
            u: IntMatrix::from_i64(3, 3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]),
            v: IntMatrix::from_i64(3, 1, &[1, 0, -1]),
            w: IntMatrix::from_i64(1, 1, &[-1]),
        };
        let t2 = GammaElement {
            u: IntMatrix::from_i64(3, 3, &[1, 0, 0, 0, 0, 1, 0, -1, 0]),
            v: IntMatrix::from_i64(3, 1, &[0, 2, 0]),
            w: IntMatrix::from_i64(1, 1, &[1]),
        };
        assert!(t1.is_valid());
        assert!(t2.is_valid());
        let lhs = apply(&apply(&j, &t1), &t2);
        let rhs = apply(&j, &t1.compose(&t2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_action_preserves_index_set() {
        let t = GammaElement {
            u: IntMatrix::from_i64(2, 2, &[2, 1, 1, 1]),
            v: IntMatrix::from_i64(2, 1, &[3, -2]),
            w: IntMatrix::from_i64(1, 1, &[-1]),
        };
        assert!(t.is_valid());
        for n0 in -2..=2i64 {
            for n1 in -2..=2i64 {
               for l in -1..=1i8 {
                    let k = IndexVector::from_i64(&[n0, n1], &[l]);
                    let img = t.apply_to_vector(&k);
                    assert!(img.is_valid());
                }
            }
        }
        let inv = t.inverse().unwrap();
        assert!(inv.is_valid());
        let k = IndexVector::from_i64(&[5, -3], &[1]);
        assert_eq!(inv.apply_to_vector(&t.apply_to_vector(&k)), k);
    }

    #[test]
    fn reduce_keeps_reduced_form_fixed() {
        let j = catalog::d3::fcc_square();
        let (jr, t) = reduce(&j).unwrap();
        assert!(t.is_valid());
        // Q = diag(4,4,8) is already LLL-reduced and the translation
        // coordinates (-1/2, 1/2, 1/2) are already in range.
        assert_eq!(jr.q_block(), j.q_block());
        assert_eq!(jr.matrix(), j.matrix());
        let coords = jr.translation_coordinates().unwrap();
        for i in 0..3 {
            assert!(coords.at(i, 0).abs() <= rat(1, 2));
        }
        // Idempotence.
        let (jrr, _) = reduce(&jr).unwrap();
        assert_eq!(jrr.q_block(), jr.q_block());
    }

    #[test]
    fn reduce_recovers_shifted_translation() {
        let j = catalog::d3::fcc_square();
        // Shift the translation by the lattice vector with coordinates
        // (3, -2, 1): R -> R + z^T Q.
        let z = RatMatrix::from_i64(3, 1, &[3, -2, 1]);
        let r2 = j.r_block().add(&z.transpose().mul(&j.q_block()));
        let s2 = {
            let ztqz = z.transpose().mul(&j.q_block()).mul(&z);
            let zr = z.transpose().mul(&j.r_block().transpose());
            j.s_block()
                .add(&ztqz)
                .add(&zr.scale(&rat(2, 1)))
        };
        let mut mat = j.matrix().clone();
        for c in 0..3 {
            mat.set(3, c, r2.at(0, c).clone());
            mat.set(c, 3, r2.at(0, c).clone());
        }
        mat.set(3, 3, s2.at(0, 0).clone());
        let shifted = PeriodicForm::new(3, 2, mat).unwrap();
        let (jr, t) = reduce(&shifted).unwrap();
        assert!(t.is_valid());
        let coords = jr.translation_coordinates().unwrap();
        for i in 0..3 {
            assert!(coords.at(i, 0).abs() <= rat(1, 2));
        }
        // The lattice block is untouched; the boundary ties resolve to
        // +1/2, so the representative may differ from `j` only in signs
        // of the half-integer translation coordinates.
        assert_eq!(jr.q_block(), j.q_block());
        assert_eq!(jr.s_block(), j.s_block());
    }

    #[test]
    fn density_examples() {
        // det Q = 256 for the 4-dimensional checkerboard vertex: delta = 1/8.
        let j4 = catalog::d4::d4_vertex();
        let dens = normalized_density(&j4, &rat(4, 1)).unwrap();
        assert_eq!(dens.radicand_rational().unwrap(), rat(1, 64));
        assert_eq!(dens.decimal(4), "0.1250");
        // d=3: det Q = 128, delta = 2/sqrt(128) = 1/(4 sqrt 2).
        let j3 = catalog::d3::fcc_square();
        let dens = normalized_density(&j3, &rat(4, 1)).unwrap();
        assert_eq!(dens.radicand_rational().unwrap(), rat(4, 128));
        assert_eq!(dens.decimal(4), "0.1768");
    }

    #[test]
    fn lattice_flags() {
        assert!(is_lattice_representation(&catalog::d3::fcc_square()).unwrap());
        assert!(!is_lattice_representation(&catalog::d3::hcp()).unwrap());
        // R = 0 is a lattice shifted by zero.
        let q = RatMatrix::from_i64(3, 3, &[4, 0, 0, 0, 4, 0, 0, 0, 4]);
        let mut mat = RatMatrix::zeros(4, 4);
        for i in 0..3 {
            for jj in 0..3 {
                mat.set(i, jj, q.at(i, jj).clone());
            }
        }
        mat.set(3, 3, rat(4, 1));
        let j = PeriodicForm::new(3, 2, mat).unwrap();
        assert!(is_lattice_representation(&j).unwrap());
    }
}
