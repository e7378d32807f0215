//! Dense exact matrices over the rationals and integers.
//!
//! Everything in here is decision-grade: determinants use fraction-free
//! Bareiss elimination, PSD/rank questions are answered by symmetric
//! pivoting with exact pivots, and the Hermite normal form returns the
//! unimodular column transform alongside the reduced matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::exact::rat::format_rational;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense matrix of arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format_rational(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    /// Build from row-major i64 entries; test and fixture convenience.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| BigRational::from_integer(BigInt::from(entries[i * cols + j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
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
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn neg(&self) -> RatMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "mul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> RatMatrix {
        Self::from_fn(rows, cols, |i, j| self.at(row0 + i, col0 + j).clone())
    }

    /// Trace inner product `<A, B> = tr(A B)` for symmetric matrices.
    pub fn sym_inner(&self, other: &RatMatrix) -> BigRational {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut acc = BigRational::zero();
        for i in 0..self.rows {
            acc += self.at(i, i) * other.at(i, i);
            for j in i + 1..self.cols {
                acc += (self.at(i, j) * other.at(i, j)) * BigRational::from_integer(BigInt::from(2));
            }
        }
        acc
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i).clone()).sum()
    }

    /// Scale to a primitive integer matrix by the unique positive rational;
    /// returns the integer matrix. The zero matrix maps to zero.
    pub fn primitive_integer(&self) -> IntMatrix {
        let mut den_lcm = BigInt::one();
        for x in &self.data {
            den_lcm = num_integer::lcm(den_lcm, x.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .data
            .iter()
            .map(|x| x.numer() * (&den_lcm / x.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: ints.into_iter().map(|v| v / &g).collect(),
        }
    }
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigRational::from_integer(self.at(i, j).clone())
        })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.at(i, k) * other.at(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col_j -= q * col_k
    pub fn sub_col(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.at(i, k);
            *self.at_mut(i, j) -= delta;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }
}

/// Exact determinant via fraction-free (Bareiss) elimination.
///
/// Rational input is cleared to an integer matrix row by row first, so the
/// intermediate entries are minors of an integer matrix and stay small.
pub fn det(m: &RatMatrix) -> Result<BigRational, MatError> {
    if !m.is_square() {
        return Err(MatError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigRational::one());
    }
    // Clear denominators per row.
    let mut a = vec![vec![BigInt::zero(); n]; n];
    let mut scale = BigRational::one();
    for i in 0..n {
        let mut l = BigInt::one();
        for j in 0..n {
            l = num_integer::lcm(l, m.at(i, j).denom().clone());
        }
        for j in 0..n {
            let e = m.at(i, j);
            a[i][j] = e.numer() * (&l / e.denom());
        }
        scale *= BigRational::new(BigInt::one(), l);
    }
    let d = det_bareiss_int(&mut a);
    Ok(BigRational::from_integer(d) * scale)
}

fn det_bareiss_int(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Exact PSD test and rank of a symmetric matrix.
///
/// Symmetric elimination: 1x1 pivots on nonzero diagonal entries; when the
/// active diagonal is all zero but an off-diagonal entry survives, that
/// 2x2 block is indefinite (contributes rank 2 and kills semidefiniteness).
pub fn psd_rank(m: &RatMatrix) -> Result<(bool, usize), MatError> {
    if !m.is_symmetric() {
        return Err(MatError::NotSymmetric);
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0usize;
    let mut psd = true;
    loop {
        let pivot = active.iter().position(|&i| !a.at(i, i).is_zero());
        match pivot {
            Some(pos) => {
                let i = active[pos];
                let d = a.at(i, i).clone();
                if d.is_negative() {
                    psd = false;
                }
                rank += 1;
                active.remove(pos);
                for &p in &active {
                    let f = a.at(p, i) / &d;
                    if f.is_zero() {
                        continue;
                    }
                    for &q in &active {
                        let delta = &f * a.at(i, q);
                        let v = a.at(p, q) - delta;
                        a.set(p, q, v);
                    }
                }
            }
            None => {
                // All active diagonal entries are zero.
                let mut found = None;
                'outer: for (pa, &i) in active.iter().enumerate() {
                    for &j in active.iter().skip(pa + 1) {
                        if !a.at(i, j).is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    Some((i, j)) => {
                        psd = false;
                        rank += 2;
                        let c = a.at(i, j).clone();
                        active.retain(|&x| x != i && x != j);
                        for &p in &active {
                            for &q in &active {
                                // Schur complement of the [[0,c],[c,0]] block.
                                let delta = (a.at(p, i) * a.at(j, q) + a.at(p, j) * a.at(i, q)) / &c;
                                let v = a.at(p, q) - delta;
                                a.set(p, q, v);
                            }
                        }
                    }
                    None => break,
                }
            }
        }
        if active.is_empty() {
            break;
        }
    }
    Ok((psd, rank))
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn invert(m: &RatMatrix) -> Result<RatMatrix, MatError> {
    if !m.is_square() {
        return Err(MatError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a.at(i, col).is_zero()).ok_or(MatError::Singular)?;
        if pivot != col {
            for j in 0..n {
                let tmp = a.at(pivot, j).clone();
                a.set(pivot, j, a.at(col, j).clone());
                a.set(col, j, tmp);
                let tmp = inv.at(pivot, j).clone();
                inv.set(pivot, j, inv.at(col, j).clone());
                inv.set(col, j, tmp);
            }
        }
        let d = a.at(col, col).clone();
        for j in 0..n {
            let v = a.at(col, j) / &d;
            a.set(col, j, v);
            let v = inv.at(col, j) / &d;
            inv.set(col, j, v);
        }
        for i in 0..n {
            if i == col || a.at(i, col).is_zero() {
                continue;
            }
            let f = a.at(i, col).clone();
            for j in 0..n {
                let v = a.at(i, j) - &f * a.at(col, j);
                a.set(i, j, v);
                let v = inv.at(i, j) - &f * inv.at(col, j);
                inv.set(i, j, v);
            }
        }
    }
    Ok(inv)
}

/// Row-echelon rank of an arbitrary rational matrix.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a.at(i, col).is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a.at(p, j).clone();
                a.set(p, j, a.at(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let d = a.at(r, col).clone();
        for i in r + 1..rows {
            if a.at(i, col).is_zero() {
                continue;
            }
            let f = a.at(i, col) / &d;
            for j in col..cols {
                let v = a.at(i, j) - &f * a.at(r, j);
                a.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel `{x : M x = 0}` of a rational matrix.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a.at(i, col).is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a.at(p, j).clone();
                a.set(p, j, a.at(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let d = a.at(r, col).clone();
        for j in 0..cols {
            let v = a.at(r, j) / &d;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.at(i, col).is_zero() {
                continue;
            }
            let f = a.at(i, col).clone();
            for j in 0..cols {
                let v = a.at(i, j) - &f * a.at(r, j);
                a.set(i, j, v);
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a.at(ri, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `M x = b` exactly; `None` when inconsistent. For underdetermined
/// systems an arbitrary (deterministic) solution is returned.
pub fn solve(m: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(m.rows, b.len());
    let (rows, cols) = (m.rows, m.cols);
    let mut a = RatMatrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            m.at(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).find(|&i| !a.at(i, col).is_zero());
        let Some(p) = pivot else { continue };
        if p != r {
            for j in 0..=cols {
                let tmp = a.at(p, j).clone();
                a.set(p, j, a.at(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let d = a.at(r, col).clone();
        for j in 0..=cols {
            let v = a.at(r, j) / &d;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.at(i, col).is_zero() {
                continue;
            }
            let f = a.at(i, col).clone();
            for j in 0..=cols {
                let v = a.at(i, j) - &f * a.at(r, j);
                a.set(i, j, v);
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    // Inconsistent if a zero row has nonzero rhs.
    for i in r..rows {
        if !a.at(i, cols).is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (ri, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = a.at(ri, cols).clone();
    }
    Some(x)
}

/// Column Hermite normal form: returns `(H, U)` with `H = M * U`,
/// `|det U| = 1`, pivots positive, entries left of each pivot reduced into
/// `[0, pivot)`, and kernel-spanning zero columns trailing.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let (rows, cols) = (h.rows, h.cols);
    let mut col = 0usize;
    for row in 0..rows {
        if col == cols {
            break;
        }
        if (col..cols).all(|j| h.at(row, j).is_zero()) {
            continue;
        }
        // Euclidean sweep: shrink entries in this row until one survives.
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for j in col..cols {
                let v = h.at(row, j).abs();
                if v.is_zero() {
                    continue;
                }
                match &best {
                    Some((_, bv)) if bv <= &v => {}
                    _ => best = Some((j, v)),
                }
            }
            let (jmin, _) = best.expect("nonzero entry exists");
            h.swap_cols(col, jmin);
            u.swap_cols(col, jmin);
            let p = h.at(row, col).clone();
            let mut done = true;
            for j in col + 1..cols {
                if h.at(row, j).is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(h.at(row, j), &p);
                h.sub_col(j, col, &q);
                u.sub_col(j, col, &q);
                if !h.at(row, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(row, col).is_negative() {
            h.negate_col(col);
            u.negate_col(col);
        }
        // Reduce earlier columns at this pivot row into [0, pivot).
        let p = h.at(row, col).clone();
        for j in 0..col {
            let q = num_integer::Integer::div_floor(h.at(row, j), &p);
            h.sub_col(j, col, &q);
            u.sub_col(j, col, &q);
        }
        col += 1;
    }
    (h, u)
}

/// Basis of the integer kernel lattice `{x in Z^c : M x = 0}`; the basis is
/// saturated (it generates the full lattice, not a finite-index sublattice).
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hnf(m);
    let mut out = Vec::new();
    for j in 0..h.cols() {
        if (0..h.rows()).all(|i| h.at(i, j).is_zero()) {
            out.push(u.column(j));
        }
    }
    out
}

/// `|det U| == 1` test for integer matrices.
pub fn is_unimodular(u: &IntMatrix) -> bool {
    if u.rows() != u.cols() {
        return false;
    }
    match det(&u.to_rational()) {
        Ok(d) => d.abs() == BigRational::one(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn m3(entries: &[i64]) -> RatMatrix {
        RatMatrix::from_i64(3, 3, entries)
    }

    #[test]
    fn det_identity_is_one() {
        assert_eq!(det(&RatMatrix::identity(3)).unwrap(), rat(1, 1));
    }

    #[test]
    fn det_fcc_vertex_q_block() {
        // diag(4,4,8): cofactor expansion by hand gives 128.
        let q = m3(&[4, 0, 0, 0, 4, 0, 0, 0, 8]);
        assert_eq!(det(&q).unwrap(), rat(128, 1));
    }

    #[test]
    fn det_repeated_row_is_zero() {
        let m = m3(&[1, 2, 3, 1, 2, 3, 4, 5, 6]);
        assert_eq!(det(&m).unwrap(), rat(0, 1));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RatMatrix::zeros(2, 3);
        assert!(matches!(det(&m), Err(MatError::NotSquare { .. })));
    }

    #[test]
    fn det_rational_entries() {
        let mut m = RatMatrix::identity(2);
        m.set(0, 0, rat(1, 2));
        m.set(0, 1, rat(1, 3));
        m.set(1, 0, rat(1, 5));
        m.set(1, 1, rat(1, 7));
        assert_eq!(det(&m).unwrap(), rat(1, 14) - rat(1, 15));
    }

    #[test]
    fn psd_rank_examples() {
        let d10 = RatMatrix::from_i64(2, 2, &[1, 0, 0, 0]);
        assert_eq!(psd_rank(&d10).unwrap(), (true, 1));
        let ind = RatMatrix::from_i64(2, 2, &[1, 0, 0, -1]);
        assert_eq!(psd_rank(&ind).unwrap(), (false, 2));
        let offdiag = RatMatrix::from_i64(2, 2, &[0, 3, 3, 0]);
        assert_eq!(psd_rank(&offdiag).unwrap(), (false, 2));
        let zero = RatMatrix::zeros(3, 3);
        assert_eq!(psd_rank(&zero).unwrap(), (true, 0));
        let nonsym = RatMatrix::from_i64(2, 2, &[0, 1, 2, 0]);
        assert!(psd_rank(&nonsym).is_err());
    }

    #[test]
    fn invert_diag_and_product() {
        let d = m3(&[4, 0, 0, 0, 4, 0, 0, 0, 8]);
        let inv = invert(&d).unwrap();
        assert_eq!(inv.at(0, 0), &rat(1, 4));
        assert_eq!(inv.at(2, 2), &rat(1, 8));
        assert_eq!(d.mul(&inv), RatMatrix::identity(3));
        assert!(matches!(invert(&m3(&[1, 2, 3, 2, 4, 6, 0, 0, 1])), Err(MatError::Singular)));
    }

    #[test]
    fn rank_and_kernel() {
        let m = m3(&[1, 2, 3, 2, 4, 6, 1, 1, 1]);
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        let img = m.mul_vec(&k[0]);
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = RatMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let x = solve(&m, &[rat(3, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
        let sing = RatMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(solve(&sing, &[rat(0, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn hnf_identity() {
        let id = IntMatrix::identity(3);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_gcd_row() {
        let m = IntMatrix::from_i64(1, 2, &[2, 3]);
        let (h, u) = hnf(&m);
        assert_eq!(h.at(0, 0), &BigInt::from(1));
        assert!(h.at(0, 1).is_zero());
        assert!(is_unimodular(&u));
        assert_eq!(m.mul(&u), h);
    }

    #[test]
    fn hnf_rank_one() {
        let m = IntMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        let (h, u) = hnf(&m);
        assert!(is_unimodular(&u));
        assert_eq!(m.mul(&u), h);
        let nonzero_cols: Vec<usize> = (0..2)
            .filter(|&j| (0..2).any(|i| !h.at(i, j).is_zero()))
            .collect();
        assert_eq!(nonzero_cols, vec![0]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn primitive_integer_scaling() {
        let m = RatMatrix::from_fn(1, 3, |_, j| rat([2, 4, 6][j], 3));
        let p = m.primitive_integer();
        assert_eq!(p, IntMatrix::from_i64(1, 3, &[1, 2, 3]));
    }
}
