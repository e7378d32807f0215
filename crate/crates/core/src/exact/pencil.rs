//! Determinant pencils `det(A + t B)` and PSD/rank decisions for pencil
//! matrices evaluated at algebraic parameters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::exact::mat::{det, MatError, RatMatrix};
use crate::exact::poly::{IntPoly, RatPoly};
use crate::exact::roots::AlgebraicNumber;

/// `p` with `p(t) = c * det(A + t B)` for some rational `c > 0`.
///
/// Evaluated exactly at the integer nodes `t = 0..=n` and interpolated;
/// the positive scale keeps every sign decision on `p` valid for the
/// determinant itself.
pub fn pencil_poly(a: &RatMatrix, b: &RatMatrix) -> Result<IntPoly, MatError> {
    if !a.is_square() {
        return Err(MatError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(MatError::Dimension(format!(
            "pencil blocks {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let mut points = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = BigRational::from_integer(BigInt::from(k));
        let m = a.add(&b.scale(&t));
        points.push((t, det(&m)?));
    }
    let p = RatPoly::interpolate(&points);
    Ok(p.to_int_scaled().0.primitive())
}

/// Clear the pencil `A + t B` to integer-polynomial entries by a global
/// positive scale (PSD and rank at any `t` are unaffected).
pub fn pencil_entries(a: &RatMatrix, b: &RatMatrix) -> Vec<Vec<IntPoly>> {
    let n = a.rows();
    let mut l = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            l = num_integer::lcm(l, a.at(i, j).denom().clone());
            l = num_integer::lcm(l, b.at(i, j).denom().clone());
        }
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c0 = a.at(i, j).numer() * (&l / a.at(i, j).denom());
                    let c1 = b.at(i, j).numer() * (&l / b.at(i, j).denom());
                    IntPoly::new(vec![c0, c1])
                })
                .collect()
        })
        .collect()
}

/// PSD test of a symmetric integer-polynomial matrix evaluated at `alpha`,
/// with exact rank when PSD.
///
/// Fraction-free symmetric elimination over `Z[t]`: the working entries are
/// minors of the input, so the Bareiss division is exact, and every pivot
/// sign at `alpha` is certified through the algebraic number. When the
/// matrix is not PSD the search stops early and the reported rank is not
/// meaningful (returned as 0).
pub fn psd_rank_at(m: &[Vec<IntPoly>], alpha: &mut AlgebraicNumber) -> (bool, usize) {
    let n = m.len();
    let mut a: Vec<Vec<IntPoly>> = m.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev = IntPoly::one();
    let mut prev_sign: i8 = 1;
    let mut rank = 0usize;
    loop {
        let pivot = active
            .iter()
            .position(|&i| alpha.sign_of_poly_at(&a[i][i]) != 0);
        match pivot {
            Some(pos) => {
                let i = active[pos];
                let s = alpha.sign_of_poly_at(&a[i][i]);
                // Pivot value sign is minor_k / minor_{k-1}.
                if s * prev_sign < 0 {
                    return (false, 0);
                }
                rank += 1;
                active.remove(pos);
                let piv = a[i][i].clone();
                for &p in &active {
                    for &q in &active {
                        if p > q {
                            continue;
                        }
                        let num = piv.mul(&a[p][q]).sub(&a[p][i].mul(&a[i][q]));
                        let v = num.div_exact(&prev);
                        a[p][q] = v.clone();
                        a[q][p] = v;
                    }
                }
                prev = piv;
                prev_sign = s;
            }
            None => {
                // Active diagonal vanishes at alpha; any surviving
                // off-diagonal entry makes the matrix indefinite.
                for (pa, &i) in active.iter().enumerate() {
                    for &j in active.iter().skip(pa + 1) {
                        if alpha.sign_of_poly_at(&a[i][j]) != 0 {
                            return (false, 0);
                        }
                    }
                }
                return (true, rank);
            }
        }
        if active.is_empty() {
            return (true, rank);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use crate::exact::roots::{isolate_real_roots, RootRange};

    #[test]
    fn identity_pencil() {
        let i2 = RatMatrix::identity(2);
        let p = pencil_poly(&i2, &i2).unwrap();
        // (1 + t)^2 up to positive scale.
        assert_eq!(p, IntPoly::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn zero_direction_gives_constant() {
        let a = RatMatrix::from_i64(3, 3, &[2, 1, 0, 1, 2, 0, 0, 0, 3]);
        let z = RatMatrix::zeros(3, 3);
        let p = pencil_poly(&a, &z).unwrap();
        assert_eq!(p.degree(), Some(0));
        // det = 9, primitive scaling reduces to 1; sign must stay positive.
        assert_eq!(p.sign_at(&rat(0, 1)), 1);
    }

    #[test]
    fn pencil_matches_symbolic_2x2() {
        // det([[1,0],[0,1]] + t[[a,b],[b,c]]) = (1+ta)(1+tc) - t^2 b^2
        let a = RatMatrix::identity(2);
        let b = RatMatrix::from_i64(2, 2, &[2, 3, 3, -1]);
        let p = pencil_poly(&a, &b).unwrap();
        // 1 + (2-1)t + (-2 - 9)t^2 = 1 + t - 11 t^2
        assert_eq!(p, IntPoly::from_i64(&[1, 1, -11]));
    }

    #[test]
    fn psd_rank_at_sqrt2() {
        // M(t) = [[t, 1], [1, t]] at t = sqrt2: PSD (eigs sqrt2 +- 1), rank 2.
        let m = vec![
            vec![IntPoly::from_i64(&[0, 1]), IntPoly::one()],
            vec![IntPoly::one(), IntPoly::from_i64(&[0, 1])],
        ];
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&f, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        let mut alpha = roots[0].value.clone();
        assert_eq!(psd_rank_at(&m, &mut alpha), (true, 2));
        // At t = 1/2 the same matrix is indefinite.
        let mut half = AlgebraicNumber::from_rational(rat(1, 2));
        assert_eq!(psd_rank_at(&m, &mut half).0, false);
        // Rank drop: [[t,1],[1,1/t]]-style integer version [[t, 1],[1, t]]
        // is singular at t = 1: PSD of rank 1.
        let mut one = AlgebraicNumber::from_rational(rat(1, 1));
        assert_eq!(psd_rank_at(&m, &mut one), (true, 1));
    }
}
