//! Exact-rational LLL reduction working directly on Gram matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exact::mat::{IntMatrix, RatMatrix};
use crate::exact::rat::{rat, rat_floor};

/// Gram-Schmidt data for the current Gram matrix.
fn gso(g: &RatMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let d = g.rows();
    let mut mu = vec![vec![BigRational::zero(); d]; d];
    let mut b = vec![BigRational::zero(); d];
    for i in 0..d {
        for j in 0..i {
            let mut acc = g.at(i, j).clone();
            for k in 0..j {
                acc -= &mu[i][k] * &mu[j][k] * &b[k];
            }
            mu[i][j] = acc / &b[j];
        }
        let mut acc = g.at(i, i).clone();
        for k in 0..i {
            acc -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        b[i] = acc;
    }
    (mu, b)
}

fn round_nearest(x: &BigRational) -> BigInt {
    rat_floor(&(x + rat(1, 2)))
}

/// LLL-reduce a positive definite Gram matrix; returns the unimodular `U`
/// with `U^T Q U` reduced (parameter `delta = 99/100`).
pub fn lll_gram(q: &RatMatrix) -> IntMatrix {
    let d = q.rows();
    assert!(q.is_symmetric());
    let delta = rat(99, 100);
    let mut u = IntMatrix::identity(d);
    if d <= 1 {
        return u;
    }
    let current = |u: &IntMatrix| -> RatMatrix {
        let ur = u.to_rational();
        ur.transpose().mul(q).mul(&ur)
    };
    let mut g = current(&u);
    let (mut mu, mut b) = gso(&g);
    let mut k = 1usize;
    let mut steps = 0u64;
    while k < d {
        steps += 1;
        assert!(steps < 1_000_000, "LLL failed to terminate");
        // Size reduction of column k.
        for j in (0..k).rev() {
            if mu[k][j].abs() > rat(1, 2) {
                let r = round_nearest(&mu[k][j]);
                u.sub_col(k, j, &r);
                g = current(&u);
                let t = gso(&g);
                mu = t.0;
                b = t.1;
            }
        }
        // Lovasz condition.
        let lhs = b[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            u.swap_cols(k - 1, k);
            g = current(&u);
            let t = gso(&g);
            mu = t.0;
            b = t.1;
            k = k.max(2) - 1;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mat::{det, is_unimodular, psd_rank};

    #[test]
    fn reduces_skewed_lattice() {
        // Gram of basis (1,0), (100,1) in Z^2.
        let q = RatMatrix::from_i64(2, 2, &[1, 100, 100, 10001]);
        let u = lll_gram(&q);
        assert!(is_unimodular(&u));
        let ur = u.to_rational();
        let g = ur.transpose().mul(&q).mul(&ur);
        // The reduced Gram is the identity (Z^2 itself).
        assert_eq!(g, RatMatrix::identity(2));
        assert_eq!(det(&g).unwrap(), det(&q).unwrap());
    }

    #[test]
    fn preserves_determinant_and_definiteness() {
        let q = RatMatrix::from_i64(3, 3, &[4, 2, 2, 2, 4, 1, 2, 1, 8]);
        let u = lll_gram(&q);
        assert!(is_unimodular(&u));
        let ur = u.to_rational();
        let g = ur.transpose().mul(&q).mul(&ur);
        assert_eq!(det(&g).unwrap(), det(&q).unwrap());
        assert_eq!(psd_rank(&g).unwrap(), (true, 3));
        // Reduced: diagonal sorted-ish, first vector short: g00 <= original diag min.
        assert!(g.at(0, 0) <= q.at(0, 0));
    }

    #[test]
    fn idempotent_on_reduced_gram() {
        let q = RatMatrix::from_i64(3, 3, &[4, 0, 0, 0, 4, 0, 0, 0, 8]);
        let u = lll_gram(&q);
        assert_eq!(u, IntMatrix::identity(3));
    }
}
