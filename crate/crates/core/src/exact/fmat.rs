//! Dense linear algebra over any exact ordered field (`LpField`): rank,
//! inverse, and kernel. Runs on rationals and on Q(alpha) elements alike;
//! pivot decisions use certified signs.

use crate::exact::lp::LpField;

pub fn rank_field<F: LpField>(m: &[Vec<F>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].fis_zero()) else {
            continue;
        };
        a.swap(r, p);
        let d = a[r][col].clone();
        for i in r + 1..rows {
            if a[i][col].fis_zero() {
                continue;
            }
            let f = a[i][col].fdiv(&d);
            for j in col..cols {
                let delta = f.fmul(&a[r][j]);
                a[i][j] = a[i][j].fsub(&delta);
            }
        }
        r += 1;
    }
    r
}

pub fn invert_field<F: LpField>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    if n == 0 {
        return Some(vec![]);
    }
    assert!(m.iter().all(|row| row.len() == n));
    let zero = m[0][0].fzero();
    let one = m[0][0].fone();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].fis_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let d = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].fdiv(&d);
            inv[col][j] = inv[col][j].fdiv(&d);
        }
        for i in 0..n {
            if i == col || a[i][col].fis_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let delta = f.fmul(&a[col][j]);
                a[i][j] = a[i][j].fsub(&delta);
                let delta = f.fmul(&inv[col][j]);
                inv[i][j] = inv[i][j].fsub(&delta);
            }
        }
    }
    Some(inv)
}

/// Basis of the right kernel.
pub fn kernel_field<F: LpField>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    if m.is_empty() {
        return vec![];
    }
    let rows = m.len();
    let cols = m[0].len();
    let zero = m[0][0].fzero();
    let one = m[0][0].fone();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].fis_zero()) else {
            continue;
        };
        a.swap(r, p);
        let d = a[r][col].clone();
        for j in 0..cols {
            a[r][j] = a[r][j].fdiv(&d);
        }
        for i in 0..rows {
            if i == r || a[i][col].fis_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..cols {
                let delta = f.fmul(&a[r][j]);
                a[i][j] = a[i][j].fsub(&delta);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = a[ri][free].fneg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use num_rational::BigRational;

    #[test]
    fn rational_field_ops() {
        let m: Vec<Vec<BigRational>> = vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(3, 1), rat(4, 1)],
        ];
        assert_eq!(rank_field(&m), 2);
        let inv = invert_field(&m).unwrap();
        assert_eq!(inv[0][0], rat(-2, 1));
        assert_eq!(inv[0][1], rat(1, 1));
        let sing: Vec<Vec<BigRational>> = vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ];
        assert!(invert_field(&sing).is_none());
        let k = kernel_field(&sing);
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn algebraic_field_kernel() {
        use crate::exact::field::AlgebraicField;
        use crate::exact::poly::IntPoly;
        use crate::exact::roots::{isolate_real_roots, RootRange};
        // tau^2 = tau + 1; the matrix [[tau, 1], [tau^2, tau]] is singular
        // since row2 = tau * row1.
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let roots = isolate_real_roots(&p, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        let f = AlgebraicField::new(roots[0].value.clone());
        let tau = f.alpha();
        let m = vec![
            vec![tau.clone(), f.one()],
            vec![tau.mul(&tau), tau.clone()],
        ];
        assert_eq!(rank_field(&m), 1);
        let k = kernel_field(&m);
        assert_eq!(k.len(), 1);
        // Check M k = 0.
        for row in &m {
            let acc = row[0].mul(&k[0][0]).add(&row[1].mul(&k[0][1]));
            assert!(acc.is_zero());
        }
    }
}

/// Determinant over a field (fraction allowed; small matrices only).
pub fn det_field<F: LpField>(m: &[Vec<F>]) -> F {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        panic!("det of empty matrix");
    }
    let zero = m[0][0].fzero();
    let one = m[0][0].fone();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = one;
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].fis_zero()) else {
            return zero;
        };
        if p != col {
            a.swap(col, p);
            det = det.fneg();
        }
        let d = a[col][col].clone();
        det = det.fmul(&d);
        for i in col + 1..n {
            if a[i][col].fis_zero() {
                continue;
            }
            let f = a[i][col].fdiv(&d);
            for j in col..n {
                let delta = f.fmul(&a[col][j]);
                a[i][j] = a[i][j].fsub(&delta);
            }
        }
    }
    det
}
