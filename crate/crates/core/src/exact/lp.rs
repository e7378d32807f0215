//! Exact dense simplex over an ordered field.
//!
//! Two-phase full-tableau simplex with Bland's rule (no cycling). The
//! scalar type is abstract so the same solver runs on exact rationals and
//! on Q(alpha) elements; every comparison goes through a certified sign.

/// Scalar operations the simplex needs. Implementations must give exact
/// signs; there is no tolerance anywhere in the solver.
pub trait LpField: Clone + std::fmt::Debug {
    fn fzero(&self) -> Self;
    fn fone(&self) -> Self;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fdiv(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn fsign(&self) -> i8;
    fn fis_zero(&self) -> bool {
        self.fsign() == 0
    }
}

impl LpField for num_rational::BigRational {
    fn fzero(&self) -> Self {
        num_traits::Zero::zero()
    }
    fn fone(&self) -> Self {
        num_traits::One::one()
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fdiv(&self, o: &Self) -> Self {
        self / o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn fsign(&self) -> i8 {
        crate::exact::poly::sign_of(self)
    }
}

impl LpField for crate::exact::field::Elem {
    fn fzero(&self) -> Self {
        self.field().zero()
    }
    fn fone(&self) -> Self {
        self.field().one()
    }
    fn fadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn fmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn fdiv(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn fsign(&self) -> i8 {
        self.sign()
    }
}

#[derive(Debug, Clone)]
pub enum LpResult<F> {
    /// Maximizer over `{x >= 0 : A x = b}` with its objective value.
    Optimal { x: Vec<F>, value: F },
    Infeasible,
    Unbounded,
}

/// Maximize `c . x` subject to `A x = b`, `x >= 0`.
pub fn simplex_max<F: LpField>(a: &[Vec<F>], b: &[F], c: &[F]) -> LpResult<F> {
    let m = a.len();
    if m == 0 {
        // Optimum is at x = 0 unless some cost is positive (then unbounded).
        if c.iter().any(|cj| cj.fsign() > 0) {
            return LpResult::Unbounded;
        }
        let zero = c.first().map(|f| f.fzero());
        let Some(zper) = zero else {
            panic!("empty program");
        };
        return LpResult::Optimal { x: vec![zper.clone(); c.len()], value: zper };
    }
    let n = a[0].len();
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    let zero = b[0].fzero();
    let one = b[0].fone();

    // Phase I tableau: [A | I], basis = artificials.
    let mut t: Vec<Vec<F>> = Vec::with_capacity(m);
    let mut rhs: Vec<F> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].fsign() < 0;
        let mut row: Vec<F> = Vec::with_capacity(n + m);
        for j in 0..n {
            row.push(if flip { a[i][j].fneg() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { one.clone() } else { zero.clone() });
        }
        t.push(row);
        rhs.push(if flip { b[i].fneg() } else { b[i].clone() });
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Phase I reduced costs: maximize -sum(artificials).
    let mut cost: Vec<F> = Vec::with_capacity(n + m);
    for j in 0..n + m {
        if j < n {
            let mut s = zero.clone();
            for row in t.iter() {
                s = s.fadd(&row[j]);
            }
            cost.push(s);
        } else {
            cost.push(zero.clone());
        }
    }
    let mut obj = zero.clone();
    for v in &rhs {
        obj = obj.fsub(v);
    }
    run_simplex(&mut t, &mut rhs, &mut cost, &mut basis, &mut obj);
    if obj.fsign() < 0 {
        return LpResult::Infeasible;
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    let mut keep: Vec<bool> = vec![true; t.len()];
    for i in 0..t.len() {
        if basis[i] < n {
            continue;
        }
        match (0..n).find(|&j| !t[i][j].fis_zero()) {
            Some(j) => pivot(&mut t, &mut rhs, &mut cost, &mut basis, &mut obj, i, j),
            None => keep[i] = false,
        }
    }
    let mut t: Vec<Vec<F>> = t
        .into_iter()
        .zip(keep.iter())
        .filter(|(_, k)| **k)
        .map(|(mut row, _)| {
            row.truncate(n);
            row
        })
        .collect();
    let mut rhs: Vec<F> = rhs
        .into_iter()
        .zip(keep.iter())
        .filter(|(_, k)| **k)
        .map(|(v, _)| v)
        .collect();
    let mut basis: Vec<usize> = basis
        .into_iter()
        .zip(keep.iter())
        .filter(|(_, k)| **k)
        .map(|(v, _)| v)
        .collect();

    // Phase II reduced costs from the real objective.
    let mut cost: Vec<F> = c.to_vec();
    let mut obj = zero.clone();
    for (i, &bi) in basis.iter().enumerate() {
        let cb = c[bi].clone();
        if cb.fis_zero() {
            continue;
        }
        obj = obj.fadd(&cb.fmul(&rhs[i]));
        for j in 0..n {
            let delta = cb.fmul(&t[i][j]);
            cost[j] = cost[j].fsub(&delta);
        }
    }
    if !run_simplex(&mut t, &mut rhs, &mut cost, &mut basis, &mut obj) {
        return LpResult::Unbounded;
    }
    let mut x = vec![zero.clone(); n];
    for (i, &bi) in basis.iter().enumerate() {
        x[bi] = rhs[i].clone();
    }
    LpResult::Optimal { x, value: obj }
}

/// Pivot loop; returns false on unboundedness. Bland's rule throughout.
fn run_simplex<F: LpField>(
    t: &mut [Vec<F>],
    rhs: &mut [F],
    cost: &mut [F],
    basis: &mut [usize],
    obj: &mut F,
) -> bool {
    loop {
        let Some(enter) = cost.iter().position(|cj| cj.fsign() > 0) else {
            return true;
        };
        // Min-ratio test; ties resolved by smallest basis variable.
        let mut leave: Option<(usize, F)> = None;
        for i in 0..t.len() {
            if t[i][enter].fsign() <= 0 {
                continue;
            }
            let ratio = rhs[i].fdiv(&t[i][enter]);
            match &leave {
                None => leave = Some((i, ratio)),
                Some((li, lr)) => {
                    let d = ratio.fsub(lr).fsign();
                    if d < 0 || (d == 0 && basis[i] < basis[*li]) {
                        leave = Some((i, ratio));
                    }
                }
            }
        }
        let Some((leave, _)) = leave else {
            return false;
        };
        pivot_all(t, rhs, cost, basis, obj, leave, enter);
    }
}

fn pivot<F: LpField>(
    t: &mut [Vec<F>],
    rhs: &mut [F],
    cost: &mut [F],
    basis: &mut [usize],
    obj: &mut F,
    row: usize,
    col: usize,
) {
    pivot_all(t, rhs, cost, basis, obj, row, col)
}

fn pivot_all<F: LpField>(
    t: &mut [Vec<F>],
    rhs: &mut [F],
    cost: &mut [F],
    basis: &mut [usize],
    obj: &mut F,
    row: usize,
    col: usize,
) {
    let piv = t[row][col].clone();
    debug_assert!(piv.fsign() != 0);
    let ncols = t[row].len();
    for j in 0..ncols {
        t[row][j] = t[row][j].fdiv(&piv);
    }
    rhs[row] = rhs[row].fdiv(&piv);
    for i in 0..t.len() {
        if i == row || t[i][col].fis_zero() {
            continue;
        }
        let f = t[i][col].clone();
        for j in 0..ncols {
            let delta = f.fmul(&t[row][j]);
            t[i][j] = t[i][j].fsub(&delta);
        }
        let delta = f.fmul(&rhs[row]);
        rhs[i] = rhs[i].fsub(&delta);
    }
    if !cost[col].fis_zero() {
        let f = cost[col].clone();
        for j in 0..ncols {
            let delta = f.fmul(&t[row][j]);
            cost[j] = cost[j].fsub(&delta);
        }
        let delta = f.fmul(&rhs[row]);
        *obj = obj.fadd(&delta);
    }
    basis[row] = col;
}

/// Feasibility of `{x >= 0 : A x = b}`: any feasible point, or `None`.
pub fn feasible_point<F: LpField>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    if a.is_empty() {
        return Some(vec![]);
    }
    let zero = b[0].fzero();
    let c = vec![zero; a[0].len()];
    match simplex_max(a, b, &c) {
        LpResult::Optimal { x, .. } => Some(x),
        LpResult::Infeasible => None,
        LpResult::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use num_rational::BigRational;

    fn r(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn simple_max() {
        // max x + y s.t. x + y + s = 4, x + 3y + u = 6
        let a = vec![r(&[1, 1, 1, 0]), r(&[1, 3, 0, 1])];
        let b = r(&[4, 6]);
        let c = r(&[1, 1, 0, 0]);
        match simplex_max(&a, &b, &c) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(4, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x + y = -1 with x, y >= 0
        let a = vec![r(&[1, 1])];
        let b = r(&[-1]);
        let c = r(&[0, 0]);
        assert!(matches!(simplex_max(&a, &b, &c), LpResult::Infeasible));
    }

    #[test]
    fn detects_unbounded() {
        // max x s.t. x - y = 1  (x = 1 + y grows without bound)
        let a = vec![r(&[1, -1])];
        let b = r(&[1]);
        let c = r(&[1, 0]);
        assert!(matches!(simplex_max(&a, &b, &c), LpResult::Unbounded));
    }

    #[test]
    fn degenerate_program_terminates() {
        // Degenerate vertex: multiple ties in the ratio test.
        let a = vec![r(&[1, 1, 1, 0, 0]), r(&[1, 0, 0, 1, 0]), r(&[0, 1, 0, 0, 1])];
        let b = r(&[1, 1, 0]);
        let c = r(&[2, 3, 0, 0, 0]);
        match simplex_max(&a, &b, &c) {
            LpResult::Optimal { value, x } => {
                assert_eq!(value, rat(2, 1));
                assert_eq!(x[0], rat(1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn feasible_point_solves_equalities() {
        let a = vec![r(&[1, 1, 0]), r(&[0, 1, 1])];
        let b = r(&[2, 3]);
        let x = feasible_point(&a, &b).unwrap();
        assert_eq!(&x[0] + &x[1], rat(2, 1));
        assert_eq!(&x[1] + &x[2], rat(3, 1));
    }

    #[test]
    fn simplex_over_algebraic_field() {
        use crate::exact::field::AlgebraicField;
        use crate::exact::poly::IntPoly;
        use crate::exact::roots::{isolate_real_roots, RootRange};
        // max x s.t. x + y = tau (golden ratio): optimum tau.
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let roots = isolate_real_roots(&p, &RootRange::half_line_closed(rat(0, 1))).unwrap();
        let f = AlgebraicField::new(roots[0].value.clone());
        let tau = f.alpha();
        let a = vec![vec![f.one(), f.one()]];
        let b = vec![tau.clone()];
        let c = vec![f.one(), f.zero()];
        match simplex_max(&a, &b, &c) {
            LpResult::Optimal { value, .. } => assert!(value.sub(&tau).is_zero()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
