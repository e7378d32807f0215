//! Rank-deficient points on polyhedron edges, certification of algebraic
//! extremeness, and recovery of point coordinates.
//!
//! Certification solves the dual feasibility program exactly: the
//! objective gradient must be a positive combination of the tight facet
//! normals plus a nonnegative multiple of the null-space generator. For
//! points at algebraic edge parameters the program runs in Q(alpha), so
//! verdicts carry no numerical slack; a failed certificate is always
//! followed by an explicit counterexample direction (or a fluid flag when
//! the direction has a vanishing lattice block).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::field::{AlgebraicField, Elem};
use crate::exact::fmat::{det_field, invert_field, kernel_field, rank_field};
use crate::exact::interval::Iv;
use crate::exact::lp::{feasible_point, simplex_max, LpField, LpResult};
use crate::exact::mat::{psd_rank, RatMatrix};
use crate::exact::pencil::{pencil_entries, pencil_poly, psd_rank_at};
use crate::exact::poly::IntPoly;
use crate::exact::rat::{format_rational, rat};
use crate::exact::roots::{isolate_real_roots, AlgebraicNumber, RootRange};
use crate::forms::{evaluate_matrix, Density, FormError, IndexVector, PeriodicForm, Radicand};
use crate::polyhedron::{constraint_coords, PolyVertex};

#[derive(Debug, Clone, thiserror::Error)]
pub enum ExtremeError {
    #[error("pipeline supports two orbits only (m = 2)")]
    UnsupportedOrbitCount,
    #[error("form is not rank-deficient of rank d (rank {0})")]
    NotRankD(usize),
    #[error("minimum {found} does not equal the level {expected}")]
    MinMismatch { expected: BigRational, found: BigRational },
    #[error("coordinate recovery failed to certify at the requested precision")]
    PrecisionExhausted,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// A form on an edge of the polyhedron realized at an exact parameter:
/// `base + t * dir`, with `det = 0` and rank `d` certified at `t`.
#[derive(Clone, Debug)]
pub struct AlgebraicPoint {
    pub base: PeriodicForm,
    pub dir: RatMatrix,
    pub t: AlgebraicNumber,
    /// Minimal vectors of the point (both signs): the tight set of the
    /// carrying edge, constant on the open edge by linearity.
    pub tight: Vec<IndexVector>,
    pub lambda: BigRational,
}

impl AlgebraicPoint {
    pub fn d(&self) -> usize {
        self.base.d()
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    /// Realize as a rational form when the parameter is rational.
    pub fn realize_rational(&self) -> Option<PeriodicForm> {
        let r = self.t.as_rational()?;
        PeriodicForm::new(
            self.base.d(),
            self.base.m(),
            self.base.matrix().add(&self.dir.scale(r)),
        )
        .ok()
    }

    /// Entry enclosures at the current parameter precision.
    pub fn entry_intervals(&mut self, bits: u32) -> Vec<Vec<Iv>> {
        let (lo, hi) = self.t.approx(bits);
        let n = self.base.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let b = self.base.matrix().at(i, j);
                        let d = self.dir.at(i, j);
                        let a = b + d * &lo;
                        let c = b + d * &hi;
                        if a <= c {
                            Iv::new(a, c)
                        } else {
                            Iv::new(c, a)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Exact field for arithmetic in Q(t).
    pub fn field(&self) -> AlgebraicField {
        AlgebraicField::new(self.t.clone())
    }

    /// Entries as field elements.
    pub fn entries_in_field(&self, f: &AlgebraicField) -> Vec<Vec<Elem>> {
        let n = self.base.n();
        let alpha = f.alpha();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let b = f.from_rat(self.base.matrix().at(i, j).clone());
                        let d = f.from_rat(self.dir.at(i, j).clone());
                        b.add(&d.mul(&alpha))
                    })
                    .collect()
            })
            .collect()
    }

    /// Average kissing number from the tight set.
    pub fn kissing(&self) -> BigRational {
        let m = self.m();
        let lattice = self.tight.iter().filter(|k| k.is_lattice_type()).count();
        let other = self.tight.len() - lattice;
        rat((lattice * m + other) as i64, m as i64)
    }

    /// Density radicand `m^2 (lambda/4)^d / det Q(t)`.
    pub fn density(&self) -> Density {
        if let Some(j) = self.realize_rational() {
            let min = self.lambda.clone();
            return crate::forms::normalized_density(&j, &min).expect("realized rational point");
        }
        let f = self.field();
        let entries = self.entries_in_field(&f);
        let d = self.d();
        let q: Vec<Vec<Elem>> = (0..d).map(|i| entries[i][..d].to_vec()).collect();
        let detq = det_field(&q);
        let m2 = rat((self.m() * self.m()) as i64, 1);
        let scale = &self.lambda / rat(4, 1);
        let mut pow = BigRational::one();
        for _ in 0..d {
            pow *= &scale;
        }
        let num = f.from_rat(m2 * pow);
        Density { radicand: Radicand::Algebraic(num.div(&detq)) }
    }

    /// Is the point a lattice representation? Exact test in Q(t).
    pub fn is_lattice_representation(&self) -> bool {
        if let Some(j) = self.realize_rational() {
            return crate::forms::is_lattice_representation(&j).unwrap_or(false);
        }
        let f = self.field();
        let entries = self.entries_in_field(&f);
        let d = self.d();
        let m = self.m();
        let q: Vec<Vec<Elem>> = (0..d).map(|i| entries[i][..d].to_vec()).collect();
        let Some(qinv) = invert_field(&q) else {
            return false;
        };
        // coords = Q^{-1} R^T, columns per translation.
        for col in 0..m - 1 {
            for qrow in qinv.iter().take(d) {
                let mut acc = f.zero();
                for (c, qe) in qrow.iter().enumerate() {
                    acc = acc.add(&qe.mul(&entries[d + col][c]));
                }
                // 2 * coord must be a rational integer.
                let twice = acc.mul(&f.from_rat(rat(2, 1)));
                match twice.as_rational() {
                    Some(r) if r.denom().is_one() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Result of scanning an edge for rank-deficient points.
#[derive(Clone, Debug)]
pub enum EdgeRankLocus {
    /// Isolated parameters where the determinant vanishes with rank `d`.
    Points(Vec<AlgebraicPoint>),
    /// The determinant vanishes identically: the whole edge is rank
    /// deficient. Only endpoints can be optimal unless the lattice block
    /// of the direction is constant (fluid candidate).
    WholeEdge { q_pencil: IntPoly, fluid: bool },
}

/// How far the edge extends from the vertex.
#[derive(Clone, Debug)]
pub enum EdgeExtent {
    Bounded(BigRational),
    Unbounded,
}

/// Locate the rank-`d` points in the open interior of an edge
/// `{base + t dir : t in (0, extent)}`.
pub fn rank_points_on_edge(
    v: &PolyVertex,
    dir: &RatMatrix,
    extent: &EdgeExtent,
) -> Result<EdgeRankLocus, ExtremeError> {
    if v.form().m() != 2 {
        return Err(ExtremeError::UnsupportedOrbitCount);
    }
    let d = v.form().d();
    let p = pencil_poly(v.form().matrix(), dir).map_err(FormError::Mat)?;
    let qp = pencil_poly(
        &v.form().q_block(),
        &dir.submatrix(0, 0, d, d),
    )
    .map_err(FormError::Mat)?;
    if p.is_zero() {
        let fluid = dir.submatrix(0, 0, d, d).is_zero();
        return Ok(EdgeRankLocus::WholeEdge { q_pencil: qp, fluid });
    }
    let range = match extent {
        EdgeExtent::Bounded(tmax) => RootRange::open(BigRational::zero(), tmax.clone()),
        EdgeExtent::Unbounded => RootRange::half_line_open(BigRational::zero()),
    };
    let roots = isolate_real_roots(&p, &range).expect("nonzero pencil");
    let entries = pencil_entries(v.form().matrix(), dir);
    let tight: Vec<IndexVector> = v
        .minset()
        .vectors
        .iter()
        .filter(|k| evaluate_matrix(dir, k).is_zero())
        .cloned()
        .collect();
    let mut out = Vec::new();
    for root in roots {
        let mut alpha = root.value.clone();
        let (ok, r) = psd_rank_at(&entries, &mut alpha);
        if ok && r == d {
            out.push(AlgebraicPoint {
                base: v.form().clone(),
                dir: dir.clone(),
                t: alpha,
                tight: tight.clone(),
                lambda: v.lambda().clone(),
            });
        }
    }
    Ok(EdgeRankLocus::Points(out))
}

/// Exact scalar rendered for reports: either a rational or a polynomial
/// in the point's parameter together with a decimal approximation.
#[derive(Clone, Debug)]
pub enum ScalarRepr {
    Rational(String),
    Algebraic { coeffs: Vec<String>, approx: String },
}

impl ScalarRepr {
    fn of_rational(x: &BigRational) -> Self {
        ScalarRepr::Rational(format_rational(x))
    }

    fn of_elem(x: &Elem) -> Self {
        if let Some(r) = x.as_rational() {
            return ScalarRepr::Rational(format_rational(&r));
        }
        let coeffs = x.poly().coeffs().iter().map(format_rational).collect();
        let eps = BigRational::new(BigInt::one(), BigInt::one() << 64usize);
        let (lo, hi) = x.approx(&eps);
        let mid = (lo + hi) / rat(2, 1);
        ScalarRepr::Algebraic { coeffs, approx: crate::exact::rat::to_decimal_string(&mid, 12) }
    }

    pub fn display(&self) -> String {
        match self {
            ScalarRepr::Rational(s) => s.clone(),
            ScalarRepr::Algebraic { coeffs, approx } => {
                format!("poly[{}]~{}", coeffs.join(","), approx)
            }
        }
    }
}

/// Positive-combination certificate reconstructing the gradient.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub pairs: Vec<IndexVector>,
    pub eta: Vec<ScalarRepr>,
    pub null_weight: ScalarRepr,
    pub epsilon: ScalarRepr,
    /// The reconstruction was re-verified to be exactly the gradient.
    pub residual_zero: bool,
}

/// A feasible direction violating strict growth of the objective.
#[derive(Clone, Debug)]
pub struct Counterexample {
    /// Upper-triangle coordinates of the direction matrix.
    pub coords: Vec<ScalarRepr>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Extreme(Certificate),
    NotExtreme(Counterexample),
    FluidCandidate(Counterexample),
    Inconclusive(String),
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Extreme(_) => "extreme",
            Verdict::NotExtreme(_) => "not-extreme",
            Verdict::FluidCandidate(_) => "fluid-candidate",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }
}

enum CoreVerdict<F> {
    Extreme { eta: Vec<F>, w: F, eps: F },
    NotExtreme(Vec<F>),
    Fluid(Vec<F>),
    Inconclusive(String),
}

/// The field-generic certification core.
///
/// `pairs` are the tight pair representatives, `g` the gradient matrix,
/// `u` the null-space generator; everything else is derived. Exactness of
/// the scalar type makes the dichotomy complete: when the certificate
/// fails, a counterexample (or fluid direction) is always found.
fn certify_core<F: LpField>(
    n: usize,
    d: usize,
    pairs: &[IndexVector],
    g: &[Vec<F>],
    u: &[F],
    zero: &F,
    one: &F,
    embed: &dyn Fn(&BigRational) -> F,
) -> CoreVerdict<F> {
    let dim = n * (n + 1) / 2;
    let nk = pairs.len();
    // Outer products and traces.
    let a_mats: Vec<RatMatrix> = pairs.iter().map(|k| k.outer()).collect();
    let a_traces: Vec<BigRational> = a_mats.iter().map(|a| a.trace()).collect();
    let uu: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| u[i].fmul(&u[j])).collect())
        .collect();
    let uu_trace: F = {
        let mut acc = zero.clone();
        for (i, uui) in uu.iter().enumerate() {
            acc = acc.fadd(&uui[i]);
        }
        acc
    };
    debug_assert!(uu_trace.fsign() > 0);
    // Functional coordinates of all generators (for rank and kernels).
    let mut gen_coords: Vec<Vec<F>> = Vec::with_capacity(nk + 1);
    for k in pairs {
        gen_coords.push(constraint_coords(k, n).iter().map(|x| embed(x)).collect());
    }
    gen_coords.push(functional_coords_field(&uu, zero, &embed));
    // Upper-triangle index helpers.
    let tri: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let g_tri: Vec<F> = tri.iter().map(|&(i, j)| g[i][j].clone()).collect();

    // Full-dimensionality of the generator span.
    if rank_field(&gen_coords) < dim {
        // A direction orthogonal to every generator lies in the cone and
        // the tangent space together with its negation.
        let kern = kernel_field(&gen_coords);
        let x = kern.into_iter().next().expect("rank deficit implies kernel");
        let gx = dot_f(&g_tri_weights(&tri, &g_tri, zero), &x, zero);
        let x = if gx.fsign() > 0 {
            x.iter().map(|v| v.fneg()).collect()
        } else {
            x
        };
        return fluid_or_not(n, d, pairs, u, &x, zero, one, embed);
    }

    // Certificate program: for every matrix entry,
    //   sum_k s_k A^_k + (w+ - w-) u^ + (e+ - e-) * sum_k A^_k = G,
    // plus the cap e+ - e- + slack = 1; maximize e+ - e-.
    //
    // The null-space multiplier is signed: the tangent condition is an
    // equality, so its dual is a full line. (Known extreme packings do
    // need the negative side; the report surfaces the sign.)
    let ncols = nk + 5;
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(dim + 1);
    let mut rhs: Vec<F> = Vec::with_capacity(dim + 1);
    for &(i, j) in &tri {
        let mut row = Vec::with_capacity(ncols);
        let mut asum = zero.clone();
        for (k, a) in a_mats.iter().enumerate() {
            let e = embed(&(a.at(i, j) / &a_traces[k]));
            asum = asum.fadd(&e);
            row.push(e);
        }
        row.push(uu[i][j].fdiv(&uu_trace));
        row.push(uu[i][j].fdiv(&uu_trace).fneg());
        row.push(asum.clone());
        row.push(asum.fneg());
        row.push(zero.clone());
        rows.push(row);
        rhs.push(g[i][j].clone());
    }
    let mut cap = vec![zero.clone(); ncols];
    cap[nk + 2] = one.clone();
    cap[nk + 3] = one.fneg();
    cap[nk + 4] = one.clone();
    rows.push(cap);
    rhs.push(one.clone());
    let mut obj = vec![zero.clone(); ncols];
    obj[nk + 2] = one.clone();
    obj[nk + 3] = one.fneg();
    match simplex_max(&rows, &rhs, &obj) {
        LpResult::Optimal { x, value } if value.fsign() > 0 => {
            // eta_k = (eps + s_k) / tr(A_k), w = (w+ - w-) / tr(uu^T).
            let eps = value;
            let eta: Vec<F> = (0..nk)
                .map(|k| {
                    let hat = eps.fadd(&x[k]);
                    hat.fdiv(&embed(&a_traces[k]))
                })
                .collect();
            let w = x[nk].fsub(&x[nk + 1]).fdiv(&uu_trace);
            // Exact residual check: sum eta A + w uu^T == G entrywise.
            for &(i, j) in &tri {
                let mut acc = w.fmul(&uu[i][j]);
                for (k, a) in a_mats.iter().enumerate() {
                    acc = acc.fadd(&eta[k].fmul(&embed(a.at(i, j))));
                }
                assert!(
                    acc.fsub(&g[i][j]).fis_zero(),
                    "certificate residual must vanish exactly"
                );
            }
            CoreVerdict::Extreme { eta, w, eps }
        }
        _ => {
            // No strictly positive certificate: produce a counterexample.
            find_counterexample(n, d, pairs, u, g, zero, one, embed)
        }
    }
}

fn functional_coords_field<F: LpField>(
    m: &[Vec<F>],
    zero: &F,
    embed: &dyn Fn(&BigRational) -> F,
) -> Vec<F> {
    let n = m.len();
    let two = embed(&rat(2, 1));
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            if i == j {
                out.push(m[i][j].clone());
            } else {
                out.push(two.fmul(&m[i][j]));
            }
        }
    }
    let _ = zero;
    out
}

/// Functional coordinates of `G` (for inner products against coordinate
/// vectors of directions).
fn g_tri_weights<F: LpField>(tri: &[(usize, usize)], g_tri: &[F], zero: &F) -> Vec<F> {
    let two = {
        let one = zero.fone();
        one.fadd(&one)
    };
    tri.iter()
        .zip(g_tri.iter())
        .map(|(&(i, j), v)| if i == j { v.clone() } else { two.fmul(v) })
        .collect()
}

fn dot_f<F: LpField>(a: &[F], b: &[F], zero: &F) -> F {
    let mut acc = zero.clone();
    for (x, y) in a.iter().zip(b.iter()) {
        acc = acc.fadd(&x.fmul(y));
    }
    acc
}

/// Distinguish fluid candidates from plain counterexamples: a fluid
/// direction has a vanishing lattice block.
fn fluid_or_not<F: LpField>(
    n: usize,
    d: usize,
    pairs: &[IndexVector],
    u: &[F],
    x: &[F],
    zero: &F,
    one: &F,
    embed: &dyn Fn(&BigRational) -> F,
) -> CoreVerdict<F> {
    if let Some(fluid) = find_fluid_direction(n, d, pairs, u, zero, one, embed) {
        return CoreVerdict::Fluid(fluid);
    }
    CoreVerdict::NotExtreme(x.to_vec())
}

/// Search for a nonzero direction with zero lattice block inside the cone
/// and the tangent space (the fluid geometry).
fn find_fluid_direction<F: LpField>(
    n: usize,
    d: usize,
    pairs: &[IndexVector],
    u: &[F],
    zero: &F,
    one: &F,
    embed: &dyn Fn(&BigRational) -> F,
) -> Option<Vec<F>> {
    let tri: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    // Free coordinates: entries outside the d x d block.
    let free: Vec<usize> = tri
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i >= d || j >= d)
        .map(|(e, _)| e)
        .collect();
    if free.is_empty() {
        return None;
    }
    let uu: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| u[i].fmul(&u[j])).collect())
        .collect();
    let uu_coords = functional_coords_field(&uu, zero, &embed);
    // Lineality: all constraint values zero.
    {
        let mut rows: Vec<Vec<F>> = Vec::new();
        for k in pairs {
            let c = constraint_coords(k, n);
            rows.push(free.iter().map(|&e| embed(&c[e])).collect());
        }
        rows.push(free.iter().map(|&e| uu_coords[e].clone()).collect());
        let kern = kernel_field(&rows);
        if let Some(v) = kern.into_iter().next() {
            let mut x = vec![zero.clone(); tri.len()];
            for (slot, &e) in free.iter().enumerate() {
                x[e] = v[slot].clone();
            }
            return Some(x);
        }
    }
    // LP with normalization sum of constraint values = 1: variables are
    // split signs of the free coordinates plus slacks s_k.
    let nf = free.len();
    let nk = pairs.len();
    let ncols = 2 * nf + nk;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    for (kk, k) in pairs.iter().enumerate() {
        let c = constraint_coords(k, n);
        let mut row = vec![zero.clone(); ncols];
        for (slot, &e) in free.iter().enumerate() {
            let ce = embed(&c[e]);
            row[slot] = ce.clone();
            row[nf + slot] = ce.fneg();
        }
        row[2 * nf + kk] = one.fneg();
        rows.push(row);
        rhs.push(zero.clone());
    }
    {
        let mut row = vec![zero.clone(); ncols];
        for kk in 0..nk {
            row[2 * nf + kk] = one.clone();
        }
        rows.push(row);
        rhs.push(one.clone());
    }
    {
        let mut row = vec![zero.clone(); ncols];
        for (slot, &e) in free.iter().enumerate() {
            row[slot] = uu_coords[e].clone();
            row[nf + slot] = uu_coords[e].fneg();
        }
        rows.push(row);
        rhs.push(zero.clone());
    }
    let x = feasible_point(&rows, &rhs)?;
    let mut out = vec![zero.clone(); tri.len()];
    for (slot, &e) in free.iter().enumerate() {
        out[e] = x[slot].fsub(&x[nf + slot]);
    }
    Some(out)
}

/// Feasibility search for a counterexample direction in the cone and
/// tangent space with nonpositive gradient inner product.
fn find_counterexample<F: LpField>(
    n: usize,
    d: usize,
    pairs: &[IndexVector],
    u: &[F],
    g: &[Vec<F>],
    zero: &F,
    one: &F,
    embed: &dyn Fn(&BigRational) -> F,
) -> CoreVerdict<F> {
    if let Some(fluid) = find_fluid_direction(n, d, pairs, u, zero, one, embed) {
        return CoreVerdict::Fluid(fluid);
    }
    let tri: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let dim = tri.len();
    let nk = pairs.len();
    let uu: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| u[i].fmul(&u[j])).collect())
        .collect();
    let uu_coords = functional_coords_field(&uu, zero, &embed);
    let g_coords = {
        let g_tri: Vec<F> = tri.iter().map(|&(i, j)| g[i][j].clone()).collect();
        g_tri_weights(&tri, &g_tri, zero)
    };
    // Variables: x+ (dim), x- (dim), s_k (nk), slack_g. Rows: per-pair
    // value minus slack = 0; sum s = 1; tangent = 0; gradient + slack = 0.
    let ncols = 2 * dim + nk + 1;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    for (kk, k) in pairs.iter().enumerate() {
        let c = constraint_coords(k, n);
        let mut row = vec![zero.clone(); ncols];
        for e in 0..dim {
            let ce = embed(&c[e]);
            row[e] = ce.clone();
            row[dim + e] = ce.fneg();
        }
        row[2 * dim + kk] = one.fneg();
        rows.push(row);
        rhs.push(zero.clone());
    }
    {
        let mut row = vec![zero.clone(); ncols];
        for kk in 0..nk {
            row[2 * dim + kk] = one.clone();
        }
        rows.push(row);
        rhs.push(one.clone());
    }
    {
        let mut row = vec![zero.clone(); ncols];
        for e in 0..dim {
            row[e] = uu_coords[e].clone();
            row[dim + e] = uu_coords[e].fneg();
        }
        rows.push(row);
        rhs.push(zero.clone());
    }
    {
        let mut row = vec![zero.clone(); ncols];
        for e in 0..dim {
            row[e] = g_coords[e].clone();
            row[dim + e] = g_coords[e].fneg();
        }
        row[2 * dim + nk] = one.clone();
        rows.push(row);
        rhs.push(zero.clone());
    }
    match feasible_point(&rows, &rhs) {
        Some(x) => {
            let dir: Vec<F> = (0..dim).map(|e| x[e].fsub(&x[dim + e])).collect();
            CoreVerdict::NotExtreme(dir)
        }
        None => CoreVerdict::Inconclusive(
            "certificate failed yet no counterexample was found".into(),
        ),
    }
}

/// Certify a rational rank-`d` form at its own minimum level.
pub fn certify_rational(j: &PeriodicForm) -> Result<Verdict, ExtremeError> {
    if j.m() != 2 {
        return Err(ExtremeError::UnsupportedOrbitCount);
    }
    let (psd, r) = psd_rank(j.matrix()).map_err(FormError::Mat)?;
    if !(psd && r == j.d()) {
        return Err(ExtremeError::NotRankD(r));
    }
    let (_, minset) = crate::shortvec::minimal_vectors(j)?;
    let pairs = minset.pair_representatives();
    certify_rational_with_tight(j, &pairs)
}

/// Same, with the tight set supplied by the caller (edge pipeline).
pub fn certify_rational_with_tight(
    j: &PeriodicForm,
    pairs: &[IndexVector],
) -> Result<Verdict, ExtremeError> {
    let n = j.n();
    let d = j.d();
    // Null vector of J.
    let kern = crate::exact::mat::kernel_basis(j.matrix());
    if kern.len() != 1 {
        return Err(ExtremeError::NotRankD(n - kern.len()));
    }
    let u = kern.into_iter().next().unwrap();
    // Gradient: Q^{-1} in the lattice block, zero elsewhere.
    let qinv = crate::exact::mat::invert(&j.q_block()).map_err(FormError::Mat)?;
    let g: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|jj| {
                    if i < d && jj < d {
                        qinv.at(i, jj).clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let zero = BigRational::zero();
    let one = BigRational::one();
    let embed = |x: &BigRational| x.clone();
    let core = certify_core(n, d, pairs, &g, &u, &zero, &one, &embed);
    Ok(render_verdict(core, pairs, |x| ScalarRepr::of_rational(x)))
}

/// Certify an algebraic edge point, exactly in Q(t).
pub fn certify_point(p: &AlgebraicPoint) -> Result<Verdict, ExtremeError> {
    if p.m() != 2 {
        return Err(ExtremeError::UnsupportedOrbitCount);
    }
    if let Some(j) = p.realize_rational() {
        let pairs = pair_reps(&p.tight);
        return certify_rational_with_tight(&j, &pairs);
    }
    let f = p.field();
    let entries = p.entries_in_field(&f);
    let n = p.base.n();
    let d = p.d();
    let kern = kernel_field(&entries);
    if kern.len() != 1 {
        return Err(ExtremeError::NotRankD(n - kern.len()));
    }
    let u = kern.into_iter().next().unwrap();
    let q: Vec<Vec<Elem>> = (0..d).map(|i| entries[i][..d].to_vec()).collect();
    let qinv = invert_field(&q).expect("lattice block invertible on the rank locus");
    let g: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|jj| {
                    if i < d && jj < d {
                        qinv[i][jj].clone()
                    } else {
                        f.zero()
                    }
                })
                .collect()
        })
        .collect();
    let pairs = pair_reps(&p.tight);
    let zero = f.zero();
    let one = f.one();
    let ff = f.clone();
    let embed = move |x: &BigRational| ff.from_rat(x.clone());
    let core = certify_core(n, d, &pairs, &g, &u, &zero, &one, &embed);
    Ok(render_verdict(core, &pairs, |x| ScalarRepr::of_elem(x)))
}

fn pair_reps(tight: &[IndexVector]) -> Vec<IndexVector> {
    let mut reps: Vec<IndexVector> = tight.iter().map(|k| k.canonical_sign()).collect();
    reps.sort_by_key(|k| k.sort_key());
    reps.dedup();
    reps
}

fn render_verdict<F>(
    core: CoreVerdict<F>,
    pairs: &[IndexVector],
    repr: impl Fn(&F) -> ScalarRepr,
) -> Verdict {
    match core {
        CoreVerdict::Extreme { eta, w, eps } => Verdict::Extreme(Certificate {
            pairs: pairs.to_vec(),
            eta: eta.iter().map(&repr).collect(),
            null_weight: repr(&w),
            epsilon: repr(&eps),
            residual_zero: true,
        }),
        CoreVerdict::NotExtreme(x) => Verdict::NotExtreme(Counterexample {
            coords: x.iter().map(&repr).collect(),
        }),
        CoreVerdict::Fluid(x) => Verdict::FluidCandidate(Counterexample {
            coords: x.iter().map(&repr).collect(),
        }),
        CoreVerdict::Inconclusive(s) => Verdict::Inconclusive(s),
    }
}

/// Recovered point coordinates: interval rows are the lattice basis
/// vectors, translation rows follow.
#[derive(Clone, Debug)]
pub struct RecoveredPoints {
    pub basis: Vec<Vec<Iv>>,
    pub translations: Vec<Vec<Iv>>,
}

/// Recover coordinates of a rational rank-`d` form by interval Cholesky
/// at (roughly) the requested bit precision. The round trip
/// `basis . basis^T = Q`, `translations . basis^T = R` is certified by
/// interval containment before returning.
pub fn recover_points_rational(
    j: &PeriodicForm,
    bits: u32,
) -> Result<RecoveredPoints, ExtremeError> {
    let (psd, r) = psd_rank(j.matrix()).map_err(FormError::Mat)?;
    if !(psd && r == j.d()) {
        return Err(ExtremeError::NotRankD(r));
    }
    let n = j.n();
    let entries: Vec<Vec<Iv>> = (0..n)
        .map(|i| (0..n).map(|jj| Iv::point(j.matrix().at(i, jj).clone())).collect())
        .collect();
    recover_from_intervals(&entries, j.d(), j.m(), bits)
}

/// Same for an algebraic edge point.
pub fn recover_points_algebraic(
    p: &mut AlgebraicPoint,
    bits: u32,
) -> Result<RecoveredPoints, ExtremeError> {
    let entries = p.entry_intervals(2 * bits);
    recover_from_intervals(&entries, p.d(), p.m(), bits)
}

fn recover_from_intervals(
    entries: &[Vec<Iv>],
    d: usize,
    m: usize,
    bits: u32,
) -> Result<RecoveredPoints, ExtremeError> {
    // Interval Cholesky of the lattice block: basis vectors are the rows
    // of the lower-triangular factor.
    let mut a: Vec<Vec<Iv>> = vec![vec![Iv::point(BigRational::zero()); d]; d];
    for j in 0..d {
        let mut diag = entries[j][j].clone();
        for k in 0..j {
            diag = diag.sub(&a[j][k].mul(&a[j][k]));
        }
        if !diag.lo.is_positive() {
            return Err(ExtremeError::PrecisionExhausted);
        }
        a[j][j] = diag.sqrt(2 * bits);
        for i in j + 1..d {
            let mut v = entries[i][j].clone();
            for k in 0..j {
                v = v.sub(&a[i][k].mul(&a[j][k]));
            }
            a[i][j] = v.div(&a[j][j]);
        }
    }
    // Translations: forward substitution of R rows against the basis.
    let mut b: Vec<Vec<Iv>> = vec![vec![Iv::point(BigRational::zero()); d]; m - 1];
    for (r, brow) in b.iter_mut().enumerate() {
        for j in 0..d {
            let mut v = entries[d + r][j].clone();
            for c in 0..j {
                v = v.sub(&a[j][c].mul(&brow[c]));
            }
            brow[j] = v.div(&a[j][j]);
        }
    }
    // Round trip: the interval Gram must overlap the input entries.
    for i in 0..d {
        for j in 0..d {
            let mut acc = Iv::point(BigRational::zero());
            for k in 0..=i.min(j) {
                acc = acc.add(&a[i][k].mul(&a[j][k]));
            }
            if !acc.overlaps(&entries[i][j]) {
                return Err(ExtremeError::PrecisionExhausted);
            }
        }
    }
    for (r, brow) in b.iter().enumerate() {
        for j in 0..d {
            let mut acc = Iv::point(BigRational::zero());
            for c in 0..=j {
                acc = acc.add(&a[j][c].mul(&brow[c]));
            }
            if !acc.overlaps(&entries[d + r][j]) {
                return Err(ExtremeError::PrecisionExhausted);
            }
        }
    }
    Ok(RecoveredPoints { basis: a, translations: b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exact::rat::rat;

    #[test]
    fn d3_extreme_forms_certify() {
        for (name, f) in catalog::d3::extreme_forms() {
            let v = certify_rational(&f).unwrap();
            assert!(matches!(v, Verdict::Extreme(_)), "{name} must be extreme");
            if let Verdict::Extreme(c) = v {
                assert!(c.residual_zero);
                for e in &c.eta {
                    match e {
                        ScalarRepr::Rational(s) => {
                            assert!(!s.starts_with('-') && s != "0");
                        }
                        _ => panic!("rational certificate expected"),
                    }
                }
            }
        }
    }

    #[test]
    fn d4_vertex_certifies_extreme() {
        let v = certify_rational(&catalog::d4::d4_vertex()).unwrap();
        assert!(matches!(v, Verdict::Extreme(_)));
        let v = certify_rational(&catalog::d4::d4_edge()).unwrap();
        assert!(matches!(v, Verdict::Extreme(_)));
    }

    #[test]
    fn full_rank_form_is_rejected() {
        // d=3 vertex forms have full rank 4, not d=3.
        let err = certify_rational(&catalog::d3::vertex_diamond());
        assert!(matches!(err, Err(ExtremeError::NotRankD(4))));
    }

    #[test]
    fn golden_point_certifies_extreme_in_field() {
        let parts = catalog::d4::golden();
        let base = PeriodicForm::new(4, 2, parts.base.clone()).unwrap();
        let mut alpha = parts.alpha.clone();
        let (tight, minval) =
            crate::shortvec::algebraic_minimal_vectors(&base, &parts.dir, &mut alpha).unwrap();
        assert_eq!(minval, (rat(4, 1), rat(0, 1)));
        let p = AlgebraicPoint {
            base,
            dir: parts.dir.clone(),
            t: alpha,
            tight,
            lambda: rat(4, 1),
        };
        // Density first: det Q(tau) = 80 + 128 tau exactly, so the
        // radicand is 4 / (80 + 128 tau) = 1/(36 + 16 sqrt5).
        let dens = p.density();
        let (lo, hi) = dens.approx(64);
        // delta = 2/sqrt(144 + 64 sqrt5) = 0.118038...
        assert!(lo < rat(1181, 10000) && hi > rat(1180, 10000));
        assert_eq!(p.kissing(), rat(22, 1));
        assert!(!p.is_lattice_representation());
        let v = certify_point(&p).unwrap();
        assert!(matches!(v, Verdict::Extreme(_)));
    }

    #[test]
    fn recover_fcc_square_round_trip() {
        let j = catalog::d3::fcc_square();
        let rec = recover_points_rational(&j, 96).unwrap();
        // Basis is lower triangular with positive diagonal.
        for i in 0..3 {
            assert!(rec.basis[i][i].lo.is_positive());
            for jj in i + 1..3 {
                assert!(rec.basis[i][jj].lo.is_zero() && rec.basis[i][jj].hi.is_zero());
            }
        }
        // Width below 1e-20.
        let tol = rat(1, 1).clone() / BigRational::from_integer(BigInt::from(10u8).pow(20));
        for row in rec.basis.iter().chain(rec.translations.iter()) {
            for e in row {
                assert!(e.width() <= tol);
            }
        }
    }

    #[test]
    fn recover_rejects_full_rank() {
        let q = RatMatrix::from_i64(4, 4, &[
            4, 0, 0, 0, 0, 4, 0, 0, 0, 0, 4, 0, 0, 0, 0, 4,
        ]);
        let j = PeriodicForm::new(3, 2, q).unwrap();
        assert!(matches!(
            recover_points_rational(&j, 64),
            Err(ExtremeError::NotRankD(4))
        ));
    }

    #[test]
    fn recover_hcp_round_trip() {
        let j = catalog::d3::hcp();
        let rec = recover_points_rational(&j, 80).unwrap();
        assert_eq!(rec.translations.len(), 1);
        // hcp translation has a nonzero out-of-plane component.
        assert!(rec.translations[0][2].lo.is_positive());
    }

    #[test]
    fn special_edge_is_whole_edge_locus() {
        let j = catalog::d5::d5_rep_vertex();
        let t = catalog::d5::special_edge_transform();
        let jt = crate::forms::apply(&j, &t);
        let dir = jt.matrix().sub(j.matrix());
        let v = PolyVertex::new(j, &rat(4, 1)).unwrap();
        let locus =
            rank_points_on_edge(&v, &dir, &EdgeExtent::Bounded(rat(1, 1))).unwrap();
        match locus {
            EdgeRankLocus::WholeEdge { q_pencil, fluid } => {
                assert!(!fluid);
                // 512(1 + t - t^2) up to positive scale: primitive form.
                assert_eq!(q_pencil, IntPoly::from_i64(&[1, 1, -1]));
            }
            other => panic!("expected whole-edge locus, got {other:?}"),
        }
    }

    #[test]
    fn interior_of_special_edge_rejected_by_objective() {
        // f(t) = 1 + t - t^2 has no roots inside [0, 1], so the objective
        // is strictly larger there than at the endpoints; interior points
        // are never optimal.
        let f = IntPoly::from_i64(&[1, 1, -1]);
        let roots = isolate_real_roots(
            &f,
            &RootRange::closed(BigRational::zero(), BigRational::one()),
        )
        .unwrap();
        assert!(roots.is_empty());
        assert_eq!(f.sign_at(&rat(1, 2)), 1);
    }
}
