//! Local polyhedral structure of the feasible region `R(lambda)`: vertex
//! objects, extreme rays of vertex cones (double description in exact
//! arithmetic), the bounded/unbounded decision for rays, and walking a
//! form to a vertex along faces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::mat::{
    integer_kernel, kernel_basis, psd_rank, rank, MatError, RatMatrix,
};
use crate::exact::pencil::pencil_poly;
use crate::exact::rat::rat;
use crate::exact::roots::{isolate_real_roots, RootRange};
use crate::forms::{evaluate_matrix, FormError, IndexVector, PeriodicForm};
use crate::shortvec::{minimal_vectors, SublevelSet};

#[derive(Debug, Clone, thiserror::Error)]
pub enum PolyError {
    #[error("form minimum {found} differs from the level {expected}")]
    MinMismatch { expected: BigRational, found: BigRational },
    #[error("minimal set is not perfect: span rank {rank} < {needed}")]
    NotAVertex { rank: usize, needed: usize },
    #[error("walk did not terminate within {0} steps; suspected fluid or unbounded face")]
    WalkDidNotTerminate(usize),
    #[error("face line is unbounded in both directions; suspected fluid face")]
    UnboundedFace,
    #[error("parameter exceeded the doubling cap; suspected unbounded edge misclassification")]
    DoublingCap,
    #[error("zero direction")]
    ZeroDirection,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// A vertex of the polyhedron: a form whose minimal vectors' outer
/// products span the whole symmetric space.
#[derive(Clone, Debug)]
pub struct PolyVertex {
    form: PeriodicForm,
    lambda: BigRational,
    minset: SublevelSet,
    /// One representative per `{k, -k}` pair, canonical order.
    reps: Vec<IndexVector>,
}

impl PolyVertex {
    /// Validate and build: the minimum must equal `lambda` and the minimal
    /// set must be perfect.
    pub fn new(form: PeriodicForm, lambda: &BigRational) -> Result<Self, PolyError> {
        let (min, minset) = minimal_vectors(&form)?;
        if &min != lambda {
            return Err(PolyError::MinMismatch { expected: lambda.clone(), found: min });
        }
        Self::from_checked_parts(form, lambda, minset)
    }

    /// Build from a minimal set that was already computed exactly (the
    /// boundary walk ends with one in hand); only perfectness is checked.
    pub fn from_checked_parts(
        form: PeriodicForm,
        lambda: &BigRational,
        minset: SublevelSet,
    ) -> Result<Self, PolyError> {
        debug_assert!(minset.values.iter().all(|v| v == lambda));
        let reps = minset.pair_representatives();
        let n = form.n();
        let needed = n * (n + 1) / 2;
        let r = outer_span_rank(&reps, n);
        if r != needed {
            return Err(PolyError::NotAVertex { rank: r, needed });
        }
        Ok(PolyVertex { form, lambda: lambda.clone(), minset, reps })
    }

    pub fn form(&self) -> &PeriodicForm {
        &self.form
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn minset(&self) -> &SublevelSet {
        &self.minset
    }

    pub fn facet_representatives(&self) -> &[IndexVector] {
        &self.reps
    }

    pub fn facet_count(&self) -> usize {
        self.reps.len()
    }
}

/// Coordinates of the functional `X -> <k k^T, X>` on the upper-triangle
/// parameterization of symmetric matrices (diagonal entries once,
/// off-diagonal entries doubled).
pub fn constraint_coords(k: &IndexVector, n: usize) -> Vec<BigRational> {
    let v = k.to_rational_vec();
    assert_eq!(v.len(), n);
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            if i == j {
                out.push(&v[i] * &v[j]);
            } else {
                out.push(rat(2, 1) * &v[i] * &v[j]);
            }
        }
    }
    out
}

/// Rebuild a symmetric matrix from upper-triangle coordinates.
pub fn matrix_from_coords(coords: &[BigRational], n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    let mut idx = 0;
    for i in 0..n {
        for j in i..n {
            m.set(i, j, coords[idx].clone());
            m.set(j, i, coords[idx].clone());
            idx += 1;
        }
    }
    m
}

/// Rank of the span of `{k k^T}` inside the symmetric space.
pub fn outer_span_rank(ks: &[IndexVector], n: usize) -> usize {
    let cols = n * (n + 1) / 2;
    let m = RatMatrix::from_fn(ks.len(), cols, |i, j| constraint_coords(&ks[i], n)[j].clone());
    rank(&m)
}

/// Fixed-capacity bitset for constraint zero-sets.
#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, o: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&o.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn is_subset_of(&self, o: &BitSet) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct DdRay {
    coords: Vec<BigRational>,
    zeros: BitSet,
}

/// Extreme rays of the cone `{X : <k k^T, X> >= 0 for all minimal k}` by
/// the double description method in exact rational arithmetic.
///
/// Rays are scaled to primitive integer matrices; the direction (sign) is
/// the one lying in the cone. Output order is deterministic.
pub fn extreme_rays(v: &PolyVertex) -> Result<Vec<RatMatrix>, PolyError> {
    let n = v.form.n();
    extreme_rays_of_normals(&v.reps, n)
}

pub fn extreme_rays_of_normals(
    reps: &[IndexVector],
    n: usize,
) -> Result<Vec<RatMatrix>, PolyError> {
    let dim = n * (n + 1) / 2;
    // Insertion order: fewer nonzero entries first, canonical tie-break.
    let mut order: Vec<usize> = (0..reps.len()).collect();
    let nonzeros = |k: &IndexVector| -> usize {
        k.n.iter().filter(|x| !x.is_zero()).count()
            + k.l.iter().filter(|&&x| x != 0).count()
    };
    order.sort_by_key(|&i| (nonzeros(&reps[i]), reps[i].sort_key()));
    let coords: Vec<Vec<BigRational>> =
        order.iter().map(|&i| constraint_coords(&reps[i], n)).collect();

    // Greedy linearly independent prefix for the initial simplicial cone.
    let mut basis_idx: Vec<usize> = Vec::new();
    {
        let mut mat_rows: Vec<Vec<BigRational>> = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            mat_rows.push(c.clone());
            let m = RatMatrix::from_fn(mat_rows.len(), dim, |r, cdx| mat_rows[r][cdx].clone());
            if rank(&m) == mat_rows.len() {
                basis_idx.push(i);
                if basis_idx.len() == dim {
                    break;
                }
            } else {
                mat_rows.pop();
            }
        }
    }
    if basis_idx.len() < dim {
        return Err(PolyError::NotAVertex { rank: basis_idx.len(), needed: dim });
    }
    // Initial rays: columns of C^{-1}, where C rows are the basis coords.
    let c_mat = RatMatrix::from_fn(dim, dim, |i, j| coords[basis_idx[i]][j].clone());
    let c_inv = crate::exact::mat::invert(&c_mat)?;
    let total = coords.len();
    let mut rays: Vec<DdRay> = (0..dim)
        .map(|j| {
            let col: Vec<BigRational> = (0..dim).map(|i| c_inv.at(i, j).clone()).collect();
            let mut zeros = BitSet::new(total);
            for (pos, &bi) in basis_idx.iter().enumerate() {
                let _ = pos;
                if bi != basis_idx[j] {
                    zeros.set(bi);
                }
            }
            DdRay { coords: normalize_coords(&col), zeros }
        })
        .collect();

    let basis_set: std::collections::HashSet<usize> = basis_idx.iter().copied().collect();
    let mut processed: Vec<usize> = basis_idx.clone();
    for ci in 0..total {
        if basis_set.contains(&ci) {
            continue;
        }
        let c = &coords[ci];
        let vals: Vec<BigRational> = rays.iter().map(|r| dot(c, &r.coords)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zer = Vec::new();
        for (i, val) in vals.iter().enumerate() {
            match crate::exact::poly::sign_of(val) {
                1 => pos.push(i),
                -1 => neg.push(i),
                _ => zer.push(i),
            }
        }
        if neg.is_empty() {
            for &i in &zer {
                rays[i].zeros.set(ci);
            }
            processed.push(ci);
            continue;
        }
        let mut new_rays: Vec<DdRay> = Vec::new();
        for &p in &pos {
            for &m in &neg {
                let z = rays[p].zeros.intersect(&rays[m].zeros);
                // Adjacency: enough shared facets, and no third ray
                // dominating the shared zero set.
                if z.count() + 2 < dim {
                    continue;
                }
                let dominated = rays.iter().enumerate().any(|(i, r)| {
                    i != p && i != m && z.is_subset_of(&r.zeros)
                });
                if dominated {
                    continue;
                }
                let vp = &vals[p];
                let vm = &vals[m];
                let coords_new: Vec<BigRational> = rays[m]
                    .coords
                    .iter()
                    .zip(rays[p].coords.iter())
                    .map(|(cm, cp)| vp * cm - vm * cp)
                    .collect();
                let mut zeros = z;
                zeros.set(ci);
                new_rays.push(DdRay { coords: normalize_coords(&coords_new), zeros });
            }
        }
        let mut kept: Vec<DdRay> = Vec::new();
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            let mut r = r;
            if vals[i].is_zero() {
                r.zeros.set(ci);
            }
            kept.push(r);
        }
        for nr in new_rays {
            if !kept.iter().any(|r| r.coords == nr.coords) {
                kept.push(nr);
            }
        }
        rays = kept;
        processed.push(ci);
    }
    let _ = processed;
    let mut out: Vec<Vec<BigRational>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out.iter().map(|c| matrix_from_coords(c, n)).collect())
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Scale coordinates to a primitive integer vector (positive scale only,
/// preserving the direction).
fn normalize_coords(c: &[BigRational]) -> Vec<BigRational> {
    let mut l = BigInt::one();
    for x in c {
        l = num_integer::lcm(l, x.denom().clone());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = num_integer::gcd(g, v.clone());
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.into_iter()
        .map(|v| BigRational::from_integer(v / &g))
        .collect()
}

/// Outcome of following `{J + t dir : t >= 0}` from a vertex (or from any
/// form, for walk steps).
#[derive(Clone, Debug)]
pub enum RayOutcome {
    /// The ray leaves the polyhedron; `t_star` is the exact boundary
    /// parameter and `vertex` the contiguous vertex reached there.
    Bounded { t_star: BigRational, vertex: PolyVertex },
    /// The ray lies entirely inside the polyhedron.
    Unbounded,
}

/// Decide whether `{form + t dir : t >= 0}` stays inside `R(lambda)`.
///
/// Case analysis on the direction's lattice block `Q'`:
/// (a) `Q'` not PSD: some lattice value goes negative, bounded.
/// (b) `Q'` PSD with null space meeting `R'` nontrivially: a drifting
///     rounded vector drives the value to `-infinity`, bounded.
/// (c) otherwise the direction's values depend only on the coordinates
///     transverse to the null space; reduce by a unimodular transform and
///     take the exact minimum of the restricted form: unbounded iff it is
///     nonnegative.
pub fn ray_is_unbounded(form: &PeriodicForm, dir: &RatMatrix) -> Result<bool, PolyError> {
    if dir.is_zero() {
        return Err(PolyError::ZeroDirection);
    }
    let d = form.d();
    let m = form.m();
    let qp = dir.submatrix(0, 0, d, d);
    let rp = dir.submatrix(d, 0, m - 1, d);
    let sp = dir.submatrix(d, d, m - 1, m - 1);
    let (psd, qrank) = psd_rank(&qp)?;
    if !psd {
        return Ok(false);
    }
    if qrank < d {
        // Case (b): null-space vector with R' u != 0.
        let qp_int = qp.primitive_integer();
        let kernel = integer_kernel(&qp_int);
        debug_assert_eq!(kernel.len(), d - qrank);
        for u in &kernel {
            let ur: Vec<BigRational> =
                u.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let img = rp.mul_vec(&ur);
            if img.iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        if qrank == 0 {
            // Values depend on l only.
            for l in crate::shortvec::l_class_representatives(m) {
                let mut lsl = BigRational::zero();
                for (a, &la) in l.iter().enumerate() {
                    for (b, &lb) in l.iter().enumerate() {
                        if la != 0 && lb != 0 {
                            lsl += sp.at(a, b) * rat((la * lb) as i64, 1);
                        }
                    }
                }
                if lsl.is_negative() {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        // Case (c): align the null space with the trailing coordinates.
        let (_, u) = crate::exact::mat::hnf(&qp_int);
        let ur = u.to_rational();
        let qu = ur.transpose().mul(&qp).mul(&ur);
        let r_u = rp.mul(&ur);
        let rdim = qrank;
        // Trailing columns map into the kernel: their R' image vanished
        // above, and Q' rows/cols vanish by construction.
        let qpp = qu.submatrix(0, 0, rdim, rdim);
        let rpp = r_u.submatrix(0, 0, m - 1, rdim);
        let reduced = assemble_form(rdim, m, &qpp, &rpp, &sp)?;
        let min = crate::shortvec::minimum(&reduced)?;
        Ok(!min.is_negative())
    } else {
        // Q' positive definite: direct minimum of the direction over M.
        let as_form = PeriodicForm::new(d, m, dir.clone()).map_err(PolyError::Form)?;
        let min = crate::shortvec::minimum(&as_form)?;
        Ok(!min.is_negative())
    }
}

fn assemble_form(
    d: usize,
    m: usize,
    q: &RatMatrix,
    r: &RatMatrix,
    s: &RatMatrix,
) -> Result<PeriodicForm, PolyError> {
    let n = d + m - 1;
    let mat = RatMatrix::from_fn(n, n, |i, j| {
        if i < d && j < d {
            q.at(i, j).clone()
        } else if i < d {
            r.at(j - d, i).clone()
        } else if j < d {
            r.at(i - d, j).clone()
        } else {
            s.at(i - d, j - d).clone()
        }
    });
    PeriodicForm::new(d, m, mat).map_err(PolyError::Form)
}

/// Exact boundary location for a bounded direction: the largest `t` with
/// `min(form + t dir) = lambda`, together with the boundary form and its
/// (strictly enlarged) minimal set.
pub fn locate_boundary(
    form: &PeriodicForm,
    dir: &RatMatrix,
    lambda: &BigRational,
) -> Result<(BigRational, PeriodicForm, SublevelSet), PolyError> {
    let d = form.d();
    let q0 = form.q_block();
    let qdir = dir.submatrix(0, 0, d, d);
    let base_tight: Vec<IndexVector> = Vec::new();
    let _ = base_tight;
    let mut lo_good = BigRational::zero();
    let mut t = BigRational::one();
    let cap = BigRational::from_integer(BigInt::one() << 64usize);
    for _ in 0..10_000 {
        if &t > &cap {
            return Err(PolyError::DoublingCap);
        }
        // Keep the lattice block positive definite: below the first
        // positive root of det(Q + t Q') everything is PD.
        let jt_q = q0.add(&qdir.scale(&t));
        let (qpsd, qrank) = psd_rank(&jt_q)?;
        if !(qpsd && qrank == d) {
            let p = pencil_poly(&q0, &qdir)?;
            let roots = isolate_real_roots(&p, &RootRange::half_line_open(BigRational::zero()))
                .expect("pencil nonzero at t=0");
            let mut b = roots
                .into_iter()
                .map(|r| r.value)
                .next()
                .expect("PD fails at finite t, so a positive root exists");
            // Move to a rational strictly inside (lo_good, b): PD holds on
            // the whole interval up to the first root.
            t = if let Some(rb) = b.as_rational() {
                (&lo_good + rb) / rat(2, 1)
            } else {
                while b.lo() <= &lo_good {
                    b.refine();
                    if let Some(rb) = b.as_rational() {
                        b = crate::exact::roots::AlgebraicNumber::from_rational(rb.clone());
                        break;
                    }
                }
                match b.as_rational() {
                    Some(rb) => (&lo_good + rb) / rat(2, 1),
                    None => b.lo().clone(),
                }
            };
            continue;
        }
        let jt = PeriodicForm::new(form.d(), form.m(), form.matrix().add(&dir.scale(&t)))
            .map_err(PolyError::Form)?;
        // One sublevel pass: anything at or below the level is either a
        // violator (strictly below) or a tight vector.
        let sub = crate::shortvec::sublevel(&jt, lambda)?;
        let mut best: Option<BigRational> = None;
        for (k, v) in sub.vectors.iter().zip(sub.values.iter()) {
            if v >= lambda {
                continue;
            }
            let base_v = crate::forms::evaluate(form, k);
            let dir_v = evaluate_matrix(dir, k);
            debug_assert!(dir_v.is_negative());
            let cross = (lambda - &base_v) / &dir_v;
            match &best {
                Some(b) if b <= &cross => {}
                _ => best = Some(cross),
            }
        }
        if let Some(cross) = best {
            // Shrink to the smallest crossing among the violators.
            t = cross;
            if t.is_zero() || t.is_negative() {
                // The direction immediately violates a tight constraint.
                return Err(PolyError::ZeroDirection);
            }
            continue;
        }
        if !sub.is_empty() {
            // min == lambda here; did new tight vectors appear?
            let grew = sub.vectors.iter().any(|k| {
                !evaluate_matrix(dir, k).is_zero()
            });
            if grew {
                return Ok((t.clone(), jt, sub));
            }
        }
        lo_good = t.clone();
        t = &t * rat(2, 1);
    }
    Err(PolyError::DoublingCap)
}

/// Follow an extreme ray of a vertex cone to its outcome.
pub fn classify_ray(v: &PolyVertex, dir: &RatMatrix) -> Result<RayOutcome, PolyError> {
    if ray_is_unbounded(v.form(), dir)? {
        return Ok(RayOutcome::Unbounded);
    }
    let (t_star, jt, minset) = locate_boundary(v.form(), dir, v.lambda())?;
    let vertex = PolyVertex::from_checked_parts(jt, v.lambda(), minset)?;
    Ok(RayOutcome::Bounded { t_star, vertex })
}

/// Walk from a form with minimum `lambda` to a vertex of the polyhedron:
/// repeatedly pick a direction in the affine hull of the current face and
/// move to the boundary, growing the tight set each step.
pub fn walk_to_vertex(form: &PeriodicForm, lambda: &BigRational) -> Result<PolyVertex, PolyError> {
    let n = form.n();
    let needed = n * (n + 1) / 2;
    let mut cur = form.clone();
    let step_cap = needed + form.d() + 4;
    for _ in 0..step_cap {
        let (min, sub) = minimal_vectors(&cur)?;
        if &min != lambda {
            return Err(PolyError::MinMismatch { expected: lambda.clone(), found: min });
        }
        let reps = sub.pair_representatives();
        let constraint = RatMatrix::from_fn(reps.len(), needed, |i, j| {
            constraint_coords(&reps[i], n)[j].clone()
        });
        let kernel = kernel_basis(&constraint);
        if kernel.is_empty() {
            return PolyVertex::new(cur, lambda);
        }
        let dir = matrix_from_coords(&normalize_coords(&kernel[0]), n);
        let forward = !ray_is_unbounded(&cur, &dir)?;
        let chosen = if forward {
            dir
        } else {
            let back = dir.neg();
            if ray_is_unbounded(&cur, &back)? {
                return Err(PolyError::UnboundedFace);
            }
            back
        };
        let (_, next, _) = locate_boundary(&cur, &chosen, lambda)?;
        cur = next;
    }
    Err(PolyError::WalkDidNotTerminate(step_cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::oracle;

    #[test]
    fn vertex_construction_accepts_vertices_only() {
        let lambda = rat(4, 1);
        for (_, f) in catalog::d3::vertex_forms() {
            let v = PolyVertex::new(f, &lambda).unwrap();
            assert!(v.facet_count() * 2 >= 20);
        }
        // The hcp form sits on an edge, not a vertex.
        assert!(matches!(
            PolyVertex::new(catalog::d3::hcp(), &lambda),
            Err(PolyError::NotAVertex { .. })
        ));
    }

    #[test]
    fn ray_structure_at_d3_vertex() {
        let v = PolyVertex::new(catalog::d3::vertex_cubic_body_center(), &rat(4, 1)).unwrap();
        let dim = 10; // symmetric 4x4 space
        assert!(v.facet_count() >= dim);
        let rays = extreme_rays(&v).unwrap();
        // A pointed full-dimensional cone has at least dim extreme rays,
        // and every extreme ray lies on at least dim-1 facets.
        assert!(rays.len() >= dim);
        for r in &rays {
            let mut zeros = 0;
            for k in v.facet_representatives() {
                let val = evaluate_matrix(r, k);
                assert!(!val.is_negative());
                if val.is_zero() {
                    zeros += 1;
                }
            }
            assert!(zeros >= dim - 1);
        }
    }

    #[test]
    fn dd_matches_subset_oracle_on_d3_vertices() {
        for (_, f) in catalog::d3::vertex_forms() {
            let v = PolyVertex::new(f, &rat(4, 1)).unwrap();
            let dd: Vec<RatMatrix> = extreme_rays(&v).unwrap();
            let brute = oracle::brute_force_extreme_rays(v.facet_representatives(), v.form().n());
            let mut dd_sorted: Vec<Vec<BigRational>> = dd
                .iter()
                .map(|m| {
                    let n = m.rows();
                    (0..n)
                        .flat_map(|i| (i..n).map(move |j| (i, j)))
                        .map(|(i, j)| m.at(i, j).clone())
                        .collect()
                })
                .collect();
            dd_sorted.sort();
            assert_eq!(dd_sorted, brute);
        }
    }

    #[test]
    fn walk_from_vertex_is_identity() {
        let f = catalog::d3::vertex_hex_prism();
        let v = walk_to_vertex(&f, &rat(4, 1)).unwrap();
        assert_eq!(v.form().matrix(), f.matrix());
    }

    #[test]
    fn walk_from_hcp_reaches_hex_prism_vertex() {
        // The hcp form lies on an unbounded edge whose finite end is the
        // hexagonal-prism vertex (up to equivalence); one step suffices.
        let v = walk_to_vertex(&catalog::d3::hcp(), &rat(4, 1)).unwrap();
        assert_eq!(crate::shortvec::minimum(v.form()).unwrap(), rat(4, 1));
        assert_eq!(v.minset().len(), 20);
    }

    #[test]
    fn negative_q_direction_is_bounded() {
        let f = catalog::d3::vertex_cubic_body_center();
        let mut dir = RatMatrix::zeros(4, 4);
        dir.set(0, 0, rat(-1, 1));
        assert!(!ray_is_unbounded(&f, &dir).unwrap());
    }

    #[test]
    fn pure_s_direction_is_unbounded() {
        // Increasing S alone never decreases any value.
        let f = catalog::d3::vertex_cubic_body_center();
        let mut dir = RatMatrix::zeros(4, 4);
        dir.set(3, 3, rat(1, 1));
        assert!(ray_is_unbounded(&f, &dir).unwrap());
    }

    #[test]
    fn hcp_lies_on_unbounded_edge_from_hex_prism() {
        // Difference direction from the hex-prism vertex toward hcp spans
        // the unbounded edge carrying the hcp packing.
        let vform = catalog::d3::vertex_hex_prism();
        let hcp = catalog::d3::hcp();
        // Find the group image of hcp sharing the edge: walk hcp to the
        // vertex and use the walked representative; the edge direction is
        // hcp* - vertex for the matching representative. Here we check the
        // weaker, exact statement used by the pipeline: some extreme ray
        // of the hex-prism vertex is unbounded.
        let v = PolyVertex::new(vform, &rat(4, 1)).unwrap();
        let rays = extreme_rays(&v).unwrap();
        let unbounded: Vec<_> = rays
            .iter()
            .filter(|r| ray_is_unbounded(v.form(), r).unwrap())
            .collect();
        assert!(!unbounded.is_empty());
        let _ = hcp;
    }

    #[test]
    fn bounded_rays_reach_contiguous_vertices() {
        let v = PolyVertex::new(catalog::d3::vertex_cubic_body_center(), &rat(4, 1)).unwrap();
        let rays = extreme_rays(&v).unwrap();
        let mut bounded = 0;
        for r in &rays {
            match classify_ray(&v, r).unwrap() {
                RayOutcome::Bounded { t_star, vertex } => {
                    bounded += 1;
                    assert!(t_star.is_positive());
                    assert_eq!(
                        crate::shortvec::minimum(vertex.form()).unwrap(),
                        rat(4, 1)
                    );
                }
                RayOutcome::Unbounded => {
                    // Spot checks at large parameters.
                    for e in [1u32, 10, 20] {
                        let t = BigRational::from_integer(BigInt::one() << e);
                        let jt = PeriodicForm::new(
                            4 - 1,
                            2,
                            v.form().matrix().add(&r.scale(&t)),
                        )
                        .unwrap();
                        assert!(crate::shortvec::minimum(&jt).unwrap() >= rat(4, 1));
                    }
                }
            }
        }
        assert!(bounded > 0);
    }
}
