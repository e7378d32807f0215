//! Breadth-first enumeration of vertex orbits of the polyhedron and of
//! the rank-deficient points on its edges, up to symmetry.
//!
//! Each dequeued vertex contributes its extreme rays; bounded rays yield
//! contiguous vertices (inserted if inequivalent to all stored orbits),
//! and every edge is scanned for rank-deficient points, which are
//! deduplicated and certified. Ray classification within one vertex runs
//! on the worker pool; database insertion is sequential in canonical ray
//! order, so results are identical across worker counts.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::Zero;

use crate::equivalence::{
    witness_algebraic_prepared, witness_prepared, PreparedAlgebraic, PreparedForm,
};
use crate::exact::mat::{det, psd_rank, RatMatrix};
use crate::exact::poly::IntPoly;
use crate::exact::rat::rat;
use crate::extremeness::{
    certify_point, certify_rational_with_tight, rank_points_on_edge, AlgebraicPoint,
    EdgeExtent, EdgeRankLocus, Verdict,
};
use crate::forms::{Density, FormError, PeriodicForm};
use crate::polyhedron::{classify_ray, extreme_rays, walk_to_vertex, PolyError, PolyVertex, RayOutcome};
use crate::shortvec::weighted_kissing;

#[derive(Debug, Clone, thiserror::Error)]
pub enum EnumError {
    #[error("starting forms are provided for 3 <= d <= 6 (got {0})")]
    UnsupportedDimension(usize),
    #[error("enumeration supports two orbits only (m = 2)")]
    UnsupportedOrbitCount,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("equivalence failure: {0}")]
    Equiv(String),
    #[error("extremeness failure: {0}")]
    Extreme(String),
}

/// Run parameters.
#[derive(Clone)]
pub struct RunConfig {
    pub dimension: usize,
    pub m: usize,
    pub max_vertices: Option<usize>,
    pub workers: usize,
    /// Working precision for report rendering.
    pub precision_bits: u32,
    /// Pair-representative count above which a cone is skipped in partial
    /// mode.
    pub facet_threshold: usize,
    /// Called after each processed vertex (checkpointing).
    pub progress: Option<std::sync::Arc<dyn Fn(&OrbitDatabase) + Send + Sync>>,
}

impl std::fmt::Debug for RunConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RunConfig")
            .field("dimension", &self.dimension)
            .field("m", &self.m)
            .field("max_vertices", &self.max_vertices)
            .field("workers", &self.workers)
            .field("precision_bits", &self.precision_bits)
            .field("facet_threshold", &self.facet_threshold)
            .finish()
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dimension: 3,
            m: 2,
            max_vertices: None,
            workers: 1,
            precision_bits: 128,
            facet_threshold: 50,
            progress: None,
        }
    }
}

/// One vertex orbit of the polyhedron.
#[derive(Clone, Debug)]
pub struct VertexOrbit {
    /// Reduced representative with cached equivalence data.
    pub prepared: PreparedForm,
    pub minset_size: usize,
    /// `det J = 0`, i.e. the vertex is itself a realizable packing.
    pub in_r0: bool,
    pub psd: bool,
    pub contiguous: BTreeSet<usize>,
    /// Extremeness verdict when the vertex lies in the rank locus.
    pub verdict: Option<Verdict>,
    pub processed: bool,
    /// Ray enumeration skipped (cone above the facet threshold).
    pub skipped: bool,
}

impl VertexOrbit {
    pub fn form(&self) -> &PeriodicForm {
        &self.prepared.form
    }
}

/// Cached equivalence data for an edge point: the rational realization
/// when the parameter is rational, the algebraic pencil data otherwise.
#[derive(Clone, Debug)]
pub enum PreparedPoint {
    Rational(PreparedForm),
    Algebraic(PreparedAlgebraic),
}

/// One orbit of rank-deficient edge points.
pub struct PointOrbit {
    pub point: AlgebraicPoint,
    pub prepared: PreparedPoint,
    pub on_ray: bool,
    pub incident: BTreeSet<usize>,
    pub verdict: Verdict,
    pub kappa: BigRational,
    pub density: Density,
    pub lattice: bool,
    pub minvec_count: usize,
}

impl std::fmt::Debug for PointOrbit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PointOrbit(kappa={}, lattice={}, verdict={})",
            self.kappa,
            self.lattice,
            self.verdict.kind()
        )
    }
}

/// A whole edge inside the rank locus.
#[derive(Clone, Debug)]
pub struct R0EdgeOrbit {
    pub incident: BTreeSet<usize>,
    pub q_pencil: IntPoly,
    pub fluid: bool,
    /// Midpoint representative used for deduplication (bounded edges).
    pub midpoint: Option<PeriodicForm>,
}

#[derive(Clone, Debug)]
pub struct SkipRecord {
    pub vertex_orbit: usize,
    pub facet_pairs: usize,
}

/// The synchronized result store of a run.
pub struct OrbitDatabase {
    pub dimension: usize,
    pub m: usize,
    pub lambda: BigRational,
    pub vertices: Vec<VertexOrbit>,
    pub points: Vec<PointOrbit>,
    pub r0_edges: Vec<R0EdgeOrbit>,
    pub skips: Vec<SkipRecord>,
    pub queue: VecDeque<usize>,
    pub complete: bool,
}

impl OrbitDatabase {
    pub fn new(dimension: usize, m: usize) -> Self {
        OrbitDatabase {
            dimension,
            m,
            lambda: rat(4, 1),
            vertices: Vec::new(),
            points: Vec::new(),
            r0_edges: Vec::new(),
            skips: Vec::new(),
            queue: VecDeque::new(),
            complete: false,
        }
    }

    pub fn extreme_count(&self) -> usize {
        self.verdict_iter()
            .filter(|v| matches!(v, Verdict::Extreme(_)))
            .count()
    }

    pub fn verdict_iter(&self) -> impl Iterator<Item = &Verdict> {
        self.vertices
            .iter()
            .filter_map(|v| v.verdict.as_ref())
            .chain(self.points.iter().map(|p| &p.verdict))
    }

    /// Insert a vertex if no stored orbit is equivalent; returns the orbit
    /// id and whether it was new. The reduced representative and its
    /// equivalence data arrive precomputed (they are built on the worker
    /// pool during ray processing).
    pub fn insert_vertex(&mut self, v: &PolyVertex) -> Result<(usize, bool), EnumError> {
        let prepared = prepare_vertex(v)?;
        self.insert_vertex_prepared(v.minset().len(), prepared)
    }

    pub fn insert_vertex_prepared(
        &mut self,
        minset_size: usize,
        prepared: PreparedForm,
    ) -> Result<(usize, bool), EnumError> {
        for (id, orbit) in self.vertices.iter().enumerate() {
            if witness_prepared(&orbit.prepared, &prepared, true)
                .map_err(|e| EnumError::Equiv(e.to_string()))?
                .is_some()
            {
                return Ok((id, false));
            }
        }
        let jr = prepared.form.clone();
        let (psd, rank) = psd_rank(jr.matrix()).map_err(FormError::Mat)?;
        let in_r0 = psd && rank == jr.d();
        let verdict = if in_r0 {
            let reps = {
                let mut r: Vec<_> = prepared
                    .vectors
                    .iter()
                    .filter(|k| crate::forms::evaluate(&jr, k) == self.lambda)
                    .map(|k| k.canonical_sign())
                    .collect::<Vec<_>>();
                r.sort_by_key(|k| k.sort_key());
                r.dedup();
                r
            };
            Some(
                certify_rational_with_tight(&jr, &reps)
                    .map_err(|e| EnumError::Extreme(e.to_string()))?,
            )
        } else {
            None
        };
        self.vertices.push(VertexOrbit {
            minset_size,
            prepared,
            in_r0,
            psd,
            contiguous: BTreeSet::new(),
            verdict,
            processed: false,
            skipped: false,
        });
        Ok((self.vertices.len() - 1, true))
    }

    /// Insert an edge point orbit (deduplicated); returns its id.
    fn insert_point(
        &mut self,
        point: AlgebraicPoint,
        prepared: PreparedPoint,
        on_ray: bool,
        incident: usize,
        verdict: Verdict,
    ) -> Result<usize, EnumError> {
        let kappa = point.kissing();
        let lattice = point.is_lattice_representation();
        let minvec_count = point.tight.len();
        for (id, orbit) in self.points.iter_mut().enumerate() {
            if orbit.on_ray != on_ray
                || orbit.kappa != kappa
                || orbit.lattice != lattice
                || orbit.minvec_count != minvec_count
            {
                continue;
            }
            let matched = match (&orbit.prepared, &prepared) {
                (PreparedPoint::Rational(a), PreparedPoint::Rational(b)) => {
                    witness_prepared(a, b, true)
                        .map_err(|e| EnumError::Equiv(e.to_string()))?
                        .is_some()
                }
                (PreparedPoint::Algebraic(a), PreparedPoint::Algebraic(b)) => {
                    witness_algebraic_prepared(a, b)
                        .map_err(|e| EnumError::Equiv(e.to_string()))?
                        .is_some()
                }
                _ => false,
            };
            if matched {
                orbit.incident.insert(incident);
                return Ok(id);
            }
        }
        let density = point.density();
        let mut inc = BTreeSet::new();
        inc.insert(incident);
        self.points.push(PointOrbit {
            point,
            prepared,
            on_ray,
            incident: inc,
            verdict,
            kappa,
            density,
            lattice,
            minvec_count,
        });
        Ok(self.points.len() - 1)
    }

    /// Insert a fully rank-deficient edge (deduplicated via midpoint for
    /// bounded edges, conservatively by incidence otherwise).
    fn insert_r0_edge(
        &mut self,
        incident: usize,
        q_pencil: IntPoly,
        fluid: bool,
        midpoint: Option<PeriodicForm>,
    ) -> Result<usize, EnumError> {
        for (id, orbit) in self.r0_edges.iter_mut().enumerate() {
            let matched = match (&midpoint, &orbit.midpoint) {
                (Some(a), Some(b)) => crate::equivalence::equivalent(b, a)
                    .map_err(|e| EnumError::Equiv(e.to_string()))?
                    .is_some(),
                (None, None) => orbit.q_pencil == q_pencil && orbit.fluid == fluid,
                _ => false,
            };
            if matched {
                orbit.incident.insert(incident);
                return Ok(id);
            }
        }
        let mut inc = BTreeSet::new();
        inc.insert(incident);
        self.r0_edges.push(R0EdgeOrbit { incident: inc, q_pencil, fluid, midpoint });
        Ok(self.r0_edges.len() - 1)
    }
}

/// The 2-periodic representation of the root lattice A_d on an index-2
/// sublattice, scaled to minimum 4.
pub fn initial_form(d: usize) -> Result<PeriodicForm, EnumError> {
    if !(3..=6).contains(&d) {
        return Err(EnumError::UnsupportedDimension(d));
    }
    // Gram of A_d at minimum 4: diag 4, superdiagonal -2.
    let g = RatMatrix::from_fn(d, d, |i, j| {
        if i == j {
            rat(4, 1)
        } else if i.abs_diff(j) == 1 {
            rat(-2, 1)
        } else {
            rat(0, 1)
        }
    });
    // Sublattice basis (2 a_1, a_2, .., a_d); translate b = a_1.
    let n = d + 1;
    let mat = RatMatrix::from_fn(n, n, |i, j| {
        let scale_i: i64 = if i == 0 { 2 } else { 1 };
        if i < d && j < d {
            let scale: i64 = scale_i * if j == 0 { 2 } else { 1 };
            g.at(i, j) * rat(scale, 1)
        } else if i == d && j == d {
            g.at(0, 0).clone()
        } else if i == d {
            g.at(0, j) * rat(if j == 0 { 2 } else { 1 }, 1)
        } else {
            g.at(i, 0) * rat(scale_i, 1)
        }
    });
    let j = PeriodicForm::new(d, 2, mat)?;
    debug_assert_eq!(crate::shortvec::minimum(&j)?, rat(4, 1));
    Ok(j)
}

/// Work item produced by classifying one extreme ray. Everything
/// expensive (reduction, perfect sets, gram tables, certificates) is
/// computed here, on the worker pool, so the sequential merge only runs
/// witness searches against stored orbits.
enum RayResult {
    Bounded {
        vertex: PolyVertex,
        prepared: PreparedForm,
        locus: EdgeLocusResult,
    },
    Unbounded {
        locus: EdgeLocusResult,
    },
}

enum EdgeLocusResult {
    Points(Vec<(AlgebraicPoint, PreparedPoint, Verdict)>),
    WholeEdge {
        q_pencil: IntPoly,
        fluid: bool,
        midpoint: Option<PeriodicForm>,
    },
}

fn prepare_vertex(v: &PolyVertex) -> Result<PreparedForm, EnumError> {
    let (jr, _) = crate::forms::reduce(v.form())?;
    PreparedForm::prepare(jr).map_err(|e| EnumError::Equiv(e.to_string()))
}

fn prepare_point(p: &AlgebraicPoint) -> Result<PreparedPoint, EnumError> {
    match p.realize_rational() {
        Some(j) => Ok(PreparedPoint::Rational(
            PreparedForm::prepare(j).map_err(|e| EnumError::Equiv(e.to_string()))?,
        )),
        None => Ok(PreparedPoint::Algebraic(
            PreparedAlgebraic::prepare(p.base.clone(), p.dir.clone(), p.t.clone())
                .map_err(|e| EnumError::Equiv(e.to_string()))?,
        )),
    }
}

fn process_ray(
    v: &PolyVertex,
    dir: &RatMatrix,
) -> Result<RayResult, EnumError> {
    match classify_ray(v, dir)? {
        RayOutcome::Bounded { t_star, vertex } => {
            let locus = edge_locus(v, dir, &EdgeExtent::Bounded(t_star.clone()), Some(&t_star))?;
            let prepared = prepare_vertex(&vertex)?;
            Ok(RayResult::Bounded { vertex, prepared, locus })
        }
        RayOutcome::Unbounded => {
            let locus = edge_locus(v, dir, &EdgeExtent::Unbounded, None)?;
            Ok(RayResult::Unbounded { locus })
        }
    }
}

fn edge_locus(
    v: &PolyVertex,
    dir: &RatMatrix,
    extent: &EdgeExtent,
    t_star: Option<&BigRational>,
) -> Result<EdgeLocusResult, EnumError> {
    match rank_points_on_edge(v, dir, extent).map_err(|e| EnumError::Extreme(e.to_string()))? {
        EdgeRankLocus::Points(points) => {
            let mut out = Vec::with_capacity(points.len());
            for p in points {
                let verdict = certify_point(&p).map_err(|e| EnumError::Extreme(e.to_string()))?;
                let prepared = prepare_point(&p)?;
                out.push((p, prepared, verdict));
            }
            Ok(EdgeLocusResult::Points(out))
        }
        EdgeRankLocus::WholeEdge { q_pencil, fluid } => {
            let midpoint = t_star.and_then(|t| {
                let half = t / rat(2, 1);
                PeriodicForm::new(
                    v.form().d(),
                    v.form().m(),
                    v.form().matrix().add(&dir.scale(&half)),
                )
                .ok()
            });
            Ok(EdgeLocusResult::WholeEdge { q_pencil, fluid, midpoint })
        }
    }
}

/// Breadth-first enumeration from the standard starting vertex.
pub fn enumerate(config: &RunConfig) -> Result<OrbitDatabase, EnumError> {
    let j0 = initial_form(config.dimension)?;
    let db = OrbitDatabase::new(config.dimension, config.m);
    enumerate_from(config, j0, db)
}

/// Continue a run from an existing database (resume path), or start from
/// a given seed form when the database is empty.
pub fn enumerate_from(
    config: &RunConfig,
    seed: PeriodicForm,
    mut db: OrbitDatabase,
) -> Result<OrbitDatabase, EnumError> {
    if config.m != 2 {
        return Err(EnumError::UnsupportedOrbitCount);
    }
    let lambda = rat(4, 1);
    if db.vertices.is_empty() {
        let v0 = walk_to_vertex(&seed, &lambda)?;
        let (id, fresh) = db.insert_vertex(&v0)?;
        debug_assert!(fresh);
        db.queue.push_back(id);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .expect("thread pool");
    let partial_mode = config.max_vertices.is_some();
    let mut processed = db.vertices.iter().filter(|v| v.processed).count();
    while let Some(vid) = db.queue.pop_front() {
        if let Some(cap) = config.max_vertices {
            if processed >= cap {
                db.queue.push_front(vid);
                db.complete = false;
                return Ok(db);
            }
        }
        let vertex = PolyVertex::new(db.vertices[vid].form().clone(), &lambda)?;
        if partial_mode && vertex.facet_count() > config.facet_threshold {
            db.skips.push(SkipRecord { vertex_orbit: vid, facet_pairs: vertex.facet_count() });
            db.vertices[vid].processed = true;
            db.vertices[vid].skipped = true;
            processed += 1;
            continue;
        }
        let t_dd = std::time::Instant::now();
        let rays = extreme_rays(&vertex)?;
        let dd_time = t_dd.elapsed();
        // Classify rays on the worker pool; merge sequentially in ray
        // order so results are schedule-independent.
        let t_par = std::time::Instant::now();
        let results: Vec<Result<RayResult, EnumError>> = pool.install(|| {
            use rayon::prelude::*;
            rays.par_iter().map(|r| process_ray(&vertex, r)).collect()
        });
        let par_time = t_par.elapsed();
        let t_merge = std::time::Instant::now();
        eprintln!("[prof] vertex {vid}: {} rays, dd {:?}, parallel {:?}", rays.len(), dd_time, par_time);
        for res in results {
            match res? {
                RayResult::Bounded { vertex: w, prepared, locus } => {
                    let (wid, fresh) = db.insert_vertex_prepared(w.minset().len(), prepared)?;
                    let _ = &w;
                    db.vertices[vid].contiguous.insert(wid);
                    db.vertices[wid].contiguous.insert(vid);
                    if fresh {
                        db.queue.push_back(wid);
                    }
                    merge_locus(&mut db, vid, wid, false, locus)?;
                }
                RayResult::Unbounded { locus } => {
                    merge_locus(&mut db, vid, vid, true, locus)?;
                }
            }
        }
        eprintln!("[prof] vertex {vid}: merge {:?}", t_merge.elapsed());
        db.vertices[vid].processed = true;
        processed += 1;
        if let Some(cb) = &config.progress {
            cb(&db);
        }
    }
    db.complete = true;
    Ok(db)
}

fn merge_locus(
    db: &mut OrbitDatabase,
    vid: usize,
    other_vid: usize,
    on_ray: bool,
    locus: EdgeLocusResult,
) -> Result<(), EnumError> {
    match locus {
        EdgeLocusResult::Points(points) => {
            for (p, prepared, verdict) in points {
                let pid = db.insert_point(p, prepared, on_ray, vid, verdict)?;
                if other_vid != vid {
                    db.points[pid].incident.insert(other_vid);
                }
            }
        }
        EdgeLocusResult::WholeEdge { q_pencil, fluid, midpoint } => {
            let eid = db.insert_r0_edge(vid, q_pencil, fluid, midpoint)?;
            if other_vid != vid {
                db.r0_edges[eid].incident.insert(other_vid);
            }
        }
    }
    Ok(())
}

/// Graph node classes mirror the enumeration structure: polyhedron
/// vertices (inside or outside the rank locus) and rank-deficient edge
/// points (on rays or bounded edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    VertexOutsideR0,
    VertexInR0,
    RayPoint,
    BoundedEdgePoint,
}

#[derive(Clone, Debug)]
pub struct GraphNode {
    pub id: String,
    pub kind: NodeKind,
    pub orbit: usize,
    pub extreme: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    pub relation: &'static str,
}

#[derive(Clone, Debug, Default)]
pub struct VoronoiGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl VoronoiGraph {
    pub fn connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut adj: std::collections::HashMap<&str, Vec<&str>> = Default::default();
        for e in &self.edges {
            adj.entry(&e.from).or_default().push(&e.to);
            adj.entry(&e.to).or_default().push(&e.from);
        }
        let mut seen: std::collections::HashSet<&str> = Default::default();
        let mut stack = vec![self.nodes[0].id.as_str()];
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            if let Some(next) = adj.get(n) {
                stack.extend(next.iter().copied());
            }
        }
        self.nodes.iter().all(|n| seen.contains(n.id.as_str()))
    }
}

/// Assemble the graph from the database.
pub fn build_graph(db: &OrbitDatabase) -> VoronoiGraph {
    let mut g = VoronoiGraph::default();
    for (i, v) in db.vertices.iter().enumerate() {
        g.nodes.push(GraphNode {
            id: format!("V{i}"),
            kind: if v.in_r0 { NodeKind::VertexInR0 } else { NodeKind::VertexOutsideR0 },
            orbit: i,
            extreme: v
                .verdict
                .as_ref()
                .map(|vd| matches!(vd, Verdict::Extreme(_))),
        });
    }
    for (i, p) in db.points.iter().enumerate() {
        g.nodes.push(GraphNode {
            id: format!("P{i}"),
            kind: if p.on_ray { NodeKind::RayPoint } else { NodeKind::BoundedEdgePoint },
            orbit: i,
            extreme: Some(matches!(p.verdict, Verdict::Extreme(_))),
        });
    }
    for (i, v) in db.vertices.iter().enumerate() {
        for &j in &v.contiguous {
            if j >= i {
                g.edges.push(GraphEdge {
                    from: format!("V{i}"),
                    to: format!("V{j}"),
                    relation: "contiguous",
                });
            }
        }
    }
    for (i, p) in db.points.iter().enumerate() {
        for &v in &p.incident {
            g.edges.push(GraphEdge {
                from: format!("P{i}"),
                to: format!("V{v}"),
                relation: "incident",
            });
        }
    }
    g
}

/// One row of the per-orbit summary.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub label: String,
    pub density_decimal: String,
    pub density_exact: String,
    pub lattice: bool,
    pub kappa: BigRational,
    pub minvec_count: usize,
    pub face_dim: usize,
    pub verdict: String,
}

/// Per-orbit rows for every rank-locus point (vertices in the locus and
/// edge points), sorted by descending density then kissing number.
pub fn report(db: &OrbitDatabase, bits: u32) -> Vec<ReportRow> {
    let mut rows: Vec<(BigRational, ReportRow)> = Vec::new();
    for (i, v) in db.vertices.iter().enumerate() {
        if !v.in_r0 {
            continue;
        }
        let min = db.lambda.clone();
        let density = crate::forms::normalized_density(v.form(), &min)
            .expect("locus vertex has positive definite lattice block");
        let (lo, hi) = density.approx(bits);
        let mid = (lo + hi) / rat(2, 1);
        let kappa = {
            let (_, s) = crate::shortvec::minimal_vectors(v.form()).expect("vertex minset");
            weighted_kissing(&s, db.m)
        };
        rows.push((
            mid,
            ReportRow {
                label: format!("V{i}"),
                density_decimal: density.decimal(4),
                density_exact: exact_radicand(&density),
                lattice: crate::forms::is_lattice_representation(v.form()).unwrap_or(false),
                kappa,
                minvec_count: v.minset_size,
                face_dim: 0,
                verdict: v
                    .verdict
                    .as_ref()
                    .map(|vd| vd.kind().to_string())
                    .unwrap_or_default(),
            },
        ));
    }
    for (i, p) in db.points.iter().enumerate() {
        let (lo, hi) = p.density.approx(bits);
        let mid = (lo + hi) / rat(2, 1);
        rows.push((
            mid,
            ReportRow {
                label: format!("P{i}"),
                density_decimal: p.density.decimal(4),
                density_exact: exact_radicand(&p.density),
                lattice: p.lattice,
                kappa: p.kappa.clone(),
                minvec_count: p.minvec_count,
                face_dim: 1,
                verdict: p.verdict.kind().to_string(),
            },
        ));
    }
    rows.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then_with(|| b.1.kappa.cmp(&a.1.kappa))
            .then_with(|| a.1.label.cmp(&b.1.label))
    });
    rows.into_iter().map(|(_, r)| r).collect()
}

fn exact_radicand(d: &Density) -> String {
    match d.radicand_rational() {
        Some(r) => format!("sqrt({})", crate::exact::rat::format_rational(&r)),
        None => "algebraic".to_string(),
    }
}

/// The d=3 density note: the computed top density (as an exact radicand)
/// for cross-checking against published tables.
pub fn density_discrepancy_note(db: &OrbitDatabase) -> Option<String> {
    if db.dimension != 3 {
        return None;
    }
    let top = report(db, 96).into_iter().next()?;
    Some(format!(
        "note: computed top density {} = {} (m/sqrt(det Q) with det Q = 128); \
         published d=3 table prints 1/(2*sqrt 2) ~ 0.3536, which is inconsistent \
         with its own displayed forms (all have det Q = 128, m = 2, giving \
         1/(4*sqrt 2) ~ 0.1768, the classical fcc number density at radius 1)",
        top.density_decimal, top.density_exact
    ))
}

/// Quick structural invariants on a finished database, used by partial
/// runs (where counting results is meaningless) and the acceptance gate.
pub fn check_structural_invariants(db: &OrbitDatabase) -> Result<(), String> {
    let n = db.dimension + db.m - 1;
    let needed = n * (n + 1) / 2;
    for (i, v) in db.vertices.iter().enumerate() {
        let pv = PolyVertex::new(v.form().clone(), &db.lambda)
            .map_err(|e| format!("vertex orbit {i}: {e}"))?;
        if crate::polyhedron::outer_span_rank(pv.facet_representatives(), n) != needed {
            return Err(format!("vertex orbit {i} is not perfect"));
        }
        // det/psd tags consistent.
        let dj = det(v.form().matrix()).map_err(|e| e.to_string())?;
        if v.in_r0 != dj.is_zero() {
            return Err(format!("vertex orbit {i} rank tag inconsistent"));
        }
    }
    for (i, p) in db.points.iter().enumerate() {
        if p.point.tight.is_empty() {
            return Err(format!("point orbit {i} has empty tight set"));
        }
        if matches!(p.verdict, Verdict::Inconclusive(_)) {
            return Err(format!("point orbit {i} is inconclusive"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn initial_form_d3() {
        let j = initial_form(3).unwrap();
        assert_eq!(crate::shortvec::minimum(&j).unwrap(), rat(4, 1));
        // Index-2 sublattice: det Q = 4 * det(A_3 Gram at min 4) = 4*32.
        assert_eq!(det(&j.q_block()).unwrap(), rat(128, 1));
        assert!(initial_form(2).is_err());
        assert!(initial_form(7).is_err());
    }

    #[test]
    fn initial_form_d4_walks_to_vertex() {
        let j = initial_form(4).unwrap();
        let v = walk_to_vertex(&j, &rat(4, 1)).unwrap();
        assert_eq!(crate::shortvec::minimum(v.form()).unwrap(), rat(4, 1));
    }

    #[test]
    fn d3_enumeration_counts() {
        let config = RunConfig { dimension: 3, ..Default::default() };
        let db = enumerate(&config).unwrap();
        assert!(db.complete);
        assert_eq!(db.vertices.len(), 4);
        assert_eq!(db.points.len(), 3);
        assert_eq!(db.extreme_count(), 3);
        assert!(db.r0_edges.is_empty());
        // All edge points in d=3 are on rays and extreme.
        for p in &db.points {
            assert!(p.on_ray);
            assert!(matches!(p.verdict, Verdict::Extreme(_)));
            assert_eq!(p.kappa, rat(12, 1));
        }
        // No vertex lies in the rank locus in d=3.
        assert!(db.vertices.iter().all(|v| !v.in_r0));
        check_structural_invariants(&db).unwrap();
        // Orbit matching against the reference catalog.
        let mut matched = 0;
        for (_, reference) in catalog::d3::extreme_forms() {
            for p in &db.points {
                if let Some(j) = p.point.realize_rational() {
                    if crate::equivalence::equivalent(&reference, &j).unwrap().is_some() {
                        matched += 1;
                        break;
                    }
                }
            }
        }
        assert_eq!(matched, 3);
        let mut vmatched = 0;
        for (_, reference) in catalog::d3::vertex_forms() {
            for v in &db.vertices {
                if crate::equivalence::equivalent(&reference, v.form()).unwrap().is_some() {
                    vmatched += 1;
                    break;
                }
            }
        }
        assert_eq!(vmatched, 4);
    }

    #[test]
    fn d3_graph_shape() {
        let config = RunConfig { dimension: 3, ..Default::default() };
        let db = enumerate(&config).unwrap();
        let g = build_graph(&db);
        assert_eq!(g.nodes.len(), 7);
        assert!(g.connected());
        let ray_points = g
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::RayPoint)
            .count();
        assert_eq!(ray_points, 3);
    }

    #[test]
    fn determinism_across_workers() {
        let one = enumerate(&RunConfig { dimension: 3, workers: 1, ..Default::default() }).unwrap();
        let four = enumerate(&RunConfig { dimension: 3, workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one.vertices.len(), four.vertices.len());
        for (a, b) in one.vertices.iter().zip(four.vertices.iter()) {
            assert_eq!(a.form().matrix(), b.form().matrix());
        }
        for (a, b) in one.points.iter().zip(four.points.iter()) {
            assert_eq!(a.kappa, b.kappa);
            assert_eq!(a.verdict.kind(), b.verdict.kind());
        }
    }
}
