//! Checkpoint format: the full enumeration state as a structured JSON
//! document with the same exact-rational encoding as the form format.
//! Long runs write one after every processed vertex; `--resume` rebuilds
//! the database and continues from the stored queue.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::enumerator::{OrbitDatabase, PointOrbit, R0EdgeOrbit, SkipRecord, VertexOrbit};
use crate::equivalence::{PreparedAlgebraic, PreparedForm};
use crate::exact::mat::RatMatrix;
use crate::exact::poly::IntPoly;
use crate::exact::rat::{format_rational, parse_rational};
use crate::exact::roots::AlgebraicNumber;
use crate::extremeness::{AlgebraicPoint, Certificate, Counterexample, ScalarRepr, Verdict};
use crate::forms::{IndexVector, PeriodicForm};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, thiserror::Error)]
pub enum CheckpointError {
    #[error("json: {0}")]
    Json(String),
    #[error("invalid checkpoint: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub dimension: usize,
    pub m: usize,
    pub lambda: String,
    pub complete: bool,
    pub vertices: Vec<CkVertex>,
    pub points: Vec<CkPoint>,
    pub r0_edges: Vec<CkR0Edge>,
    pub skips: Vec<CkSkip>,
    pub queue: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct CkVertex {
    pub matrix: Vec<String>,
    pub minset_size: usize,
    pub in_r0: bool,
    pub psd: bool,
    pub contiguous: Vec<usize>,
    pub verdict: Option<CkVerdict>,
    pub processed: bool,
    pub skipped: bool,
}

#[derive(Serialize, Deserialize)]
pub struct CkPoint {
    pub base: Vec<String>,
    pub dir: Vec<String>,
    pub t: CkParam,
    pub tight: Vec<CkVector>,
    pub on_ray: bool,
    pub incident: Vec<usize>,
    pub verdict: CkVerdict,
    pub kappa: String,
    pub lattice: bool,
}

#[derive(Serialize, Deserialize)]
pub enum CkParam {
    Rational(String),
    Algebraic { poly: Vec<String>, lo: String, hi: String },
}

#[derive(Serialize, Deserialize)]
pub struct CkVector {
    pub n: Vec<String>,
    pub l: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
pub enum CkScalar {
    Rational(String),
    Algebraic { coeffs: Vec<String>, approx: String },
}

#[derive(Serialize, Deserialize)]
pub enum CkVerdict {
    Extreme {
        pairs: Vec<CkVector>,
        eta: Vec<CkScalar>,
        null_weight: CkScalar,
        epsilon: CkScalar,
    },
    NotExtreme { coords: Vec<CkScalar> },
    FluidCandidate { coords: Vec<CkScalar> },
    Inconclusive { reason: String },
}

#[derive(Serialize, Deserialize)]
pub struct CkR0Edge {
    pub incident: Vec<usize>,
    pub q_pencil: Vec<String>,
    pub fluid: bool,
    pub midpoint: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct CkSkip {
    pub vertex_orbit: usize,
    pub facet_pairs: usize,
}

fn matrix_to_strings(m: &RatMatrix) -> Vec<String> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(format_rational(m.at(i, j)));
        }
    }
    out
}

fn matrix_from_strings(
    entries: &[String],
    n: usize,
) -> Result<RatMatrix, CheckpointError> {
    if entries.len() != n * n {
        return Err(CheckpointError::Invalid(format!(
            "matrix needs {} entries, found {}",
            n * n,
            entries.len()
        )));
    }
    let mut parsed = Vec::with_capacity(entries.len());
    for e in entries {
        parsed.push(parse_rational(e).map_err(CheckpointError::Invalid)?);
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| parsed[i * n + j].clone()))
}

fn vector_to_ck(k: &IndexVector) -> CkVector {
    CkVector {
        n: k.n.iter().map(|x| x.to_string()).collect(),
        l: k.l.clone(),
    }
}

fn vector_from_ck(v: &CkVector, d: usize, m: usize) -> Result<IndexVector, CheckpointError> {
    if v.n.len() != d || v.l.len() != m - 1 {
        return Err(CheckpointError::Invalid("index vector shape".into()));
    }
    let mut n = Vec::with_capacity(d);
    for s in &v.n {
        n.push(
            s.parse::<BigInt>()
                .map_err(|_| CheckpointError::Invalid(format!("bad integer {s:?}")))?,
        );
    }
    if !v.l.iter().all(|&x| (-1..=1).contains(&x)) {
        return Err(CheckpointError::Invalid("translation part out of range".into()));
    }
    let k = IndexVector { n, l: v.l.clone() };
    if !k.is_valid() {
        return Err(CheckpointError::Invalid("invalid translation class".into()));
    }
    Ok(k)
}

fn scalar_to_ck(s: &ScalarRepr) -> CkScalar {
    match s {
        ScalarRepr::Rational(r) => CkScalar::Rational(r.clone()),
        ScalarRepr::Algebraic { coeffs, approx } => {
            CkScalar::Algebraic { coeffs: coeffs.clone(), approx: approx.clone() }
        }
    }
}

fn scalar_from_ck(s: &CkScalar) -> ScalarRepr {
    match s {
        CkScalar::Rational(r) => ScalarRepr::Rational(r.clone()),
        CkScalar::Algebraic { coeffs, approx } => {
            ScalarRepr::Algebraic { coeffs: coeffs.clone(), approx: approx.clone() }
        }
    }
}

fn verdict_to_ck(v: &Verdict) -> CkVerdict {
    match v {
        Verdict::Extreme(c) => CkVerdict::Extreme {
            pairs: c.pairs.iter().map(vector_to_ck).collect(),
            eta: c.eta.iter().map(scalar_to_ck).collect(),
            null_weight: scalar_to_ck(&c.null_weight),
            epsilon: scalar_to_ck(&c.epsilon),
        },
        Verdict::NotExtreme(x) => {
            CkVerdict::NotExtreme { coords: x.coords.iter().map(scalar_to_ck).collect() }
        }
        Verdict::FluidCandidate(x) => {
            CkVerdict::FluidCandidate { coords: x.coords.iter().map(scalar_to_ck).collect() }
        }
        Verdict::Inconclusive(r) => CkVerdict::Inconclusive { reason: r.clone() },
    }
}

fn verdict_from_ck(v: &CkVerdict, d: usize, m: usize) -> Result<Verdict, CheckpointError> {
    Ok(match v {
        CkVerdict::Extreme { pairs, eta, null_weight, epsilon } => {
            let pairs: Result<Vec<IndexVector>, _> =
                pairs.iter().map(|k| vector_from_ck(k, d, m)).collect();
            Verdict::Extreme(Certificate {
                pairs: pairs?,
                eta: eta.iter().map(scalar_from_ck).collect(),
                null_weight: scalar_from_ck(null_weight),
                epsilon: scalar_from_ck(epsilon),
                residual_zero: true,
            })
        }
        CkVerdict::NotExtreme { coords } => Verdict::NotExtreme(Counterexample {
            coords: coords.iter().map(scalar_from_ck).collect(),
        }),
        CkVerdict::FluidCandidate { coords } => Verdict::FluidCandidate(Counterexample {
            coords: coords.iter().map(scalar_from_ck).collect(),
        }),
        CkVerdict::Inconclusive { reason } => Verdict::Inconclusive(reason.clone()),
    })
}

pub fn to_checkpoint(db: &OrbitDatabase) -> Checkpoint {
    Checkpoint {
        version: CHECKPOINT_VERSION,
        dimension: db.dimension,
        m: db.m,
        lambda: format_rational(&db.lambda),
        complete: db.complete,
        vertices: db
            .vertices
            .iter()
            .map(|v| CkVertex {
                matrix: matrix_to_strings(v.form().matrix()),
                minset_size: v.minset_size,
                in_r0: v.in_r0,
                psd: v.psd,
                contiguous: v.contiguous.iter().copied().collect(),
                verdict: v.verdict.as_ref().map(verdict_to_ck),
                processed: v.processed,
                skipped: v.skipped,
            })
            .collect(),
        points: db
            .points
            .iter()
            .map(|p| CkPoint {
                base: matrix_to_strings(p.point.base.matrix()),
                dir: matrix_to_strings(&p.point.dir),
                t: match p.point.t.as_rational() {
                    Some(r) => CkParam::Rational(format_rational(r)),
                    None => CkParam::Algebraic {
                        poly: p
                            .point
                            .t
                            .defining_poly()
                            .coeffs()
                            .iter()
                            .map(|c| c.to_string())
                            .collect(),
                        lo: format_rational(p.point.t.lo()),
                        hi: format_rational(p.point.t.hi()),
                    },
                },
                tight: p.point.tight.iter().map(vector_to_ck).collect(),
                on_ray: p.on_ray,
                incident: p.incident.iter().copied().collect(),
                verdict: verdict_to_ck(&p.verdict),
                kappa: format_rational(&p.kappa),
                lattice: p.lattice,
            })
            .collect(),
        r0_edges: db
            .r0_edges
            .iter()
            .map(|e| CkR0Edge {
                incident: e.incident.iter().copied().collect(),
                q_pencil: e.q_pencil.coeffs().iter().map(|c| c.to_string()).collect(),
                fluid: e.fluid,
                midpoint: e.midpoint.as_ref().map(|f| matrix_to_strings(f.matrix())),
            })
            .collect(),
        skips: db
            .skips
            .iter()
            .map(|s| CkSkip { vertex_orbit: s.vertex_orbit, facet_pairs: s.facet_pairs })
            .collect(),
        queue: db.queue.iter().copied().collect(),
    }
}

fn param_from_ck(t: &CkParam) -> Result<AlgebraicNumber, CheckpointError> {
    match t {
        CkParam::Rational(r) => {
            Ok(AlgebraicNumber::from_rational(parse_rational(r).map_err(CheckpointError::Invalid)?))
        }
        CkParam::Algebraic { poly, lo, hi } => {
            let mut coeffs = Vec::with_capacity(poly.len());
            for c in poly {
                coeffs.push(
                    c.parse::<BigInt>()
                        .map_err(|_| CheckpointError::Invalid(format!("bad coefficient {c:?}")))?,
                );
            }
            let p = IntPoly::new(coeffs);
            let lo = parse_rational(lo).map_err(CheckpointError::Invalid)?;
            let hi = parse_rational(hi).map_err(CheckpointError::Invalid)?;
            if p.is_zero() || lo >= hi || p.sign_at(&lo) * p.sign_at(&hi) >= 0 {
                return Err(CheckpointError::Invalid(
                    "parameter interval does not isolate a root".into(),
                ));
            }
            Ok(AlgebraicNumber::from_isolating(p, lo, hi))
        }
    }
}

pub fn from_checkpoint(ck: &Checkpoint) -> Result<OrbitDatabase, CheckpointError> {
    if ck.version != CHECKPOINT_VERSION {
        return Err(CheckpointError::Invalid(format!("unsupported version {}", ck.version)));
    }
    let d = ck.dimension;
    let m = ck.m;
    if d == 0 || m < 2 || d + m - 1 > crate::formfile::MAX_SIZE {
        return Err(CheckpointError::Invalid("dimension out of range".into()));
    }
    let n = d + m - 1;
    let lambda = parse_rational(&ck.lambda).map_err(CheckpointError::Invalid)?;
    let mut db = OrbitDatabase::new(d, m);
    db.lambda = lambda.clone();
    db.complete = ck.complete;
    for v in &ck.vertices {
        let mat = matrix_from_strings(&v.matrix, n)?;
        let form = PeriodicForm::new(d, m, mat)
            .map_err(|e| CheckpointError::Invalid(e.to_string()))?;
        let prepared = PreparedForm::prepare(form)
            .map_err(|e| CheckpointError::Invalid(e.to_string()))?;
        db.vertices.push(VertexOrbit {
            prepared,
            minset_size: v.minset_size,
            in_r0: v.in_r0,
            psd: v.psd,
            contiguous: v.contiguous.iter().copied().collect(),
            verdict: match &v.verdict {
                Some(ckv) => Some(verdict_from_ck(ckv, d, m)?),
                None => None,
            },
            processed: v.processed,
            skipped: v.skipped,
        });
    }
    let nv = db.vertices.len();
    for p in &ck.points {
        let base = PeriodicForm::new(d, m, matrix_from_strings(&p.base, n)?)
            .map_err(|e| CheckpointError::Invalid(e.to_string()))?;
        let dir = matrix_from_strings(&p.dir, n)?;
        let t = param_from_ck(&p.t)?;
        let tight: Result<Vec<IndexVector>, _> =
            p.tight.iter().map(|k| vector_from_ck(k, d, m)).collect();
        let point = AlgebraicPoint { base, dir, t, tight: tight?, lambda: lambda.clone() };
        if p.incident.iter().any(|&i| i >= nv) {
            return Err(CheckpointError::Invalid("incidence out of range".into()));
        }
        let density = point.density();
        let prepared = match point.realize_rational() {
            Some(j) => crate::enumerator::PreparedPoint::Rational(
                PreparedForm::prepare(j).map_err(|e| CheckpointError::Invalid(e.to_string()))?,
            ),
            None => crate::enumerator::PreparedPoint::Algebraic(
                PreparedAlgebraic::prepare(point.base.clone(), point.dir.clone(), point.t.clone())
                    .map_err(|e| CheckpointError::Invalid(e.to_string()))?,
            ),
        };
        db.points.push(PointOrbit {
            kappa: parse_rational(&p.kappa).map_err(CheckpointError::Invalid)?,
            lattice: p.lattice,
            minvec_count: point.tight.len(),
            point,
            prepared,
            on_ray: p.on_ray,
            incident: p.incident.iter().copied().collect(),
            verdict: verdict_from_ck(&p.verdict, d, m)?,
            density,
        });
    }
    for e in &ck.r0_edges {
        if e.incident.iter().any(|&i| i >= nv) {
            return Err(CheckpointError::Invalid("incidence out of range".into()));
        }
        let mut coeffs = Vec::with_capacity(e.q_pencil.len());
        for c in &e.q_pencil {
            coeffs.push(
                c.parse::<BigInt>()
                    .map_err(|_| CheckpointError::Invalid(format!("bad coefficient {c:?}")))?,
            );
        }
        let midpoint = match &e.midpoint {
            Some(entries) => Some(
                PeriodicForm::new(d, m, matrix_from_strings(entries, n)?)
                    .map_err(|er| CheckpointError::Invalid(er.to_string()))?,
            ),
            None => None,
        };
        db.r0_edges.push(R0EdgeOrbit {
            incident: e.incident.iter().copied().collect(),
            q_pencil: IntPoly::new(coeffs),
            fluid: e.fluid,
            midpoint,
        });
    }
    for s in &ck.skips {
        if s.vertex_orbit >= nv {
            return Err(CheckpointError::Invalid("skip record out of range".into()));
        }
        db.skips.push(SkipRecord { vertex_orbit: s.vertex_orbit, facet_pairs: s.facet_pairs });
    }
    for &q in &ck.queue {
        if q >= nv {
            return Err(CheckpointError::Invalid("queue entry out of range".into()));
        }
        db.queue.push_back(q);
    }
    Ok(db)
}

pub fn save_to_string(db: &OrbitDatabase) -> String {
    serde_json::to_string_pretty(&to_checkpoint(db)).expect("checkpoint serializes")
}

/// Parse and validate a checkpoint document; total-function, suitable for
/// untrusted input.
pub fn load_from_str(text: &str) -> Result<OrbitDatabase, CheckpointError> {
    let ck: Checkpoint =
        serde_json::from_str(text).map_err(|e| CheckpointError::Json(e.to_string()))?;
    from_checkpoint(&ck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{enumerate, RunConfig};

    #[test]
    fn d3_database_round_trips() {
        let db = enumerate(&RunConfig { dimension: 3, ..Default::default() }).unwrap();
        let text = save_to_string(&db);
        let back = load_from_str(&text).unwrap();
        assert_eq!(back.vertices.len(), db.vertices.len());
        assert_eq!(back.points.len(), db.points.len());
        assert!(back.complete);
        for (a, b) in db.vertices.iter().zip(back.vertices.iter()) {
            assert_eq!(a.form().matrix(), b.form().matrix());
            assert_eq!(a.contiguous, b.contiguous);
        }
        for (a, b) in db.points.iter().zip(back.points.iter()) {
            assert_eq!(a.kappa, b.kappa);
            assert_eq!(a.verdict.kind(), b.verdict.kind());
        }
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(load_from_str("").is_err());
        assert!(load_from_str("{}").is_err());
        assert!(load_from_str("{\"version\": 99}").is_err());
        // Queue index out of range.
        let db = OrbitDatabase::new(3, 2);
        let mut ck = to_checkpoint(&db);
        ck.queue.push(5);
        let text = serde_json::to_string(&ck).unwrap();
        assert!(load_from_str(&text).is_err());
    }
}
