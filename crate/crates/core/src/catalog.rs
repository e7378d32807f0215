//! Reference forms from the known classifications of locally optimal
//! 2-periodic packings in low dimensions, used as fixtures by the test
//! suites and as ground truth for the acceptance gates.
//!
//! Names describe the geometry: the two fcc representations in d=3 differ
//! by which index-2 sublattice carries the two orbits (square-layer vs
//! triangular-layer stacking); `hcp` is hexagonal close packing. The d=3
//! polyhedron vertices correspond to binary nonadditive sphere packings
//! (cubic with body-center holes filled, hexagonal prism filling, rock
//! salt, diamond).

use num_rational::BigRational;

use crate::exact::mat::RatMatrix;
use crate::exact::poly::IntPoly;
use crate::exact::rat::rat;
use crate::exact::roots::AlgebraicNumber;
use crate::forms::PeriodicForm;

/// A form whose entries live in Q(alpha): realized as `base + alpha*dir`.
#[derive(Clone, Debug)]
pub struct AlgebraicFormParts {
    pub base: RatMatrix,
    pub dir: RatMatrix,
    pub alpha: AlgebraicNumber,
}

pub mod d3 {
    use super::*;

    /// fcc as a stacking of square layers (a lattice representation).
    pub fn fcc_square() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            3,
            2,
            2,
            1,
            &[2, 0, 0, -1, 0, 2, 0, 1, 0, 0, 4, 2, -1, 1, 2, 2],
        )
    }

    /// fcc as a stacking of triangular layers (a lattice representation).
    pub fn fcc_triangular() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            3,
            2,
            2,
            1,
            &[2, -1, 1, 0, -1, 2, 0, 1, 1, 0, 6, 3, 0, 1, 3, 2],
        )
    }

    /// Hexagonal close packing (not a lattice).
    pub fn hcp() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            3,
            2,
            2,
            3,
            &[6, 3, 0, 0, 3, 6, 0, 3, 0, 0, 16, 8, 0, 3, 8, 6],
        )
    }

    /// Vertex: simple cubic with body-center holes filled.
    pub fn vertex_cubic_body_center() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            3,
            2,
            2,
            1,
            &[2, 0, 0, 1, 0, 2, 0, -1, 0, 0, 2, 1, 1, -1, 1, 2],
        )
    }

    /// Vertex: hexagonal lattice with one triangular-prism hole filled.
    pub fn vertex_hex_prism() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            3,
            2,
            2,
            1,
            &[2, 1, 0, 0, 1, 2, 0, 1, 0, 0, 2, 1, 0, 1, 1, 2],
        )
    }

    /// Vertex: fcc with octahedral holes filled (rock-salt structure).
    pub fn vertex_rock_salt() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            3,
            2,
            2,
            1,
            &[2, 1, -1, 0, 1, 2, 0, 1, -1, 0, 2, 1, 0, 1, 1, 2],
        )
    }

    /// Vertex: fcc with one tetrahedral hole filled (diamond structure).
    pub fn vertex_diamond() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            3,
            2,
            2,
            1,
            &[2, -1, -1, 0, -1, 2, 1, 1, -1, 1, 2, 0, 0, 1, 0, 2],
        )
    }

    pub fn extreme_forms() -> Vec<(&'static str, PeriodicForm)> {
        vec![
            ("fcc-square", fcc_square()),
            ("fcc-triangular", fcc_triangular()),
            ("hcp", hcp()),
        ]
    }

    pub fn vertex_forms() -> Vec<(&'static str, PeriodicForm)> {
        vec![
            ("cubic-body-center", vertex_cubic_body_center()),
            ("hex-prism", vertex_hex_prism()),
            ("rock-salt", vertex_rock_salt()),
            ("diamond", vertex_diamond()),
        ]
    }
}

pub mod d4 {
    use super::*;

    /// Checkerboard lattice D4 as a 2-periodic set; a polyhedron vertex.
    pub fn d4_vertex() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            4,
            2,
            2,
            1,
            &[
                2, 0, 0, 0, 1, 0, 2, 0, 0, -1, 0, 0, 2, 0, -1, 0, 0, 0, 2, -1, 1, -1, -1, -1, 2,
            ],
        )
    }

    /// Second D4 representation, in the relative interior of an edge.
    pub fn d4_edge() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            4,
            2,
            2,
            1,
            &[
                2, -1, -1, 0, -1, -1, 2, 1, 0, 1, -1, 1, 2, 0, 0, 0, 0, 0, 4, 2, -1, 1, 0, 2, 2,
            ],
        )
    }

    /// The golden-ratio form: entries in Q(tau) with tau^2 = tau + 1.
    /// Realized as `base + tau * dir`.
    pub fn golden() -> AlgebraicFormParts {
        let base = RatMatrix::from_i64(
            5,
            5,
            &[
                2, -1, -1, -1, -1, -1, 2, 1, 1, 0, -1, 1, 2, 1, 1, -1, 1, 1, 2, 0, -1, 0, 1, 0, 2,
            ],
        )
        .scale(&rat(2, 1));
        let dir = RatMatrix::from_i64(
            5,
            5,
            &[
                0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, -1, 0, 0, 0, -1, 0,
            ],
        )
        .scale(&rat(2, 1));
        AlgebraicFormParts { base, dir, alpha: golden_ratio() }
    }

    /// tau = (1 + sqrt 5)/2, the positive root of t^2 - t - 1.
    pub fn golden_ratio() -> AlgebraicNumber {
        AlgebraicNumber::from_isolating(IntPoly::from_i64(&[-1, -1, 1]), rat(1, 1), rat(2, 1))
    }
}

pub mod d5 {
    use super::*;

    /// D5 representation that is also a polyhedron vertex (the only vertex
    /// inside the rank-constrained set in d=5).
    pub fn d5_rep_vertex() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            5,
            2,
            2,
            1,
            &[
                2, -1, -1, 0, 0, 1, -1, 2, 1, 0, 0, 0, -1, 1, 2, 0, 0, -1, 0, 0, 0, 2, 0, -1, 0,
                0, 0, 0, 2, -1, 1, 0, -1, -1, -1, 2,
            ],
        )
    }

    /// Second D5 representation.
    pub fn d5_rep_b() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            5,
            2,
            2,
            1,
            &[
                2, -1, -1, -1, 0, -1, -1, 2, 1, 1, 0, 1, -1, 1, 2, 0, 0, 0, -1, 1, 0, 2, 0, 1, 0,
                0, 0, 0, 4, 2, -1, 1, 0, 1, 2, 2,
            ],
        )
    }

    /// Third D5 representation.
    pub fn d5_rep_c() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            5,
            2,
            2,
            1,
            &[
                2, -1, -1, -1, -1, -1, -1, 2, 1, 1, 1, 1, -1, 1, 2, 1, 1, 0, -1, 1, 1, 2, 1, 1,
                -1, 1, 1, 1, 4, -1, -1, 1, 0, 1, -1, 2,
            ],
        )
    }

    /// Nonlattice packing matching the D5 density (first of two).
    pub fn nonlattice_dense_a() -> PeriodicForm {
        PeriodicForm::from_i64(
            5,
            2,
            &[
                4, -2, -2, 2, -2, -2, -2, 4, 0, -2, 2, 0, -2, 0, 4, -2, 2, 2, 2, -2, -2, 4, -2,
                -2, -2, 2, 2, -2, 10, 5, -2, 0, 2, -2, 5, 4,
            ],
        )
    }

    /// Nonlattice packing matching the D5 density (second of two).
    pub fn nonlattice_dense_b() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            5,
            2,
            2,
            5,
            &[
                10, 5, 5, -5, 0, 0, 5, 10, 5, -5, 0, 5, 5, 5, 10, -5, 0, 5, -5, -5, -5, 10, 0,
                -5, 0, 0, 0, 0, 16, -8, 0, 5, 5, -5, -8, 10,
            ],
        )
    }

    /// sqrt 6, the positive root of t^2 - 6.
    pub fn sqrt6() -> AlgebraicNumber {
        AlgebraicNumber::from_isolating(IntPoly::from_i64(&[-6, 0, 1]), rat(2, 1), rat(3, 1))
    }

    /// Nonlattice form at the second-highest density tier, kissing 34:
    /// entries in Q(sqrt 6), realized as `base + sqrt6 * dir`.
    pub fn nonlattice_sqrt6_kissing34() -> AlgebraicFormParts {
        let base = RatMatrix::from_i64(
            6,
            6,
            &[
                8, 4, 4, 0, -4, 0, 4, 8, 4, 0, -4, 4, 4, 4, 8, 0, -4, 4, 0, 0, 0, 8, 0, -4, -4,
                -4, -4, 0, 8, -4, 0, 4, 4, -4, -4, 8,
            ],
        )
        .scale(&rat(1, 2));
        let dir = RatMatrix::from_i64(
            6,
            6,
            &[
                0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                0, 2, -1, 0, 0, 0, 0, -1, 0,
            ],
        )
        .scale(&rat(1, 2));
        AlgebraicFormParts { base, dir, alpha: sqrt6() }
    }

    /// The group element whose edge from the D5 vertex representation
    /// stays entirely inside the rank-constrained set.
    pub fn special_edge_transform() -> crate::forms::GammaElement {
        use crate::exact::mat::IntMatrix;
        let t = IntMatrix::from_i64(
            6,
            6,
            &[
                1, 0, -1, 0, -1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 1, 0, 0, 0, 0,
                -1, 0, 0, 1, 0, 0, 0, 0, 0, 1,
            ],
        );
        crate::forms::GammaElement::from_assembled(&t, 5, 2).expect("block triangular")
    }
}

pub mod d6 {
    use super::*;

    /// E6 as a 2-periodic set: one of the three hard vertices (124 minimal
    /// vectors) that stall full d=6 enumeration.
    pub fn e6_vertex() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            6,
            2,
            2,
            1,
            &[
                6, -2, 0, 0, 0, 0, 3, -2, 2, -1, 0, 0, 0, -1, 0, -1, 2, -1, 0, -1, 0, 0, 0, -1,
                2, -1, 0, 0, 0, 0, 0, -1, 2, 0, 0, 0, 0, -1, 0, 0, 2, 0, 3, -1, 0, 0, 0, 0, 2,
            ],
        )
    }

    /// Hard vertex with 112 minimal vectors.
    pub fn hard_vertex_112() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            6,
            2,
            2,
            1,
            &[
                2, -1, 1, -1, -1, -1, 0, -1, 2, 0, 0, 0, 0, 1, 1, 0, 2, -1, -1, -1, 1, -1, 0, -1,
                2, 1, 1, -1, -1, 0, -1, 1, 2, 1, 0, -1, 0, -1, 1, 1, 2, 0, 0, 1, 1, -1, 0, 0, 2,
            ],
        )
    }

    /// Hard vertex with 126 minimal vectors.
    pub fn hard_vertex_126() -> PeriodicForm {
        PeriodicForm::from_i64_scaled(
            6,
            2,
            2,
            1,
            &[
                2, -1, -1, -1, -1, 1, -1, -1, 2, 1, 1, 1, -1, 0, -1, 1, 2, 0, 0, -1, 1, -1, 1, 0,
                2, 1, 0, 0, -1, 1, 0, 1, 2, -1, 0, 1, -1, -1, 0, -1, 2, -1, -1, 0, 1, 0, 0, -1, 2,
            ],
        )
    }
}

/// Realize an algebraic form at a rational parameter value.
pub fn realize_at(parts: &AlgebraicFormParts, t: &BigRational, d: usize, m: usize) -> PeriodicForm {
    let mat = parts.base.add(&parts.dir.scale(t));
    PeriodicForm::new(d, m, mat).expect("algebraic form parts well shaped")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mat::det;

    #[test]
    fn all_rational_fixtures_are_symmetric() {
        let mut all = Vec::new();
        all.extend(d3::extreme_forms().into_iter().map(|(_, f)| f));
        all.extend(d3::vertex_forms().into_iter().map(|(_, f)| f));
        all.push(d4::d4_vertex());
        all.push(d4::d4_edge());
        all.push(d5::d5_rep_vertex());
        all.push(d5::d5_rep_b());
        all.push(d5::d5_rep_c());
        all.push(d5::nonlattice_dense_a());
        all.push(d5::nonlattice_dense_b());
        all.push(d6::e6_vertex());
        all.push(d6::hard_vertex_112());
        all.push(d6::hard_vertex_126());
        for f in all {
            assert!(f.matrix().is_symmetric());
            assert!(f.q_is_positive_definite().unwrap());
        }
    }

    #[test]
    fn fixture_determinants() {
        assert_eq!(det(&d3::fcc_square().q_block()).unwrap(), rat(128, 1));
        assert_eq!(det(&d3::fcc_triangular().q_block()).unwrap(), rat(128, 1));
        assert_eq!(det(&d3::hcp().q_block()).unwrap(), rat(128, 1));
        assert_eq!(det(&d4::d4_vertex().q_block()).unwrap(), rat(256, 1));
        assert_eq!(det(&d5::d5_rep_vertex().q_block()).unwrap(), rat(512, 1));
        assert_eq!(det(&d5::d5_rep_b().q_block()).unwrap(), rat(512, 1));
        assert_eq!(det(&d5::d5_rep_c().q_block()).unwrap(), rat(512, 1));
        assert_eq!(det(&d5::nonlattice_dense_a().q_block()).unwrap(), rat(512, 1));
        assert_eq!(det(&d5::nonlattice_dense_b().q_block()).unwrap(), rat(512, 1));
    }

    #[test]
    fn golden_form_is_symmetric_at_any_parameter() {
        let parts = d4::golden();
        assert!(parts.base.is_symmetric());
        assert!(parts.dir.is_symmetric());
        let f = realize_at(&parts, &rat(8, 5), 4, 2);
        assert!(f.q_is_positive_definite().unwrap());
    }

    #[test]
    fn special_edge_transform_is_in_gamma() {
        let t = d5::special_edge_transform();
        assert!(t.is_valid());
    }
}
