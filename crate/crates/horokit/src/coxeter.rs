//! Ideal Coxeter cells of the two tilings and their reflection generators.
//!
//! The cells are the regular ideal tetrahedron of the `{3,3,6}` tiling and
//! the regular ideal cube of the `{4,3,6}` tiling, both with all dihedral
//! angles `pi/3`. Facet planes are recomputed from the vertex coordinates,
//! and each facet reflection is solved as a linear eigen-system pinned by
//! the geometric image of one off-facet vertex, then validated against the
//! Lorentz isometry conditions. Nothing is copied from precomputed matrices;
//! the published values serve only as cross-checks in [`crate::tables`].

use nalgebra::Matrix3;
use thiserror::Error;

use crate::lorentz::{
    self, canonicalize, classify, foot_of_perpendicular, lorentz_conjugation_residual, max_abs,
    plane_pair_relation, pole, projectively_equal, LorentzError, Mat4, PlanePairRelation,
    PointClass, Vec4,
};
use crate::DEFAULT_TOL;

/// Relative spread allowed between the per-vertex eigenvalue estimates of a
/// generator solve before the system is declared inconsistent.
pub const SOLVER_CONSISTENCY_TOL: f64 = 1e-8;

/// Errors from cell construction and generator solving.
#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error("facet vertices are not coplanar")]
    FacetNotPlanar,
    #[error("facet vertices do not span a plane")]
    DegenerateFacet,
    #[error("eigen-system for the reflection is singular")]
    SingularSystem,
    #[error("eigenvalue estimates disagree by a relative spread of {spread:e}")]
    InconsistentSystem { spread: f64 },
    #[error("solved matrix failed validation: {0}")]
    Validation(&'static str),
    #[error("facet planes are parallel; the pair has no finite relation")]
    ParallelFacets,
}

/// The two ideal Coxeter tilings whose cells seed the packings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tiling {
    /// Regular ideal tetrahedron cell, Schlafli symbol `{3,3,6}`.
    Tet336,
    /// Regular ideal cube cell, Schlafli symbol `{4,3,6}`.
    Cube436,
}

impl Tiling {
    /// Schlafli symbol of the tiling.
    pub fn schlafli(self) -> &'static str {
        match self {
            Tiling::Tet336 => "{3,3,6}",
            Tiling::Cube436 => "{4,3,6}",
        }
    }

    /// Compact identifier used by the command line and scene files.
    pub fn id(self) -> &'static str {
        match self {
            Tiling::Tet336 => "336",
            Tiling::Cube436 => "436",
        }
    }

    /// Parses the compact identifier.
    pub fn from_id(id: &str) -> Option<Tiling> {
        match id {
            "336" => Some(Tiling::Tet336),
            "436" => Some(Tiling::Cube436),
            _ => None,
        }
    }

    /// Builds the fundamental cell with recomputed facet planes.
    pub fn cell(self) -> Cell {
        let r3 = 3.0_f64.sqrt();
        let r2 = 2.0_f64.sqrt();
        let (vertices, facet_vertices): (Vec<Vec4>, Vec<Vec<usize>>) = match self {
            Tiling::Tet336 => (
                vec![
                    Vec4::new(1.0, 0.0, 0.0, 1.0),
                    Vec4::new(1.0, 0.0, 1.0, 0.0),
                    Vec4::new(1.0, r3 / 2.0, -0.5, 0.0),
                    Vec4::new(1.0, -r3 / 2.0, -0.5, 0.0),
                ],
                // Facet k is opposite vertex k.
                vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
            ),
            Tiling::Cube436 => (
                vec![
                    Vec4::new(1.0, 0.0, 0.0, 1.0),
                    Vec4::new(1.0, -r2 / r3, r2 / 3.0, 1.0 / 3.0),
                    Vec4::new(1.0, r2 / r3, r2 / 3.0, 1.0 / 3.0),
                    Vec4::new(1.0, 0.0, -2.0 * r2 / 3.0, 1.0 / 3.0),
                    Vec4::new(1.0, 0.0, 2.0 * r2 / 3.0, -1.0 / 3.0),
                    Vec4::new(1.0, -r2 / r3, -r2 / 3.0, -1.0 / 3.0),
                    Vec4::new(1.0, r2 / r3, -r2 / 3.0, -1.0 / 3.0),
                    Vec4::new(1.0, 0.0, 0.0, -1.0),
                ],
                // Three facets around the top vertex, three around the bottom.
                vec![
                    vec![0, 1, 2, 4],
                    vec![0, 1, 3, 5],
                    vec![0, 2, 3, 6],
                    vec![7, 1, 4, 5],
                    vec![7, 2, 4, 6],
                    vec![7, 3, 5, 6],
                ],
            ),
        };

        let centroid = vertices.iter().sum::<Vec4>() / vertices.len() as f64;
        let facets = facet_vertices
            .into_iter()
            .map(|idx| {
                let pts: Vec<Vec4> = idx.iter().map(|&i| vertices[i]).collect();
                let form = plane_form(&pts, &centroid)
                    .expect("cell facets are planar by construction");
                let pole = pole(&form);
                Facet {
                    vertices: idx,
                    form,
                    pole,
                }
            })
            .collect();

        Cell {
            tiling: self,
            vertices,
            facets,
        }
    }
}

/// One facet of a cell: its vertex indices, the Euclidean form of its plane
/// oriented positive on the cell interior, and the Lorentz pole of the plane.
#[derive(Debug, Clone)]
pub struct Facet {
    pub vertices: Vec<usize>,
    pub form: Vec4,
    pub pole: Vec4,
}

/// A fundamental cell with ideal vertices and recomputed facet planes.
#[derive(Debug, Clone)]
pub struct Cell {
    pub tiling: Tiling,
    pub vertices: Vec<Vec4>,
    pub facets: Vec<Facet>,
}

/// Reflection generator across one facet, normalized to a Lorentz isometry
/// with positive eigenvalue on the fixed plane.
#[derive(Debug, Clone)]
pub struct Generator {
    pub facet: usize,
    pub matrix: Mat4,
}

impl Cell {
    /// Vertex pairs joined by an edge: exactly the pairs shared by two facets.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                let shared = self
                    .facets
                    .iter()
                    .filter(|f| f.vertices.contains(&i) && f.vertices.contains(&j))
                    .count();
                if shared == 2 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Solves all facet reflections.
    pub fn generators(&self) -> Result<Vec<Generator>, CoxeterError> {
        (0..self.facets.len())
            .map(|k| self.solve_generator(k))
            .collect()
    }

    /// Solves the reflection across facet `k` as an eigen-system.
    ///
    /// Three facet vertices are fixed directions of the matrix; the image of
    /// one off-facet vertex is pinned geometrically as the point reflection
    /// of that vertex through its perpendicular foot on the facet plane.
    /// The common eigenvalue of the fixed directions is recovered from the
    /// Lorentz products of the data, cross-checked per vertex, and the
    /// resulting matrix is validated as an involutive Lorentz isometry
    /// before being renormalized to unit determinant magnitude.
    pub fn solve_generator(&self, k: usize) -> Result<Generator, CoxeterError> {
        let facet = &self.facets[k];
        let p: Vec<Vec4> = facet.vertices[..3]
            .iter()
            .map(|&i| self.vertices[i])
            .collect();
        let q_idx = (0..self.vertices.len())
            .find(|i| !facet.vertices.contains(i))
            .expect("every facet omits at least one vertex");
        let q = self.vertices[q_idx];

        // Geometric image of q: point reflection through its perpendicular
        // foot, taken in canonical coordinates so the solver never relies on
        // a scale convention for the image.
        let foot = foot_of_perpendicular(&q, &facet.pole)?;
        let r = canonicalize(&(foot * 2.0 - q))?;

        // In a Lorentz similarity fixing the three facet directions with a
        // common eigenvalue, <p_i, q> / <p_i, r> is that eigenvalue times a
        // gauge shared by all i; disagreement means the data is inconsistent.
        let mut t = [0.0_f64; 3];
        for (i, pi) in p.iter().enumerate() {
            let denom = lorentz::bilinear(pi, &r);
            if denom.abs() < 1e-14 {
                return Err(CoxeterError::SingularSystem);
            }
            t[i] = lorentz::bilinear(pi, &q) / denom;
        }
        let t_mean = (t[0] + t[1] + t[2]) / 3.0;
        let spread = t
            .iter()
            .map(|ti| (ti - t_mean).abs())
            .fold(0.0_f64, f64::max)
            / t_mean.abs().max(1e-300);
        if spread > SOLVER_CONSISTENCY_TOL {
            return Err(CoxeterError::InconsistentSystem { spread });
        }

        let alpha = 1.0 / t_mean;
        let v = Mat4::from_columns(&[p[0], p[1], p[2], q]);
        let w = Mat4::from_columns(&[p[0] * alpha, p[1] * alpha, p[2] * alpha, r]);
        let v_inv = v.try_inverse().ok_or(CoxeterError::SingularSystem)?;
        let mut m = w * v_inv;

        // Validate before normalizing: Lorentz similarity, involution up to
        // scale, and any facet vertices beyond the three used must be fixed.
        let (_, residual) = lorentz_conjugation_residual(&m);
        if residual > DEFAULT_TOL {
            return Err(CoxeterError::Validation(
                "matrix does not preserve the Lorentz form up to scale",
            ));
        }
        let mm = m * m;
        if proportionality_residual(&mm) > DEFAULT_TOL {
            return Err(CoxeterError::Validation("matrix is not involutive"));
        }
        for &i in &facet.vertices[3..] {
            let image = m * self.vertices[i];
            if !projectively_equal(&image, &self.vertices[i], DEFAULT_TOL) {
                return Err(CoxeterError::Validation(
                    "matrix does not fix all facet vertices",
                ));
            }
        }

        // Renormalize to |det| = 1, then fix the scalar sign so that the
        // facet plane is fixed with eigenvalue +1.
        let det = m.determinant();
        if det.abs() < 1e-300 {
            return Err(CoxeterError::SingularSystem);
        }
        m /= det.abs().powf(0.25);
        if (m * p[0]).dot(&p[0]) < 0.0 {
            m = -m;
        }
        let (c, residual) = lorentz_conjugation_residual(&m);
        if (c - 1.0).abs() > DEFAULT_TOL || residual > DEFAULT_TOL {
            return Err(CoxeterError::Validation(
                "normalized matrix is not a Lorentz isometry",
            ));
        }

        Ok(Generator { facet: k, matrix: m })
    }
}

/// One verified group relation.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub facets: (usize, usize),
    pub kind: RelationKind,
    /// Deviation of the relation from holding exactly: a matrix
    /// proportionality residual for involutions and braids, an absolute
    /// length difference for translations.
    pub residual: f64,
}

/// The kind of relation a facet pair induces.
#[derive(Debug, Clone, PartialEq)]
pub enum RelationKind {
    /// A generator squares to the identity.
    Involution,
    /// Facets meeting at `pi/order` give `(g_i g_j)^order = 1`.
    Braid { order: u32 },
    /// Diverging facets give a hyperbolic translation whose length must be
    /// twice the distance between the planes.
    Translation {
        expected_length: f64,
        measured_length: f64,
    },
}

/// Outcome of checking every generator pair of a cell.
#[derive(Debug, Clone)]
pub struct RelationsReport {
    pub checks: Vec<RelationCheck>,
    pub max_residual: f64,
}

/// Verifies the Coxeter presentation carried by the cell geometry.
///
/// Every generator must be an involution; every facet pair must satisfy the
/// relation dictated by its plane relation: a braid relation of the order
/// read off the dihedral angle for intersecting planes, and the double
/// plane-distance translation length for diverging planes.
pub fn verify_relations(
    cell: &Cell,
    generators: &[Generator],
    tol: f64,
) -> Result<RelationsReport, CoxeterError> {
    let mut checks = Vec::new();
    for (i, gi) in generators.iter().enumerate() {
        let sq = gi.matrix * gi.matrix;
        checks.push(RelationCheck {
            facets: (i, i),
            kind: RelationKind::Involution,
            residual: max_abs(&(sq - Mat4::identity())),
        });
        for (j, gj) in generators.iter().enumerate().skip(i + 1) {
            let relation = plane_pair_relation(
                &cell.facets[gi.facet].pole,
                &cell.facets[gj.facet].pole,
                tol,
            )?;
            let product = gi.matrix * gj.matrix;
            let check = match relation {
                PlanePairRelation::Perpendicular | PlanePairRelation::Intersecting { .. } => {
                    let angle = match relation {
                        PlanePairRelation::Perpendicular => std::f64::consts::FRAC_PI_2,
                        PlanePairRelation::Intersecting { angle } => angle,
                        _ => unreachable!(),
                    };
                    let order_f = std::f64::consts::PI / angle;
                    let order = order_f.round();
                    if (order_f - order).abs() > 1e-6 || order < 2.0 {
                        return Err(CoxeterError::Validation(
                            "dihedral angle is not an integer submultiple of pi",
                        ));
                    }
                    let mut power = Mat4::identity();
                    for _ in 0..order as u32 {
                        power *= product;
                    }
                    RelationCheck {
                        facets: (i, j),
                        kind: RelationKind::Braid {
                            order: order as u32,
                        },
                        residual: proportionality_residual(&power),
                    }
                }
                PlanePairRelation::Parallel => return Err(CoxeterError::ParallelFacets),
                PlanePairRelation::Diverging { distance } => {
                    // Double reflection in diverging planes translates along
                    // their common perpendicular; the translation length
                    // appears in the trace as 2 cosh(l) + 2.
                    let cosh_l = (product.trace() - 2.0) / 2.0;
                    let measured_length = cosh_l.max(1.0).acosh();
                    RelationCheck {
                        facets: (i, j),
                        kind: RelationKind::Translation {
                            expected_length: 2.0 * distance,
                            measured_length,
                        },
                        residual: (measured_length - 2.0 * distance).abs(),
                    }
                }
            };
            checks.push(check);
        }
    }
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(RelationsReport {
        checks,
        max_residual,
    })
}

/// Residual of `P` being proportional to the identity, relative to `|P|`.
fn proportionality_residual(p: &Mat4) -> f64 {
    let c = p.trace() / 4.0;
    max_abs(&(p - Mat4::identity() * c)) / max_abs(p).max(1.0)
}

/// Plane through the first three points, oriented positive at `inside`,
/// scaled to unit largest entry. Remaining points must lie on the plane.
pub(crate) fn plane_form(points: &[Vec4], inside: &Vec4) -> Result<Vec4, CoxeterError> {
    let (a, b, c) = (&points[0], &points[1], &points[2]);
    let minor = |cols: [usize; 3]| {
        Matrix3::new(
            a[cols[0]], a[cols[1]], a[cols[2]],
            b[cols[0]], b[cols[1]], b[cols[2]],
            c[cols[0]], c[cols[1]], c[cols[2]],
        )
        .determinant()
    };
    // Generalized cross product: Euclidean-orthogonal to the three points.
    let mut form = Vec4::new(
        minor([1, 2, 3]),
        -minor([0, 2, 3]),
        minor([0, 1, 3]),
        -minor([0, 1, 2]),
    );
    let scale = form.amax();
    if scale < 1e-12 {
        return Err(CoxeterError::DegenerateFacet);
    }
    form /= scale;
    for extra in &points[3..] {
        if form.dot(extra).abs() > 1e-9 * extra.amax().max(1.0) {
            return Err(CoxeterError::FacetNotPlanar);
        }
    }
    if form.dot(inside) < 0.0 {
        form = -form;
    }
    Ok(form)
}

/// Convenience: the class of every cell vertex must be ideal; used by tests
/// and the verification report.
pub fn all_vertices_ideal(cell: &Cell, tol: f64) -> bool {
    cell.vertices
        .iter()
        .all(|v| classify(v, tol) == Ok(PointClass::Ideal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{bilinear, j_matrix, reflection_in_plane};

    #[test]
    fn tetrahedron_cell_has_ideal_vertices_and_expected_gram_products() {
        let cell = Tiling::Tet336.cell();
        assert_eq!(cell.vertices.len(), 4);
        assert_eq!(cell.facets.len(), 4);
        assert!(all_vertices_ideal(&cell, 1e-12));
        for i in 1..4 {
            assert!((bilinear(&cell.vertices[0], &cell.vertices[i]) + 1.0).abs() < 1e-12);
            for j in (i + 1)..4 {
                assert!((bilinear(&cell.vertices[i], &cell.vertices[j]) + 1.5).abs() < 1e-12);
            }
        }
        assert_eq!(cell.edges().len(), 6);
    }

    #[test]
    fn tetrahedron_facet_forms_match_closed_forms() {
        let cell = Tiling::Tet336.cell();
        let r3 = 3.0_f64.sqrt();
        let expected = [
            Vec4::new(0.0, 0.0, 0.0, 1.0),
            Vec4::new(1.0, 0.0, 2.0, -1.0),
            Vec4::new(1.0, r3, -1.0, -1.0),
            Vec4::new(1.0, -r3, -1.0, -1.0),
        ];
        for (facet, want) in cell.facets.iter().zip(&expected) {
            assert!(
                projectively_equal(&facet.form, want, 1e-12),
                "facet form {:?} vs {:?}",
                facet.form,
                want
            );
            // Interior-positive orientation.
            let centroid = cell.vertices.iter().sum::<Vec4>() / 4.0;
            assert!(facet.form.dot(&centroid) > 0.0);
        }
    }

    #[test]
    fn cube_cell_has_expected_edge_graph_and_gram_classes() {
        let cell = Tiling::Cube436.cell();
        assert_eq!(cell.vertices.len(), 8);
        assert_eq!(cell.facets.len(), 6);
        assert!(all_vertices_ideal(&cell, 1e-12));

        let edges = cell.edges();
        let expected_edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 4),
            (2, 6),
            (3, 5),
            (3, 6),
            (4, 7),
            (5, 7),
            (6, 7),
        ];
        assert_eq!(edges.len(), 12);
        for e in &expected_edges {
            assert!(edges.contains(e), "missing edge {e:?}");
        }

        // Gram products split vertex pairs into edges, face diagonals, and
        // main diagonals.
        for i in 0..8 {
            for j in (i + 1)..8 {
                let g = bilinear(&cell.vertices[i], &cell.vertices[j]);
                if edges.contains(&(i, j)) {
                    assert!((g + 2.0 / 3.0).abs() < 1e-12);
                } else if [(0, 7), (1, 6), (2, 5), (3, 4)].contains(&(i, j)) {
                    assert!((g + 2.0).abs() < 1e-12, "main diagonal {i},{j}: {g}");
                } else {
                    assert!((g + 4.0 / 3.0).abs() < 1e-12, "face diagonal {i},{j}: {g}");
                }
            }
        }
    }

    #[test]
    fn cube_adjacent_facets_meet_at_pi_over_three() {
        let cell = Tiling::Cube436.cell();
        let mut adjacent = 0;
        let mut diverging = 0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                match plane_pair_relation(&cell.facets[i].pole, &cell.facets[j].pole, 1e-9)
                    .unwrap()
                {
                    PlanePairRelation::Intersecting { angle } => {
                        adjacent += 1;
                        assert!((angle - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
                    }
                    PlanePairRelation::Diverging { distance } => {
                        diverging += 1;
                        assert!((distance - 2.0_f64.acosh()).abs() < 1e-12);
                    }
                    other => panic!("unexpected facet relation {other:?}"),
                }
            }
        }
        assert_eq!(adjacent, 12);
        assert_eq!(diverging, 3);
    }

    #[test]
    fn solved_generators_match_direct_plane_reflections() {
        for tiling in [Tiling::Tet336, Tiling::Cube436] {
            let cell = tiling.cell();
            let gens = cell.generators().unwrap();
            assert_eq!(gens.len(), cell.facets.len());
            for g in &gens {
                let h = reflection_in_plane(&cell.facets[g.facet].pole).unwrap();
                assert!(
                    max_abs(&(g.matrix - h)) < 1e-12,
                    "{tiling:?} facet {}: eigen-solve disagrees with reflection",
                    g.facet
                );
            }
        }
    }

    #[test]
    fn solved_generators_are_unit_determinant_lorentz_involutions() {
        for tiling in [Tiling::Tet336, Tiling::Cube436] {
            let cell = tiling.cell();
            for g in cell.generators().unwrap() {
                assert!((g.matrix.determinant() + 1.0).abs() < 1e-12);
                let gram = g.matrix.transpose() * j_matrix() * g.matrix;
                assert!(max_abs(&(gram - j_matrix())) < 1e-12);
                assert!(max_abs(&(g.matrix * g.matrix - Mat4::identity())) < 1e-12);
            }
        }
    }

    #[test]
    fn tetrahedron_relations_hold_to_machine_precision() {
        let cell = Tiling::Tet336.cell();
        let gens = cell.generators().unwrap();
        let report = verify_relations(&cell, &gens, 1e-9).unwrap();
        // 4 involutions + 6 braid pairs.
        assert_eq!(report.checks.len(), 10);
        assert!(
            report.max_residual < 1e-12,
            "max residual {}",
            report.max_residual
        );
        for check in &report.checks {
            if check.facets.0 != check.facets.1 {
                assert_eq!(check.kind, RelationKind::Braid { order: 3 });
            }
        }
    }

    #[test]
    fn cube_relations_include_translations_of_double_plane_distance() {
        let cell = Tiling::Cube436.cell();
        let gens = cell.generators().unwrap();
        let report = verify_relations(&cell, &gens, 1e-9).unwrap();
        // 6 involutions + 12 braids + 3 translations.
        assert_eq!(report.checks.len(), 21);
        assert!(report.max_residual < 1e-12);
        let translations: Vec<_> = report
            .checks
            .iter()
            .filter(|c| matches!(c.kind, RelationKind::Translation { .. }))
            .collect();
        assert_eq!(translations.len(), 3);
        for t in translations {
            if let RelationKind::Translation {
                expected_length,
                measured_length,
            } = t.kind
            {
                assert!((expected_length - 2.0 * 2.0_f64.acosh()).abs() < 1e-12);
                assert!((measured_length - expected_length).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tiling_ids_round_trip() {
        for tiling in [Tiling::Tet336, Tiling::Cube436] {
            assert_eq!(Tiling::from_id(tiling.id()), Some(tiling));
        }
        assert_eq!(Tiling::from_id("536"), None);
    }
}
