//! Cell volumes, per-ball piece volumes, and closed-form densities.
//!
//! The volume of an ideal tetrahedron follows from its dihedral angles via
//! the Lobachevsky function; the cubic cell decomposes into five ideal
//! tetrahedra. The piece of a horoball inside the cone at its vertex is
//! measured on the horosphere: the cone's three edges pierce the horosphere
//! in three points whose pairwise geodesic chords subtend horospherical
//! arcs of length `2 sinh(d/2)`, the intrinsic geometry of the horosphere
//! is Euclidean, and the piece volume is exactly half the triangle area.

use crate::coxeter::{plane_form, Cell, Tiling};
use crate::horoball::{Contact, Horoball};
use crate::lorentz::{
    classify, distance, plane_pair_relation, projectively_equal, PlanePairRelation, PointClass,
    Vec4,
};
use crate::numeric::ideal_tetrahedron_volume;
use crate::packing::{CaseConfig, CaseId, PackingError};
use crate::DEFAULT_TOL;

/// The cubic cell split into five ideal tetrahedra: four corner tetrahedra
/// and the central one spanned by an alternation class.
pub const CUBE_TET_DECOMPOSITION: [[usize; 4]; 5] = [
    [1, 0, 4, 5],
    [2, 0, 4, 6],
    [3, 0, 5, 6],
    [7, 4, 5, 6],
    [0, 4, 5, 6],
];

/// Volume of the ideal tetrahedron with the given vertices.
///
/// The three dihedral angles at any ideal vertex sum to pi and determine
/// the volume as the sum of their Lobachevsky values; the angle sum is
/// verified as a consistency check on the input.
pub fn ideal_tet_volume(vs: &[Vec4; 4]) -> Result<f64, PackingError> {
    for v in vs {
        if classify(v, DEFAULT_TOL)? != PointClass::Ideal {
            return Err(PackingError::Invalid(
                "ideal tetrahedron volume needs ideal vertices",
            ));
        }
    }
    // Faces around vertex 0, each oriented positive at its opposite vertex.
    let face = |a: usize, b: usize, inside: usize| -> Result<Vec4, PackingError> {
        let pts = [vs[0], vs[a], vs[b]];
        Ok(crate::lorentz::pole(&plane_form(&pts, &vs[inside])?))
    };
    let f12 = face(1, 2, 3)?;
    let f13 = face(1, 3, 2)?;
    let f23 = face(2, 3, 1)?;
    let angle = |p: &Vec4, q: &Vec4| -> Result<f64, PackingError> {
        match plane_pair_relation(p, q, DEFAULT_TOL)? {
            PlanePairRelation::Intersecting { angle } => Ok(angle),
            PlanePairRelation::Perpendicular => Ok(std::f64::consts::FRAC_PI_2),
            _ => Err(PackingError::Invalid(
                "tetrahedron faces do not meet along edges",
            )),
        }
    };
    // Interior dihedral angles along the edges 0-1, 0-2, 0-3: each edge is
    // shared by the two faces containing it.
    let alpha = angle(&f12, &f13)?;
    let beta = angle(&f12, &f23)?;
    let gamma = angle(&f13, &f23)?;
    if (alpha + beta + gamma - std::f64::consts::PI).abs() > 1e-9 {
        return Err(PackingError::Invalid(
            "dihedral angles at an ideal vertex must sum to pi",
        ));
    }
    Ok(ideal_tetrahedron_volume(alpha, beta, gamma))
}

/// Hyperbolic volume of the fundamental cell.
pub fn cell_volume(tiling: Tiling) -> Result<f64, PackingError> {
    let cell = tiling.cell();
    match tiling {
        Tiling::Tet336 => {
            let vs = [
                cell.vertices[0],
                cell.vertices[1],
                cell.vertices[2],
                cell.vertices[3],
            ];
            ideal_tet_volume(&vs)
        }
        Tiling::Cube436 => {
            let mut total = 0.0;
            for idx in CUBE_TET_DECOMPOSITION {
                let vs = [
                    cell.vertices[idx[0]],
                    cell.vertices[idx[1]],
                    cell.vertices[idx[2]],
                    cell.vertices[idx[3]],
                ];
                total += ideal_tet_volume(&vs)?;
            }
            Ok(total)
        }
    }
}

/// Volume of the part of `ball` inside the cell, for a ball centered at
/// cell vertex `vertex`.
///
/// Requires the ball to stay on the cell side of every facet plane not
/// through its center (tangency allowed); under that condition the piece
/// equals the ball's intersection with the vertex cone, computed on the
/// horosphere in closed form.
pub fn piece_volume(
    cell: &Cell,
    ball: &Horoball,
    vertex: usize,
    tol: f64,
) -> Result<f64, PackingError> {
    if !projectively_equal(&ball.center(), &cell.vertices[vertex], tol) {
        return Err(PackingError::Invalid(
            "piece volume needs the ball centered at the named vertex",
        ));
    }
    // The ball must not protrude through far facets, or the cone section
    // would overcount.
    for (f, facet) in cell.facets.iter().enumerate() {
        if facet.vertices.contains(&vertex) {
            continue;
        }
        match ball.plane_contact(&facet.pole, tol)? {
            Contact::Disjoint | Contact::Tangent(_) => {}
            Contact::Overlapping => return Err(PackingError::BallProtrudes { vertex, facet: f }),
        }
    }

    let neighbors: Vec<usize> = cell
        .edges()
        .into_iter()
        .filter_map(|(i, j)| match (i == vertex, j == vertex) {
            (true, _) => Some(j),
            (_, true) => Some(i),
            _ => None,
        })
        .collect();
    if neighbors.len() != 3 {
        return Err(PackingError::Invalid(
            "vertex cones of the supported cells are simplicial",
        ));
    }

    // Horospherical cross-section triangle of the vertex cone.
    let exits: Vec<Vec4> = neighbors
        .iter()
        .map(|&w| ball.chord_exit_point(&cell.vertices[w]))
        .collect::<Result<_, _>>()?;
    let mut l = [0.0_f64; 3];
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        let d = distance(&exits[i], &exits[j])?;
        l[k] = 2.0 * (d / 2.0).sinh();
    }
    Ok(triangle_area(l) / 2.0)
}

/// Numerically stable Heron formula (sorted, Kahan's arrangement).
fn triangle_area(mut l: [f64; 3]) -> f64 {
    l.sort_by(|x, y| y.partial_cmp(x).expect("side lengths are finite"));
    let [a, b, c] = l;
    let t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * t.max(0.0).sqrt()
}

/// Closed-form packing density of a case: piece volumes summed against the
/// cell volume.
#[derive(Debug, Clone)]
pub struct ExactDensity {
    /// Piece volume per cell vertex.
    pub piece_volumes: Vec<f64>,
    pub cell_volume: f64,
    pub density: f64,
}

/// Computes the closed-form density of a packing case.
pub fn exact_density(case: CaseId, tol: f64) -> Result<ExactDensity, PackingError> {
    let config = CaseConfig::solve(case)?;
    let cell = config.tiling.cell();
    let balls = config.seed_balls(&cell)?;
    let piece_volumes: Vec<f64> = balls
        .iter()
        .enumerate()
        .map(|(v, b)| piece_volume(&cell, b, v, tol))
        .collect::<Result<_, _>>()?;
    let cell_volume = cell_volume(config.tiling)?;
    let density = piece_volumes.iter().sum::<f64>() / cell_volume;
    Ok(ExactDensity {
        piece_volumes,
        cell_volume,
        density,
    })
}
