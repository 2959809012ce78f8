//! Verification of an expanded packing: group relations, pairwise
//! separation, declared contact structure, and piece accounting.
//!
//! Verification never stops at the first problem; every failed assertion is
//! recorded as a line in [`VerifyReport::failures`] so a report shows the
//! whole picture. An empty failure list is the pass criterion.

use crate::coxeter::{verify_relations, RelationsReport};
use crate::horoball::Contact;
use crate::lorentz::{lorentz_conjugation_residual, Vec4};
use crate::packing::{volume, Packing, PackingError};

/// A verified tangency between two seed balls.
#[derive(Debug, Clone)]
pub struct SeedContact {
    pub a: usize,
    pub b: usize,
    /// Canonical contact point.
    pub point: Vec4,
}

/// A verified tangency between a seed ball and a facet plane.
#[derive(Debug, Clone)]
pub struct FaceContact {
    pub vertex: usize,
    pub facet: usize,
    pub point: Vec4,
}

/// Everything the verification pass measures.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub crowns: usize,
    pub tol: f64,
    pub isometries: usize,
    pub isometries_per_crown: Vec<usize>,
    pub balls: usize,
    pub balls_per_crown: Vec<usize>,
    /// Worst deviation of a generator from a Lorentz involution.
    pub generator_residual: f64,
    /// Group presentation checks from the cell geometry.
    pub relations: RelationsReport,
    pub pairs_checked: usize,
    pub tangent_pairs: usize,
    pub overlap_pairs: usize,
    /// Smallest chord-parameter gap over the strictly disjoint pairs.
    pub min_gap: f64,
    /// Declared ball-ball tangencies with their contact points.
    pub seed_contacts: Vec<SeedContact>,
    /// Declared ball-facet tangencies with their contact points.
    pub face_contacts: Vec<FaceContact>,
    /// Balls outside the base cell that a single facet plane separates.
    pub separated_foreign_balls: usize,
    /// Balls outside the base cell without such a separating facet.
    pub unseparated_foreign_balls: usize,
    /// Piece volume per seed vertex.
    pub piece_volumes: Vec<f64>,
    /// Distinct piece volumes with multiplicities (the ball types).
    pub piece_classes: Vec<(f64, usize)>,
    /// Distinct parameters with multiplicities (the size classes).
    pub size_classes: Vec<(f64, usize)>,
    pub cell_volume: f64,
    /// Sum of seed piece volumes over the cell volume.
    pub piece_density: f64,
    /// Failed assertions, human readable; empty means the packing verifies.
    pub failures: Vec<String>,
}

impl VerifyReport {
    /// True when every assertion held.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the full verification pass.
pub fn verify(packing: &Packing, tol: f64) -> Result<VerifyReport, PackingError> {
    let mut failures = Vec::new();

    // Generators: Lorentz involutions at unit scale.
    let mut generator_residual = 0.0_f64;
    for g in &packing.generators {
        let (c, residual) = lorentz_conjugation_residual(&g.matrix);
        generator_residual = generator_residual.max(residual).max((c - 1.0).abs());
    }
    if generator_residual > tol {
        failures.push(format!(
            "generator conjugation residual {generator_residual:e} exceeds {tol:e}"
        ));
    }

    // Group presentation read off the cell geometry.
    let relations = verify_relations(&packing.cell, &packing.generators, tol)?;
    if relations.max_residual > tol {
        failures.push(format!(
            "relation residual {:e} exceeds {tol:e}",
            relations.max_residual
        ));
    }

    // Pairwise separation over the whole expansion.
    let n = packing.balls.len();
    let mut pairs_checked = 0usize;
    let mut tangent_pairs = 0usize;
    let mut overlap_pairs = 0usize;
    let mut min_gap = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let a = &packing.balls[i];
            let b = &packing.balls[j];
            pairs_checked += 1;
            let gap = a.ball.chord_gap(&b.ball)?;
            if gap.abs() <= tol {
                tangent_pairs += 1;
            } else if gap < 0.0 {
                overlap_pairs += 1;
                if overlap_pairs <= 8 {
                    failures.push(format!(
                        "overlap between balls {} (word {}, vertex {}) and {} (word {}, vertex {}): gap {gap:e}",
                        i,
                        a.word_string(),
                        a.vertex,
                        j,
                        b.word_string(),
                        b.vertex,
                    ));
                }
            } else {
                min_gap = min_gap.min(gap);
            }
        }
    }
    if overlap_pairs > 8 {
        failures.push(format!("{overlap_pairs} overlapping pairs in total"));
    }

    // Declared seed contact structure, positively and negatively.
    let seeds = &packing.balls[..packing.cell.vertices.len()];
    let mut seed_contacts = Vec::new();
    for i in 0..seeds.len() {
        for j in (i + 1)..seeds.len() {
            let declared = packing.config.ball_contacts.contains(&(i, j));
            match seeds[i].ball.contact(&seeds[j].ball, tol)? {
                Contact::Tangent(point) => {
                    if declared {
                        seed_contacts.push(SeedContact { a: i, b: j, point });
                    } else {
                        failures.push(format!("undeclared tangency between seeds {i} and {j}"));
                    }
                }
                Contact::Disjoint => {
                    if declared {
                        failures.push(format!("declared contact ({i},{j}) does not touch"));
                    }
                }
                Contact::Overlapping => {
                    failures.push(format!("seed balls {i} and {j} overlap"));
                }
            }
        }
    }

    // Declared facet tangencies; all other (ball, far facet) pairs must be
    // strictly disjoint. Facets through a ball's own center always cross
    // the ball and are skipped.
    let mut face_contacts = Vec::new();
    for (v, seed) in seeds.iter().enumerate() {
        for (f, facet) in packing.cell.facets.iter().enumerate() {
            if facet.vertices.contains(&v) {
                continue;
            }
            let declared = packing.config.face_contacts.contains(&(v, f));
            match seed.ball.plane_contact(&facet.pole, tol)? {
                Contact::Tangent(point) => {
                    if declared {
                        face_contacts.push(FaceContact {
                            vertex: v,
                            facet: f,
                            point,
                        });
                    } else {
                        failures.push(format!("undeclared tangency of seed {v} on facet {f}"));
                    }
                }
                Contact::Disjoint => {
                    if declared {
                        failures.push(format!("declared face contact ({v},{f}) does not touch"));
                    }
                }
                Contact::Overlapping => {
                    failures.push(format!("seed ball {v} protrudes through facet {f}"));
                }
            }
        }
    }

    // Foreign balls (not centered at base-cell vertices) must stay out of
    // the base cell; a single facet plane with the whole ball on its outer
    // side certifies that.
    let mut separated_foreign_balls = 0usize;
    let mut unseparated_foreign_balls = 0usize;
    for b in &packing.balls[packing.cell.vertices.len()..] {
        let mut separated = false;
        for facet in &packing.cell.facets {
            let (_, hi) = b.ball.plane_clearance(&facet.pole)?;
            if hi <= tol {
                separated = true;
                break;
            }
        }
        if separated {
            separated_foreign_balls += 1;
        } else {
            unseparated_foreign_balls += 1;
            failures.push(format!(
                "ball (word {}, vertex {}) is not separated from the base cell",
                b.word_string(),
                b.vertex
            ));
        }
    }

    // Piece accounting on the seeds.
    let mut piece_volumes = Vec::new();
    for (v, seed) in seeds.iter().enumerate() {
        match volume::piece_volume(&packing.cell, &seed.ball, v, tol) {
            Ok(p) => piece_volumes.push(p),
            Err(e) => {
                failures.push(format!("piece volume at vertex {v}: {e}"));
                piece_volumes.push(f64::NAN);
            }
        }
    }
    let cell_volume = volume::cell_volume(packing.config.tiling)?;
    let piece_density = piece_volumes.iter().sum::<f64>() / cell_volume;

    let piece_classes = classes(&piece_volumes, 1e-9);
    let size_classes = classes(&packing.config.s, 1e-9);

    Ok(VerifyReport {
        crowns: packing.crowns,
        tol,
        isometries: packing.elements.len(),
        isometries_per_crown: packing.elements_per_crown(),
        balls: n,
        balls_per_crown: packing.balls_per_crown(),
        generator_residual,
        relations,
        pairs_checked,
        tangent_pairs,
        overlap_pairs,
        min_gap,
        seed_contacts,
        face_contacts,
        separated_foreign_balls,
        unseparated_foreign_balls,
        piece_volumes,
        piece_classes,
        size_classes,
        cell_volume,
        piece_density,
        failures,
    })
}

/// Groups values equal within `tol` and returns `(representative, count)`
/// in order of first appearance.
fn classes(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.iter_mut().find(|(r, _)| (*r - v).abs() <= tol) {
            Some((_, count)) => *count += 1,
            None => out.push((v, 1)),
        }
    }
    out
}
