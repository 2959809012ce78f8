//! Breadth-first expansion of the reflection group and the ball orbit.
//!
//! Group elements are products of facet reflections, discovered in word
//! order: crown `n` holds the elements whose shortest word has length `n`.
//! Words only ever append on the right, so the crown rings coincide with
//! the combinatorial distance from the base cell in the dual graph of the
//! tiling. Matrices are deduplicated projectively, which resolves the braid
//! coincidences (`aba = bab` for adjacent facets) without knowing the
//! relations in advance.

use nalgebra::Vector3;

use crate::coxeter::Generator;
use crate::horoball::Horoball;
use crate::lorentz::{max_abs, normalize_matrix, Mat4};
use crate::packing::PackingError;

/// Matrix dedup tolerance; reflection products stay within a few ulps of
/// their exact values over the supported crown range, so this has orders of
/// magnitude of headroom on both sides.
const MATRIX_DEDUP_TOL: f64 = 1e-9;

/// Center dedup tolerance for ball directions, same reasoning.
const CENTER_DEDUP_TOL: f64 = 1e-9;

/// One group element: its shortest generator word and its matrix.
#[derive(Debug, Clone)]
pub struct GroupElement {
    /// Generator indices, left to right; empty for the identity.
    pub word: Vec<u8>,
    pub matrix: Mat4,
}

impl GroupElement {
    /// Word length of the element.
    pub fn crown(&self) -> usize {
        self.word.len()
    }

    /// Word rendered for scenes and reports: dot-joined one-based
    /// generator numbers, `-` for the identity.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "-".to_string()
        } else {
            self.word
                .iter()
                .map(|k| (k + 1).to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// One ball of the expanded packing.
#[derive(Debug, Clone)]
pub struct PackedBall {
    pub ball: Horoball,
    /// Crown of the first group element that produced the ball.
    pub crown: usize,
    /// Word of that element.
    pub word: Vec<u8>,
    /// Seed vertex the ball descends from.
    pub vertex: usize,
    /// Size class inherited from the seed vertex.
    pub class: usize,
}

impl PackedBall {
    /// Word rendered as in [`GroupElement::word_string`].
    pub fn word_string(&self) -> String {
        GroupElement {
            word: self.word.clone(),
            matrix: Mat4::identity(),
        }
        .word_string()
    }
}

/// Expands the group breadth-first up to the given crown.
///
/// Candidates are free-reduced (no letter immediately repeats, since the
/// generators are involutions) and deduplicated projectively against every
/// element found so far; the first word reaching a matrix wins, so stored
/// words are geodesic and ordered lexicographically within a crown.
pub fn expand_group(generators: &[Generator], crowns: usize) -> Vec<GroupElement> {
    let mats: Vec<Mat4> = generators.iter().map(|g| g.matrix).collect();
    let mut elements = vec![GroupElement {
        word: Vec::new(),
        matrix: Mat4::identity(),
    }];
    let mut normals = vec![normalize_matrix(&Mat4::identity()).expect("identity is nonzero")];
    let mut frontier: Vec<usize> = vec![0];

    for _ in 0..crowns {
        let mut next = Vec::new();
        for &idx in &frontier {
            let (word, matrix) = (elements[idx].word.clone(), elements[idx].matrix);
            for (k, gm) in mats.iter().enumerate() {
                if word.last() == Some(&(k as u8)) {
                    continue;
                }
                let m = matrix * gm;
                let nm = normalize_matrix(&m).expect("reflection products are nonzero");
                if normals
                    .iter()
                    .any(|known| max_abs(&(known - nm)) <= MATRIX_DEDUP_TOL)
                {
                    continue;
                }
                let mut w = word.clone();
                w.push(k as u8);
                next.push(elements.len());
                elements.push(GroupElement { word: w, matrix: m });
                normals.push(nm);
            }
        }
        frontier = next;
    }
    elements
}

/// Expands the seed balls under the group elements, deduplicating by ideal
/// center.
///
/// When two elements reach the same center their parameters must agree
/// within `tol`; a disagreement means the configuration is not invariant
/// under the group and the whole expansion is rejected.
pub fn expand_balls(
    seeds: &[Horoball],
    class_of_vertex: &[usize],
    elements: &[GroupElement],
    tol: f64,
) -> Result<Vec<PackedBall>, PackingError> {
    let mut balls: Vec<PackedBall> = Vec::new();
    let mut dirs: Vec<Vector3<f64>> = Vec::new();
    for element in elements {
        for (v, seed) in seeds.iter().enumerate() {
            let ball = if element.word.is_empty() {
                seed.clone()
            } else {
                seed.transform(&element.matrix)?
            };
            let dir = ball.direction();
            match dirs.iter().position(|d| (d - dir).norm() <= CENTER_DEDUP_TOL) {
                Some(i) => {
                    let ds = (balls[i].ball.s() - ball.s()).abs();
                    if ds > tol {
                        return Err(PackingError::InconsistentOrbit(format!(
                            "word {} vertex {v} disagrees with word {} by {ds:e} in s",
                            element.word_string(),
                            balls[i].word_string(),
                        )));
                    }
                }
                None => {
                    dirs.push(dir);
                    balls.push(PackedBall {
                        ball,
                        crown: element.crown(),
                        word: element.word.clone(),
                        vertex: v,
                        class: class_of_vertex[v],
                    });
                }
            }
        }
    }
    Ok(balls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Tiling;
    use crate::lorentz::lorentz_conjugation_residual;
    use crate::packing::{CaseConfig, CaseId};

    fn group(tiling: Tiling, crowns: usize) -> Vec<GroupElement> {
        let cell = tiling.cell();
        let generators = cell.generators().unwrap();
        expand_group(&generators, crowns)
    }

    #[test]
    fn identity_comes_first_and_crowns_are_sorted() {
        let elements = group(Tiling::Tet336, 3);
        assert!(elements[0].word.is_empty());
        for pair in elements.windows(2) {
            assert!(pair[0].crown() <= pair[1].crown());
        }
    }

    #[test]
    fn tetrahedral_crown_counts_match_the_coxeter_growth() {
        // 1 identity, 4 reflections, all 12 reduced two-letter words, and
        // 36 - 6 three-letter words (one braid coincidence per facet pair).
        let elements = group(Tiling::Tet336, 3);
        let mut counts = [0usize; 4];
        for e in &elements {
            counts[e.crown()] += 1;
        }
        assert_eq!(counts, [1, 4, 12, 30]);
    }

    #[test]
    fn braid_words_collapse_pairwise() {
        // aba and bab reach the same element; the lexicographically earlier
        // word is kept.
        let elements = group(Tiling::Tet336, 3);
        let words: Vec<Vec<u8>> = elements.iter().map(|e| e.word.clone()).collect();
        assert!(words.contains(&vec![0, 1, 0]));
        assert!(!words.contains(&vec![1, 0, 1]));
    }

    #[test]
    fn every_element_is_a_lorentz_isometry() {
        for tiling in [Tiling::Tet336, Tiling::Cube436] {
            for e in group(tiling, 3) {
                let (c, residual) = lorentz_conjugation_residual(&e.matrix);
                assert!((c - 1.0).abs() <= 1e-10, "scale {c}");
                assert!(residual <= 1e-10, "residual {residual:e}");
            }
        }
    }

    #[test]
    fn word_strings_render_one_based() {
        let elements = group(Tiling::Tet336, 2);
        assert_eq!(elements[0].word_string(), "-");
        assert_eq!(elements[1].word_string(), "1");
        let two = elements.iter().find(|e| e.word == vec![0, 1]).unwrap();
        assert_eq!(two.word_string(), "1.2");
    }

    #[test]
    fn first_crown_ball_counts_are_frozen() {
        // Tetrahedron: each reflection fixes the three on-facet balls and
        // images the opposite one, so crown 1 adds exactly 4 balls. Cube:
        // each of the 6 reflections images the 4 off-facet balls, all
        // distinct, adding 24.
        for (case, want_elements, want_balls) in [
            (CaseId::Bf, 5, 8),
            (CaseId::Balanced, 7, 32),
        ] {
            let cfg = CaseConfig::solve(case).unwrap();
            let cell = cfg.tiling.cell();
            let generators = cell.generators().unwrap();
            let elements = expand_group(&generators, 1);
            assert_eq!(elements.len(), want_elements);
            let seeds = cfg.seed_balls(&cell).unwrap();
            let balls = expand_balls(&seeds, &cfg.class_of_vertex, &elements, 1e-9).unwrap();
            assert_eq!(balls.len(), want_balls);
            // Seeds keep crown 0 and their own vertex indices.
            for (v, b) in balls.iter().take(seeds.len()).enumerate() {
                assert_eq!(b.crown, 0);
                assert_eq!(b.vertex, v);
            }
        }
    }

    #[test]
    fn orbit_parameters_are_consistent_across_words() {
        // Crown 3 revisits many centers through distinct words; the
        // expansion only succeeds if every revisit agrees in s.
        for case in CaseId::all() {
            let cfg = CaseConfig::solve(case).unwrap();
            let cell = cfg.tiling.cell();
            let generators = cell.generators().unwrap();
            let elements = expand_group(&generators, 3);
            let seeds = cfg.seed_balls(&cell).unwrap();
            let balls = expand_balls(&seeds, &cfg.class_of_vertex, &elements, 1e-9);
            assert!(balls.is_ok(), "{case:?}: {:?}", balls.err());
        }
    }
}
