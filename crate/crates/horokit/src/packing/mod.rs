//! Packing cases, crown-by-crown orbit expansion, and verification.
//!
//! A packing case seeds one horoball at every ideal vertex of the
//! fundamental cell. The ball parameters are not hardcoded: each case is
//! defined by its contact structure (which pairs of balls are tangent,
//! which balls touch facet planes) and the parameters are recovered by
//! root finding on the corresponding clearance functions. Expanding the
//! seed configuration under the facet-reflection group then produces the
//! packing crown by crown, where the crown of a ball is the word length of
//! the first group element that reaches it.

pub mod density;
pub mod orbit;
pub mod verify;
pub mod volume;

use thiserror::Error;

use crate::coxeter::{Cell, CoxeterError, Generator, Tiling};
use crate::horoball::{Horoball, HoroballError};
use crate::lorentz::LorentzError;

pub use orbit::{GroupElement, PackedBall};

/// Hard cap on the crown count; orbit growth is exponential.
pub const MAX_CROWNS: usize = 8;

/// Errors from packing construction and verification.
#[derive(Debug, Error)]
pub enum PackingError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Horoball(#[from] HoroballError),
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error("no sign change while solving {0}")]
    RootNotBracketed(&'static str),
    #[error("orbit reached one center with two parameters: {0}")]
    InconsistentOrbit(String),
    #[error("crown count {requested} exceeds the supported maximum {max}")]
    TooManyCrowns { requested: usize, max: usize },
    #[error("ball at vertex {vertex} protrudes through facet {facet}")]
    BallProtrudes { vertex: usize, facet: usize },
    #[error("{0}")]
    Invalid(&'static str),
}

/// The four packing cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// Tetrahedral cell: one full ball tangent to the opposite facet plus
    /// three equal balls tangent to it.
    Bf,
    /// Tetrahedral cell: four mutually tangent balls.
    Ks,
    /// Cubic cell: two alternating size classes, tangent along every edge
    /// and at every facet center.
    Balanced,
    /// Cubic cell: per-class maximal balls; the dominant ball is tangent to
    /// the seven others and to the three far facets.
    Maximal,
}

impl CaseId {
    /// All cases in canonical order.
    pub fn all() -> [CaseId; 4] {
        [CaseId::Bf, CaseId::Ks, CaseId::Balanced, CaseId::Maximal]
    }

    /// Stable lowercase identifier used by the CLI and scene files.
    pub fn id(self) -> &'static str {
        match self {
            CaseId::Bf => "bf",
            CaseId::Ks => "ks",
            CaseId::Balanced => "balanced",
            CaseId::Maximal => "maximal",
        }
    }

    /// Parses the identifier produced by [`CaseId::id`].
    pub fn from_id(id: &str) -> Option<CaseId> {
        CaseId::all().into_iter().find(|c| c.id() == id)
    }

    /// The tiling this case lives in.
    pub fn tiling(self) -> Tiling {
        match self {
            CaseId::Bf | CaseId::Ks => Tiling::Tet336,
            CaseId::Balanced | CaseId::Maximal => Tiling::Cube436,
        }
    }

    /// One-line structural description for reports.
    pub fn describe(self) -> &'static str {
        match self {
            CaseId::Bf => {
                "one ball tangent to its opposite facet, three equal balls tangent to it"
            }
            CaseId::Ks => "four mutually tangent balls, one per vertex",
            CaseId::Balanced => {
                "two alternating size classes, tangent along all edges and at facet centers"
            }
            CaseId::Maximal => {
                "per-class maximal balls; the dominant ball touches all seven others \
                 and the three far facets"
            }
        }
    }
}

/// A fully solved case: the cell, one parameter per vertex, the size-class
/// partition of the vertices, and the contact structure the case is defined
/// by (used both for solving and later for verification).
#[derive(Debug, Clone)]
pub struct CaseConfig {
    pub id: CaseId,
    pub tiling: Tiling,
    /// Ball parameter per cell vertex.
    pub s: Vec<f64>,
    /// Size-class index per cell vertex.
    pub class_of_vertex: Vec<usize>,
    /// Vertex pairs whose balls must be tangent.
    pub ball_contacts: Vec<(usize, usize)>,
    /// `(vertex, facet)` pairs whose ball must be tangent to the facet plane.
    pub face_contacts: Vec<(usize, usize)>,
}

impl CaseConfig {
    /// Solves the case from its defining contact structure.
    ///
    /// Every parameter is the root of a signed clearance function that is
    /// strictly increasing in `s` (shrinking a ball opens every gap), so
    /// plain bisection over the full parameter interval converges to
    /// machine precision.
    pub fn solve(id: CaseId) -> Result<CaseConfig, PackingError> {
        let tiling = id.tiling();
        let cell = tiling.cell();
        let at = |v: usize, s: f64| Horoball::new(&cell.vertices[v], s);

        // Tangency clearance between the ball at `v` (parameter unknown)
        // and a fixed ball.
        let gap_to = |v: usize, fixed: &Horoball| {
            let fixed = fixed.clone();
            move |s: f64| at(v, s).and_then(|b| b.chord_gap(&fixed)).unwrap()
        };
        // Clearance between the ball at `v` and a facet plane, measured on
        // the cell-interior side.
        let face_gap = |v: usize, facet: usize| {
            let pole = cell.facets[facet].pole;
            move |s: f64| at(v, s).and_then(|b| b.plane_clearance(&pole)).unwrap().0
        };

        let (s, class_of_vertex, ball_contacts, face_contacts) = match id {
            CaseId::Bf => {
                let s0 = bisect("the face-tangent ball", face_gap(0, 0))?;
                let b0 = at(0, s0)?;
                let s1 = bisect("balls tangent to the full ball", gap_to(1, &b0))?;
                (
                    vec![s0, s1, s1, s1],
                    vec![0, 1, 1, 1],
                    vec![(0, 1), (0, 2), (0, 3)],
                    vec![(0, 0)],
                )
            }
            CaseId::Ks => {
                // The three equal balls are pinned by their mutual tangency,
                // independent of the fourth.
                let s1 = bisect("the mutually tangent triple", |s| {
                    let a = at(1, s).unwrap();
                    let b = at(2, s).unwrap();
                    a.chord_gap(&b).unwrap()
                })?;
                let b1 = at(1, s1)?;
                let s0 = bisect("the ball closing the tangency graph", gap_to(0, &b1))?;
                (
                    vec![s0, s1, s1, s1],
                    vec![0, 1, 1, 1],
                    vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
                    vec![],
                )
            }
            CaseId::Balanced => {
                // Vertices fall in the two alternation classes of the cube
                // graph; same-class pairs sit on face diagonals.
                let sa = bisect("the face-diagonal tangent class", |s| {
                    let a = at(0, s).unwrap();
                    let b = at(4, s).unwrap();
                    a.chord_gap(&b).unwrap()
                })?;
                let a0 = at(0, sa)?;
                let sb = bisect("the edge-tangent class", gap_to(1, &a0))?;
                let class = vec![0, 1, 1, 1, 0, 0, 0, 1];
                let s = class
                    .iter()
                    .map(|&c| if c == 0 { sa } else { sb })
                    .collect();
                let mut contacts = vec![
                    // Every edge joins the two classes.
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
                // Face diagonals inside the larger class.
                contacts.extend([(0, 4), (0, 5), (0, 6), (4, 5), (4, 6), (5, 6)]);
                (s, class, contacts, vec![])
            }
            CaseId::Maximal => {
                // The dominant ball grows until it is tangent to the far
                // facet planes; each remaining class then grows until it
                // meets the dominant ball.
                let s0 = bisect("the dominant ball", face_gap(0, 3))?;
                let b0 = at(0, s0)?;
                let s1 = bisect("the edge-adjacent class", gap_to(1, &b0))?;
                let s4 = bisect("the face-diagonal class", gap_to(4, &b0))?;
                let s7 = bisect("the antipodal ball", gap_to(7, &b0))?;
                (
                    vec![s0, s1, s1, s1, s4, s4, s4, s7],
                    vec![0, 1, 1, 1, 2, 2, 2, 3],
                    vec![
                        (0, 1),
                        (0, 2),
                        (0, 3),
                        (0, 4),
                        (0, 5),
                        (0, 6),
                        (0, 7),
                        (4, 7),
                        (5, 7),
                        (6, 7),
                    ],
                    vec![(0, 3), (0, 4), (0, 5)],
                )
            }
        };

        Ok(CaseConfig {
            id,
            tiling,
            s,
            class_of_vertex,
            ball_contacts,
            face_contacts,
        })
    }

    /// The seed horoballs, one per cell vertex.
    pub fn seed_balls(&self, cell: &Cell) -> Result<Vec<Horoball>, PackingError> {
        self.s
            .iter()
            .zip(&cell.vertices)
            .map(|(&s, v)| Horoball::new(v, s).map_err(PackingError::from))
            .collect()
    }

    /// Number of size classes.
    pub fn class_count(&self) -> usize {
        self.class_of_vertex.iter().copied().max().unwrap_or(0) + 1
    }

    /// Representative parameter of each size class.
    pub fn class_parameters(&self) -> Vec<f64> {
        (0..self.class_count())
            .map(|c| {
                let v = self
                    .class_of_vertex
                    .iter()
                    .position(|&x| x == c)
                    .expect("classes are contiguous");
                self.s[v]
            })
            .collect()
    }
}

/// Bisection on a strictly monotone clearance function over the open
/// parameter interval.
fn bisect(label: &'static str, f: impl Fn(f64) -> f64) -> Result<f64, PackingError> {
    let (mut lo, mut hi) = (-1.0 + 1e-12, 1.0 - 1e-12);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(PackingError::RootNotBracketed(label));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A packing expanded to a fixed crown count.
#[derive(Debug, Clone)]
pub struct Packing {
    pub case: CaseId,
    pub config: CaseConfig,
    pub cell: Cell,
    pub generators: Vec<Generator>,
    pub crowns: usize,
    /// Dedup and invariance tolerance the expansion ran with.
    pub tol: f64,
    /// Group elements in breadth-first order: by crown, then by word.
    pub elements: Vec<GroupElement>,
    /// Deduplicated horoballs in discovery order.
    pub balls: Vec<PackedBall>,
}

impl Packing {
    /// Solves the case and expands it to the requested crown count.
    ///
    /// `tol` bounds the parameter disagreement accepted when two group
    /// elements reach the same ideal center; a larger disagreement means the
    /// configuration is not invariant under the group and construction
    /// fails.
    pub fn expand(case: CaseId, crowns: usize, tol: f64) -> Result<Packing, PackingError> {
        if crowns > MAX_CROWNS {
            return Err(PackingError::TooManyCrowns {
                requested: crowns,
                max: MAX_CROWNS,
            });
        }
        let config = CaseConfig::solve(case)?;
        let cell = config.tiling.cell();
        let generators = cell.generators()?;
        let elements = orbit::expand_group(&generators, crowns);
        let seeds = config.seed_balls(&cell)?;
        let balls = orbit::expand_balls(&seeds, &config.class_of_vertex, &elements, tol)?;
        Ok(Packing {
            case,
            config,
            cell,
            generators,
            crowns,
            tol,
            elements,
            balls,
        })
    }

    /// Number of group elements per crown.
    pub fn elements_per_crown(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.crowns + 1];
        for e in &self.elements {
            counts[e.crown()] += 1;
        }
        counts
    }

    /// Number of balls first discovered in each crown.
    pub fn balls_per_crown(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.crowns + 1];
        for b in &self.balls {
            counts[b.crown] += 1;
        }
        counts
    }
}
