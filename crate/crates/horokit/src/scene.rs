//! The `scene-v1` document: a line-oriented text snapshot of a packing.
//!
//! The format is canonical: fields appear in a fixed order, numbers are
//! written with Rust's shortest round-trip formatting, and records are
//! sorted by (crown, word). Writing is therefore byte-deterministic and
//! `parse(write(doc)) == doc` holds field for field, bit for bit.
//!
//! The parser is strict. It accepts exactly the canonical shape, never
//! panics on foreign input, and reports the first offending line.

use nalgebra::Vector3;
use std::fmt::Write as _;

use crate::coxeter::Tiling;
use crate::lorentz::{Mat4, Vec4};
use crate::packing::{CaseId, Packing};

/// Magic first line of every scene document.
pub const HEADER: &str = "scene-v1";
/// The only supported model tag.
pub const MODEL: &str = "beltrami-klein";

/// Parse failures, pointing at the first bad line (1-based).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SceneError {
    #[error("line {line}: expected `{expected}`")]
    Expected { line: usize, expected: &'static str },
    #[error("line {line}: malformed {what}")]
    Malformed { line: usize, what: &'static str },
    #[error("line {line}: {what} out of range")]
    OutOfRange { line: usize, what: &'static str },
    #[error("line {line}: records not sorted by (crown, word)")]
    Unsorted { line: usize },
    #[error("document ends before the `end` line")]
    Truncated,
    #[error("line {line}: trailing content after `end`")]
    TrailingContent { line: usize },
}

/// One horoball record: the ball data plus its spheroid in the chart.
#[derive(Debug, Clone, PartialEq)]
pub struct BallRecord {
    pub crown: usize,
    /// Generator word, empty for the identity.
    pub word: Vec<u8>,
    /// Cell vertex index of the seed this ball is an image of.
    pub vertex: usize,
    /// Parameter class of that vertex.
    pub class: usize,
    pub s: f64,
    /// Canonical ideal center, first coordinate 1.
    pub center: Vec4,
    pub spheroid_center: Vector3<f64>,
    /// Unit axis from the spheroid center toward the ideal center.
    pub axis: Vector3<f64>,
    pub equatorial: f64,
    pub polar: f64,
}

impl BallRecord {
    /// Dot-separated 1-based word, `-` for the identity.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "-".to_string();
        }
        self.word
            .iter()
            .map(|g| (g + 1).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// A complete scene: provenance, group data, cell, and ball records.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneDocument {
    /// Version of the tool that wrote the file.
    pub tool_version: String,
    pub tiling: Tiling,
    pub case: CaseId,
    pub crowns: usize,
    pub tol: f64,
    pub seed: u64,
    /// Whether a viewer should draw the ideal sphere.
    pub unit_sphere: bool,
    /// Solved horoball parameters by class, the derived-constant log.
    pub params: Vec<f64>,
    pub generators: Vec<Mat4>,
    /// Cell vertices, canonical ideal points.
    pub vertices: Vec<Vec4>,
    pub balls: Vec<BallRecord>,
}

impl SceneDocument {
    /// Snapshots a packing. `seed` is recorded for provenance only.
    pub fn from_packing(packing: &Packing, seed: u64, unit_sphere: bool) -> SceneDocument {
        let mut balls: Vec<BallRecord> = packing
            .balls
            .iter()
            .map(|pb| {
                let b = &pb.ball;
                let c = b.center();
                BallRecord {
                    crown: pb.crown,
                    word: pb.word.clone(),
                    vertex: pb.vertex,
                    class: pb.class,
                    s: b.s(),
                    center: c,
                    spheroid_center: b.spheroid_center(),
                    axis: Vector3::new(c[1], c[2], c[3]),
                    equatorial: b.equatorial_semi_axis(),
                    polar: b.polar_semi_axis(),
                }
            })
            .collect();
        // Vertex breaks ties between seeds sharing a word (the identity).
        balls.sort_by(|a, b| (a.crown, &a.word, a.vertex).cmp(&(b.crown, &b.word, b.vertex)));
        SceneDocument {
            tool_version: crate::VERSION.to_string(),
            tiling: packing.config.tiling,
            case: packing.case,
            crowns: packing.crowns,
            tol: packing.tol,
            seed,
            unit_sphere,
            params: packing.config.class_parameters(),
            generators: packing.generators.iter().map(|g| g.matrix).collect(),
            vertices: packing.cell.vertices.clone(),
            balls,
        }
    }

    /// Renders the canonical text form.
    pub fn write(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "tool horokit {}", self.tool_version);
        let _ = writeln!(out, "model {MODEL}");
        let _ = writeln!(out, "tiling {}", self.tiling.id());
        let _ = writeln!(out, "case {}", self.case.id());
        let _ = writeln!(out, "crowns {}", self.crowns);
        let _ = writeln!(out, "tol {}", self.tol);
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "unit-sphere {}", self.unit_sphere);
        let _ = writeln!(out, "params {}", self.params.len());
        for (k, s) in self.params.iter().enumerate() {
            let _ = writeln!(out, "param {k} {s}");
        }
        let _ = writeln!(out, "generators {}", self.generators.len());
        for (k, m) in self.generators.iter().enumerate() {
            let mut line = format!("generator {k}");
            for r in 0..4 {
                for c in 0..4 {
                    let _ = write!(line, " {}", m[(r, c)]);
                }
            }
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "vertices {}", self.vertices.len());
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "vertex {k} {} {} {} {}", v[0], v[1], v[2], v[3]);
        }
        let _ = writeln!(out, "balls {}", self.balls.len());
        for b in &self.balls {
            let _ = writeln!(
                out,
                "ball {} {} {} {} {} {} {} {} {} {} {} {} {} {} {} {} {}",
                b.crown,
                b.word_string(),
                b.vertex,
                b.class,
                b.s,
                b.center[0],
                b.center[1],
                b.center[2],
                b.center[3],
                b.spheroid_center.x,
                b.spheroid_center.y,
                b.spheroid_center.z,
                b.axis.x,
                b.axis.y,
                b.axis.z,
                b.equatorial,
                b.polar,
            );
        }
        let _ = writeln!(out, "end");
        out
    }
}

/// Parses a canonical scene document.
pub fn parse(text: &str) -> Result<SceneDocument, SceneError> {
    let mut lines = Cursor::new(text);

    lines.literal(HEADER, "scene-v1 header")?;

    let tool = lines.tagged("tool")?;
    let tool_version = match tool.strip_prefix("horokit ") {
        Some(v) if !v.is_empty() && v.split_whitespace().count() == 1 => v.to_string(),
        _ => {
            return Err(SceneError::Malformed {
                line: lines.line,
                what: "tool line",
            })
        }
    };

    let model = lines.tagged("model")?;
    if model != MODEL {
        return Err(SceneError::Malformed {
            line: lines.line,
            what: "model tag",
        });
    }

    let tiling = Tiling::from_id(lines.tagged("tiling")?).ok_or(SceneError::Malformed {
        line: lines.line,
        what: "tiling id",
    })?;
    let case = CaseId::from_id(lines.tagged("case")?).ok_or(SceneError::Malformed {
        line: lines.line,
        what: "case id",
    })?;
    if case.tiling() != tiling {
        return Err(SceneError::Malformed {
            line: lines.line,
            what: "case for this tiling",
        });
    }

    let crowns: usize = lines.value("crowns")?;
    let tol: f64 = lines.value("tol")?;
    if !tol.is_finite() || tol <= 0.0 {
        return Err(SceneError::OutOfRange {
            line: lines.line,
            what: "tol",
        });
    }
    let seed: u64 = lines.value("seed")?;
    let unit_sphere: bool = lines.value("unit-sphere")?;

    let n_params: usize = lines.counted("params", 64)?;
    let mut params = Vec::with_capacity(n_params);
    for k in 0..n_params {
        let rest = lines.tagged("param")?;
        let mut f = Fields::new(rest, lines.line);
        f.index(k, "param index")?;
        let s = f.f64("param value")?;
        if !(-1.0..1.0).contains(&s) {
            return Err(SceneError::OutOfRange {
                line: lines.line,
                what: "param value",
            });
        }
        f.finish("param line")?;
        params.push(s);
    }

    let n_gens: usize = lines.counted("generators", 64)?;
    let mut generators = Vec::with_capacity(n_gens);
    for k in 0..n_gens {
        let rest = lines.tagged("generator")?;
        let mut f = Fields::new(rest, lines.line);
        f.index(k, "generator index")?;
        let mut m = Mat4::zeros();
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] = f.f64("matrix entry")?;
            }
        }
        f.finish("generator line")?;
        generators.push(m);
    }

    let n_verts: usize = lines.counted("vertices", 64)?;
    let mut vertices = Vec::with_capacity(n_verts);
    for k in 0..n_verts {
        let rest = lines.tagged("vertex")?;
        let mut f = Fields::new(rest, lines.line);
        f.index(k, "vertex index")?;
        let v = Vec4::new(
            f.f64("vertex coordinate")?,
            f.f64("vertex coordinate")?,
            f.f64("vertex coordinate")?,
            f.f64("vertex coordinate")?,
        );
        f.finish("vertex line")?;
        vertices.push(v);
    }

    let n_balls: usize = lines.counted("balls", 1 << 24)?;
    let mut balls: Vec<BallRecord> = Vec::with_capacity(n_balls.min(1 << 16));
    for _ in 0..n_balls {
        let rest = lines.tagged("ball")?;
        let mut f = Fields::new(rest, lines.line);
        let crown = f.usize("crown")?;
        let word = f.word(n_gens)?;
        let vertex = f.usize("vertex index")?;
        if vertex >= n_verts {
            return Err(SceneError::OutOfRange {
                line: lines.line,
                what: "vertex index",
            });
        }
        let class = f.usize("class index")?;
        if class >= n_params {
            return Err(SceneError::OutOfRange {
                line: lines.line,
                what: "class index",
            });
        }
        let s = f.f64("ball parameter")?;
        let center = Vec4::new(
            f.f64("center coordinate")?,
            f.f64("center coordinate")?,
            f.f64("center coordinate")?,
            f.f64("center coordinate")?,
        );
        let spheroid_center = Vector3::new(
            f.f64("spheroid coordinate")?,
            f.f64("spheroid coordinate")?,
            f.f64("spheroid coordinate")?,
        );
        let axis = Vector3::new(
            f.f64("axis coordinate")?,
            f.f64("axis coordinate")?,
            f.f64("axis coordinate")?,
        );
        let equatorial = f.f64("equatorial semi-axis")?;
        let polar = f.f64("polar semi-axis")?;
        f.finish("ball line")?;

        let record = BallRecord {
            crown,
            word,
            vertex,
            class,
            s,
            center,
            spheroid_center,
            axis,
            equatorial,
            polar,
        };
        if let Some(prev) = balls.last() {
            // Strictly increasing: equal keys cannot appear in a valid scene.
            if (prev.crown, &prev.word, prev.vertex) >= (record.crown, &record.word, record.vertex)
            {
                return Err(SceneError::Unsorted { line: lines.line });
            }
        }
        balls.push(record);
    }

    lines.literal("end", "end line")?;
    if let Some(extra) = lines.next() {
        if !extra.is_empty() || lines.next().is_some() {
            return Err(SceneError::TrailingContent { line: lines.line });
        }
    }

    Ok(SceneDocument {
        tool_version,
        tiling,
        case,
        crowns,
        tol,
        seed,
        unit_sphere,
        params,
        generators,
        vertices,
        balls,
    })
}

/// Line iterator tracking 1-based position.
struct Cursor<'a> {
    inner: std::str::Split<'a, char>,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            inner: text.split('\n'),
            line: 0,
        }
    }

    fn next(&mut self) -> Option<&'a str> {
        self.line += 1;
        self.inner.next()
    }

    fn expect(&mut self, expected: &'static str) -> Result<&'a str, SceneError> {
        match self.next() {
            Some(l) => Ok(l),
            None => Err(SceneError::Truncated),
        }
        .and_then(|l| {
            if l.is_empty() && expected != "scene-v1 header" {
                Err(SceneError::Expected {
                    line: self.line,
                    expected,
                })
            } else {
                Ok(l)
            }
        })
    }

    fn literal(&mut self, want: &'static str, expected: &'static str) -> Result<(), SceneError> {
        let l = self.expect(expected)?;
        if l == want {
            Ok(())
        } else {
            Err(SceneError::Expected {
                line: self.line,
                expected,
            })
        }
    }

    /// A `tag rest` line; returns `rest`.
    fn tagged(&mut self, tag: &'static str) -> Result<&'a str, SceneError> {
        let l = self.expect(tag)?;
        match l.split_once(' ') {
            Some((t, rest)) if t == tag && !rest.is_empty() => Ok(rest),
            _ => Err(SceneError::Expected {
                line: self.line,
                expected: tag,
            }),
        }
    }

    /// A `tag value` line with a single parsed value.
    fn value<T: std::str::FromStr>(&mut self, tag: &'static str) -> Result<T, SceneError> {
        let rest = self.tagged(tag)?;
        if rest.contains(' ') {
            return Err(SceneError::Malformed {
                line: self.line,
                what: tag,
            });
        }
        rest.parse().map_err(|_| SceneError::Malformed {
            line: self.line,
            what: tag,
        })
    }

    /// A `tag count` line with an upper bound guarding allocation.
    fn counted(&mut self, tag: &'static str, max: usize) -> Result<usize, SceneError> {
        let n: usize = self.value(tag)?;
        if n > max {
            return Err(SceneError::OutOfRange {
                line: self.line,
                what: tag,
            });
        }
        Ok(n)
    }
}

/// Whitespace-separated fields of one line.
struct Fields<'a> {
    inner: std::str::Split<'a, char>,
    line: usize,
}

impl<'a> Fields<'a> {
    fn new(rest: &'a str, line: usize) -> Fields<'a> {
        Fields {
            inner: rest.split(' '),
            line,
        }
    }

    fn raw(&mut self, what: &'static str) -> Result<&'a str, SceneError> {
        match self.inner.next() {
            Some(t) if !t.is_empty() => Ok(t),
            _ => Err(SceneError::Malformed {
                line: self.line,
                what,
            }),
        }
    }

    fn usize(&mut self, what: &'static str) -> Result<usize, SceneError> {
        self.raw(what)?.parse().map_err(|_| SceneError::Malformed {
            line: self.line,
            what,
        })
    }

    fn index(&mut self, want: usize, what: &'static str) -> Result<(), SceneError> {
        if self.usize(what)? == want {
            Ok(())
        } else {
            Err(SceneError::Malformed {
                line: self.line,
                what,
            })
        }
    }

    fn f64(&mut self, what: &'static str) -> Result<f64, SceneError> {
        let t = self.raw(what)?;
        // Reject the textual specials `str::parse` would accept.
        if t.chars()
            .any(|c| !(c.is_ascii_digit() || matches!(c, '-' | '+' | '.' | 'e' | 'E')))
        {
            return Err(SceneError::Malformed {
                line: self.line,
                what,
            });
        }
        let v: f64 = t.parse().map_err(|_| SceneError::Malformed {
            line: self.line,
            what,
        })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(SceneError::OutOfRange {
                line: self.line,
                what,
            })
        }
    }

    /// A dotted 1-based word or `-`, into 0-based letters below `n_gens`.
    fn word(&mut self, n_gens: usize) -> Result<Vec<u8>, SceneError> {
        let t = self.raw("word")?;
        if t == "-" {
            return Ok(Vec::new());
        }
        let mut word = Vec::new();
        for part in t.split('.') {
            let g: usize = part.parse().map_err(|_| SceneError::Malformed {
                line: self.line,
                what: "word letter",
            })?;
            if g == 0 || g > n_gens || word.len() >= 256 {
                return Err(SceneError::OutOfRange {
                    line: self.line,
                    what: "word letter",
                });
            }
            word.push((g - 1) as u8);
        }
        Ok(word)
    }

    fn finish(&mut self, what: &'static str) -> Result<(), SceneError> {
        if self.inner.next().is_none() {
            Ok(())
        } else {
            Err(SceneError::Malformed {
                line: self.line,
                what,
            })
        }
    }
}
