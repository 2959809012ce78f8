//! Mesh export: tessellated spheroids in OBJ and binary PLY.
//!
//! Each ball record becomes one closed UV-tessellated spheroid about its
//! own axis, sampled on the exact quadric, so every emitted vertex lies on
//! the horosphere to working precision and inside the closed unit ball.
//! Optional wireframes (the ideal sphere and the cell edges, straight
//! chords in this model) help a viewer reproduce the published figures.
//!
//! Output is byte-deterministic for a fixed scene and options.

use nalgebra::Vector3;
use std::fmt::Write as _;

use crate::numeric::rotation_to;
use crate::scene::{BallRecord, SceneDocument};

/// Spheroids flatter than this along their axis are exported as point
/// markers; deep-crown balls shrink below any useful tessellation size.
pub const DEGENERATE_POLAR: f64 = 1e-4;

/// Export failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MeshError {
    #[error("resolution {0} unusable: need an even count of at least 8")]
    BadResolution(usize),
}

/// Tessellation options.
#[derive(Debug, Clone, Copy)]
pub struct MeshOptions {
    /// Segments around each spheroid's equator; even, at least 8.
    pub resolution: usize,
    /// Draw the ideal sphere as three great-circle wireframes.
    pub unit_sphere: bool,
    /// Draw the cell edges as straight chords.
    pub cell_edges: bool,
}

impl MeshOptions {
    fn check(&self) -> Result<(), MeshError> {
        if self.resolution < 8 || self.resolution % 2 != 0 {
            return Err(MeshError::BadResolution(self.resolution));
        }
        Ok(())
    }
}

/// Vertices of one spheroid: poles plus `res/2 - 1` rings of `res` points.
fn spheroid_vertices(b: &BallRecord, res: usize) -> Vec<Vector3<f64>> {
    let stacks = res / 2;
    let rot = rotation_to(&b.axis);
    let mut verts = Vec::with_capacity(res * (stacks - 1) + 2);
    let local = |theta: f64, phi: f64| {
        Vector3::new(
            b.equatorial * theta.sin() * phi.cos(),
            b.equatorial * theta.sin() * phi.sin(),
            b.polar * theta.cos(),
        )
    };
    // Top pole first: the tangency point with the ideal sphere.
    verts.push(b.spheroid_center + rot * local(0.0, 0.0));
    for j in 1..stacks {
        let theta = std::f64::consts::PI * j as f64 / stacks as f64;
        for i in 0..res {
            let phi = std::f64::consts::TAU * i as f64 / res as f64;
            verts.push(b.spheroid_center + rot * local(theta, phi));
        }
    }
    verts.push(b.spheroid_center + rot * local(std::f64::consts::PI, 0.0));
    verts
}

/// Triangles over `spheroid_vertices` indices, outward-oriented.
fn spheroid_triangles(res: usize) -> Vec<[usize; 3]> {
    let stacks = res / 2;
    let ring = |j: usize, i: usize| 1 + (j - 1) * res + (i % res);
    let bottom = 1 + (stacks - 1) * res;
    let mut tris = Vec::with_capacity(2 * res * (stacks - 1));
    for i in 0..res {
        tris.push([0, ring(1, i), ring(1, i + 1)]);
    }
    for j in 1..stacks - 1 {
        for i in 0..res {
            tris.push([ring(j, i), ring(j + 1, i), ring(j + 1, i + 1)]);
            tris.push([ring(j, i), ring(j + 1, i + 1), ring(j, i + 1)]);
        }
    }
    for i in 0..res {
        tris.push([bottom, ring(stacks - 1, i + 1), ring(stacks - 1, i)]);
    }
    tris
}

/// Points of the three great circles of the ideal sphere.
fn unit_sphere_circles(res: usize) -> Vec<Vec<Vector3<f64>>> {
    let circle = |f: fn(f64) -> Vector3<f64>| {
        (0..res)
            .map(|i| f(std::f64::consts::TAU * i as f64 / res as f64))
            .collect::<Vec<_>>()
    };
    vec![
        circle(|t| Vector3::new(t.cos(), t.sin(), 0.0)),
        circle(|t| Vector3::new(t.cos(), 0.0, t.sin())),
        circle(|t| Vector3::new(0.0, t.cos(), t.sin())),
    ]
}

/// Cell edges of the scene's tiling as chord endpoint pairs.
fn cell_edge_segments(scene: &SceneDocument) -> Vec<(Vector3<f64>, Vector3<f64>)> {
    let cell = scene.tiling.cell();
    cell.edges()
        .iter()
        .map(|&(a, b)| {
            let p = &cell.vertices[a];
            let q = &cell.vertices[b];
            (
                Vector3::new(p[1], p[2], p[3]),
                Vector3::new(q[1], q[2], q[3]),
            )
        })
        .collect()
}

/// Renders the scene as Wavefront OBJ text.
///
/// One `o` group per ball named by crown, word, and seed vertex; degenerate
/// spheroids become single-vertex point statements. Wireframes are emitted
/// as polylines in trailing groups.
pub fn obj(scene: &SceneDocument, opts: &MeshOptions) -> Result<String, MeshError> {
    opts.check()?;
    let res = opts.resolution;
    let mut out = String::new();
    let _ = writeln!(out, "# horokit {} scene export", scene.tool_version);
    let _ = writeln!(
        out,
        "# tiling {} case {} crowns {}",
        scene.tiling.id(),
        scene.case.id(),
        scene.crowns
    );
    let mut base = 1usize; // OBJ indices are 1-based
    let tris = spheroid_triangles(res);
    for b in &scene.balls {
        let _ = writeln!(
            out,
            "o ball_c{}_w{}_v{}",
            b.crown,
            b.word_string().replace('.', "-"),
            b.vertex
        );
        if b.polar < DEGENERATE_POLAR {
            let c = b.spheroid_center;
            let _ = writeln!(out, "v {:.9} {:.9} {:.9}", c.x, c.y, c.z);
            let _ = writeln!(out, "p {base}");
            base += 1;
            continue;
        }
        let verts = spheroid_vertices(b, res);
        for v in &verts {
            let _ = writeln!(out, "v {:.9} {:.9} {:.9}", v.x, v.y, v.z);
        }
        for t in &tris {
            let _ = writeln!(out, "f {} {} {}", base + t[0], base + t[1], base + t[2]);
        }
        base += verts.len();
    }
    if opts.unit_sphere {
        let _ = writeln!(out, "o unit_sphere");
        for circle in unit_sphere_circles(res) {
            let mut line = String::from("l");
            for (i, v) in circle.iter().enumerate() {
                let _ = writeln!(out, "v {:.9} {:.9} {:.9}", v.x, v.y, v.z);
                let _ = write!(line, " {}", base + i);
            }
            let _ = write!(line, " {base}"); // close the loop
            base += circle.len();
            let _ = writeln!(out, "{line}");
        }
    }
    if opts.cell_edges {
        let _ = writeln!(out, "o cell_edges");
        for (p, q) in cell_edge_segments(scene) {
            let _ = writeln!(out, "v {:.9} {:.9} {:.9}", p.x, p.y, p.z);
            let _ = writeln!(out, "v {:.9} {:.9} {:.9}", q.x, q.y, q.z);
            let _ = writeln!(out, "l {} {}", base, base + 1);
            base += 2;
        }
    }
    Ok(out)
}

/// Per-class vertex colors, cycled when a case has many classes.
const PALETTE: [[u8; 3]; 4] = [
    [230, 159, 0],
    [86, 180, 233],
    [0, 158, 115],
    [204, 121, 167],
];
/// Wireframe gray.
const WIRE: [u8; 3] = [128, 128, 128];

/// Renders the scene as binary little-endian PLY.
///
/// Vertices carry a per-class color; wireframes are `edge` elements.
pub fn ply(scene: &SceneDocument, opts: &MeshOptions) -> Result<Vec<u8>, MeshError> {
    opts.check()?;
    let res = opts.resolution;

    let mut verts: Vec<(Vector3<f64>, [u8; 3])> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    let tris = spheroid_triangles(res);
    for b in &scene.balls {
        let color = PALETTE[b.class % PALETTE.len()];
        let base = verts.len();
        if b.polar < DEGENERATE_POLAR {
            verts.push((b.spheroid_center, color));
            continue;
        }
        for v in spheroid_vertices(b, res) {
            verts.push((v, color));
        }
        for t in &tris {
            faces.push([base + t[0], base + t[1], base + t[2]]);
        }
    }
    if opts.unit_sphere {
        for circle in unit_sphere_circles(res) {
            let base = verts.len();
            let n = circle.len();
            for v in circle {
                verts.push((v, WIRE));
            }
            for i in 0..n {
                edges.push((base + i, base + (i + 1) % n));
            }
        }
    }
    if opts.cell_edges {
        for (p, q) in cell_edge_segments(scene) {
            let base = verts.len();
            verts.push((p, WIRE));
            verts.push((q, WIRE));
            edges.push((base, base + 1));
        }
    }

    let mut out = Vec::new();
    out.extend_from_slice(b"ply\n");
    out.extend_from_slice(b"format binary_little_endian 1.0\n");
    out.extend_from_slice(format!("comment horokit {} scene export\n", scene.tool_version).as_bytes());
    out.extend_from_slice(
        format!(
            "comment tiling {} case {} crowns {}\n",
            scene.tiling.id(),
            scene.case.id(),
            scene.crowns
        )
        .as_bytes(),
    );
    out.extend_from_slice(format!("element vertex {}\n", verts.len()).as_bytes());
    out.extend_from_slice(b"property float x\nproperty float y\nproperty float z\n");
    out.extend_from_slice(b"property uchar red\nproperty uchar green\nproperty uchar blue\n");
    out.extend_from_slice(format!("element face {}\n", faces.len()).as_bytes());
    out.extend_from_slice(b"property list uchar int vertex_indices\n");
    out.extend_from_slice(format!("element edge {}\n", edges.len()).as_bytes());
    out.extend_from_slice(b"property int vertex1\nproperty int vertex2\n");
    out.extend_from_slice(b"end_header\n");
    for (v, color) in &verts {
        for c in [v.x, v.y, v.z] {
            out.extend_from_slice(&(c as f32).to_le_bytes());
        }
        out.extend_from_slice(color);
    }
    for f in &faces {
        out.push(3u8);
        for &i in f {
            out.extend_from_slice(&(i as i32).to_le_bytes());
        }
    }
    for &(a, b) in &edges {
        out.extend_from_slice(&(a as i32).to_le_bytes());
        out.extend_from_slice(&(b as i32).to_le_bytes());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::{CaseId, Packing};
    use crate::scene::SceneDocument;
    use std::collections::HashMap;

    fn scene(case: CaseId, crowns: usize) -> SceneDocument {
        let packing = Packing::expand(case, crowns, 1e-9).unwrap();
        SceneDocument::from_packing(&packing, 0, true)
    }

    fn opts(res: usize) -> MeshOptions {
        MeshOptions {
            resolution: res,
            unit_sphere: false,
            cell_edges: false,
        }
    }

    #[test]
    fn bad_resolutions_are_rejected() {
        let doc = scene(CaseId::Bf, 0);
        for res in [0, 4, 6, 9, 15] {
            assert_eq!(obj(&doc, &opts(res)), Err(MeshError::BadResolution(res)));
            assert_eq!(ply(&doc, &opts(res)), Err(MeshError::BadResolution(res)));
        }
    }

    #[test]
    fn vertex_count_matches_the_uv_formula() {
        let res = 16;
        let doc = scene(CaseId::Bf, 0);
        let text = obj(&doc, &opts(res)).unwrap();
        let v_lines = text.lines().filter(|l| l.starts_with("v ")).count();
        assert_eq!(v_lines, doc.balls.len() * (res * (res / 2 - 1) + 2));
        assert_eq!(doc.balls.len(), 4);
    }

    #[test]
    fn every_spheroid_is_watertight() {
        let res = 12;
        let tris = spheroid_triangles(res);
        let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &tris {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        assert!(edge_count.values().all(|&c| c == 2));
        let verts = res * (res / 2 - 1) + 2;
        let e = edge_count.len() as isize;
        let f = tris.len() as isize;
        // Euler characteristic of a sphere.
        assert_eq!(verts as isize - e + f, 2);
    }

    #[test]
    fn surface_samples_satisfy_their_horosphere_equation() {
        let doc = scene(CaseId::Maximal, 1);
        let packing = Packing::expand(CaseId::Maximal, 1, 1e-9).unwrap();
        for (record, packed) in doc.balls.iter().zip(noting_order(&doc, &packing)) {
            for v in spheroid_vertices(record, 16) {
                assert!(
                    packed.chart_value(&v).abs() <= 1e-9,
                    "vertex off its horosphere"
                );
                assert!(v.norm() <= 1.0 + 1e-12, "vertex outside the closed ball");
            }
        }
    }

    /// Balls of the packing in the scene's record order.
    fn noting_order<'a>(
        doc: &SceneDocument,
        packing: &'a Packing,
    ) -> Vec<&'a crate::horoball::Horoball> {
        doc.balls
            .iter()
            .map(|r| {
                &packing
                    .balls
                    .iter()
                    .find(|pb| pb.crown == r.crown && pb.word == r.word && pb.vertex == r.vertex)
                    .unwrap()
                    .ball
            })
            .collect()
    }

    #[test]
    fn exports_are_byte_deterministic() {
        let doc = scene(CaseId::Balanced, 1);
        let o = MeshOptions {
            resolution: 12,
            unit_sphere: true,
            cell_edges: true,
        };
        assert_eq!(obj(&doc, &o).unwrap(), obj(&doc, &o).unwrap());
        assert_eq!(ply(&doc, &o).unwrap(), ply(&doc, &o).unwrap());
    }

    #[test]
    fn degenerate_spheroids_become_point_markers() {
        let mut doc = scene(CaseId::Bf, 0);
        doc.balls[2].polar = 5e-5;
        let text = obj(&doc, &opts(8)).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("p ")).count(), 1);
        let expected = 3 * (8 * 3 + 2) + 1;
        assert_eq!(
            text.lines().filter(|l| l.starts_with("v ")).count(),
            expected
        );
    }

    #[test]
    fn wireframes_add_polylines_and_edges() {
        let doc = scene(CaseId::Bf, 0);
        let o = MeshOptions {
            resolution: 8,
            unit_sphere: true,
            cell_edges: true,
        };
        let text = obj(&doc, &o).unwrap();
        // Three great circles plus six tetra edges.
        assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 3 + 6);

        let bytes = ply(&doc, &o).unwrap();
        let header_end = bytes
            .windows(11)
            .position(|w| w == b"end_header\n")
            .unwrap()
            + 11;
        let header = std::str::from_utf8(&bytes[..header_end]).unwrap();
        assert!(header.contains(&format!("element edge {}", 3 * 8 + 6)));

        // Payload length must match the header's element counts exactly.
        let verts = 4 * (8 * 3 + 2) + 3 * 8 + 2 * 6;
        let faces = 4 * 2 * 8 * 3;
        let edges = 3 * 8 + 6;
        assert_eq!(header.matches("element vertex").count(), 1);
        assert!(header.contains(&format!("element vertex {verts}")));
        assert!(header.contains(&format!("element face {faces}")));
        let payload = bytes.len() - header_end;
        assert_eq!(payload, verts * 15 + faces * 13 + edges * 8);
    }
}
