//! Scalar numerics shared across the crate.
//!
//! Provides the Lobachevsky function used for closed-form hyperbolic
//! volumes, a Gauss-Legendre rule backing it, deterministic seed derivation
//! for stratified Monte-Carlo streams, and Euclidean tetrahedron utilities
//! (volume, red refinement, uniform sampling) used by the integrators.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{Rotation3, Unit, Vector3};
use rand::Rng;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Nodes are found by Newton iteration on the Legendre polynomial from the
/// classical Chebyshev initial guesses; the rule integrates polynomials of
/// degree `2n - 1` exactly. Panics if `n == 0`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0, "quadrature rule needs at least one node");
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_{n-1}(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

fn gl32() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(32))
}

/// Lobachevsky function `L(t) = -integral_0^t ln|2 sin u| du`.
///
/// Odd and pi-periodic; evaluated on the reduced range `[0, pi/2]` by
/// splitting off the logarithmic singularity analytically,
/// `L(t) = -t (ln(2t) - 1) - integral_0^t ln(sin u / u) du`,
/// and integrating the remaining analytic factor with a fixed 32-node
/// Gauss-Legendre rule. Accuracy is near machine precision on the whole line.
pub fn lobachevsky(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    if r <= PI / 2.0 {
        lobachevsky_reduced(r)
    } else {
        -lobachevsky_reduced(PI - r)
    }
}

/// `L` on `[0, pi/2]` via the analytic singularity split.
fn lobachevsky_reduced(t: f64) -> f64 {
    if t < 1e-300 {
        return 0.0;
    }
    let mut smooth = 0.0;
    for &(x, w) in gl32() {
        // Map node from [-1, 1] to (0, t); sinc is positive there.
        let u = 0.5 * t * (x + 1.0);
        smooth += w * (u.sin() / u).ln();
    }
    smooth *= 0.5 * t;
    -(t * ((2.0 * t).ln() - 1.0)) - smooth
}

/// Volume of the ideal hyperbolic tetrahedron with vertex dihedral angles
/// `alpha + beta + gamma = pi`.
pub fn ideal_tetrahedron_volume(alpha: f64, beta: f64, gamma: f64) -> f64 {
    lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma)
}

/// Derives an independent RNG seed for stream `index` of a base `seed`.
///
/// A single splitmix64 finalizer applied to a per-index state: bijective in
/// the state, so distinct indices of one seed never collide, and the
/// avalanche mixing decorrelates neighboring indices. Used to make
/// stratified Monte-Carlo results independent of thread scheduling.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Rotation taking the north pole `(0, 0, 1)` to the unit direction `n`.
///
/// Deterministic for every input, including the antipodal case, which maps
/// to the half-turn about the x-axis.
pub fn rotation_to(n: &Vector3<f64>) -> Rotation3<f64> {
    let n = n.normalize();
    let c = n.z;
    if 1.0 - c < 1e-14 {
        return Rotation3::identity();
    }
    if 1.0 + c < 1e-14 {
        return Rotation3::from_axis_angle(&Vector3::x_axis(), PI);
    }
    let axis = Unit::new_normalize(Vector3::new(-n.y, n.x, 0.0));
    Rotation3::from_axis_angle(&axis, c.acos())
}

/// Signed Euclidean volume of the tetrahedron `v`, times orientation.
pub fn tet_volume_signed(v: &[Vector3<f64>; 4]) -> f64 {
    (v[1] - v[0]).cross(&(v[2] - v[0])).dot(&(v[3] - v[0])) / 6.0
}

/// Euclidean volume of the tetrahedron `v`.
pub fn tet_volume(v: &[Vector3<f64>; 4]) -> f64 {
    tet_volume_signed(v).abs()
}

/// Red refinement of a tetrahedron into eight children of equal volume.
///
/// Four corner cells plus a four-cell split of the central octahedron along
/// the `m02`-`m13` diagonal (Bey's scheme); children exactly tile the parent
/// and each has one eighth of its volume.
pub fn subdivide_tet(v: &[Vector3<f64>; 4]) -> [[Vector3<f64>; 4]; 8] {
    let m = |i: usize, j: usize| (v[i] + v[j]) / 2.0;
    let (m01, m02, m03) = (m(0, 1), m(0, 2), m(0, 3));
    let (m12, m13, m23) = (m(1, 2), m(1, 3), m(2, 3));
    [
        [v[0], m01, m02, m03],
        [m01, v[1], m12, m13],
        [m02, m12, v[2], m23],
        [m03, m13, m23, v[3]],
        [m02, m13, m01, m03],
        [m02, m13, m03, m23],
        [m02, m13, m23, m12],
        [m02, m13, m12, m01],
    ]
}

/// Uniform sample from the tetrahedron `v`.
///
/// Sorted-uniform barycentric coordinates: order statistics of three U(0,1)
/// draws give a uniform point of the 3-simplex.
pub fn sample_in_tet<R: Rng + ?Sized>(rng: &mut R, v: &[Vector3<f64>; 4]) -> Vector3<f64> {
    let mut u = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
    u.sort_by(f64::total_cmp);
    let b = [u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]];
    v[0] * b[0] + v[1] * b[1] + v[2] * b[2] + v[3] * b[3]
}
