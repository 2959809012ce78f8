//! Horoballs and horospheres in the Beltrami-Klein model.
//!
//! A horoball is encoded by its ideal center `c` (canonical, on the unit
//! sphere) and the parameter `s` in `(-1, 1)`: the ball tangent to the
//! sphere at `c` whose boundary crosses the diameter through `c` at
//! parameter `s`, so `s -> 1` shrinks the ball to the center and `s -> -1`
//! grows it toward the whole space. In the Euclidean picture of the model a
//! horoball is a spheroid with polar axis along `c`, equatorial semi-axis
//! `sqrt((1-s)/2)`, polar semi-axis `(1-s)/2`, and center `((1+s)/2) c`.
//!
//! Many contact quantities reduce to the ratio `rho = (1-s)/(1+s)`, which
//! scales multiplicatively under the one-parameter family of concentric
//! horoballs; tangency thresholds between balls depend only on the product
//! of their `rho` values and the Lorentz product of their centers.

use nalgebra::{Rotation3, Vector3};
use thiserror::Error;

use crate::lorentz::{
    bilinear, canonicalize, classify, quadratic, LorentzError, Mat4, PointClass, Vec4,
};
use crate::numeric::rotation_to;
use crate::{DEFAULT_TOL, RESIDUAL_TOL};

/// Errors from horoball construction and queries.
#[derive(Debug, Error, PartialEq)]
pub enum HoroballError {
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error("horoball center must be ideal, got a {0:?} point")]
    CenterNotIdeal(PointClass),
    #[error("horoball parameter s must lie strictly between -1 and 1, got {0}")]
    ParameterOutOfRange(f64),
    #[error("degenerate horoball query: {0}")]
    Degenerate(&'static str),
}

/// A horoball: ideal center in canonical coordinates and size parameter `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horoball {
    center: Vec4,
    s: f64,
}

/// Relation of two horoballs or of a horoball and a plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contact {
    Disjoint,
    /// Tangency, with the point of contact in canonical coordinates.
    Tangent(Vec4),
    Overlapping,
}

impl Horoball {
    /// Creates the horoball centered at the ideal point `center` with
    /// parameter `s`.
    pub fn new(center: &Vec4, s: f64) -> Result<Horoball, HoroballError> {
        let class = classify(center, DEFAULT_TOL)?;
        if class != PointClass::Ideal {
            return Err(HoroballError::CenterNotIdeal(class));
        }
        if !s.is_finite() || s <= -1.0 || s >= 1.0 {
            return Err(HoroballError::ParameterOutOfRange(s));
        }
        let mut center = canonicalize(center)?;
        // Snap the canonical center exactly onto the unit sphere so that
        // derived spheroid data is consistent to machine precision.
        let n = Vector3::new(center[1], center[2], center[3]);
        let norm = n.norm();
        if norm == 0.0 {
            return Err(HoroballError::Degenerate("center has no direction"));
        }
        center[1] /= norm;
        center[2] /= norm;
        center[3] /= norm;
        center[0] = 1.0;
        Ok(Horoball { center, s })
    }

    /// Canonical ideal center `(1, n)` with `|n| = 1`.
    pub fn center(&self) -> Vec4 {
        self.center
    }

    /// Unit direction of the center on the model sphere.
    pub fn direction(&self) -> Vector3<f64> {
        Vector3::new(self.center[1], self.center[2], self.center[3])
    }

    /// Size parameter `s`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Contact ratio `rho = (1-s)/(1+s)`.
    pub fn rho(&self) -> f64 {
        (1.0 - self.s) / (1.0 + self.s)
    }

    /// Euclidean center of the model spheroid.
    pub fn spheroid_center(&self) -> Vector3<f64> {
        self.direction() * ((1.0 + self.s) / 2.0)
    }

    /// Equatorial semi-axis of the model spheroid.
    pub fn equatorial_semi_axis(&self) -> f64 {
        ((1.0 - self.s) / 2.0).sqrt()
    }

    /// Polar semi-axis of the model spheroid (along the center direction).
    pub fn polar_semi_axis(&self) -> f64 {
        (1.0 - self.s) / 2.0
    }

    /// Defining value function: negative inside the ball, zero on the
    /// horosphere, positive outside.
    ///
    /// For the canonical representative `x` of a ray this is
    /// `(1-s) <x,x> + (1+s) (x0 - n.x)^2`, vanishing on the spheroid.
    pub fn value(&self, x: &Vec4) -> Result<f64, HoroballError> {
        let x = canonicalize(x)?;
        let support = x[0] * self.center[0]
            - (x[1] * self.center[1] + x[2] * self.center[2] + x[3] * self.center[3]);
        Ok((1.0 - self.s) * quadratic(&x) + (1.0 + self.s) * support * support)
    }

    /// Whether the canonical point `x` lies in the closed horoball.
    pub fn contains(&self, x: &Vec4, tol: f64) -> Result<bool, HoroballError> {
        Ok(self.value(x)? <= tol)
    }

    /// The value function at the chart point `(1, p)`, skipping
    /// canonicalization; negative strictly inside the ball.
    ///
    /// Hot path for Monte-Carlo sampling, where points are built in the
    /// chart and already canonical.
    pub fn chart_value(&self, p: &Vector3<f64>) -> f64 {
        let support = 1.0 - (p.x * self.center[1] + p.y * self.center[2] + p.z * self.center[3]);
        (1.0 - self.s) * (p.norm_squared() - 1.0) + (1.0 + self.s) * support * support
    }

    /// Point of the horosphere at spherical coordinates on the spheroid.
    ///
    /// `theta` is measured from the center direction (`theta = 0` is the
    /// ideal center itself, `theta = pi` the point nearest the model
    /// origin), `phi` the azimuth around the axis.
    pub fn surface_point(&self, theta: f64, phi: f64) -> Vec4 {
        let a = self.equatorial_semi_axis();
        let p = self.polar_semi_axis();
        let local = Vector3::new(
            a * theta.sin() * phi.cos(),
            a * theta.sin() * phi.sin(),
            (1.0 + self.s) / 2.0 + p * theta.cos(),
        );
        let world = rotation_to(&self.direction()) * local;
        Vec4::new(1.0, world.x, world.y, world.z)
    }

    /// Exit parameter of the chord from the center toward ideal `q`.
    ///
    /// On the straight segment `(1-t) c + t q` in the Klein chart, the
    /// horosphere is crossed exactly once, at
    /// `t = 2(1-s) / (2(1-s) - (1+s) <c,q>)`.
    pub fn chord_exit(&self, q: &Vec4) -> Result<f64, HoroballError> {
        let class = classify(q, DEFAULT_TOL)?;
        if class != PointClass::Ideal {
            return Err(HoroballError::Degenerate(
                "chord target must be an ideal point",
            ));
        }
        let q = canonicalize(q)?;
        let cq = bilinear(&self.center, &q);
        if cq.abs() <= RESIDUAL_TOL {
            return Err(HoroballError::Degenerate(
                "chord target coincides with the horoball center",
            ));
        }
        let num = 2.0 * (1.0 - self.s);
        Ok(num / (num - (1.0 + self.s) * cq))
    }

    /// Exit point of the chord toward ideal `q`, in canonical coordinates.
    pub fn chord_exit_point(&self, q: &Vec4) -> Result<Vec4, HoroballError> {
        let t = self.chord_exit(q)?;
        let q = canonicalize(q)?;
        Ok(self.center * (1.0 - t) + q * t)
    }

    /// Applies a Lorentz isometry, returning the transformed horoball.
    ///
    /// The center maps projectively; the parameter of the image is recovered
    /// from the image `a'` of the apex point (the surface point antipodal to
    /// the center along the axis): with `Q = <a',a'>` and
    /// `T = (a'0 - n'.a')^2`, the new parameter is `s' = (Q + T)/(Q - T)`,
    /// which is exact and avoids cancellation for small balls.
    pub fn transform(&self, m: &Mat4) -> Result<Horoball, HoroballError> {
        let center = canonicalize(&(m * self.center))?;
        let n = Vector3::new(center[1], center[2], center[3]).normalize();

        // Apex: theta = pi surface point, the deepest point of the ball.
        let apex = self.surface_point(std::f64::consts::PI, 0.0);
        let apex = canonicalize(&(m * apex))?;
        let q = quadratic(&apex);
        let support = apex[0] - (apex[1] * n.x + apex[2] * n.y + apex[3] * n.z);
        let t = support * support;
        let s_new = (q + t) / (q - t);
        Horoball::new(&Vec4::new(1.0, n.x, n.y, n.z), s_new)
    }

    /// Signed clearance between two horoballs along the chord joining their
    /// centers, in chord-parameter units: positive when disjoint, zero at
    /// tangency, negative when the interiors overlap.
    ///
    /// For horoballs the extremal approach is attained on this chord (the
    /// common asymptotic geodesic), so the sign is an exact classifier. The
    /// smooth dependence on the parameters makes this the natural residual
    /// for root finding.
    pub fn chord_gap(&self, other: &Horoball) -> Result<f64, HoroballError> {
        if bilinear(&self.center, &other.center).abs() <= RESIDUAL_TOL {
            return Err(HoroballError::Degenerate(
                "horoballs are concentric; contact is undefined",
            ));
        }
        let t1 = self.chord_exit(&other.center)?;
        let t2 = 1.0 - other.chord_exit(&self.center)?;
        Ok(t2 - t1)
    }

    /// Contact relation of two horoballs with distinct ideal centers.
    ///
    /// Measured along the chord joining the centers: this ball exits at
    /// `t1`, the other (parametrized from the far end) at `1 - t2'`, and the
    /// signs of `t1 - t2` classify disjoint, tangent, and overlapping. The
    /// tangency tolerance is interpreted on the chord parameter.
    pub fn contact(&self, other: &Horoball, tol: f64) -> Result<Contact, HoroballError> {
        if bilinear(&self.center, &other.center).abs() <= RESIDUAL_TOL {
            return Err(HoroballError::Degenerate(
                "horoballs are concentric; contact is undefined",
            ));
        }
        let t1 = self.chord_exit(&other.center)?;
        let t2 = 1.0 - other.chord_exit(&self.center)?;
        if (t1 - t2).abs() <= tol {
            let mid = (t1 + t2) / 2.0;
            let point = self.center * (1.0 - mid) + other.center * mid;
            Ok(Contact::Tangent(canonicalize(&point)?))
        } else if t1 < t2 {
            Ok(Contact::Disjoint)
        } else {
            Ok(Contact::Overlapping)
        }
    }

    /// Range of the plane's affine functional over the spheroid, plus the
    /// data needed to reconstruct the extremizing points.
    fn plane_range(&self, p: &Vec4) -> Result<PlaneRange, HoroballError> {
        let class = classify(p, DEFAULT_TOL)?;
        if class != PointClass::Outer {
            return Err(HoroballError::Lorentz(LorentzError::NotAPlane));
        }
        // Affine functional of the plane on the chart: f(x) = w.x + b with
        // w from the form's spatial part.
        let form = crate::lorentz::polar_form(p);
        let w = Vector3::new(form[1], form[2], form[3]);
        let b = form[0];

        // Parametrize the spheroid: center + R (a u, a v, p_z w) over the
        // unit sphere u^2 + v^2 + w^2 = 1; f becomes linear in (u, v, w)
        // with coefficient vector g, so the range of f over the ball is
        // f_center +- |g|.
        let rot = rotation_to(&self.direction());
        let local_w = rot.inverse() * w;
        let a = self.equatorial_semi_axis();
        let pz = self.polar_semi_axis();
        let g = Vector3::new(a * local_w.x, a * local_w.y, pz * local_w.z);
        let f_center = w.dot(&self.spheroid_center()) + b;
        let reach = g.norm();

        Ok(PlaneRange {
            rot,
            g,
            reach,
            lo: f_center - reach,
            hi: f_center + reach,
            scale: w.norm().max(b.abs()).max(1e-300),
        })
    }

    /// Signed range `(lo, hi)` of the plane's functional over the closed
    /// horoball, normalized by the functional's coefficient scale.
    ///
    /// The ball is tangent to the plane exactly when one endpoint vanishes,
    /// strictly on one side when both share a sign, and crossed by the plane
    /// when the signs differ. The endpoint nearest zero is the natural
    /// residual for root finding against a facet plane.
    pub fn plane_clearance(&self, p: &Vec4) -> Result<(f64, f64), HoroballError> {
        let r = self.plane_range(p)?;
        Ok((r.lo / r.scale, r.hi / r.scale))
    }

    /// Contact relation of the horoball and the plane with pole `p`.
    ///
    /// Works on the model spheroid: minimizes the plane's affine functional
    /// over the spheroid in closed form. If the minimum absolute value over
    /// the closed ball is within `tol` of zero the pair is tangent; the
    /// contact point is the minimizer.
    pub fn plane_contact(&self, p: &Vec4, tol: f64) -> Result<Contact, HoroballError> {
        let r = self.plane_range(p)?;
        // Scale-free tolerance: the functional is compared at the size of
        // its coefficients.
        if r.lo.abs() <= tol * r.scale || r.hi.abs() <= tol * r.scale {
            // Contact point: the extremal point with the smaller |f|.
            let gn = if r.reach == 0.0 {
                Vector3::zeros()
            } else {
                r.g / r.reach
            };
            let sign = if r.lo.abs() <= r.hi.abs() { -1.0 } else { 1.0 };
            let a = self.equatorial_semi_axis();
            let pz = self.polar_semi_axis();
            let local = Vector3::new(a * gn.x, a * gn.y, pz * gn.z) * sign;
            let world = self.spheroid_center() + r.rot * local;
            Ok(Contact::Tangent(Vec4::new(1.0, world.x, world.y, world.z)))
        } else if r.lo > 0.0 || r.hi < 0.0 {
            Ok(Contact::Disjoint)
        } else {
            Ok(Contact::Overlapping)
        }
    }
}

/// Extremal values of a plane functional over a spheroid and the rotation
/// frame in which the extremizers were computed.
struct PlaneRange {
    rot: Rotation3<f64>,
    g: Vector3<f64>,
    reach: f64,
    lo: f64,
    hi: f64,
    scale: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{distance, pole, projectively_equal};
    use approx::assert_relative_eq;

    fn ball(center: [f64; 4], s: f64) -> Horoball {
        Horoball::new(&Vec4::new(center[0], center[1], center[2], center[3]), s).unwrap()
    }

    #[test]
    fn construction_validates_center_and_parameter() {
        let interior = Vec4::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(
            Horoball::new(&interior, 0.0),
            Err(HoroballError::CenterNotIdeal(PointClass::Interior))
        );
        let ideal = Vec4::new(1.0, 0.0, 0.0, 1.0);
        assert_eq!(
            Horoball::new(&ideal, 1.0),
            Err(HoroballError::ParameterOutOfRange(1.0))
        );
        assert!(Horoball::new(&ideal, 0.0).is_ok());
    }

    #[test]
    fn value_function_vanishes_on_the_printed_spheroid() {
        // s = 0 ball at the north pole: touches the origin and the center.
        let b = ball([1.0, 0.0, 0.0, 1.0], 0.0);
        assert!(b.value(&Vec4::new(1.0, 0.0, 0.0, 0.0)).unwrap().abs() < 1e-15);
        // Interior point of the ball.
        assert!(b.value(&Vec4::new(1.0, 0.0, 0.0, 0.5)).unwrap() < 0.0);
        // Outside.
        assert!(b.value(&Vec4::new(1.0, 0.0, 0.0, -0.5)).unwrap() > 0.0);
        // The equatorial circle: radius sqrt(1/2) at height 1/2.
        let r = (0.5f64).sqrt();
        assert!(b.value(&Vec4::new(1.0, r, 0.0, 0.5)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn surface_points_satisfy_the_value_function_for_rotated_centers() {
        let dir = Vector3::new(0.3, -0.5, 0.4).normalize();
        let b = ball([1.0, dir.x, dir.y, dir.z], 0.35);
        for &theta in &[0.3, 1.0, 2.0, 3.0] {
            for &phi in &[0.0, 1.1, 4.4] {
                let x = b.surface_point(theta, phi);
                assert!(
                    b.value(&x).unwrap().abs() < 1e-12,
                    "theta {theta} phi {phi}"
                );
            }
        }
        // theta = 0 reaches the ideal center.
        let apex = b.surface_point(0.0, 0.0);
        assert!(projectively_equal(&apex, &b.center(), 1e-12));
    }

    #[test]
    fn horospheres_are_equidistant_from_concentric_ones_in_any_direction() {
        // The distance between two concentric horospheres measured along any
        // chord to the common center is |log(rho1/rho2)| / ... constant; we
        // check constancy, which pins the one-parameter family structure.
        let c = Vec4::new(1.0, 0.0, 0.0, 1.0);
        let (b1, b2) = (ball([1.0, 0.0, 0.0, 1.0], 0.2), ball([1.0, 0.0, 0.0, 1.0], 0.7));
        let mut lengths = Vec::new();
        for q in [
            Vec4::new(1.0, 0.0, 0.0, -1.0),
            Vec4::new(1.0, 1.0, 0.0, 0.0),
            Vec4::new(1.0, 0.6, 0.0, -0.8),
        ] {
            let t1 = b1.chord_exit(&q).unwrap();
            let t2 = b2.chord_exit(&q).unwrap();
            let x1 = c * (1.0 - t1) + q * t1;
            let x2 = c * (1.0 - t2) + q * t2;
            lengths.push(distance(&x1, &x2).unwrap());
        }
        assert_relative_eq!(lengths[0], lengths[1], epsilon = 1e-12);
        assert_relative_eq!(lengths[0], lengths[2], epsilon = 1e-12);
    }

    #[test]
    fn chord_exit_matches_direct_root_of_value_function() {
        let b = ball([1.0, 0.0, 0.0, 1.0], 0.3);
        let q = Vec4::new(1.0, 0.8, 0.0, -0.6);
        let t = b.chord_exit(&q).unwrap();
        let x = b.center() * (1.0 - t) + q * t;
        assert!(b.value(&x).unwrap().abs() < 1e-14);
        assert!(t > 0.0 && t < 1.0);
    }

    #[test]
    fn antipodal_chord_exit_hits_the_s_point() {
        // By definition s marks where the horosphere crosses the diameter.
        let s = 0.37;
        let b = ball([1.0, 0.0, 0.0, 1.0], s);
        let q = Vec4::new(1.0, 0.0, 0.0, -1.0);
        let x = b.chord_exit_point(&q).unwrap();
        assert!(projectively_equal(&x, &Vec4::new(1.0, 0.0, 0.0, s), 1e-12));
    }

    #[test]
    fn transform_preserves_membership_and_recovers_parameter() {
        use crate::coxeter::Tiling;
        let cell = Tiling::Tet336.cell();
        let gens = cell.generators().unwrap();
        let b = ball([1.0, 0.0, 0.0, 1.0], 0.25);

        // Reflection in the facet opposite the center: the image is a ball
        // at the antipodal... no, at the reflected ideal point; membership
        // of reflected surface points pins its parameter.
        for g in &gens {
            let image = b.transform(&g.matrix).unwrap();
            for &theta in &[0.4, 1.3, 2.8] {
                let x = b.surface_point(theta, 0.9);
                let y = g.matrix * x;
                assert!(
                    image.value(&y).unwrap().abs() < 1e-10,
                    "surface point not on transformed horosphere"
                );
            }
        }

        // Identity transform returns the same parameters.
        let same = b.transform(&Mat4::identity()).unwrap();
        assert_relative_eq!(same.s(), b.s(), epsilon = 1e-14);
    }

    #[test]
    fn chart_value_agrees_with_the_projective_value_function() {
        let n = Vector3::new(0.3, -0.5, 0.4).normalize();
        let b = ball([1.0, n.x, n.y, n.z], 0.35);
        for p in [
            [0.1, 0.2, 0.3],
            [-0.4, 0.25, 0.6],
            [0.0, 0.0, 0.5],
            [0.9, 0.1, -0.2],
        ] {
            let v = Vector3::new(p[0], p[1], p[2]);
            let x = Vec4::new(1.0, p[0], p[1], p[2]);
            assert_relative_eq!(b.chart_value(&v), b.value(&x).unwrap(), epsilon = 1e-14);
        }
    }

    #[test]
    fn reflection_across_base_facet_keeps_tangency_at_the_origin() {
        // The s = 0 ball at the north pole touches the plane z = 0 at the
        // origin; its mirror image below touches it from the other side and
        // the two balls are tangent exactly at the origin.
        let b = ball([1.0, 0.0, 0.0, 1.0], 0.0);
        let mirror = ball([1.0, 0.0, 0.0, -1.0], 0.0);
        match b.contact(&mirror, 1e-9).unwrap() {
            Contact::Tangent(at) => {
                assert!(projectively_equal(&at, &Vec4::new(1.0, 0.0, 0.0, 0.0), 1e-12))
            }
            other => panic!("expected tangency, got {other:?}"),
        }
    }

    #[test]
    fn contact_classification_tracks_the_rho_product() {
        // Balls at the poles: tangency threshold at rho * rho' = 1 for
        // centers with Lorentz product -2.
        let top = |s| ball([1.0, 0.0, 0.0, 1.0], s);
        let bot = |s| ball([1.0, 0.0, 0.0, -1.0], s);
        assert_eq!(top(0.5).contact(&bot(0.5), 1e-9).unwrap(), Contact::Disjoint);
        assert!(matches!(
            top(0.0).contact(&bot(0.0), 1e-9).unwrap(),
            Contact::Tangent(_)
        ));
        assert_eq!(
            top(-0.2).contact(&bot(0.0), 1e-9).unwrap(),
            Contact::Overlapping
        );
        // rho * rho' = 1 with unequal balls: s = 1/2 (rho 1/3) against
        // s = -1/2 (rho 3), tangent where the top ball crosses the axis.
        match top(0.5).contact(&bot(-0.5), 1e-9).unwrap() {
            Contact::Tangent(at) => {
                assert!(projectively_equal(&at, &Vec4::new(1.0, 0.0, 0.0, 0.5), 1e-12))
            }
            other => panic!("expected tangency, got {other:?}"),
        }
        // Slightly past the threshold in either direction.
        assert_eq!(
            top(0.5).contact(&bot(-0.49), 1e-9).unwrap(),
            Contact::Disjoint
        );
        assert_eq!(
            top(0.5).contact(&bot(-0.51), 1e-9).unwrap(),
            Contact::Overlapping
        );
    }

    #[test]
    fn plane_through_the_ideal_center_overlaps_and_null_forms_are_rejected() {
        let b = ball([1.0, 0.0, 0.0, 1.0], 0.4);
        // A plane with the ideal center on its boundary circle slices
        // through every concentric horoball.
        let through = pole(&Vec4::new(0.0, 1.0, 0.0, 0.0));
        assert_eq!(
            b.plane_contact(&through, 1e-9).unwrap(),
            Contact::Overlapping
        );
        // The Euclidean tangent plane at the center has a null pole and is
        // not a hyperbolic plane.
        let tangent_at_center = pole(&Vec4::new(1.0, 0.0, 0.0, -1.0));
        assert!(b.plane_contact(&tangent_at_center, 1e-9).is_err());
    }

    #[test]
    fn plane_contact_against_horizontal_planes_tracks_the_apex() {
        // Ball with apex at z = s; the plane z = h carries the Euclidean
        // functional z - h, i.e. the form (-h, 0, 0, 1).
        let s = 0.25;
        let b = ball([1.0, 0.0, 0.0, 1.0], s);
        let plane = |h: f64| pole(&Vec4::new(-h, 0.0, 0.0, 1.0));
        assert_eq!(b.plane_contact(&plane(0.1), 1e-9).unwrap(), Contact::Disjoint);
        match b.plane_contact(&plane(s), 1e-9).unwrap() {
            Contact::Tangent(at) => {
                assert!(projectively_equal(&at, &Vec4::new(1.0, 0.0, 0.0, s), 1e-9))
            }
            other => panic!("expected tangency at the apex, got {other:?}"),
        }
        assert_eq!(
            b.plane_contact(&plane(0.5), 1e-9).unwrap(),
            Contact::Overlapping
        );
    }

    #[test]
    fn rho_is_monotone_and_matches_known_values() {
        assert_relative_eq!(ball([1.0, 0.0, 0.0, 1.0], 0.0).rho(), 1.0);
        assert_relative_eq!(ball([1.0, 0.0, 0.0, 1.0], 0.5).rho(), 1.0 / 3.0);
        assert_relative_eq!(ball([1.0, 0.0, 0.0, 1.0], -1.0 / 3.0).rho(), 2.0);
        assert_relative_eq!(ball([1.0, 0.0, 0.0, 1.0], 3.0 / 5.0).rho(), 0.25);
    }
}
