//! Gap geometry and the bipolar coordinate map.
//!
//! Two equal disks of radius r, centers (+-(r + eps/2), 0), separated by a
//! gap of width eps. The bipolar parameters are chosen so the two circles
//! are the coordinate curves zeta = +-s:
//!
//!   alpha = sqrt(eps (r + eps/4)),   s = asinh(sqrt((eps/r)(1 + eps/(4r)))),
//!
//! equivalently alpha * coth(s) = r + eps/2 and alpha / sinh(s) = r. The
//! exterior of both disks is |zeta| <= s, the foci are (+-alpha, 0), and
//! (zeta, theta) = (0, 0) is the point at infinity.

use crate::error::{Error, Result};

/// Metric floor below which a bipolar point is treated as the point at
/// infinity (h = cosh zeta - cos theta vanishes only there).
pub const H_FLOOR: f64 = 1e-14;

/// A point in the physical plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
}

impl CartesianPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// A point in bipolar coordinates; theta is canonicalized into (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipolarPoint {
    pub zeta: f64,
    pub theta: f64,
}

impl BipolarPoint {
    pub fn new(zeta: f64, theta: f64) -> Self {
        Self { zeta, theta }
    }
}

/// Plane vector with just the operations the frame math needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(self, c: f64) -> Vec2 {
        Vec2::new(c * self.x, c * self.y)
    }

    /// Counterclockwise quarter turn: (x, y) -> (-y, x).
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }
}

/// Orthonormal local basis (unit gradients of zeta and theta) at a point.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub e_zeta: Vec2,
    pub e_theta: Vec2,
}

/// Region label relative to the two holes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Exterior,
    Boundary,
    Hole1,
    Hole2,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Exterior => "exterior",
            Region::Boundary => "boundary",
            Region::Hole1 => "hole1",
            Region::Hole2 => "hole2",
        }
    }
}

/// Disk radius, gap width, and the derived bipolar parameters; everything
/// is computed eagerly at construction so the invariants are checkable
/// once. Immutable afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapGeometry {
    r: f64,
    eps: f64,
    alpha: f64,
    s: f64,
}

impl GapGeometry {
    /// Geometry from disk radius and gap width.
    pub fn new(r: f64, eps: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "gap width must be positive, got {eps}"
            )));
        }
        let alpha = (eps * (r + 0.25 * eps)).sqrt();
        let s = ((eps / r) * (1.0 + eps / (4.0 * r))).sqrt().asinh();
        Ok(Self { r, eps, alpha, s })
    }

    /// Geometry from disk radius and the boundary coordinate s; the exact
    /// inverse of `new`, using eps = 4 r sinh^2(s/2).
    pub fn from_boundary_coordinate(r: f64, s: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "boundary coordinate must be positive, got {s}"
            )));
        }
        let half = (0.5 * s).sinh();
        let eps = 4.0 * r * half * half;
        let alpha = r * s.sinh();
        Ok(Self { r, eps, alpha, s })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn gap_width(&self) -> f64 {
        self.eps
    }

    /// Half focal distance alpha; foci at (-alpha, 0) and (alpha, 0).
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Boundary coordinate: the circles are zeta = -s (left) and zeta = +s.
    pub fn boundary_coordinate(&self) -> f64 {
        self.s
    }

    pub fn focus1(&self) -> CartesianPoint {
        CartesianPoint::new(-self.alpha, 0.0)
    }

    pub fn focus2(&self) -> CartesianPoint {
        CartesianPoint::new(self.alpha, 0.0)
    }

    /// Centers of the two disks: (-+(r + eps/2), 0).
    pub fn centers(&self) -> (CartesianPoint, CartesianPoint) {
        let cx = self.r + 0.5 * self.eps;
        (CartesianPoint::new(-cx, 0.0), CartesianPoint::new(cx, 0.0))
    }

    /// Bipolar coordinates of a physical point via the principal branch of
    /// log((x + iy + alpha)/(x + iy - alpha)); zeta is the real part and
    /// theta the negated imaginary part, canonicalized into (-pi, pi].
    pub fn to_bipolar(&self, p: CartesianPoint) -> Result<BipolarPoint> {
        let (nx, ny) = (p.x + self.alpha, p.y);
        let (dx, dy) = (p.x - self.alpha, p.y);
        let n2 = nx * nx + ny * ny;
        let d2 = dx * dx + dy * dy;
        if n2 == 0.0 || d2 == 0.0 {
            return Err(Error::SingularPoint { x: p.x, y: p.y });
        }
        let zeta = 0.5 * (n2 / d2).ln();
        // arg(num/den) = arg(num * conj(den)).
        let re = nx * dx + ny * dy;
        let im = ny * dx - nx * dy;
        let mut theta = -im.atan2(re);
        if theta <= -std::f64::consts::PI {
            theta = std::f64::consts::PI;
        }
        Ok(BipolarPoint::new(zeta, theta))
    }

    /// Physical point of a bipolar point:
    /// x = alpha sinh(zeta)/h, y = alpha sin(theta)/h, h = cosh zeta - cos theta.
    pub fn to_cartesian(&self, b: BipolarPoint) -> Result<CartesianPoint> {
        let h = metric_h(b);
        if h < H_FLOOR {
            return Err(Error::PointAtInfinity { h, floor: H_FLOOR });
        }
        Ok(CartesianPoint::new(
            self.alpha * b.zeta.sinh() / h,
            self.alpha * b.theta.sin() / h,
        ))
    }

    /// Gradients of the coordinate functions in dipole form,
    ///
    ///   grad zeta  = d1/|d1|^2 - d2/|d2|^2,
    ///   grad theta = d1^perp/|d1|^2 - d2^perp/|d2|^2,
    ///
    /// with d_i = p - focus_i, plus the orthonormal frame of their
    /// directions. Both gradients have length h/alpha.
    pub fn frame_and_gradients(&self, p: CartesianPoint) -> Result<(Vec2, Vec2, Frame)> {
        let d1 = Vec2::new(p.x + self.alpha, p.y);
        let d2 = Vec2::new(p.x - self.alpha, p.y);
        let (n1, n2) = (d1.dot(d1), d2.dot(d2));
        if n1 == 0.0 || n2 == 0.0 {
            return Err(Error::SingularPoint { x: p.x, y: p.y });
        }
        let grad_zeta = Vec2::new(d1.x / n1 - d2.x / n2, d1.y / n1 - d2.y / n2);
        let grad_theta = Vec2::new(
            d1.perp().x / n1 - d2.perp().x / n2,
            d1.perp().y / n1 - d2.perp().y / n2,
        );
        let gz = grad_zeta.norm();
        let gt = grad_theta.norm();
        if gz == 0.0 || gt == 0.0 {
            // Gradients vanish only at the point at infinity.
            return Err(Error::PointAtInfinity {
                h: 0.0,
                floor: H_FLOOR,
            });
        }
        let frame = Frame {
            e_zeta: grad_zeta.scale(1.0 / gz),
            e_theta: grad_theta.scale(1.0 / gt),
        };
        Ok((grad_zeta, grad_theta, frame))
    }

    /// Region of a physical point: exterior while |zeta| < s - tol, the
    /// holes while |zeta| > s + tol, boundary otherwise. The foci (where
    /// zeta diverges) are deep inside the holes.
    pub fn classify_region(&self, p: CartesianPoint, boundary_tol: f64) -> Region {
        match self.to_bipolar(p) {
            Err(_) => {
                if p.x < 0.0 {
                    Region::Hole1
                } else {
                    Region::Hole2
                }
            }
            Ok(b) => {
                if b.zeta < -self.s - boundary_tol {
                    Region::Hole1
                } else if b.zeta > self.s + boundary_tol {
                    Region::Hole2
                } else if b.zeta.abs() < self.s - boundary_tol {
                    Region::Exterior
                } else {
                    Region::Boundary
                }
            }
        }
    }
}

/// Metric factor h(zeta, theta) = cosh(zeta) - cos(theta) >= 0; the scale
/// factor of the bipolar map is alpha/h and |grad zeta| = |grad theta| = h/alpha.
pub fn metric_h(b: BipolarPoint) -> f64 {
    b.zeta.cosh() - b.theta.cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// SplitMix64: tiny deterministic generator for reproducible test points.
    pub(crate) struct SplitMix64(pub u64);

    impl SplitMix64 {
        pub fn next_u64(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }

        /// Uniform in [0, 1).
        pub fn next_f64(&mut self) -> f64 {
            (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
        }

        /// Uniform in [lo, hi).
        pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
            lo + (hi - lo) * self.next_f64()
        }
    }

    fn geom() -> GapGeometry {
        GapGeometry::new(1.0, 0.1).unwrap()
    }

    #[test]
    fn derived_parameters_match_reference() {
        // r = 1, eps = 0.1: alpha = sqrt(0.1025), s = asinh(sqrt(0.1025)).
        let g = geom();
        assert!((g.alpha() - 0.1025f64.sqrt()).abs() < 1e-15);
        assert!((g.alpha() - 0.3201562118716424).abs() < 1e-15);
        assert!((g.boundary_coordinate() - 0.3149247566038479).abs() < 1e-15);
    }

    #[test]
    fn defining_identities() {
        for &(r, eps) in &[(1.0, 0.1), (2.0, 0.03), (0.5, 1e-4)] {
            let g = GapGeometry::new(r, eps).unwrap();
            let s = g.boundary_coordinate();
            // alpha*coth(s) = r + eps/2 and alpha/sinh(s) = r.
            let coth = s.cosh() / s.sinh();
            assert!((g.alpha() * coth - (r + 0.5 * eps)).abs() <= 1e-12 * (r + 0.5 * eps));
            assert!((g.alpha() / s.sinh() - r).abs() <= 1e-12 * r);
        }
    }

    #[test]
    fn s_approaches_sqrt_eps() {
        // s/sqrt(eps) -> 1 with error O(eps) at r = 1.
        for &eps in &[1e-2, 1e-4, 1e-6] {
            let g = GapGeometry::new(1.0, eps).unwrap();
            let ratio = g.boundary_coordinate() / eps.sqrt();
            assert!((ratio - 1.0).abs() <= 0.2 * eps, "eps {eps}: ratio {ratio}");
        }
    }

    #[test]
    fn boundary_coordinate_roundtrip() {
        for &s in &[0.5, 0.1, 1e-3] {
            let g = GapGeometry::from_boundary_coordinate(2.0, s).unwrap();
            assert!((g.boundary_coordinate() - s).abs() <= 1e-15);
            let g2 = GapGeometry::new(2.0, g.gap_width()).unwrap();
            assert!((g2.boundary_coordinate() - s).abs() <= 1e-13 * s);
            assert!((g2.alpha() - g.alpha()).abs() <= 1e-13 * g.alpha());
        }
    }

    #[test]
    fn invalid_arguments_rejected() {
        assert!(GapGeometry::new(0.0, 0.1).is_err());
        assert!(GapGeometry::new(1.0, -0.1).is_err());
        assert!(GapGeometry::from_boundary_coordinate(1.0, 0.0).is_err());
    }

    #[test]
    fn origin_maps_to_zero_pi() {
        let b = geom().to_bipolar(CartesianPoint::new(0.0, 0.0)).unwrap();
        assert_eq!(b.zeta, 0.0);
        assert_eq!(b.theta, std::f64::consts::PI);
    }

    #[test]
    fn positive_axis_beyond_focus() {
        let g = geom();
        let a = g.alpha();
        let x = 2.0 * a;
        let b = g.to_bipolar(CartesianPoint::new(x, 0.0)).unwrap();
        assert_eq!(b.theta, 0.0);
        assert!((b.zeta - ((x + a) / (x - a)).ln()).abs() < 1e-14);
        assert!(b.zeta > 0.0);
    }

    #[test]
    fn focus_is_singular() {
        let g = geom();
        assert!(matches!(
            g.to_bipolar(g.focus2()),
            Err(Error::SingularPoint { .. })
        ));
        assert!(matches!(
            g.frame_and_gradients(g.focus1()),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn point_at_infinity_floor() {
        let g = geom();
        assert!(matches!(
            g.to_cartesian(BipolarPoint::new(0.0, 1e-16)),
            Err(Error::PointAtInfinity { .. })
        ));
    }

    #[test]
    fn cartesian_of_zero_pi_is_origin() {
        let p = geom().to_cartesian(BipolarPoint::new(0.0, std::f64::consts::PI)).unwrap();
        assert_eq!(p.x, 0.0);
        assert!(p.y.abs() < 1e-16);
    }

    #[test]
    fn round_trip_random_points() {
        let g = geom();
        let mut rng = SplitMix64(0x5eed_0001);
        for _ in 0..500 {
            let b = BipolarPoint::new(rng.uniform(-3.0, 3.0), rng.uniform(-3.1, 3.1));
            if metric_h(b) < 1e-8 {
                continue;
            }
            let p = g.to_cartesian(b).unwrap();
            let back = g.to_bipolar(p).unwrap();
            assert!(
                (back.zeta - b.zeta).abs() < 1e-10,
                "zeta {} vs {}",
                back.zeta,
                b.zeta
            );
            let dtheta = (back.theta - b.theta).abs();
            let dtheta = dtheta.min((dtheta - 2.0 * std::f64::consts::PI).abs());
            assert!(dtheta < 1e-10, "theta {} vs {}", back.theta, b.theta);
        }
    }

    #[test]
    fn boundary_curves_lie_on_circles() {
        // Points with zeta = +-s must satisfy the circle equations
        // (x -+ (r + eps/2))^2 + y^2 = r^2 within 1e-10 r^2.
        let g = geom();
        let r2 = g.radius() * g.radius();
        let (c1, c2) = g.centers();
        for k in 0..100 {
            let theta = -std::f64::consts::PI + (k as f64 + 0.5) * (2.0 * std::f64::consts::PI / 100.0);
            let s = g.boundary_coordinate();
            let p2 = g.to_cartesian(BipolarPoint::new(s, theta)).unwrap();
            let f2 = (p2.x - c2.x).powi(2) + p2.y * p2.y - r2;
            assert!(f2.abs() <= 1e-10 * r2, "zeta=+s: {f2}");
            let p1 = g.to_cartesian(BipolarPoint::new(-s, theta)).unwrap();
            let f1 = (p1.x - c1.x).powi(2) + p1.y * p1.y - r2;
            assert!(f1.abs() <= 1e-10 * r2, "zeta=-s: {f1}");
        }
    }

    #[test]
    fn gradients_have_equal_length_h_over_alpha() {
        let g = geom();
        let mut rng = SplitMix64(0x5eed_0002);
        for _ in 0..200 {
            let p = CartesianPoint::new(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
            let b = match g.to_bipolar(p) {
                Ok(b) => b,
                Err(_) => continue,
            };
            let h = metric_h(b);
            if h < 1e-6 {
                continue;
            }
            let (gz, gt, frame) = g.frame_and_gradients(p).unwrap();
            let expected = h / g.alpha();
            assert!((gz.norm() - expected).abs() <= 1e-10 * expected);
            assert!((gt.norm() - expected).abs() <= 1e-10 * expected);
            assert!((gz.norm() - gt.norm()).abs() <= 1e-10 * expected);
            // Frame orthonormality.
            assert!((frame.e_zeta.norm() - 1.0).abs() <= 1e-12);
            assert!((frame.e_theta.norm() - 1.0).abs() <= 1e-12);
            assert!(frame.e_zeta.dot(frame.e_theta).abs() <= 1e-12);
        }
    }

    #[test]
    fn frame_at_origin_is_cartesian_axes() {
        let g = geom();
        let (gz, gt, frame) = g.frame_and_gradients(CartesianPoint::new(0.0, 0.0)).unwrap();
        let two_over_alpha = 2.0 / g.alpha();
        assert!((gz.x - two_over_alpha).abs() < 1e-12 && gz.y.abs() < 1e-15);
        assert!(gt.x.abs() < 1e-15 && (gt.y - two_over_alpha).abs() < 1e-12);
        assert!((frame.e_zeta.x - 1.0).abs() < 1e-14);
        assert!((frame.e_theta.y - 1.0).abs() < 1e-14);
    }

    #[test]
    fn region_classification() {
        let g = geom();
        let tol = 1e-12;
        assert_eq!(g.classify_region(CartesianPoint::new(0.0, 0.0), tol), Region::Exterior);
        let (c1, c2) = g.centers();
        assert_eq!(g.classify_region(c2, tol), Region::Hole2);
        assert_eq!(g.classify_region(c1, tol), Region::Hole1);
        // The foci sit inside the holes.
        assert_eq!(g.classify_region(g.focus2(), tol), Region::Hole2);
        // A boundary point.
        let pb = g
            .to_cartesian(BipolarPoint::new(g.boundary_coordinate(), 1.0))
            .unwrap();
        assert_eq!(g.classify_region(pb, 1e-9), Region::Boundary);
    }

    #[test]
    fn metric_h_endpoints_and_estimates() {
        assert_eq!(metric_h(BipolarPoint::new(0.0, std::f64::consts::PI)), 2.0);
        assert_eq!(metric_h(BipolarPoint::new(0.0, 0.0)), 0.0);
        // s/sqrt(h(s,theta)) <= s/sqrt(cosh s - 1) <= 1.5 and
        // |sin theta|/sqrt(h(s,theta)) <= 2 for small s.
        for &s in &[1e-1, 1e-2, 1e-3] {
            for k in 0..200 {
                let theta = -std::f64::consts::PI + (k as f64 + 0.5) * (2.0 * std::f64::consts::PI / 200.0);
                let h = metric_h(BipolarPoint::new(s, theta));
                assert!(s / h.sqrt() <= 1.5);
                assert!(theta.sin().abs() / h.sqrt() <= 2.0);
            }
        }
    }

    #[test]
    fn theta_curves_satisfy_their_circle_equation() {
        // Fixed theta = c curves lie on x^2 + (y - alpha cot c)^2 = alpha^2/sin^2 c.
        let g = geom();
        for &c in &[0.4f64, 1.0, 2.2, -0.7] {
            let rad2 = (g.alpha() / c.sin()).powi(2);
            for &zeta in &[-0.25, -0.05, 0.0, 0.11, 0.3] {
                let p = g.to_cartesian(BipolarPoint::new(zeta, c)).unwrap();
                let cy = g.alpha() / c.tan();
                let lhs = p.x * p.x + (p.y - cy).powi(2) - rad2;
                assert!(lhs.abs() <= 1e-10 * rad2, "c={c} zeta={zeta}: {lhs}");
            }
        }
    }
}
