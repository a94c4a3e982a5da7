//! Plane vectors and the small set of predicates the flat-geometry code leans on.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// A vector in the flat plane. Edge holonomies, periods and directions all
/// live here; the `x` component doubles as the real part of ∫ω.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product; positive when `other` lies
    /// counterclockwise of `self`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    /// Angle from `self` to `other` in [0, 2π), measured counterclockwise.
    pub fn angle_ccw_to(self, other: Vec2) -> f64 {
        let a = other.y.atan2(other.x) - self.y.atan2(self.x);
        let mut a = a % (2.0 * std::f64::consts::PI);
        if a < 0.0 {
            a += 2.0 * std::f64::consts::PI;
        }
        a
    }

    /// Interior angle of the corner spanned by two outgoing edge vectors,
    /// in (0, π) for a nondegenerate positively oriented triangle corner.
    pub fn corner_angle(self, other: Vec2) -> f64 {
        self.cross(other).atan2(self.dot(other))
    }

    /// True when the vector lies in the closed upper half-plane with the
    /// positive x-axis included and negative x-axis excluded.
    pub fn is_canonical(self) -> bool {
        self.y > 0.0 || (self.y == 0.0 && self.x > 0.0)
    }

    /// Representative of {v, -v} in the canonical half-plane.
    pub fn canonical(self) -> Vec2 {
        if self.is_canonical() {
            self
        } else {
            -self
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        self.scale(s)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

/// Segment/segment intersection test for open segments (endpoints excluded
/// within `tol` of the parameter range).
pub fn segments_cross(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2, tol: f64) -> bool {
    let da = a1 - a0;
    let db = b1 - b0;
    let denom = da.cross(db);
    if denom.abs() < 1e-15 {
        return false;
    }
    let s = (b0 - a0).cross(db) / denom;
    let t = (b0 - a0).cross(da) / denom;
    s > tol && s < 1.0 - tol && t > tol && t < 1.0 - tol
}

/// Distance from point `p` to the closed segment [a, b].
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Lexicographic comparison by (x, y); used for deterministic tie-breaking.
pub fn lex_cmp(a: Vec2, b: Vec2) -> std::cmp::Ordering {
    a.x.partial_cmp(&b.x)
        .unwrap()
        .then(a.y.partial_cmp(&b.y).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_orientation() {
        assert!(Vec2::new(1.0, 0.0).cross(Vec2::new(0.0, 1.0)) > 0.0);
        assert!(Vec2::new(0.0, 1.0).cross(Vec2::new(1.0, 0.0)) < 0.0);
    }

    #[test]
    fn corner_angle_of_right_corner() {
        let a = Vec2::new(1.0, 0.0).corner_angle(Vec2::new(0.0, 2.0));
        assert!((a - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn canonical_halves() {
        assert!(Vec2::new(1.0, 0.0).is_canonical());
        assert!(!Vec2::new(-1.0, 0.0).is_canonical());
        assert_eq!(Vec2::new(-1.0, -2.0).canonical(), Vec2::new(1.0, 2.0));
    }

    #[test]
    fn segment_crossing() {
        let o = Vec2::ZERO;
        assert!(segments_cross(
            o,
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 0.0),
            1e-12
        ));
        assert!(!segments_cross(
            o,
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            1e-12
        ));
    }
}
