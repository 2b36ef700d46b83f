//! Exact arithmetic on the unit triangular lattice.
//!
//! Points are integer combinations `a·(1, 0) + b·(1/2, √3/2)`. With this
//! basis every squared distance is the integer `a² + ab + b²`, every
//! orientation test is an integer determinant, and a rotation by π/3 is the
//! integer map `(a, b) ↦ (−b, a + b)`.
//!
//! Hexagon centers of the hexagonal grid sit on the index-3 sublattice
//! `a ≡ b (mod 3)`; the remaining points are hexagon corners.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { a: 0, b: 0 };
    pub const UNIT: LatticePoint = LatticePoint { a: 1, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        LatticePoint { a, b }
    }

    /// Squared Euclidean length `a² + ab + b²`.
    pub fn norm2(self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    /// Twice the Euclidean dot product, kept integral.
    pub fn dot2(self, o: LatticePoint) -> i64 {
        2 * self.a * o.a + self.a * o.b + self.b * o.a + 2 * self.b * o.b
    }

    /// Determinant in lattice coordinates. Same sign as the Euclidean
    /// cross product; a unit lattice triangle has determinant 1.
    pub fn cross(self, o: LatticePoint) -> i64 {
        self.a * o.b - self.b * o.a
    }

    /// Counterclockwise rotation by π/3.
    pub fn rot60(self) -> Self {
        LatticePoint::new(-self.b, self.a + self.b)
    }

    /// Counterclockwise rotation by `k·π/3` (any integer `k`).
    pub fn rotate(self, k: i64) -> Self {
        let mut p = self;
        for _ in 0..k.rem_euclid(6) {
            p = p.rot60();
        }
        p
    }

    pub fn gcd(self) -> i64 {
        self.a.gcd(&self.b)
    }

    /// The primitive vector in the same direction and its multiplicity.
    pub fn primitive(self) -> (LatticePoint, i64) {
        let g = self.gcd();
        if g == 0 {
            (self, 0)
        } else {
            (LatticePoint::new(self.a / g, self.b / g), g)
        }
    }

    /// True for points on the center sublattice of the hexagonal grid.
    pub fn is_center(self) -> bool {
        (self.a - self.b).rem_euclid(3) == 0
    }

    /// Index `r` with `self == UNIT.rotate(r)`, for the six unit vectors.
    pub fn unit_direction(self) -> Option<i64> {
        (0..6).find(|&r| LatticePoint::UNIT.rotate(r) == self)
    }

    pub fn to_rational(self) -> RatPoint {
        RatPoint::new(Rational::from_integer(self.a), Rational::from_integer(self.b))
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.a, -self.b)
    }
}

impl Mul<i64> for LatticePoint {
    type Output = LatticePoint;
    fn mul(self, k: i64) -> LatticePoint {
        LatticePoint::new(self.a * k, self.b * k)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Whether `n` can be written as `a² + ab + b²`.
pub fn is_loeschian(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    vectors_of_norm(n).next().is_some() || n == 0
}

/// All lattice vectors of squared length exactly `n`, in (a, b) order.
pub fn vectors_of_norm(n: i64) -> impl Iterator<Item = LatticePoint> {
    // |a|, |b| ≤ 2·sqrt(n/3) + 1 is enough for a² + ab + b² = n.
    let r = ((n as f64 / 3.0).sqrt() * 2.0).ceil() as i64 + 1;
    (-r..=r).flat_map(move |a| {
        (-r..=r).filter_map(move |b| {
            let p = LatticePoint::new(a, b);
            (p.norm2() == n && n > 0).then_some(p)
        })
    })
}

/// Point with rational lattice coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint {
    pub a: Rational,
    pub b: Rational,
}

impl RatPoint {
    pub fn new(a: Rational, b: Rational) -> Self {
        RatPoint { a, b }
    }

    pub fn zero() -> Self {
        RatPoint::new(Rational::from_integer(0), Rational::from_integer(0))
    }

    pub fn cross(self, o: RatPoint) -> Rational {
        self.a * o.b - self.b * o.a
    }

    /// Twice the Euclidean dot product.
    pub fn dot2(self, o: RatPoint) -> Rational {
        let two = Rational::from_integer(2);
        two * self.a * o.a + self.a * o.b + self.b * o.a + two * self.b * o.b
    }

    pub fn scale(self, k: Rational) -> RatPoint {
        RatPoint::new(self.a * k, self.b * k)
    }

    /// Mirror image across the line through `p` and `q`.
    pub fn reflect(self, p: RatPoint, q: RatPoint) -> RatPoint {
        let d = q - p;
        let x = self - p;
        let t = x.dot2(d) / d.dot2(d);
        p + d.scale(t * Rational::from_integer(2)) - x
    }

    pub fn to_f64(self) -> (f64, f64) {
        let a = *self.a.numer() as f64 / *self.a.denom() as f64;
        let b = *self.b.numer() as f64 / *self.b.denom() as f64;
        (a, b)
    }
}

impl Add for RatPoint {
    type Output = RatPoint;
    fn add(self, o: RatPoint) -> RatPoint {
        RatPoint::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for RatPoint {
    type Output = RatPoint;
    fn sub(self, o: RatPoint) -> RatPoint {
        RatPoint::new(self.a - o.a, self.b - o.b)
    }
}

impl From<LatticePoint> for RatPoint {
    fn from(p: LatticePoint) -> RatPoint {
        p.to_rational()
    }
}

/// Cartesian coordinates of a lattice-coordinate pair.
pub fn cartesian(a: f64, b: f64) -> (f64, f64) {
    (a + 0.5 * b, b * 3f64.sqrt() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn norms_are_loeschian() {
        assert_eq!(LatticePoint::new(1, 1).norm2(), 3);
        assert_eq!(LatticePoint::new(2, 1).norm2(), 7);
        assert!(is_loeschian(3));
        assert!(is_loeschian(7));
        assert!(!is_loeschian(2));
        assert!(!is_loeschian(6));
        assert_eq!(vectors_of_norm(1).count(), 6);
        assert_eq!(vectors_of_norm(3).count(), 6);
        assert_eq!(vectors_of_norm(7).count(), 12);
    }

    #[test]
    fn rotation_has_order_six() {
        let p = LatticePoint::new(3, -1);
        assert_eq!(p.rotate(6), p);
        assert_eq!(p.rotate(3), -p);
        assert_eq!(LatticePoint::UNIT.rotate(1), LatticePoint::new(0, 1));
        assert_eq!(LatticePoint::new(0, 1).unit_direction(), Some(1));
    }

    #[test]
    fn center_sublattice() {
        assert!(LatticePoint::new(0, 0).is_center());
        assert!(LatticePoint::new(1, 1).is_center());
        assert!(!LatticePoint::new(1, 0).is_center());
        assert!(!LatticePoint::new(0, 1).is_center());
    }

    #[test]
    fn reflection_across_axis() {
        let p = RatPoint::from(LatticePoint::new(0, 1));
        let r = p.reflect(LatticePoint::ORIGIN.into(), LatticePoint::UNIT.into());
        assert_eq!(r, RatPoint::from(LatticePoint::new(1, -1)));
    }

    proptest! {
        #[test]
        fn rotation_preserves_norm_and_dot(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let p = LatticePoint::new(a, b);
            let q = LatticePoint::new(c, d);
            prop_assert_eq!(p.rot60().norm2(), p.norm2());
            prop_assert_eq!(p.rot60().dot2(q.rot60()), p.dot2(q));
            prop_assert_eq!(p.rot60().cross(q.rot60()), p.cross(q));
            prop_assert_eq!(p.dot2(p), 2 * p.norm2());
        }
    }
}
