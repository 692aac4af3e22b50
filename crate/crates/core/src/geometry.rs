//! Geometric kernel: points, axis-aligned boxes, segments, distances and the
//! rough-mereological inclusion measures built on box volumes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("region {0:?} has zero volume")]
    DegenerateRegion(Box3),
}

/// A position in gate coordinates (map units).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Component-wise `self + t * (other - self)`.
    pub fn lerp(self, other: Point3, t: f64) -> Point3 {
        Point3::new(
            self.x + t * (other.x - self.x),
            self.y + t * (other.y - self.y),
            self.z + t * (other.z - self.z),
        )
    }

    pub fn offset(self, dx: f64, dy: f64, dz: f64) -> Point3 {
        Point3::new(self.x + dx, self.y + dy, self.z + dz)
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        euclidean_distance(self, other)
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(v: [f64; 3]) -> Self {
        Point3::new(v[0], v[1], v[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        p.to_array()
    }
}

/// Axis-aligned box. Used for the gate, obstacles and mereological regions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Box3 {
    pub min: Point3,
    pub max: Point3,
}

impl Box3 {
    pub const fn new(min: Point3, max: Point3) -> Self {
        Box3 { min, max }
    }

    /// Box from two corner arrays, handy for fixtures.
    pub fn from_corners(min: [f64; 3], max: [f64; 3]) -> Self {
        Box3::new(min.into(), max.into())
    }

    /// Cube of the given edge length centered on `center`.
    pub fn cube(center: Point3, edge: f64) -> Self {
        let h = edge / 2.0;
        Box3::new(center.offset(-h, -h, -h), center.offset(h, h, h))
    }

    /// True when `min <= max` on every axis and all corners are finite.
    pub fn is_well_formed(&self) -> bool {
        self.min.is_finite()
            && self.max.is_finite()
            && self.min.x <= self.max.x
            && self.min.y <= self.max.y
            && self.min.z <= self.max.z
    }

    pub fn extents(&self) -> [f64; 3] {
        [
            (self.max.x - self.min.x).max(0.0),
            (self.max.y - self.min.y).max(0.0),
            (self.max.z - self.min.z).max(0.0),
        ]
    }

    pub fn volume(&self) -> f64 {
        let [a, b, c] = self.extents();
        a * b * c
    }

    pub fn center(&self) -> Point3 {
        self.min.lerp(self.max, 0.5)
    }

    pub fn diagonal(&self) -> f64 {
        euclidean_distance(&self.min, &self.max)
    }

    /// Closed containment: boundary points are inside.
    pub fn contains(&self, p: &Point3) -> bool {
        p.x >= self.min.x
            && p.x <= self.max.x
            && p.y >= self.min.y
            && p.y <= self.max.y
            && p.z >= self.min.z
            && p.z <= self.max.z
    }

    /// Closed containment of another box.
    pub fn contains_box(&self, other: &Box3) -> bool {
        self.contains(&other.min) && self.contains(&other.max)
    }

    /// Intersection box, or `None` when the closed boxes do not touch.
    /// Touching boxes yield a zero-volume intersection.
    pub fn intersection(&self, other: &Box3) -> Option<Box3> {
        let min = Point3::new(
            self.min.x.max(other.min.x),
            self.min.y.max(other.min.y),
            self.min.z.max(other.min.z),
        );
        let max = Point3::new(
            self.max.x.min(other.max.x),
            self.max.y.min(other.max.y),
            self.max.z.min(other.max.z),
        );
        (min.x <= max.x && min.y <= max.y && min.z <= max.z).then_some(Box3::new(min, max))
    }

    /// Volume of the overlap; zero for disjoint or merely touching boxes.
    pub fn overlap_volume(&self, other: &Box3) -> f64 {
        self.intersection(other).map_or(0.0, |b| b.volume())
    }
}

/// Closed segment between two points. `a == b` is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment3 {
    pub a: Point3,
    pub b: Point3,
}

impl Segment3 {
    pub const fn new(a: Point3, b: Point3) -> Self {
        Segment3 { a, b }
    }

    pub fn length(&self) -> f64 {
        euclidean_distance(&self.a, &self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }
}

/// Weights of the search score: `w_step` scales the field-to-field
/// distance, `w_goal` the field-to-goal distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub w_step: f64,
    pub w_goal: f64,
}

impl Weights {
    pub const fn new(w_step: f64, w_goal: f64) -> Self {
        Weights { w_step, w_goal }
    }

    pub fn is_valid(&self) -> bool {
        self.w_step.is_finite() && self.w_goal.is_finite() && self.w_step > 0.0 && self.w_goal > 0.0
    }
}

impl Default for Weights {
    fn default() -> Self {
        Weights::new(0.5, 1.0)
    }
}

pub fn euclidean_distance(p: &Point3, q: &Point3) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let dz = p.z - q.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Search score of moving from `current` to `candidate`:
/// `w_step * |current - candidate| + w_goal * |candidate - goal|`.
pub fn weighted_distance(current: &Point3, candidate: &Point3, goal: &Point3, w: &Weights) -> f64 {
    w.w_step * euclidean_distance(current, candidate) + w.w_goal * euclidean_distance(candidate, goal)
}

/// Largest `r` such that `x` is part of `y` to degree `r`, i.e.
/// `vol(x ∩ y) / vol(x)`.
pub fn rough_inclusion_degree(x: &Box3, y: &Box3) -> Result<f64, GeometryError> {
    let vx = x.volume();
    if vx.is_nan() || vx <= 0.0 {
        return Err(GeometryError::DegenerateRegion(*x));
    }
    Ok((x.overlap_volume(y) / vx).clamp(0.0, 1.0))
}

/// Mereological proximity `K(x, y)`: the smaller of the two inclusion degrees.
pub fn mereo_proximity(x: &Box3, y: &Box3) -> Result<f64, GeometryError> {
    let xy = rough_inclusion_degree(x, y)?;
    let yx = rough_inclusion_degree(y, x)?;
    Ok(xy.min(yx))
}

/// Closed segment vs closed box, by parametric slab clipping.
pub fn segment_intersects_box(s: &Segment3, b: &Box3) -> bool {
    let origin = s.a.to_array();
    let end = s.b.to_array();
    let lo = b.min.to_array();
    let hi = b.max.to_array();

    let mut t_enter = 0.0_f64;
    let mut t_exit = 1.0_f64;
    for axis in 0..3 {
        let dir = end[axis] - origin[axis];
        if dir == 0.0 {
            if origin[axis] < lo[axis] || origin[axis] > hi[axis] {
                return false;
            }
            continue;
        }
        let t1 = (lo[axis] - origin[axis]) / dir;
        let t2 = (hi[axis] - origin[axis]) / dir;
        let (near, far) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        t_enter = t_enter.max(near);
        t_exit = t_exit.min(far);
        if t_enter > t_exit {
            return false;
        }
    }
    true
}

/// True when the segment meets none of the boxes.
pub fn segment_clear_of(s: &Segment3, boxes: &[Box3]) -> bool {
    !boxes.iter().any(|b| segment_intersects_box(s, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    fn unit() -> Box3 {
        Box3::from_corners([0.0; 3], [1.0; 3])
    }

    #[test]
    fn distance_examples() {
        assert_eq!(euclidean_distance(&p(0., 0., 0.), &p(0., 0., 0.)), 0.0);
        assert_eq!(euclidean_distance(&p(0., 0., 0.), &p(3., 4., 0.)), 5.0);
        // 9 + 16 + 144 = 169
        assert!((euclidean_distance(&p(1., 2., 3.), &p(4., 6., 15.)) - 13.0).abs() < 1e-9);
    }

    #[test]
    fn weighted_distance_examples() {
        let o = p(0., 0., 0.);
        assert_eq!(weighted_distance(&o, &o, &o, &Weights::new(0.3, 7.0)), 0.0);
        let c = p(3., 4., 0.);
        assert!((weighted_distance(&o, &c, &c, &Weights::new(1.0, 1.0)) - 5.0).abs() < 1e-9);
        let w = weighted_distance(&o, &p(1., 0., 0.), &p(4., 0., 0.), &Weights::new(0.5, 1.0));
        assert!((w - 3.5).abs() < 1e-9);
    }

    #[test]
    fn inclusion_examples() {
        let x = unit();
        assert_eq!(rough_inclusion_degree(&x, &x).unwrap(), 1.0);
        let far = Box3::from_corners([2., 0., 0.], [3., 1., 1.]);
        assert_eq!(rough_inclusion_degree(&x, &far).unwrap(), 0.0);
        let half = Box3::from_corners([0.5, 0., 0.], [1.5, 1., 1.]);
        assert!((rough_inclusion_degree(&x, &half).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn degenerate_region_is_rejected() {
        let flat = Box3::from_corners([0., 0., 0.], [1., 1., 0.]);
        assert!(matches!(
            rough_inclusion_degree(&flat, &unit()),
            Err(GeometryError::DegenerateRegion(_))
        ));
        assert!(mereo_proximity(&unit(), &flat).is_err());
    }

    #[test]
    fn proximity_examples() {
        let x = unit();
        let y = Box3::from_corners([0., 0., 0.], [2., 1., 1.]);
        assert!((mereo_proximity(&x, &y).unwrap() - 0.5).abs() < 1e-9);
        let b = Box3::from_corners([-3., 2., 5.], [1., 4., 9.]);
        assert_eq!(mereo_proximity(&b, &b).unwrap(), 1.0);
        // touching faces share no interior
        let touching = Box3::from_corners([1., 0., 0.], [2., 1., 1.]);
        assert_eq!(mereo_proximity(&x, &touching).unwrap(), 0.0);
    }

    #[test]
    fn segment_examples() {
        let b = unit();
        assert!(segment_intersects_box(&Segment3::new(p(-1., 0.5, 0.5), p(2., 0.5, 0.5)), &b));
        assert!(!segment_intersects_box(&Segment3::new(p(5., 5., 5.), p(6., 6., 6.)), &b));
        // grazes the top edge y = z = 1
        assert!(segment_intersects_box(&Segment3::new(p(-1., 1., 1.), p(2., 1., 1.)), &b));
    }

    #[test]
    fn degenerate_segment_is_point_test() {
        let b = unit();
        assert!(segment_intersects_box(&Segment3::new(p(0.5, 0.5, 0.5), p(0.5, 0.5, 0.5)), &b));
        assert!(segment_intersects_box(&Segment3::new(p(1., 1., 1.), p(1., 1., 1.)), &b));
        assert!(!segment_intersects_box(&Segment3::new(p(1.1, 0.5, 0.5), p(1.1, 0.5, 0.5)), &b));
    }

    #[test]
    fn segment_stopping_short_of_box() {
        let b = unit();
        assert!(!segment_intersects_box(&Segment3::new(p(-2., 0.5, 0.5), p(-0.001, 0.5, 0.5)), &b));
        assert!(segment_intersects_box(&Segment3::new(p(-2., 0.5, 0.5), p(0.0, 0.5, 0.5)), &b));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -50.0..50.0f64
    }

    fn point() -> impl Strategy<Value = Point3> {
        (coord(), coord(), coord()).prop_map(|(x, y, z)| p(x, y, z))
    }

    fn solid_box() -> impl Strategy<Value = Box3> {
        (point(), 0.1..20.0f64, 0.1..20.0f64, 0.1..20.0f64)
            .prop_map(|(m, a, b, c)| Box3::new(m, m.offset(a, b, c)))
    }

    proptest! {
        #[test]
        fn distance_is_symmetric(a in point(), b in point()) {
            prop_assert_eq!(euclidean_distance(&a, &b), euclidean_distance(&b, &a));
        }

        #[test]
        fn triangle_inequality(a in point(), b in point(), c in point()) {
            let direct = euclidean_distance(&a, &c);
            let via = euclidean_distance(&a, &b) + euclidean_distance(&b, &c);
            prop_assert!(direct <= via + 1e-9);
        }

        #[test]
        fn proximity_is_symmetric(x in solid_box(), y in solid_box()) {
            prop_assert_eq!(mereo_proximity(&x, &y).unwrap(), mereo_proximity(&y, &x).unwrap());
        }

        #[test]
        fn inclusion_is_one_for_contained(y in solid_box(), f in 0.0..1.0f64, g in 0.01..1.0f64) {
            // carve x out of y
            let e = y.extents();
            let min = y.min.offset(e[0] * f * (1.0 - g), e[1] * f * (1.0 - g), e[2] * f * (1.0 - g));
            let x = Box3::new(min, min.offset(e[0] * g, e[1] * g, e[2] * g));
            prop_assume!(y.contains_box(&x) && x.volume() > 0.0);
            prop_assert!((rough_inclusion_degree(&x, &y).unwrap() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn inclusion_matches_voxel_oracle(x in solid_box(), y in solid_box()) {
            // per-axis overlap lengths by interval enumeration of the six endpoints
            let mut vol = 1.0;
            for axis in 0..3 {
                let (xl, xh) = (x.min.to_array()[axis], x.max.to_array()[axis]);
                let (yl, yh) = (y.min.to_array()[axis], y.max.to_array()[axis]);
                let mut cuts = [xl, xh, yl, yh];
                cuts.sort_by(f64::total_cmp);
                let mut len = 0.0;
                for w in cuts.windows(2) {
                    let mid = 0.5 * (w[0] + w[1]);
                    if mid >= xl && mid <= xh && mid >= yl && mid <= yh {
                        len += w[1] - w[0];
                    }
                }
                vol *= len;
            }
            let expected = vol / x.volume();
            prop_assert!((rough_inclusion_degree(&x, &y).unwrap() - expected).abs() < 1e-9);
        }

        #[test]
        fn weighted_distance_monotone_in_goal_weight(
            a in point(), c in point(), g in point(), ws in 0.01..5.0f64, w1 in 0.01..5.0f64, dw in 0.0..5.0f64
        ) {
            prop_assume!(euclidean_distance(&c, &g) > 0.0);
            let lo = weighted_distance(&a, &c, &g, &Weights::new(ws, w1));
            let hi = weighted_distance(&a, &c, &g, &Weights::new(ws, w1 + dw));
            prop_assert!(hi >= lo);
        }

        #[test]
        fn segment_agrees_with_sampling(a in point(), b in point(), bx in solid_box()) {
            let s = Segment3::new(a, b);
            const N: usize = 10_000;
            let mut hit = false;
            let mut closest_gap = f64::INFINITY;
            for i in 0..=N {
                let q = a.lerp(b, i as f64 / N as f64);
                if bx.contains(&q) {
                    hit = true;
                    break;
                }
                closest_gap = closest_gap.min(outside_gap(&bx, &q));
            }
            if hit != segment_intersects_box(&s, &bx) {
                prop_assert!(closest_gap <= 1e-9, "gap {closest_gap}");
            }
        }
    }

    fn outside_gap(b: &Box3, q: &Point3) -> f64 {
        let d = |v: f64, lo: f64, hi: f64| (lo - v).max(0.0).max(v - hi);
        let dx = d(q.x, b.min.x, b.max.x);
        let dy = d(q.y, b.min.y, b.max.y);
        let dz = d(q.z, b.min.z, b.max.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}
