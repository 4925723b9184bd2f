//! Concrete Hadamard spaces: the spoke ℝ-tree and Euclidean space.
//!
//! The spoke tree is countably many unit segments `[0,1]` glued at their
//! origin. A point is `[(n, t)]` with spoke index `n` and radius `t`; every
//! `(n, 0)` is the same root, stored canonically as `(0, 0)`. Distances are
//! `|t - s|` on one spoke and `t + s` across spokes, so all squared distances
//! between rational points are rational, as they are in Euclidean space.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::report::{CheckReport, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceHandle {
    SpokeTree,
    Euclidean { dim: usize },
}

impl fmt::Display for SpaceHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceHandle::SpokeTree => write!(f, "spoke-tree"),
            SpaceHandle::Euclidean { dim } => write!(f, "euclidean({dim})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    /// `[(spoke, radius)]` on the spoke tree.
    Spoke { spoke: u64, radius: Rational },
    /// Rational coordinates in Euclidean space.
    Euclid(Vec<Rational>),
}

impl Point {
    /// Canonical spoke-tree point; radius 0 maps to the root `(0, 0)`.
    pub fn spoke(spoke: u64, radius: Rational) -> Result<Point> {
        if radius.is_negative() || radius > rational::one() {
            return Err(Error::Validation(format!("spoke radius {radius} outside [0,1]")));
        }
        if radius.is_zero() {
            return Ok(Point::root());
        }
        Ok(Point::Spoke { spoke, radius })
    }

    /// Shorthand for `[(spoke, num/den)]`. Panics when the radius is out of range.
    pub fn sp(spoke: u64, num: i64, den: i64) -> Point {
        Point::spoke(spoke, rational::rat(num, den)).expect("radius in [0,1]")
    }

    pub fn root() -> Point {
        Point::Spoke { spoke: 0, radius: rational::zero() }
    }

    pub fn euclid(coords: Vec<Rational>) -> Point {
        Point::Euclid(coords)
    }

    /// Integer-coordinate Euclidean point.
    pub fn ints(coords: &[i64]) -> Point {
        Point::Euclid(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn is_root(&self) -> bool {
        matches!(self, Point::Spoke { radius, .. } if radius.is_zero())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Spoke { spoke, radius } => write!(f, "[({spoke},{radius})]"),
            Point::Euclid(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum PointOut<'a> {
    Spoke {
        spoke: u64,
        #[serde(with = "rational::serde_str")]
        radius: &'a Rational,
    },
    Euclid {
        #[serde(serialize_with = "rational::serde_vec::serialize")]
        coords: &'a [Rational],
    },
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum PointIn {
    Spoke {
        spoke: u64,
        #[serde(with = "rational::serde_str")]
        radius: Rational,
    },
    Euclid {
        #[serde(with = "rational::serde_vec")]
        coords: Vec<Rational>,
    },
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Point::Spoke { spoke, radius } => PointOut::Spoke { spoke: *spoke, radius }.serialize(s),
            Point::Euclid(coords) => PointOut::Euclid { coords }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Point, D::Error> {
        match PointIn::deserialize(d)? {
            PointIn::Spoke { spoke, radius } => Point::spoke(spoke, radius).map_err(serde::de::Error::custom),
            PointIn::Euclid { coords } => Ok(Point::Euclid(coords)),
        }
    }
}

impl SpaceHandle {
    pub fn euclidean(dim: usize) -> SpaceHandle {
        SpaceHandle::Euclidean { dim }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceHandle::Euclidean { dim: 0 } => {
                Err(Error::Validation("Euclidean dimension must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// Membership and canonical-form check.
    pub fn check(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (SpaceHandle::SpokeTree, Point::Spoke { spoke, radius }) => {
                if radius.is_negative() || *radius > rational::one() {
                    return Err(Error::Validation(format!("spoke radius {radius} outside [0,1]")));
                }
                if radius.is_zero() && *spoke != 0 {
                    return Err(Error::NonCanonical(format!("[({spoke},0)] must be written as the root [(0,0)]")));
                }
                Ok(())
            }
            (SpaceHandle::Euclidean { dim }, Point::Euclid(c)) => {
                if c.len() != *dim {
                    return Err(Error::DimensionMismatch { expected: *dim, got: c.len() });
                }
                Ok(())
            }
            _ => Err(Error::PointNotInSpace { space: *self, reason: format!("{p} has the wrong kind") }),
        }
    }

    pub fn check_all<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> Result<()> {
        points.into_iter().try_for_each(|p| self.check(p))
    }

    /// Exact `d(p, q)²`.
    pub fn dist_sq(&self, p: &Point, q: &Point) -> Result<Rational> {
        self.check(p)?;
        self.check(q)?;
        Ok(dist_sq_unchecked(p, q))
    }

    /// `d(p, q)` as a float.
    pub fn dist(&self, p: &Point, q: &Point) -> Result<f64> {
        match (p, q) {
            (Point::Spoke { .. }, Point::Spoke { .. }) => {
                self.check(p)?;
                self.check(q)?;
                Ok(rational::to_f64(&spoke_dist(p, q)))
            }
            _ => Ok(rational::to_f64(&self.dist_sq(p, q)?).sqrt()),
        }
    }

    /// The geodesic point `(1-λ)x ⊕ λy`.
    pub fn geodesic_point(&self, x: &Point, y: &Point, lambda: &Rational) -> Result<Point> {
        check_unit(lambda)?;
        self.check(x)?;
        self.check(y)?;
        Ok(geodesic_unchecked(x, y, lambda))
    }

    /// The CN-inequality
    /// `d(z, c(t))² ≤ (1-t) d(z,x)² + t d(z,y)² - t(1-t) d(x,y)²`
    /// with `c(t) = (1-t)x ⊕ ty`, decided exactly.
    pub fn check_cn(&self, x: &Point, y: &Point, z: &Point, t: &Rational) -> Result<CheckReport> {
        let c = self.geodesic_point(x, y, t)?;
        self.check(z)?;
        let s = rational::one() - t;
        let lhs = dist_sq_unchecked(z, &c);
        let rhs = &s * dist_sq_unchecked(z, x) + t * dist_sq_unchecked(z, y) - t * &s * dist_sq_unchecked(x, y);
        Ok(CheckReport::exact("cn-inequality", Relation::Le, lhs, rhs))
    }
}

pub fn check_unit(lambda: &Rational) -> Result<()> {
    if lambda.is_negative() || *lambda > rational::one() {
        return Err(Error::LambdaOutOfRange(rational::format(lambda)));
    }
    Ok(())
}

fn spoke_dist(p: &Point, q: &Point) -> Rational {
    match (p, q) {
        (Point::Spoke { spoke: n, radius: t }, Point::Spoke { spoke: m, radius: s }) => {
            if n == m || t.is_zero() || s.is_zero() {
                (t - s).abs()
            } else {
                t + s
            }
        }
        _ => unreachable!("spoke_dist on non-spoke points"),
    }
}

/// `d(p, q)²` for points already validated against one space.
pub(crate) fn dist_sq_unchecked(p: &Point, q: &Point) -> Rational {
    match (p, q) {
        (Point::Spoke { .. }, Point::Spoke { .. }) => {
            let d = spoke_dist(p, q);
            &d * &d
        }
        (Point::Euclid(a), Point::Euclid(b)) => a
            .iter()
            .zip(b)
            .map(|(x, y)| {
                let d = x - y;
                &d * &d
            })
            .sum(),
        _ => unreachable!("mixed point kinds"),
    }
}

pub(crate) fn geodesic_unchecked(x: &Point, y: &Point, lambda: &Rational) -> Point {
    if x == y || lambda.is_zero() {
        return x.clone();
    }
    if *lambda == rational::one() {
        return y.clone();
    }
    let mu = rational::one() - lambda;
    match (x, y) {
        (Point::Euclid(a), Point::Euclid(b)) => {
            Point::Euclid(a.iter().zip(b).map(|(u, v)| &mu * u + lambda * v).collect())
        }
        (Point::Spoke { spoke: n, radius: t }, Point::Spoke { spoke: m, radius: s }) => {
            let canonical = |spoke: u64, radius: Rational| {
                if radius.is_zero() {
                    Point::root()
                } else {
                    Point::Spoke { spoke, radius }
                }
            };
            if t.is_zero() || s.is_zero() || n == m {
                // Both ends on one segment through the root: plain interpolation.
                let spoke = if t.is_zero() { *m } else { *n };
                canonical(spoke, &mu * t + lambda * s)
            } else if *lambda <= t / (t + s) {
                canonical(*n, &mu * t - lambda * s)
            } else {
                canonical(*m, (lambda - rational::one()) * t + lambda * s)
            }
        }
        _ => unreachable!("mixed point kinds"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const TREE: SpaceHandle = SpaceHandle::SpokeTree;

    #[test]
    fn spoke_metric_examples() {
        let d = TREE.dist_sq(&Point::sp(2, 1, 2), &Point::sp(3, 1, 3)).unwrap();
        assert_eq!(d, rat(25, 36));
        assert_eq!(TREE.dist_sq(&Point::sp(7, 1, 4), &Point::sp(7, 1, 4)).unwrap(), int(0));
        assert!((TREE.dist(&Point::sp(2, 1, 2), &Point::sp(3, 1, 3)).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        // Same spoke and through the root.
        assert_eq!(TREE.dist_sq(&Point::sp(4, 1, 4), &Point::sp(4, 3, 4)).unwrap(), rat(1, 4));
        assert_eq!(TREE.dist_sq(&Point::root(), &Point::sp(9, 2, 3)).unwrap(), rat(4, 9));
    }

    #[test]
    fn euclidean_metric_examples() {
        let e2 = SpaceHandle::euclidean(2);
        assert_eq!(e2.dist_sq(&Point::ints(&[1, 0]), &Point::ints(&[0, 1])).unwrap(), int(2));
        assert_eq!(e2.dist(&Point::ints(&[0, 0]), &Point::ints(&[3, 4])).unwrap(), 5.0);
    }

    #[test]
    fn validation_errors() {
        let raw_root = Point::Spoke { spoke: 3, radius: int(0) };
        assert!(matches!(TREE.dist_sq(&raw_root, &Point::root()), Err(Error::NonCanonical(_))));
        let e2 = SpaceHandle::euclidean(2);
        assert!(matches!(
            e2.dist_sq(&Point::ints(&[1, 0, 0]), &Point::ints(&[0, 1])),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
        assert!(matches!(e2.dist_sq(&Point::root(), &Point::ints(&[0, 1])), Err(Error::PointNotInSpace { .. })));
        assert!(Point::spoke(1, rat(3, 2)).is_err());
        assert!(SpaceHandle::euclidean(0).validate().is_err());
    }

    #[test]
    fn canonical_root() {
        assert_eq!(Point::spoke(5, int(0)).unwrap(), Point::root());
        let p: Point = serde_json::from_str(r#"{"spoke": 8, "radius": "0"}"#).unwrap();
        assert_eq!(p, Point::root());
    }

    #[test]
    fn geodesic_examples() {
        let g = TREE.geodesic_point(&Point::sp(1, 1, 2), &Point::sp(3, 1, 2), &rat(1, 3)).unwrap();
        assert_eq!(g, Point::sp(1, 1, 6));
        let g = TREE.geodesic_point(&Point::sp(2, 1, 2), &Point::sp(1, 1, 2), &rat(1, 4)).unwrap();
        assert_eq!(g, Point::sp(2, 1, 4));
        // Past the root onto the second spoke.
        let g = TREE.geodesic_point(&Point::sp(2, 1, 2), &Point::sp(1, 1, 2), &rat(3, 4)).unwrap();
        assert_eq!(g, Point::sp(1, 1, 4));
        let g = TREE.geodesic_point(&Point::sp(2, 1, 2), &Point::sp(1, 1, 2), &rat(1, 2)).unwrap();
        assert_eq!(g, Point::root());
        let x = Point::sp(6, 2, 7);
        assert_eq!(TREE.geodesic_point(&x, &x, &rat(7, 10)).unwrap(), x);
        // Same spoke and root endpoints.
        let g = TREE.geodesic_point(&Point::sp(4, 1, 4), &Point::sp(4, 1, 1), &rat(1, 3)).unwrap();
        assert_eq!(g, Point::sp(4, 1, 2));
        let g = TREE.geodesic_point(&Point::root(), &Point::sp(4, 1, 2), &rat(1, 2)).unwrap();
        assert_eq!(g, Point::sp(4, 1, 4));
        let e = SpaceHandle::euclidean(2);
        let g = e.geodesic_point(&Point::ints(&[0, 0]), &Point::ints(&[4, 2]), &rat(1, 4)).unwrap();
        assert_eq!(g, Point::euclid(vec![int(1), rat(1, 2)]));
        assert!(matches!(
            e.geodesic_point(&Point::ints(&[0, 0]), &Point::ints(&[4, 2]), &rat(5, 4)),
            Err(Error::LambdaOutOfRange(_))
        ));
    }

    #[test]
    fn cn_examples() {
        // Tripod: c(1/2) is the root, LHS = 1, RHS = 2 + 2 - 1 = 3.
        let r = TREE.check_cn(&Point::sp(1, 1, 1), &Point::sp(2, 1, 1), &Point::sp(3, 1, 1), &rat(1, 2)).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs.as_exact(), Some(&int(1)));
        assert_eq!(r.rhs.as_exact(), Some(&int(3)));

        let e = SpaceHandle::euclidean(2);
        let r = e.check_cn(&Point::ints(&[0, 0]), &Point::ints(&[2, 1]), &Point::ints(&[-1, 3]), &rat(1, 2)).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, r.rhs);

        let x = Point::sp(2, 1, 3);
        let z = Point::sp(5, 3, 4);
        let r = TREE.check_cn(&x, &Point::sp(1, 1, 1), &z, &int(0)).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert_eq!(r.lhs.as_exact(), Some(&TREE.dist_sq(&z, &x).unwrap()));
    }

    #[test]
    fn point_json_shapes() {
        let p = Point::sp(2, 1, 2);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"spoke":2,"radius":"1/2"}"#);
        let q = Point::euclid(vec![rat(1, 3), int(-2)]);
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"coords":["1/3","-2"]}"#);
        let back: Point = serde_json::from_str(r#"{"coords":["1/3", -2]}"#).unwrap();
        assert_eq!(back, q);
        let s: SpaceHandle = serde_json::from_str(r#"{"kind":"euclidean","dim":3}"#).unwrap();
        assert_eq!(s, SpaceHandle::euclidean(3));
    }
}
