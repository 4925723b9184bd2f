//! Quasilinearization: the surrogate inner product on bound vectors,
//!
//! ⟨ab→, cd→⟩ = ½ (d(a,d)² + d(b,c)² − d(a,c)² − d(b,d)²).

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rational::{self, Rational};
use crate::report::{CheckReport, Relation};
use crate::spaces::{dist_sq_unchecked, Point, SpaceHandle};

/// The ordered pair `tail → head`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundVector {
    pub tail: Point,
    pub head: Point,
}

impl BoundVector {
    pub fn new(tail: Point, head: Point) -> Self {
        BoundVector { tail, head }
    }

    /// The zero bound vector `0_x = xx→`.
    pub fn zero_at(x: Point) -> Self {
        BoundVector { head: x.clone(), tail: x }
    }

    pub fn reversed(&self) -> Self {
        BoundVector { tail: self.head.clone(), head: self.tail.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.tail == self.head
    }

    pub fn check(&self, space: &SpaceHandle) -> Result<()> {
        space.check(&self.tail)?;
        space.check(&self.head)
    }

    /// Exact squared length `d(tail, head)²`.
    pub fn len_sq(&self, space: &SpaceHandle) -> Result<Rational> {
        space.dist_sq(&self.tail, &self.head)
    }
}

/// Exact `⟨v, w⟩`.
pub fn qlin(space: &SpaceHandle, v: &BoundVector, w: &BoundVector) -> Result<Rational> {
    v.check(space)?;
    w.check(space)?;
    Ok(qlin_points(&v.tail, &v.head, &w.tail, &w.head))
}

/// `⟨ab→, cd→⟩` on points already validated.
pub(crate) fn qlin_points(a: &Point, b: &Point, c: &Point, d: &Point) -> Rational {
    if a == b || c == d {
        return rational::zero();
    }
    let twice = dist_sq_unchecked(a, d) + dist_sq_unchecked(b, c) - dist_sq_unchecked(a, c) - dist_sq_unchecked(b, d);
    twice * rational::half()
}

/// `⟨v, w⟩ ≤ |v|·|w|`, decided without square roots: a nonpositive pairing
/// passes outright, a positive one is compared after squaring.
pub fn check_cauchy_schwarz(space: &SpaceHandle, v: &BoundVector, w: &BoundVector) -> Result<CheckReport> {
    let q = qlin(space, v, w)?;
    let bound_sq = v.len_sq(space)? * w.len_sq(space)?;
    let mut report = if q.is_positive() {
        CheckReport::exact("cauchy-schwarz (squared)", Relation::Le, &q * &q, bound_sq.clone())
    } else {
        CheckReport::exact("cauchy-schwarz", Relation::Le, q.clone(), rational::zero())
    };
    report = report.with_witness(serde_json::json!({
        "qlin": rational::format(&q),
        "bound_squared": rational::format(&bound_sq),
    }));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rational::{int, rat};

    const TREE: SpaceHandle = SpaceHandle::SpokeTree;

    fn bv(a: Point, b: Point) -> BoundVector {
        BoundVector::new(a, b)
    }

    #[test]
    fn flat_identity_pairing() {
        // λ = 1/4 instance of the −5λ/6 computation.
        let v = bv(Point::sp(2, 1, 2), Point::sp(2, 1, 4));
        let w = bv(Point::sp(3, 1, 3), Point::sp(2, 1, 2));
        assert_eq!(qlin(&TREE, &v, &w).unwrap(), rat(-5, 24));
    }

    #[test]
    fn zero_and_self_pairings() {
        let a = Point::sp(1, 1, 3);
        let b = Point::sp(4, 2, 3);
        let w = bv(Point::sp(2, 1, 1), Point::root());
        assert_eq!(qlin(&TREE, &BoundVector::zero_at(a.clone()), &w).unwrap(), int(0));
        let v = bv(a.clone(), b.clone());
        assert_eq!(qlin(&TREE, &v, &v).unwrap(), TREE.dist_sq(&a, &b).unwrap());
        assert_eq!(qlin(&TREE, &v, &v.reversed()).unwrap(), -TREE.dist_sq(&a, &b).unwrap());
    }

    #[test]
    fn mixed_space_rejected() {
        let v = bv(Point::ints(&[0]), Point::ints(&[1]));
        let w = bv(Point::root(), Point::sp(1, 1, 2));
        assert!(matches!(qlin(&SpaceHandle::euclidean(1), &v, &w), Err(Error::PointNotInSpace { .. })));
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let v = bv(Point::sp(1, 1, 1), Point::sp(2, 1, 1));
        let r = check_cauchy_schwarz(&TREE, &v, &v).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, r.rhs);

        // Hand evaluation: ½(0 + 4 − 4 − 4) = −2, bound 2·2.
        let w = bv(Point::sp(3, 1, 1), Point::sp(1, 1, 1));
        assert_eq!(qlin(&TREE, &v, &w).unwrap(), int(-2));
        let r = check_cauchy_schwarz(&TREE, &v, &w).unwrap();
        assert!(r.passed);
        assert_eq!(r.witness.unwrap()["bound_squared"], "16");

        let e2 = SpaceHandle::euclidean(2);
        let v = bv(Point::ints(&[0, 0]), Point::ints(&[1, 0]));
        let w = bv(Point::ints(&[0, 0]), Point::ints(&[0, 1]));
        assert_eq!(qlin(&e2, &v, &w).unwrap(), int(0));
        assert!(check_cauchy_schwarz(&e2, &v, &w).unwrap().passed);
    }
}
