//! Flatness and the F_l-property.
//!
//! A space is flat when `⟨x((1−λ)x⊕λy)→, ab→⟩ = λ⟨xy→, ab→⟩` for all
//! inputs. A set `M ⊆ X × X◊` has the F_l-property when, for all
//! `x◊ ∈ Range(M)`, `x, y ∈ Dom(M)` and `λ ∈ [0,1]`,
//!
//! ```text
//! ⟨x◊, p((1−λ)x⊕λy)→⟩ ≤ (1−λ)⟨x◊, px→⟩ + λ⟨x◊, py→⟩
//! ```
//!
//! for a base point `p`. Neither property can be proven by sampling; the
//! checks here certify violations or report sampled consistency.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dual::{eval_points, DualElement};
use crate::error::Result;
use crate::monotone::{Pair, PairSet};
use crate::quasilin::qlin_points;
use crate::rational::{self, Rational};
use crate::report::{Aggregate, CheckReport, Relation};
use crate::sample;
use crate::spaces::{check_unit, geodesic_unchecked, Point, SpaceHandle};

/// Default interpolation parameters for F_l sampling.
pub fn default_lambdas() -> Vec<Rational> {
    [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)].iter().map(|&(n, d)| rational::rat(n, d)).collect()
}

/// Sampling data for an F_l check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlSample {
    #[serde(with = "rational::serde_vec", default = "default_lambdas")]
    pub lambdas: Vec<Rational>,
    pub base: Point,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_base: Option<Point>,
}

impl FlSample {
    pub fn new(base: Point) -> Self {
        FlSample { lambdas: default_lambdas(), base, second_base: None }
    }

    pub fn with_lambdas(mut self, lambdas: Vec<Rational>) -> Self {
        self.lambdas = lambdas;
        self
    }
}

/// Input of the flat identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatTuple {
    pub x: Point,
    pub y: Point,
    pub a: Point,
    pub b: Point,
    #[serde(with = "rational::serde_str")]
    pub lambda: Rational,
}

impl FlatTuple {
    /// The spoke-tree counterexample `x=[(2,1/2)]`, `y=[(1,1/2)]`,
    /// `a=[(3,1/3)]`, `b=[(2,1/2)]`, for which the two sides are
    /// `−5λ/6` and `−λ/2` when `0 < λ ≤ 1/2`.
    pub fn spoke_counterexample(lambda: Rational) -> Self {
        FlatTuple { x: Point::sp(2, 1, 2), y: Point::sp(1, 1, 2), a: Point::sp(3, 1, 3), b: Point::sp(2, 1, 2), lambda }
    }
}

/// Exact test of `⟨x((1−λ)x⊕λy)→, ab→⟩ = λ⟨xy→, ab→⟩`.
pub fn check_flat_identity(
    space: &SpaceHandle,
    x: &Point,
    y: &Point,
    a: &Point,
    b: &Point,
    lambda: &Rational,
) -> Result<CheckReport> {
    let c = space.geodesic_point(x, y, lambda)?;
    space.check_all([a, b])?;
    let lhs = qlin_points(x, &c, a, b);
    let rhs = lambda * qlin_points(x, y, a, b);
    Ok(CheckReport::exact("flat identity", Relation::Eq, lhs, rhs).with_witness(json!({
        "x": x, "y": y, "a": a, "b": b,
        "lambda": rational::format(lambda),
        "geodesic_point": c,
    })))
}

pub fn check_flat_tuple(space: &SpaceHandle, t: &FlatTuple) -> Result<CheckReport> {
    check_flat_identity(space, &t.x, &t.y, &t.a, &t.b, &t.lambda)
}

/// Runs the flat identity on `n` seeded random tuples. On the spoke tree the
/// known counterexample is checked first when `inject` is set. Stops at the
/// first violation.
pub fn test_flatness(space: &SpaceHandle, seed: u64, n: usize, inject: bool) -> Result<CheckReport> {
    space.validate()?;
    let mut agg = Aggregate::new("flatness");
    if inject && *space == SpaceHandle::SpokeTree {
        agg.push(check_flat_tuple(space, &FlatTuple::spoke_counterexample(rational::rat(1, 4)))?);
        if agg.has_failure() {
            return Ok(agg.finish());
        }
    }
    let mut rng = sample::rng(seed);
    for _ in 0..n {
        let [x, y, a, b] = [0; 4].map(|_| sample::random_point(space, &mut rng));
        let lambda = sample::random_lambda(&mut rng);
        agg.push(check_flat_identity(space, &x, &y, &a, &b, &lambda)?);
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// One F_l inequality for dual `dual`, base `p`, points `x`, `y` and `λ`.
pub fn check_fl_tuple(
    space: &SpaceHandle,
    dual: &DualElement,
    p: &Point,
    x: &Point,
    y: &Point,
    lambda: &Rational,
) -> Result<CheckReport> {
    dual.check(space)?;
    space.check(p)?;
    let c = space.geodesic_point(x, y, lambda)?;
    Ok(fl_tuple_unchecked(dual, p, x, y, lambda, &c))
}

fn fl_tuple_unchecked(
    dual: &DualElement,
    p: &Point,
    x: &Point,
    y: &Point,
    lambda: &Rational,
    c: &Point,
) -> CheckReport {
    let lhs = eval_points(dual, p, c);
    let rhs = (rational::one() - lambda) * eval_points(dual, p, x) + lambda * eval_points(dual, p, y);
    CheckReport::exact("F_l inequality", Relation::Le, lhs, rhs).with_witness(json!({
        "dual": dual, "base": p, "x": x, "y": y,
        "lambda": rational::format(lambda),
        "geodesic_point": c,
    }))
}

/// F_l inequality over `duals × tuples` at base `p`; first violation wins.
pub fn check_fl_tuples(
    space: &SpaceHandle,
    duals: &[&DualElement],
    p: &Point,
    tuples: &[(Point, Point, Rational)],
) -> Result<CheckReport> {
    space.check(p)?;
    let mut agg = Aggregate::new("F_l property");
    for (x, y, lambda) in tuples {
        check_unit(lambda)?;
        space.check_all([x, y])?;
    }
    let geodesics: Vec<Point> = tuples.iter().map(|(x, y, l)| geodesic_unchecked(x, y, l)).collect();
    for dual in duals {
        dual.check(space)?;
        for ((x, y, lambda), c) in tuples.iter().zip(&geodesics) {
            agg.push(fl_tuple_unchecked(dual, p, x, y, lambda, c));
            if agg.has_failure() {
                return Ok(agg.finish());
            }
        }
    }
    Ok(agg.finish())
}

fn fl_tuples_of(m: &PairSet, lambdas: &[Rational]) -> Vec<(Point, Point, Rational)> {
    let dom = m.domain();
    let mut out = Vec::with_capacity(dom.len() * dom.len() * lambdas.len());
    for x in &dom {
        for y in &dom {
            for l in lambdas {
                out.push(((*x).clone(), (*y).clone(), l.clone()));
            }
        }
    }
    out
}

/// F_l-property of `M` on the sampled `λ` values at `sample.base`. An empty
/// set passes vacuously and is flagged inconclusive.
pub fn check_fl_property(space: &SpaceHandle, m: &PairSet, sample: &FlSample) -> Result<CheckReport> {
    if m.is_empty() {
        return Ok(CheckReport::vacuous("F_l property"));
    }
    let range = m.range();
    check_fl_tuples(space, &range, &sample.base, &fl_tuples_of(m, &sample.lambdas))
}

/// Verdicts of the F_l check at two base points, plus the tuple-by-tuple
/// comparison of their slacks.
#[derive(Clone, Debug, Serialize)]
pub struct BaseIndependence {
    pub at_p: CheckReport,
    pub at_q: CheckReport,
    /// Passes when every tuple has the same exact slack at both bases.
    pub agreement: CheckReport,
}

pub fn check_fl_base_independence(
    space: &SpaceHandle,
    m: &PairSet,
    p: &Point,
    q: &Point,
    lambdas: &[Rational],
) -> Result<BaseIndependence> {
    let at_p = check_fl_property(space, m, &FlSample::new(p.clone()).with_lambdas(lambdas.to_vec()))?;
    let at_q = check_fl_property(space, m, &FlSample::new(q.clone()).with_lambdas(lambdas.to_vec()))?;
    let mut agg = Aggregate::new("F_l base independence");
    let tuples = fl_tuples_of(m, lambdas);
    for dual in m.range() {
        for (x, y, lambda) in &tuples {
            let c = geodesic_unchecked(x, y, lambda);
            let slack = |base: &Point| {
                let r = fl_tuple_unchecked(dual, base, x, y, lambda, &c);
                r.rhs.as_exact().expect("exact") - r.lhs.as_exact().expect("exact")
            };
            agg.push(CheckReport::exact("slack", Relation::Eq, slack(p), slack(q)).with_witness(json!({
                "dual": dual, "x": x, "y": y, "lambda": rational::format(lambda),
            })));
        }
    }
    let mut agreement = agg.finish();
    if at_p.passed != at_q.passed {
        agreement.passed = false;
    }
    Ok(BaseIndependence { at_p, at_q, agreement })
}

/// Convexity of `π_p(·, φ)` along the given geodesic triples:
/// `π_p((1−λ)a⊕λb, φ) ≤ (1−λ)π_p(a, φ) + λπ_p(b, φ)`.
pub fn check_pi_convexity(
    space: &SpaceHandle,
    phi: &DualElement,
    p: &Point,
    triples: &[(Point, Point, Rational)],
) -> Result<CheckReport> {
    use crate::dual::coupling;
    let mut agg = Aggregate::new("coupling convexity");
    for (a, b, lambda) in triples {
        let c = space.geodesic_point(a, b, lambda)?;
        let lhs = coupling(space, p, &c, phi)?;
        let rhs = (rational::one() - lambda) * coupling(space, p, a, phi)? + lambda * coupling(space, p, b, phi)?;
        agg.push(CheckReport::exact("coupling convexity", Relation::Le, lhs, rhs).with_witness(json!({
            "a": a, "b": b, "lambda": rational::format(lambda), "geodesic_point": c,
        })));
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// Turns a violated flat identity into an F_l violation: with `p = x` the
/// F_l inequality for `±[ab→]` reads `±⟨x c→, ab→⟩ ≤ ±λ⟨xy→, ab→⟩`, so one
/// of the two signs fails. Returns the two-point set `{(x, ±[ab→]), (y, ±[ab→])}`
/// and the sample `{λ}` at base `x`; `None` when the identity holds.
pub fn flat_violation_to_fl(space: &SpaceHandle, t: &FlatTuple) -> Result<Option<(PairSet, FlSample)>> {
    let report = check_flat_tuple(space, t)?;
    if report.passed {
        return Ok(None);
    }
    let lhs = report.lhs.as_exact().expect("exact");
    let rhs = report.rhs.as_exact().expect("exact");
    let dual = if lhs > rhs {
        DualElement::bound(t.a.clone(), t.b.clone())
    } else {
        DualElement::bound(t.b.clone(), t.a.clone())
    };
    let mut m = PairSet::empty(*space);
    m.insert(Pair::new(t.x.clone(), dual.clone()))?;
    m.insert(Pair::new(t.y.clone(), dual))?;
    let sample = FlSample::new(t.x.clone()).with_lambdas(vec![t.lambda.clone()]);
    Ok(Some((m, sample)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const TREE: SpaceHandle = SpaceHandle::SpokeTree;

    fn yn(n: u64) -> Point {
        Point::sp(n, 1, n as i64)
    }

    fn fl_example_set() -> PairSet {
        PairSet::new(TREE, (1..=5).map(|n| Pair::new(Point::sp(n, 1, 2), DualElement::bound(yn(n + 1), yn(n)))))
            .unwrap()
    }

    #[test]
    fn flat_identity_counterexample() {
        let t = FlatTuple::spoke_counterexample(rat(1, 4));
        let r = check_flat_tuple(&TREE, &t).unwrap();
        assert!(!r.passed);
        assert_eq!(r.lhs.as_exact(), Some(&rat(-5, 24)));
        assert_eq!(r.rhs.as_exact(), Some(&rat(-1, 8)));
        let r = check_flat_tuple(&TREE, &FlatTuple::spoke_counterexample(int(0))).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn euclidean_is_flat() {
        let r = test_flatness(&SpaceHandle::euclidean(3), 11, 1000, true).unwrap();
        assert!(r.passed && r.examined == 1000);
    }

    #[test]
    fn spoke_tree_is_not_flat() {
        for seed in [0, 1, 99] {
            let r = test_flatness(&TREE, seed, 50, true).unwrap();
            assert!(!r.passed);
        }
        let r = test_flatness(&TREE, 0, 0, false).unwrap();
        assert!(r.passed && r.inconclusive);
    }

    #[test]
    fn fl_counterexample() {
        let m = fl_example_set();
        let sample = FlSample::new(Point::sp(1, 1, 1)).with_lambdas(vec![rat(1, 3)]);
        assert!(!check_fl_property(&TREE, &m, &sample).unwrap().passed);
        let r = check_fl_tuple(
            &TREE,
            &DualElement::bound(yn(5), yn(4)),
            &Point::sp(1, 1, 1),
            &Point::sp(1, 1, 2),
            &Point::sp(3, 1, 2),
            &rat(1, 3),
        )
        .unwrap();
        assert!(!r.passed);
        assert_eq!(r.lhs.as_exact(), Some(&rat(1, 24)));
        assert_eq!(r.rhs.as_exact(), Some(&rat(1, 40)));
        assert_eq!(r.witness.unwrap()["geodesic_point"], serde_json::json!({"spoke": 1, "radius": "1/6"}));
    }

    #[test]
    fn singleton_has_fl_property() {
        let m = PairSet::new(TREE, [Pair::new(Point::sp(2, 1, 3), DualElement::bound(yn(5), yn(4)))]).unwrap();
        let r = check_fl_property(&TREE, &m, &FlSample::new(Point::sp(1, 1, 1))).unwrap();
        assert!(r.passed && !r.inconclusive);
        assert!(check_fl_property(&TREE, &PairSet::empty(TREE), &FlSample::new(Point::root())).unwrap().inconclusive);
    }

    #[test]
    fn base_independence() {
        // Oracle at base q = [(2,1)]: LHS and RHS both shift by ⟨[y₅y₄→], qp→⟩,
        // so the 1/24 vs 1/40 gap survives.
        let m = fl_example_set();
        let bi = check_fl_base_independence(&TREE, &m, &Point::sp(1, 1, 1), &Point::sp(2, 1, 1), &[rat(1, 3)]).unwrap();
        assert!(!bi.at_p.passed && !bi.at_q.passed && bi.agreement.passed);
        let shift = eval_points(&DualElement::bound(yn(5), yn(4)), &Point::sp(2, 1, 1), &Point::sp(1, 1, 1));
        let at_q = check_fl_tuple(
            &TREE,
            &DualElement::bound(yn(5), yn(4)),
            &Point::sp(2, 1, 1),
            &Point::sp(1, 1, 2),
            &Point::sp(3, 1, 2),
            &rat(1, 3),
        )
        .unwrap();
        assert_eq!(at_q.lhs.as_exact(), Some(&(rat(1, 24) + &shift)));
        assert_eq!(at_q.rhs.as_exact(), Some(&(rat(1, 40) + &shift)));
    }

    #[test]
    fn pi_convexity_matches_fl() {
        let phi = DualElement::bound(yn(5), yn(4));
        let p = Point::sp(1, 1, 1);
        let triples = vec![(Point::sp(1, 1, 2), Point::sp(3, 1, 2), rat(1, 3))];
        let r = check_pi_convexity(&TREE, &phi, &p, &triples).unwrap();
        assert!(!r.passed);
        assert_eq!(check_fl_tuples(&TREE, &[&phi], &p, &triples).unwrap().passed, r.passed);
        let ends =
            vec![(Point::sp(1, 1, 2), Point::sp(3, 1, 2), int(0)), (Point::sp(1, 1, 2), Point::sp(3, 1, 2), int(1))];
        let r = check_pi_convexity(&TREE, &phi, &p, &ends).unwrap();
        assert!(r.passed && r.lhs == r.rhs);
    }

    #[test]
    fn converter_produces_fl_failure() {
        let t = FlatTuple::spoke_counterexample(rat(1, 3));
        let (m, s) = flat_violation_to_fl(&TREE, &t).unwrap().unwrap();
        assert!(!check_fl_property(&TREE, &m, &s).unwrap().passed);
        let ok = FlatTuple::spoke_counterexample(int(0));
        assert!(flat_violation_to_fl(&TREE, &ok).unwrap().is_none());
    }
}
