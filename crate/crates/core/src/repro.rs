//! Exact reproduction of the worked spoke-tree examples.
//!
//! Every item compares computed rationals against the expected closed-form
//! values with zero tolerance.

use serde::Serialize;

use crate::dual::DualElement;
use crate::error::Result;
use crate::flatness::{check_fl_property, check_fl_tuple, check_flat_tuple, test_flatness, FlSample, FlatTuple};
use crate::monotone::{is_maximal_in, is_monotone, mu_value, polar, Pair, PairSet};
use crate::rational::{self, rat, Rational};
use crate::spaces::{Point, SpaceHandle};

/// Size of the monotone example family checked here.
pub const FAMILY_SIZE: u64 = 20;

#[derive(Clone, Debug, Serialize)]
pub struct ReproItem {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub seed: u64,
    pub passed: bool,
    pub items: Vec<ReproItem>,
}

struct Items(Vec<ReproItem>);

impl Items {
    fn push(&mut self, id: &str, description: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        self.0.push(ReproItem {
            id: id.into(),
            description: description.into(),
            passed: expected == actual,
            expected,
            actual,
        });
    }
}

fn f(r: &Rational) -> String {
    rational::format(r)
}

fn exact_sides(r: &crate::report::CheckReport) -> (Rational, Rational) {
    (r.lhs.as_exact().expect("exact").clone(), r.rhs.as_exact().expect("exact").clone())
}

/// `y_n = [(n, 1/n)]`.
pub fn y_point(n: u64) -> Point {
    Point::sp(n, 1, n as i64)
}

/// `{(x_n, [y_(n+1) y_n]) : n ≤ 5}` with `x_n = [(n, 1/2)]`.
pub fn fl_family() -> PairSet {
    let pairs = (1..=5).map(|n| Pair::new(Point::sp(n, 1, 2), DualElement::bound(y_point(n + 1), y_point(n))));
    PairSet::new(SpaceHandle::SpokeTree, pairs).expect("distinct pairs")
}

/// `x_n = [(n, 1)]`, `x◊_n = [x_{n+1} 0]`, paired as `(x_n, x◊_n)`.
pub fn star_family(n: u64) -> PairSet {
    let pairs =
        (1..=n).map(|k| Pair::new(Point::sp(k, 1, 1), DualElement::bound(Point::sp(k + 1, 1, 1), Point::root())));
    PairSet::new(SpaceHandle::SpokeTree, pairs).expect("distinct pairs")
}

/// The pair `(0, [(1,1/2) (1,1)])` that extends [`star_family`].
pub fn star_extension() -> Pair {
    Pair::new(Point::root(), DualElement::bound(Point::sp(1, 1, 2), Point::sp(1, 1, 1)))
}

/// Runs every reproduction item. `seed` drives the sampled flatness run.
pub fn worked_examples(seed: u64) -> Result<ReproReport> {
    let tree = SpaceHandle::SpokeTree;
    let mut items = Items(Vec::new());

    for lambda in [rat(1, 4), rat(1, 3), rat(1, 2)] {
        let r = check_flat_tuple(&tree, &FlatTuple::spoke_counterexample(lambda.clone()))?;
        let (lhs, rhs) = exact_sides(&r);
        let want_l = -rat(5, 6) * &lambda;
        let want_r = -rat(1, 2) * &lambda;
        items.push(
            &format!("flat-identity-{}", f(&lambda)),
            format!("flat identity fails on the spoke tree at lambda = {}", f(&lambda)),
            format!("{} vs {} (fails)", f(&want_l), f(&want_r)),
            format!("{} vs {}{}", f(&lhs), f(&rhs), if r.passed { "" } else { " (fails)" }),
        );
    }

    let sampled = test_flatness(&tree, seed, 200, true)?;
    items.push(
        "flatness-sampling",
        "seeded flatness test on the spoke tree reports a violation",
        "fail",
        if sampled.passed { "pass" } else { "fail" },
    );

    let m = fl_family();
    let base = Point::sp(1, 1, 1);
    let (x1, x3) = (Point::sp(1, 1, 2), Point::sp(3, 1, 2));
    let witness_dual = DualElement::bound(y_point(5), y_point(4));
    let c = tree.geodesic_point(&x1, &x3, &rat(1, 3))?;
    items.push("fl-geodesic-point", "geodesic point (2/3)x_1 + (1/3)x_3", Point::sp(1, 1, 6), &c);
    let r = check_fl_tuple(&tree, &witness_dual, &base, &x1, &x3, &rat(1, 3))?;
    let (lhs, rhs) = exact_sides(&r);
    items.push(
        "fl-witness",
        "F_l inequality for [y_5 y_4] at base [(1,1)] along [x_1, x_3], lambda = 1/3",
        "1/24 <= 1/40 (fails)",
        format!("{} <= {}{}", f(&lhs), f(&rhs), if r.passed { "" } else { " (fails)" }),
    );
    let sample = FlSample::new(base).with_lambdas(vec![rat(1, 3)]);
    let whole = check_fl_property(&tree, &m, &sample)?;
    items.push(
        "fl-property",
        "F_l property of {(x_n, [y_(n+1) y_n]) : n <= 5}",
        "fail",
        if whole.passed { "pass" } else { "fail" },
    );

    let fam = star_family(FAMILY_SIZE);
    let (mut twos, mut zeros, mut other) = (0usize, 0usize, Vec::new());
    for (i, p) in fam.iter().enumerate() {
        for (j, q) in fam.iter().enumerate() {
            if i == j {
                continue;
            }
            let v = mu_value(&tree, p, q)?;
            let adjacent = i.abs_diff(j) == 1;
            let want = if adjacent { rational::int(2) } else { rational::zero() };
            if v != want {
                other.push(format!("({},{})={}", i + 1, j + 1, f(&v)));
            } else if adjacent {
                twos += 1;
            } else {
                zeros += 1;
            }
        }
    }
    let pairs = FAMILY_SIZE as usize;
    items.push(
        "star-mu-values",
        format!("mu values of the star family, n, m <= {FAMILY_SIZE}: 2 when |n-m| = 1, else 0"),
        format!("{} twos, {} zeros", 2 * (pairs - 1), pairs * (pairs - 1) - 2 * (pairs - 1)),
        if other.is_empty() {
            format!("{twos} twos, {zeros} zeros")
        } else {
            format!("mismatches {}", other.join(" "))
        },
    );
    items.push(
        "star-monotone",
        "the star family is monotone",
        "pass",
        if is_monotone(&tree, &fam)?.passed { "pass" } else { "fail" },
    );

    let z = star_extension();
    let ext: Vec<String> = fam.iter().map(|p| mu_value(&tree, &z, p).map(|v| f(&v))).collect::<Result<_>>()?;
    let want: Vec<String> = (1..=FAMILY_SIZE).map(|n| if n == 1 { "1/2".into() } else { "3/2".into() }).collect();
    items.push(
        "star-extension-values",
        "mu values of (0, [(1,1/2) (1,1)]) against each (x_n, x*_n)",
        want.join(","),
        ext.join(","),
    );
    let mut g = fam.clone();
    g.insert(z.clone())?;
    let pol = polar(&tree, &fam, &g)?;
    items.push(
        "star-not-maximal",
        "the extension lies in the polar, so the family is not maximal",
        "true,false",
        format!("{},{}", pol.contains(&z), is_maximal_in(&tree, &fam, &g)?),
    );

    let passed = items.0.iter().all(|i| i.passed);
    Ok(ReproReport { seed, passed, items: items.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_reproduces() {
        let r = worked_examples(7).unwrap();
        for i in &r.items {
            assert!(i.passed, "{}: expected {} got {}", i.id, i.expected, i.actual);
        }
        assert!(r.passed);
    }
}
