//! Convex objectives, the functional `𝕀_f`, membership in `M^f_{y◊}` and the
//! proximal step.
//!
//! `𝕀_f(x, x◊, y◊) = inf_y { f(y) + π_y(x, x◊ + y◊) }` is evaluated over a
//! finite grid, which over-estimates the infimum. Membership
//! `(x, x◊) ∈ M^f_{y◊} ⟺ 𝕀_f(x, x◊, y◊) ≥ f(x)` is therefore three-valued:
//! a grid value below `f(x)` certifies non-membership, and in Euclidean space
//! the infimum is available in closed form because every catalog objective is
//! a quadratic `s|z|² + ⟨l, z⟩ + c` with `s ≥ 0`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dual::{eval_points, reduce_euclidean, DualElement};
use crate::error::{Error, Result};
use crate::flatness::{check_fl_property, default_lambdas, FlSample};
use crate::golden::{argmin, golden_section};
use crate::monotone::{is_monotone, Pair, PairSet};
use crate::rational::{self, Rational};
use crate::report::{Aggregate, CheckReport, Relation};
use crate::sample;
use crate::spaces::{dist_sq_unchecked, Point, SpaceHandle};

/// Objective catalog, evaluable exactly at every point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Objective {
    Add {
        args: Vec<Objective>,
    },
    /// `z ↦ scale · d(z, anchor)²`, `scale > 0`.
    #[serde(rename = "sqdist")]
    SqDist {
        anchor: Point,
        #[serde(with = "rational::serde_str", default = "rational::one")]
        scale: Rational,
    },
    /// `z ↦ π_base(z, dual)`.
    Coupling {
        base: Point,
        dual: DualElement,
    },
    Const {
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
}

impl Objective {
    pub fn zero() -> Self {
        Objective::Const { value: rational::zero() }
    }

    pub fn sqdist(anchor: Point, scale: Rational) -> Self {
        Objective::SqDist { anchor, scale }
    }

    pub fn coupling(base: Point, dual: DualElement) -> Self {
        Objective::Coupling { base, dual }
    }

    pub fn constant(value: Rational) -> Self {
        Objective::Const { value }
    }

    pub fn plus(self, other: Objective) -> Self {
        match self {
            Objective::Add { mut args } => {
                args.push(other);
                Objective::Add { args }
            }
            first => Objective::Add { args: vec![first, other] },
        }
    }

    pub fn check(&self, space: &SpaceHandle) -> Result<()> {
        match self {
            Objective::Add { args } => args.iter().try_for_each(|a| a.check(space)),
            Objective::SqDist { anchor, scale } => {
                if !scale.is_positive() {
                    return Err(Error::InvalidObjective(format!("sqdist scale {scale} must be positive")));
                }
                space.check(anchor)
            }
            Objective::Coupling { base, dual } => {
                space.check(base)?;
                dual.check(space)
            }
            Objective::Const { .. } => Ok(()),
        }
    }

    /// Whether a coupling term is present; on the spoke tree such terms need
    /// not be convex.
    pub fn has_coupling(&self) -> bool {
        match self {
            Objective::Add { args } => args.iter().any(Objective::has_coupling),
            Objective::Coupling { dual, .. } => !dual.pruned().is_empty(),
            _ => false,
        }
    }

    /// Sum of the duals of all coupling terms. Couplings at different bases
    /// differ by a constant, so this dual carries all their curvature.
    pub fn coupling_dual(&self) -> DualElement {
        match self {
            Objective::Add { args } => args.iter().fold(DualElement::zero(), |acc, a| acc.plus(&a.coupling_dual())),
            Objective::Coupling { dual, .. } => dual.clone(),
            _ => DualElement::zero(),
        }
    }

    fn eval_unchecked(&self, z: &Point) -> Rational {
        match self {
            Objective::Add { args } => args.iter().map(|a| a.eval_unchecked(z)).sum(),
            Objective::SqDist { anchor, scale } => scale * dist_sq_unchecked(z, anchor),
            Objective::Coupling { base, dual } => eval_points(dual, base, z),
            Objective::Const { value } => value.clone(),
        }
    }

    fn collect_points<'a>(&'a self, out: &mut Vec<&'a Point>) {
        match self {
            Objective::Add { args } => args.iter().for_each(|a| a.collect_points(out)),
            Objective::SqDist { anchor, .. } => out.push(anchor),
            Objective::Coupling { base, dual } => {
                out.push(base);
                out.extend(dual.points());
            }
            Objective::Const { .. } => {}
        }
    }
}

/// Exact `f(z)`.
pub fn eval_objective(space: &SpaceHandle, f: &Objective, z: &Point) -> Result<Rational> {
    f.check(space)?;
    space.check(z)?;
    Ok(f.eval_unchecked(z))
}

/// `s|z|² + ⟨linear, z⟩ + constant` on Euclidean space.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub s: Rational,
    pub linear: Vec<Rational>,
    pub constant: Rational,
}

impl Quadratic {
    fn zero(dim: usize) -> Self {
        Quadratic { s: rational::zero(), linear: vec![rational::zero(); dim], constant: rational::zero() }
    }

    /// Exact infimum and a minimizer, or `None` when unbounded below.
    pub fn minimize(&self) -> Option<(Vec<Rational>, Rational)> {
        if self.s.is_zero() {
            if self.linear.iter().all(Zero::is_zero) {
                return Some((vec![rational::zero(); self.linear.len()], self.constant.clone()));
            }
            return None;
        }
        let two_s = &self.s * rational::int(2);
        let z: Vec<Rational> = self.linear.iter().map(|l| -l / &two_s).collect();
        let norm_sq: Rational = self.linear.iter().map(|l| l * l).sum();
        let value = &self.constant - norm_sq / (&self.s * rational::int(4));
        Some((z, value))
    }
}

/// Closed-form quadratic of a catalog objective on Euclidean space.
pub fn euclidean_quadratic(space: &SpaceHandle, f: &Objective) -> Result<Quadratic> {
    let dim = match space {
        SpaceHandle::Euclidean { dim } => *dim,
        other => return Err(Error::NotEuclidean(*other)),
    };
    f.check(space)?;
    fn walk(space: &SpaceHandle, f: &Objective, q: &mut Quadratic) -> Result<()> {
        match f {
            Objective::Add { args } => args.iter().try_for_each(|a| walk(space, a, q))?,
            Objective::SqDist { anchor: Point::Euclid(a), scale } => {
                // k|z − a|² = k|z|² − 2k⟨a, z⟩ + k|a|²
                q.s += scale;
                for (l, ai) in q.linear.iter_mut().zip(a) {
                    *l -= scale * ai * rational::int(2);
                }
                q.constant += scale * a.iter().map(|x| x * x).sum::<Rational>();
            }
            Objective::Coupling { base: Point::Euclid(p), dual } => {
                // ⟨r, z − p⟩ with r the reduced dual
                let r = reduce_euclidean(space, dual)?;
                for (l, ri) in q.linear.iter_mut().zip(&r) {
                    *l += ri;
                }
                q.constant -= r.iter().zip(p).map(|(ri, pi)| ri * pi).sum::<Rational>();
            }
            Objective::Const { value } => q.constant += value,
            _ => unreachable!("points validated as Euclidean"),
        }
        Ok(())
    }
    let mut q = Quadratic::zero(dim);
    walk(space, f, &mut q)?;
    Ok(q)
}

/// Grid evaluation of `𝕀_f`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IfValue {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub argmin: Point,
}

/// `min_{y ∈ grid} f(y) + ⟨x◊ + y◊, yx→⟩`, an upper bound on `𝕀_f(x, x◊, y◊)`.
pub fn i_functional(
    space: &SpaceHandle,
    f: &Objective,
    x: &Point,
    x_dual: &DualElement,
    y_dual: &DualElement,
    grid: &[Point],
) -> Result<IfValue> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    f.check(space)?;
    space.check(x)?;
    x_dual.check(space)?;
    y_dual.check(space)?;
    space.check_all(grid)?;
    let sum = x_dual.plus(y_dual);
    let values: Vec<Rational> = grid.par_iter().map(|y| f.eval_unchecked(y) + eval_points(&sum, y, x)).collect();
    let i = argmin(&values).expect("nonempty grid");
    Ok(IfValue { value: values[i].clone(), argmin: grid[i].clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// A point with `f(y) + ⟨x◊+y◊, yx→⟩ < f(x)` exists: not a member.
    CertifiedOut,
    /// The grid found no certificate; membership undecided.
    Consistent,
    /// The exact infimum is at least `f(x)`: a member.
    ExactIn,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipReport {
    pub verdict: Membership,
    pub grid: IfValue,
    #[serde(with = "rational::serde_str")]
    pub f_at_x: Rational,
    /// Closed-form infimum when available; `None` for the spoke tree, and
    /// also recorded as `unbounded` when the infimum is `−∞`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_inf: Option<String>,
}

/// Closed-form `𝕀_f` on Euclidean space: `Some(None)` means `−∞`.
fn exact_i_functional(
    space: &SpaceHandle,
    f: &Objective,
    x: &Point,
    sum: &DualElement,
) -> Result<Option<Option<Rational>>> {
    let SpaceHandle::Euclidean { .. } = space else {
        return Ok(None);
    };
    let Point::Euclid(xc) = x else { unreachable!("validated") };
    // f(y) + ⟨r, x − y⟩
    let mut q = euclidean_quadratic(space, f)?;
    let r = reduce_euclidean(space, sum)?;
    for (l, ri) in q.linear.iter_mut().zip(&r) {
        *l -= ri;
    }
    q.constant += r.iter().zip(xc).map(|(ri, xi)| ri * xi).sum::<Rational>();
    Ok(Some(q.minimize().map(|(_, v)| v)))
}

/// Three-valued membership of `pair` in `M^f_{y◊}`.
pub fn mf_membership(
    space: &SpaceHandle,
    f: &Objective,
    pair: &Pair,
    y_dual: &DualElement,
    grid: &[Point],
) -> Result<MembershipReport> {
    let grid_value = i_functional(space, f, &pair.point, &pair.dual, y_dual, grid)?;
    let f_at_x = f.eval_unchecked(&pair.point);
    let exact = exact_i_functional(space, f, &pair.point, &pair.dual.plus(y_dual))?;
    let verdict = if grid_value.value < f_at_x {
        Membership::CertifiedOut
    } else {
        match &exact {
            Some(Some(inf)) if *inf >= f_at_x => Membership::ExactIn,
            Some(_) => Membership::CertifiedOut,
            None => Membership::Consistent,
        }
    };
    let exact_inf = exact.map(|e| e.map_or_else(|| "unbounded".to_string(), |v| rational::format(&v)));
    Ok(MembershipReport { verdict, grid: grid_value, f_at_x, exact_inf })
}

/// Grid-level check of the translation identities for `f̃ = f − π_p(·, y◊)`:
///
/// * `𝕀_{f̃}(x, x◊−y◊, y◊) − f̃(x) = 𝕀_f(x, x◊, y◊) − f(x)`,
/// * `𝕀_f(x, x◊−y◊, y◊) = 𝕀_f(x, x◊, 0)` with equal membership verdicts,
/// * `𝕀_{f̃}(x, x◊, 0) − f̃(x) = 𝕀_f(x, x◊, y◊) − f(x)`, i.e. `M^f_{y◊} = M^{f̃}_0`.
///
/// Each identity holds per grid point, so the minima agree exactly.
pub fn mf_translate_check(
    space: &SpaceHandle,
    f: &Objective,
    pair: &Pair,
    y_dual: &DualElement,
    p: &Point,
    grid: &[Point],
) -> Result<CheckReport> {
    let x = &pair.point;
    let x_dual = &pair.dual;
    let zero = DualElement::zero();
    let shifted = x_dual.minus(y_dual);
    let f_tilde = f.clone().plus(Objective::coupling(p.clone(), y_dual.neg()));
    f_tilde.check(space)?;
    let fx = eval_objective(space, f, x)?;
    let ftx = f_tilde.eval_unchecked(x);

    let reference = i_functional(space, f, x, x_dual, y_dual, grid)?.value - &fx;
    let mut agg = Aggregate::new("translation law");

    let lhs = i_functional(space, &f_tilde, x, &shifted, y_dual, grid)?.value - &ftx;
    agg.push(
        CheckReport::exact("translated gap", Relation::Eq, lhs, reference.clone())
            .with_witness(json!({ "identity": "I_ftilde(x, x*-y*, y*) - ftilde(x) = I_f(x, x*, y*) - f(x)" })),
    );

    let a = i_functional(space, f, x, &shifted, y_dual, grid)?.value;
    let b = i_functional(space, f, x, x_dual, &zero, grid)?.value;
    agg.push(
        CheckReport::exact("shifted pairing", Relation::Eq, a, b)
            .with_witness(json!({ "identity": "I_f(x, x*-y*, y*) = I_f(x, x*, 0)" })),
    );
    let in_y = mf_membership(space, f, &Pair::new(x.clone(), shifted.clone()), y_dual, grid)?.verdict;
    let in_0 = mf_membership(space, f, pair, &zero, grid)?.verdict;
    let same = if in_y == in_0 { rational::one() } else { rational::zero() };
    agg.push(CheckReport::exact("membership verdicts agree", Relation::Eq, same, rational::one()).with_witness(
        json!({
            "shifted_in_M_f_y": in_y,
            "pair_in_M_f_0": in_0,
        }),
    ));

    let c = i_functional(space, &f_tilde, x, x_dual, &zero, grid)?.value - &ftx;
    agg.push(
        CheckReport::exact("tilde gap", Relation::Eq, c, reference)
            .with_witness(json!({ "identity": "I_ftilde(x, x*, 0) - ftilde(x) = I_f(x, x*, y*) - f(x)" })),
    );
    Ok(agg.finish())
}

/// Keeps the candidates certified to lie in `M^f_{y◊}` and checks that they
/// form a monotone set.
pub fn monotonicity_of_mf(
    space: &SpaceHandle,
    f: &Objective,
    candidates: &[Pair],
    y_dual: &DualElement,
    grid: &[Point],
) -> Result<CheckReport> {
    let mut survivors = PairSet::empty(*space);
    for c in candidates {
        if mf_membership(space, f, c, y_dual, grid)?.verdict == Membership::ExactIn {
            survivors.insert(c.clone())?;
        }
    }
    let mut report = is_monotone(space, &survivors)?;
    report.check = format!("monotonicity of M^f ({} certified members)", survivors.len());
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ProxMethod {
    /// Closed form on Euclidean space, grid seeding plus golden-section
    /// refinement elsewhere.
    #[default]
    Auto,
    ClosedForm,
    GridRefine,
}

#[derive(Clone, Debug)]
pub struct ProxOptions {
    pub method: ProxMethod,
    /// Position tolerance of the golden-section refinement.
    pub tolerance: f64,
    /// Number of certificate sample points (at least 100 are used).
    pub certificate_samples: usize,
    /// Slack allowed in the quadratic-growth certificate.
    pub certificate_slack: f64,
    pub seed: u64,
}

impl Default for ProxOptions {
    fn default() -> Self {
        ProxOptions {
            method: ProxMethod::Auto,
            tolerance: 1e-10,
            certificate_samples: 100,
            certificate_slack: 1e-8,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProxResult {
    pub minimizer: Point,
    pub value: f64,
    #[serde(with = "rational::serde_str")]
    pub value_exact: Rational,
    /// `h(z) − h(x*) − ½d(x*, z)² ≥ −slack` on the sample points.
    pub certificate: CheckReport,
    pub method: ProxMethod,
    /// Set on the spoke tree unless `X × {y◊ + couplings of f}`, sampled,
    /// passed the F_l check.
    pub heuristic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fl_check: Option<CheckReport>,
}

/// `h(z) = f(z) + π_p(z, y◊) + ½ d(z, y)²`.
pub fn prox_objective(f: &Objective, y: &Point, y_dual: &DualElement, p: &Point) -> Objective {
    f.clone().plus(Objective::coupling(p.clone(), y_dual.clone())).plus(Objective::sqdist(y.clone(), rational::half()))
}

/// Minimizes `h(z) = f(z) + π_p(z, y◊) + ½ d(z, y)²`.
pub fn prox_step(space: &SpaceHandle, f: &Objective, y: &Point, y_dual: &DualElement, p: &Point) -> Result<ProxResult> {
    prox_step_with(space, f, y, y_dual, p, &ProxOptions::default())
}

pub fn prox_step_with(
    space: &SpaceHandle,
    f: &Objective,
    y: &Point,
    y_dual: &DualElement,
    p: &Point,
    opts: &ProxOptions,
) -> Result<ProxResult> {
    space.check(y)?;
    space.check(p)?;
    y_dual.check(space)?;
    let h = prox_objective(f, y, y_dual, p);
    h.check(space)?;

    let (minimizer, method) = match (space, opts.method) {
        (SpaceHandle::Euclidean { .. }, ProxMethod::Auto | ProxMethod::ClosedForm) => {
            let q = euclidean_quadratic(space, &h)?;
            let (z, _) = q.minimize().ok_or_else(|| Error::UnboundedBelow("prox objective".into()))?;
            (Point::Euclid(z), ProxMethod::ClosedForm)
        }
        (SpaceHandle::Euclidean { dim }, ProxMethod::GridRefine) => {
            (euclidean_coordinate_search(&h, y, *dim, opts)?, ProxMethod::GridRefine)
        }
        (SpaceHandle::SpokeTree, ProxMethod::ClosedForm) => {
            return Err(Error::Validation("closed-form prox is only available on Euclidean space".into()))
        }
        (SpaceHandle::SpokeTree, _) => (spoke_search(&h, opts)?, ProxMethod::GridRefine),
    };

    let minimizer = if method == ProxMethod::GridRefine { snap(&h, minimizer) } else { minimizer };
    let value_exact = h.eval_unchecked(&minimizer);
    let samples = certificate_points(space, &h, &minimizer, opts);
    let mut agg = Aggregate::new("strong convexity certificate");
    for z in &samples {
        let growth = h.eval_unchecked(z) - &value_exact - rational::half() * dist_sq_unchecked(&minimizer, z);
        agg.push(
            CheckReport::approx("growth", Relation::Ge, rational::to_f64(&growth), -opts.certificate_slack)
                .with_witness(json!({ "z": z })),
        );
    }
    let certificate = agg.finish();

    let (heuristic, fl_check) = match space {
        SpaceHandle::Euclidean { .. } => (false, None),
        SpaceHandle::SpokeTree => {
            let total = y_dual.plus(&f.coupling_dual());
            let mut m = PairSet::empty(*space);
            for z in samples.iter().step_by(4) {
                m.insert(Pair::new(z.clone(), total.clone()))?;
            }
            let r = check_fl_property(space, &m, &FlSample::new(p.clone()).with_lambdas(default_lambdas()))?;
            (!r.passed, Some(r))
        }
    };

    Ok(ProxResult {
        value: rational::to_f64(&value_exact),
        minimizer,
        value_exact,
        certificate,
        method,
        heuristic,
        fl_check,
    })
}

const GRID_STEPS: usize = 32;
const MAX_EXPANSIONS: usize = 40;

/// Seeds a 1-D grid, widens it while the minimum sits on an edge, then
/// refines the bracket around the best grid point.
fn line_search(phi: &impl Fn(f64) -> Rational, center: f64, radius: f64, tol: f64) -> Result<f64> {
    let mut center = center;
    let mut radius = radius;
    for _ in 0..MAX_EXPANSIONS {
        let step = 2.0 * radius / GRID_STEPS as f64;
        let ts: Vec<f64> = (0..=GRID_STEPS).map(|k| center - radius + step * k as f64).collect();
        let values: Vec<Rational> = ts.iter().map(|&t| phi(t)).collect();
        let k = argmin(&values).expect("nonempty");
        if k == 0 || k == GRID_STEPS {
            center = ts[k];
            radius *= 2.0;
            continue;
        }
        let (t, _) = golden_section(phi, ts[k - 1], ts[k + 1], tol);
        return Ok(t);
    }
    Err(Error::UnboundedBelow(format!("values keep decreasing beyond |t - c| = {radius:e}")))
}

fn euclidean_coordinate_search(h: &Objective, start: &Point, dim: usize, opts: &ProxOptions) -> Result<Point> {
    let Point::Euclid(start) = start else { unreachable!("validated") };
    let mut z: Vec<f64> = start.iter().map(rational::to_f64).collect();
    let mut scale = 1.0f64;
    let mut pts = Vec::new();
    h.collect_points(&mut pts);
    for p in pts {
        if let Point::Euclid(c) = p {
            for x in c {
                scale = scale.max(rational::to_f64(x).abs());
            }
        }
    }
    let to_point = |z: &[f64]| -> Result<Point> {
        Ok(Point::Euclid(z.iter().map(|&x| rational::from_f64(x)).collect::<Result<Vec<_>>>()?))
    };
    for _sweep in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..dim {
            let base = z.clone();
            let phi = |t: f64| {
                let mut w = base.clone();
                w[i] = t;
                match to_point(&w) {
                    Ok(p) => h.eval_unchecked(&p),
                    Err(_) => Rational::from_integer(i64::MAX.into()),
                }
            };
            let t = line_search(&phi, z[i], 2.0 * scale, opts.tolerance * 1e-2)?;
            moved = moved.max((t - z[i]).abs());
            z[i] = t;
        }
        if moved < opts.tolerance {
            break;
        }
    }
    to_point(&z)
}

/// Replaces each coordinate by the simplest rational within `1e−9` when
/// that does not increase `h`.
fn snap(h: &Objective, z: Point) -> Point {
    let near = |x: &Rational| {
        let eps = rational::rat(1, 1_000_000_000) * rational::abs(x).max(rational::one());
        rational::simplest_between(&(x - &eps), &(x + &eps))
    };
    let snapped = match &z {
        Point::Euclid(c) => Point::Euclid(c.iter().map(near).collect()),
        Point::Spoke { spoke, radius } => {
            let r = near(radius).clamp(rational::zero(), rational::one());
            Point::spoke(*spoke, r).expect("clamped radius")
        }
    };
    if h.eval_unchecked(&snapped) <= h.eval_unchecked(&z) {
        snapped
    } else {
        z
    }
}

/// Spokes that can host the minimizer: every spoke used by the objective
/// plus one unused spoke standing for all the others.
fn candidate_spokes(h: &Objective) -> Vec<u64> {
    let mut pts = Vec::new();
    h.collect_points(&mut pts);
    let used: BTreeSet<u64> = pts
        .iter()
        .filter_map(|p| match p {
            Point::Spoke { spoke, radius } if !radius.is_zero() => Some(*spoke),
            _ => None,
        })
        .collect();
    let fresh = used.iter().next_back().map_or(1, |m| m + 1);
    used.into_iter().chain(std::iter::once(fresh)).collect()
}

fn spoke_point(spoke: u64, t: f64) -> Point {
    let r = rational::from_f64(t.clamp(0.0, 1.0)).expect("finite");
    Point::spoke(spoke, r).expect("clamped radius")
}

fn spoke_search(h: &Objective, opts: &ProxOptions) -> Result<Point> {
    let mut best: Option<(Point, Rational)> = None;
    for spoke in candidate_spokes(h) {
        let phi = |t: f64| h.eval_unchecked(&spoke_point(spoke, t));
        let ts: Vec<f64> = (0..=2 * GRID_STEPS).map(|k| k as f64 / (2 * GRID_STEPS) as f64).collect();
        let values: Vec<Rational> = ts.iter().map(|&t| phi(t)).collect();
        let k = argmin(&values).expect("nonempty");
        let lo = ts[k.saturating_sub(1)];
        let hi = ts[(k + 1).min(ts.len() - 1)];
        let (t, v) = golden_section(phi, lo, hi, opts.tolerance * 1e-2);
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((spoke_point(spoke, t), v));
        }
    }
    Ok(best.expect("at least one spoke").0)
}

/// Deterministic sample points for the growth certificate, starting with the
/// minimizer itself.
fn certificate_points(space: &SpaceHandle, h: &Objective, minimizer: &Point, opts: &ProxOptions) -> Vec<Point> {
    let n = opts.certificate_samples.max(100);
    let mut out = vec![minimizer.clone()];
    match (space, minimizer) {
        (SpaceHandle::Euclidean { .. }, Point::Euclid(c)) => {
            let mut rng = sample::rng(opts.seed);
            while out.len() < n {
                // Alternate coarse and fine offsets around the minimizer.
                let shrink = if out.len() % 2 == 0 { rational::one() } else { rational::rat(1, 64) };
                let z = c.iter().map(|x| x + sample::random_coefficient(&mut rng) * &shrink).collect();
                out.push(Point::Euclid(z));
            }
        }
        _ => {
            let spokes = candidate_spokes(h);
            let per = n.div_ceil(spokes.len()) + 1;
            for &s in &spokes {
                for k in 0..=per {
                    let p = Point::spoke(s, rational::rat(k as i64, per as i64)).expect("radius in range");
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
