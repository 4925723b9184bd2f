//! Seeded sweeps over the algebraic laws the library relies on.
//!
//! Each sweep draws random instances, checks one family of identities or
//! inequalities exactly, and folds the results into a single report that
//! carries the first counterexample found.

use serde_json::json;

use crate::dual::{DualElement, DualTerm};
use crate::error::Result;
use crate::monotone::{
    enumerate_maximal_extensions, is_maximal_in, is_monotone, mu_closure, polar, Pair, PairSet,
    DEFAULT_ENUMERATION_LIMIT,
};
use crate::quasilin::{check_cauchy_schwarz, qlin_points, BoundVector};
use crate::rational::{self, Rational};
use crate::report::{Aggregate, CheckReport, Relation};
use crate::sample::{self, SampleRng};
use crate::spaces::{dist_sq_unchecked, Point, SpaceHandle};
use crate::varfun::{i_functional, mf_translate_check, prox_step_with, Objective, ProxMethod, ProxOptions};

fn eq(name: &str, lhs: Rational, rhs: Rational) -> CheckReport {
    CheckReport::exact(name, Relation::Eq, lhs, rhs)
}

fn holds(name: &str, ok: bool) -> CheckReport {
    let v = if ok { rational::one() } else { rational::zero() };
    eq(name, v, rational::one())
}

/// Distance, symmetry, the triangle inequality and constant-speed geodesics.
pub fn metric_laws(space: &SpaceHandle, seed: u64, n: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("metric and geodesic laws");
    for _ in 0..n {
        let [x, y, z] = [0; 3].map(|_| sample::random_point(space, &mut rng));
        let lambda = sample::random_lambda(&mut rng);
        let w = json!({ "x": x, "y": y, "z": z, "lambda": rational::format(&lambda) });
        agg.push(eq("d(x,x) = 0", space.dist_sq(&x, &x)?, rational::zero()).with_witness(w.clone()));
        agg.push(eq("d(x,y) = d(y,x)", space.dist_sq(&x, &y)?, space.dist_sq(&y, &x)?).with_witness(w.clone()));
        let (dxy, dyz, dxz) = (space.dist(&x, &y)?, space.dist(&y, &z)?, space.dist(&x, &z)?);
        agg.push(CheckReport::approx("triangle", Relation::Le, dxz, dxy + dyz + 1e-12).with_witness(w.clone()));
        let c = space.geodesic_point(&x, &y, &lambda)?;
        let d2 = space.dist_sq(&x, &y)?;
        let mu = rational::one() - &lambda;
        agg.push(eq("d(x,c) = λ d(x,y)", space.dist_sq(&x, &c)?, &lambda * &lambda * &d2).with_witness(w.clone()));
        agg.push(eq("d(c,y) = (1-λ) d(x,y)", space.dist_sq(&c, &y)?, &mu * &mu * &d2).with_witness(w));
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// Symmetry, antisymmetry, additivity, `⟨xy,xy⟩ = d²`, `⟨xy,yx⟩ = −d²` and
/// Cauchy–Schwarz for the quasilinearization.
pub fn qlin_laws(space: &SpaceHandle, seed: u64, n: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("quasilinearization laws");
    for _ in 0..n {
        let [a, b, c, d, x] = [0; 5].map(|_| sample::random_point(space, &mut rng));
        let w = json!({ "a": a, "b": b, "c": c, "d": d, "x": x });
        let q = qlin_points(&a, &b, &c, &d);
        agg.push(eq("symmetry", q.clone(), qlin_points(&c, &d, &a, &b)).with_witness(w.clone()));
        agg.push(eq("antisymmetry", q.clone(), -qlin_points(&b, &a, &c, &d)).with_witness(w.clone()));
        agg.push(
            eq("additivity", q, qlin_points(&a, &x, &c, &d) + qlin_points(&x, &b, &c, &d)).with_witness(w.clone()),
        );
        let d2 = dist_sq_unchecked(&a, &b);
        agg.push(eq("<ab,ab> = d^2", qlin_points(&a, &b, &a, &b), d2.clone()).with_witness(w.clone()));
        agg.push(eq("<ab,ba> = -d^2", qlin_points(&a, &b, &b, &a), -d2).with_witness(w));
        agg.push(check_cauchy_schwarz(space, &BoundVector::new(a, b), &BoundVector::new(c, d))?);
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// The CN inequality on random `(x, y, z, t)`.
pub fn cn_law(space: &SpaceHandle, seed: u64, n: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("CN inequality");
    for _ in 0..n {
        let [x, y, z] = [0; 3].map(|_| sample::random_point(space, &mut rng));
        let t = sample::random_lambda(&mut rng);
        agg.push(space.check_cn(&x, &y, &z, &t)?);
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// `½d(c,y)² ≤ (1−λ)½d(a,y)² + λ½d(b,y)² − ½λ(1−λ)d(a,b)²` for
/// `c = (1−λ)a ⊕ λb`.
pub fn sqdist_convexity(space: &SpaceHandle, seed: u64, n: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("strong convexity of half squared distance");
    let h = rational::half();
    for _ in 0..n {
        let [a, b, y] = [0; 3].map(|_| sample::random_point(space, &mut rng));
        let l = sample::random_lambda(&mut rng);
        let mu = rational::one() - &l;
        let c = space.geodesic_point(&a, &b, &l)?;
        let lhs = &h * space.dist_sq(&c, &y)?;
        let rhs = &mu * &h * space.dist_sq(&a, &y)? + &l * &h * space.dist_sq(&b, &y)?
            - &h * &l * &mu * space.dist_sq(&a, &b)?;
        agg.push(
            CheckReport::exact("half squared distance", Relation::Le, lhs, rhs)
                .with_witness(json!({ "a": a, "b": b, "y": y, "lambda": rational::format(&l) })),
        );
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// One random `(M, G)` instance: `G` of at most `max_ground` pairs, `M ⊆ G`.
pub fn random_instance(space: &SpaceHandle, rng: &mut SampleRng, max_ground: usize) -> (PairSet, PairSet) {
    let g = sample::random_pair_set(space, rng, max_ground);
    let m = sample::random_subset(&g, rng);
    (m, g)
}

/// Polarity laws relative to a ground set, the monotonicity equivalences and
/// the description of polar and closure through maximal extensions.
pub fn polarity_laws(space: &SpaceHandle, seed: u64, n: usize, max_ground: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("polarity laws");
    for _ in 0..n {
        let (m1, g) = random_instance(space, &mut rng, max_ground);
        let m2 = sample::random_subset(&g, &mut rng);
        let w = json!({ "ground": g, "m1": m1, "m2": m2 });
        let p1 = polar(space, &m1, &g)?;
        let p2 = polar(space, &m2, &g)?;
        let both = m1.union(&m2)?;
        let pboth = polar(space, &both, &g)?;
        let c1 = mu_closure(space, &m1, &g)?;

        agg.push(holds("antitone", !m1.is_subset(&both) || pboth.is_subset(&p1)).with_witness(w.clone()));
        agg.push(holds("M within its closure", m1.is_subset(&c1)).with_witness(w.clone()));
        agg.push(holds("triple polar", polar(space, &c1, &g)?.set_eq(&p1)).with_witness(w.clone()));
        agg.push(holds("union law", pboth.set_eq(&p1.intersection(&p2)?)).with_witness(w.clone()));
        agg.push(
            holds("polar of empty", polar(space, &PairSet::empty(*space), &g)?.set_eq(&g)).with_witness(w.clone()),
        );

        let a = is_monotone(space, &m1)?.passed;
        let b = m1.is_subset(&p1);
        let c = c1.is_subset(&p1);
        let d = is_monotone(space, &c1)?.passed;
        agg.push(holds("monotone iff inside polar", a == b).with_witness(w.clone()));
        agg.push(holds("monotone iff closure inside polar", a == c).with_witness(w.clone()));
        agg.push(holds("monotone iff closure monotone", a == d).with_witness(w.clone()));
        if a {
            let maximal = is_maximal_in(space, &m1, &g)?;
            agg.push(holds("maximal iff equal to polar", maximal == p1.set_eq(&m1)).with_witness(w.clone()));
        }

        let mono = sample::random_monotone_subset(space, &g, &mut rng);
        let exts = enumerate_maximal_extensions(space, &mono, &g, DEFAULT_ENUMERATION_LIMIT)?;
        let pm = polar(space, &mono, &g)?;
        let cm = mu_closure(space, &mono, &g)?;
        let mut union = PairSet::empty(*space);
        let mut inter: Option<PairSet> = None;
        for e in &exts {
            union = union.union(e)?;
            inter = Some(match inter {
                None => e.clone(),
                Some(i) => i.intersection(e)?,
            });
        }
        let inter = inter.unwrap_or_else(|| g.clone());
        let w = json!({ "ground": g, "m": mono, "extensions": exts.len() });
        agg.push(holds("polar is the union of maximal extensions", union.set_eq(&pm)).with_witness(w.clone()));
        agg.push(holds("closure is the intersection of maximal extensions", inter.set_eq(&cm)).with_witness(w));
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

fn random_objective(space: &SpaceHandle, rng: &mut SampleRng) -> Objective {
    use rand::Rng;
    let anchor = sample::random_point(space, rng);
    let scale = rational::rat(rng.gen_range(1..=4), 2);
    let mut f = Objective::sqdist(anchor, scale);
    if rng.gen_bool(0.5) {
        let base = sample::random_point(space, rng);
        f = f.plus(Objective::coupling(base, sample::random_dual(space, rng, None, 2)));
    }
    f.plus(Objective::constant(sample::random_coefficient(rng)))
}

/// Random objective, point, duals and a grid for the variational sweeps.
pub struct VariationalInstance {
    pub f: Objective,
    pub x: Point,
    pub x_dual: DualElement,
    pub y_dual: DualElement,
    pub p: Point,
    pub grid: Vec<Point>,
}

pub fn random_variational(space: &SpaceHandle, rng: &mut SampleRng, grid_size: usize) -> VariationalInstance {
    let pool = sample::random_points(space, rng, 4);
    VariationalInstance {
        f: random_objective(space, rng),
        x: sample::random_point(space, rng),
        x_dual: sample::random_dual(space, rng, Some(&pool), 3),
        y_dual: sample::random_dual(space, rng, Some(&pool), 3),
        p: sample::random_point(space, rng),
        grid: sample::random_points(space, rng, grid_size),
    }
}

/// Swap symmetry, sum invariance and `𝕀_f(x,x◊,y◊) = 𝕀_f(x,0,x◊+y◊)` for
/// the grid functional.
pub fn i_functional_laws(space: &SpaceHandle, seed: u64, n: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("grid functional identities");
    let zero = DualElement::zero();
    for _ in 0..n {
        let v = random_variational(space, &mut rng, 30);
        let base = i_functional(space, &v.f, &v.x, &v.x_dual, &v.y_dual, &v.grid)?.value;
        let swapped = i_functional(space, &v.f, &v.x, &v.y_dual, &v.x_dual, &v.grid)?.value;
        let merged = i_functional(space, &v.f, &v.x, &zero, &v.x_dual.plus(&v.y_dual), &v.grid)?.value;
        let all: Vec<DualTerm> = v.x_dual.terms.iter().chain(&v.y_dual.terms).cloned().collect();
        let cut = all.len() / 2;
        let (u, w) = (DualElement { terms: all[..cut].to_vec() }, DualElement { terms: all[cut..].to_vec() });
        let regrouped = i_functional(space, &v.f, &v.x, &u, &w, &v.grid)?.value;
        let wit = json!({ "x": v.x, "x_dual": v.x_dual, "y_dual": v.y_dual });
        agg.push(eq("swap symmetry", base.clone(), swapped).with_witness(wit.clone()));
        agg.push(eq("sum invariance", base.clone(), regrouped).with_witness(wit.clone()));
        agg.push(eq("merged duals", base, merged).with_witness(wit));
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// Translation identities for `M^f_{y◊}` on random grid instances.
pub fn translation_laws(space: &SpaceHandle, seed: u64, n: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("translation identities");
    for _ in 0..n {
        let v = random_variational(space, &mut rng, 50);
        let pair = Pair::new(v.x, v.x_dual);
        agg.push(mf_translate_check(space, &v.f, &pair, &v.y_dual, &v.p, &v.grid)?);
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// Certificate of every prox output not flagged heuristic, and on Euclidean space agreement of the
/// closed form with grid refinement to `1e−8`.
pub fn prox_laws(space: &SpaceHandle, seed: u64, n: usize) -> Result<CheckReport> {
    let mut rng = sample::rng(seed);
    let mut agg = Aggregate::new("prox step");
    for _ in 0..n {
        let v = random_variational(space, &mut rng, 0);
        let y = sample::random_point(space, &mut rng);
        let opts = ProxOptions { seed, ..ProxOptions::default() };
        let r = prox_step_with(space, &v.f, &y, &v.y_dual, &v.p, &opts)?;
        if !r.heuristic {
            agg.push(r.certificate.clone());
        }
        if let SpaceHandle::Euclidean { .. } = space {
            let grid = prox_step_with(
                space,
                &v.f,
                &y,
                &v.y_dual,
                &v.p,
                &ProxOptions { method: ProxMethod::GridRefine, ..opts },
            )?;
            agg.push(grid.certificate.clone());
            let gap = space.dist(&r.minimizer, &grid.minimizer)?;
            agg.push(
                CheckReport::approx("closed form vs refinement", Relation::Le, gap, 1e-8)
                    .with_witness(json!({ "closed_form": r.minimizer, "refined": grid.minimizer })),
            );
        }
        if agg.has_failure() {
            break;
        }
    }
    Ok(agg.finish())
}

/// Every sweep with `n` instances each (polarity and variational sweeps use
/// fewer, as each instance is much larger).
pub fn all_laws(space: &SpaceHandle, seed: u64, n: usize) -> Result<Vec<CheckReport>> {
    let small = n.div_ceil(5).max(1);
    Ok(vec![
        metric_laws(space, seed, n)?,
        qlin_laws(space, seed, n)?,
        cn_law(space, seed, n)?,
        sqdist_convexity(space, seed, n)?,
        polarity_laws(space, seed, small, 10)?,
        i_functional_laws(space, seed, small)?,
        translation_laws(space, seed, small)?,
        prox_laws(space, seed, small.min(20))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_on_both_spaces() {
        for space in [SpaceHandle::SpokeTree, SpaceHandle::euclidean(2)] {
            for r in all_laws(&space, 3, 40).unwrap() {
                assert!(r.passed, "{space}: {r}");
            }
        }
    }
}
