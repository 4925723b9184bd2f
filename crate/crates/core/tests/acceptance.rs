//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hadamono::dual::{norm_lower_bound, norm_single};
use hadamono::flatness::{check_fl_property, check_fl_tuple, check_flat_identity, FlSample};
use hadamono::laws;
use hadamono::monotone::{is_maximal_in, is_monotone, mu_value, polar};
use hadamono::rational::{int, rat, to_f64, zero};
use hadamono::sample;
use hadamono::varfun::{prox_step_with, Objective, ProxMethod, ProxOptions};
use hadamono::{DualElement, Pair, PairSet, Point, Rational, SpaceHandle};
use rand::Rng;

const TREE: SpaceHandle = SpaceHandle::SpokeTree;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(r: &hadamono::CheckReport) -> (Rational, Rational) {
    (r.lhs.as_exact().cloned().expect("exact lhs"), r.rhs.as_exact().cloned().expect("exact rhs"))
}

fn flatness_counterexample() -> Outcome {
    for lambda in [rat(1, 4), rat(1, 3), rat(1, 2)] {
        let r = check_flat_identity(
            &TREE,
            &Point::sp(2, 1, 2),
            &Point::sp(1, 1, 2),
            &Point::sp(3, 1, 3),
            &Point::sp(2, 1, 2),
            &lambda,
        )
        .map_err(|e| e.to_string())?;
        let (lhs, rhs) = exact(&r);
        ensure(lhs == -rat(5, 6) * &lambda && rhs == -rat(1, 2) * &lambda && !r.passed, || {
            format!("lambda {lambda}: got {lhs} vs {rhs}, passed = {}", r.passed)
        })?;
    }
    Ok("lhs = -5λ/6, rhs = -λ/2 at λ = 1/4, 1/3, 1/2".into())
}

fn fl_counterexample() -> Outcome {
    let y = |n: u64| Point::sp(n, 1, n as i64);
    let x = |n: u64| Point::sp(n, 1, 2);
    let m = PairSet::new(TREE, (1..=5).map(|n| Pair::new(x(n), DualElement::bound(y(n + 1), y(n)))))
        .map_err(|e| e.to_string())?;
    let p = Point::sp(1, 1, 1);
    let lambda = rat(1, 3);
    let c = TREE.geodesic_point(&x(1), &x(3), &lambda).map_err(|e| e.to_string())?;
    ensure(c == Point::sp(1, 1, 6), || format!("geodesic point {c}"))?;
    let r =
        check_fl_tuple(&TREE, &DualElement::bound(y(5), y(4)), &p, &x(1), &x(3), &lambda).map_err(|e| e.to_string())?;
    let (lhs, rhs) = exact(&r);
    ensure(lhs == rat(1, 24) && rhs == rat(1, 40) && !r.passed, || {
        format!("got {lhs} <= {rhs}, passed = {}", r.passed)
    })?;
    let whole =
        check_fl_property(&TREE, &m, &FlSample::new(p).with_lambdas(vec![lambda])).map_err(|e| e.to_string())?;
    ensure(!whole.passed, || "F_l property unexpectedly passed".into())?;
    Ok("geodesic point [(1,1/6)], 1/24 > 1/40, property fails".into())
}

fn star(n: u64) -> PairSet {
    PairSet::new(
        TREE,
        (1..=n).map(|k| Pair::new(Point::sp(k, 1, 1), DualElement::bound(Point::sp(k + 1, 1, 1), Point::root()))),
    )
    .expect("distinct pairs")
}

fn rtree_monotone() -> Outcome {
    let m = star(20);
    for (i, a) in m.iter().enumerate() {
        for (j, b) in m.iter().enumerate() {
            if i == j {
                continue;
            }
            let v = mu_value(&TREE, a, b).map_err(|e| e.to_string())?;
            let want = if i.abs_diff(j) == 1 { int(2) } else { zero() };
            ensure(v == want, || format!("mu(x_{}, x_{}) = {v}, expected {want}", i + 1, j + 1))?;
        }
    }
    ensure(is_monotone(&TREE, &m).map_err(|e| e.to_string())?.passed, || "is_monotone failed".into())?;
    Ok("380 ordered pairs exact, monotone".into())
}

fn non_maximality() -> Outcome {
    let m = star(20);
    let z = Pair::new(Point::root(), DualElement::bound(Point::sp(1, 1, 2), Point::sp(1, 1, 1)));
    for (i, p) in m.iter().enumerate() {
        let v = mu_value(&TREE, &z, p).map_err(|e| e.to_string())?;
        let want = if i == 0 { rat(1, 2) } else { rat(3, 2) };
        ensure(v == want, || format!("n = {}: {v}, expected {want}", i + 1))?;
    }
    let mut g = m.clone();
    g.insert(z.clone()).map_err(|e| e.to_string())?;
    let pol = polar(&TREE, &m, &g).map_err(|e| e.to_string())?;
    ensure(pol.contains(&z), || "extension missing from the polar".into())?;
    ensure(!is_maximal_in(&TREE, &m, &g).map_err(|e| e.to_string())?, || "reported maximal".into())?;
    Ok("1/2 for n = 1, 3/2 otherwise, not maximal".into())
}

/// Hand-written spoke-tree distance, independent of the library.
fn tree_dist(a: &Point, b: &Point) -> f64 {
    match (a, b) {
        (Point::Spoke { spoke: s, radius: r }, Point::Spoke { spoke: t, radius: q }) => {
            let (r, q) = (to_f64(r), to_f64(q));
            if s == t || r == 0.0 || q == 0.0 {
                (r - q).abs()
            } else {
                r + q
            }
        }
        _ => unreachable!("spoke points"),
    }
}

fn dual_norm() -> Outcome {
    let mut rng = sample::rng(5);
    let mut done = 0;
    while done < 100 {
        let (a, b) = (sample::random_point(&TREE, &mut rng), sample::random_point(&TREE, &mut rng));
        if a == b {
            continue;
        }
        let t = sample::random_coefficient(&mut rng);
        let want = to_f64(&t).abs() * tree_dist(&a, &b);
        let single = norm_single(&TREE, &int(1), &t, &a, &b).map_err(|e| e.to_string())?;
        let phi = DualElement::term(int(1), t.clone(), a.clone(), b.clone());
        let lower = norm_lower_bound(&TREE, &phi, &[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
        ensure((single - want).abs() <= 1e-12 && (lower - want).abs() <= 1e-12, || {
            format!("t = {t}, a = {a}, b = {b}: single {single}, lower bound {lower}, expected {want}")
        })?;
        done += 1;
    }
    Ok("100 instances within 1e-12".into())
}

fn spaces() -> [SpaceHandle; 2] {
    [SpaceHandle::SpokeTree, SpaceHandle::euclidean(2)]
}

fn passed(r: hadamono::Result<hadamono::CheckReport>, space: &SpaceHandle) -> Result<usize, String> {
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.passed && !r.inconclusive, || format!("[{space}] {r}"))?;
    Ok(r.examined)
}

fn polarity_suite() -> Outcome {
    let mut examined = 0;
    for s in spaces() {
        examined += passed(laws::polarity_laws(&s, 11, 200, 10), &s)?;
    }
    Ok(format!("400 instances, {examined} exact checks"))
}

fn quasilinearization_axioms() -> Outcome {
    let mut examined = 0;
    for s in spaces() {
        examined += passed(laws::qlin_laws(&s, 13, 1000), &s)?;
        examined += passed(laws::cn_law(&s, 17, 1000), &s)?;
    }
    Ok(format!("{examined} exact checks"))
}

fn variational_suite() -> Outcome {
    let mut examined = 0;
    for s in spaces() {
        examined += passed(laws::i_functional_laws(&s, 19, 200), &s)?;
        examined += passed(laws::translation_laws(&s, 23, 100), &s)?;
    }

    let e1 = SpaceHandle::euclidean(1);
    let origin = Point::ints(&[0]);
    let f = Objective::sqdist(origin.clone(), int(1));
    let y_dual = DualElement::bound(origin.clone(), Point::ints(&[1]));
    let refine = ProxOptions { method: ProxMethod::GridRefine, ..ProxOptions::default() };
    let r = prox_step_with(&e1, &f, &origin, &y_dual, &origin, &refine).map_err(|e| e.to_string())?;
    let Point::Euclid(z) = &r.minimizer else { unreachable!() };
    ensure((to_f64(&z[0]) + 1.0 / 3.0).abs() <= 1e-8 && (r.value + 1.0 / 6.0).abs() <= 1e-8, || {
        format!("grid refinement gave {} with value {}", r.minimizer, r.value)
    })?;
    ensure(r.certificate.passed, || r.certificate.to_string())?;

    examined += passed(laws::prox_laws(&SpaceHandle::euclidean(2), 29, 100), &SpaceHandle::euclidean(2))?;
    let mut rng = sample::rng(31);
    for _ in 0..50 {
        let mut f = Objective::zero();
        for _ in 0..rng.gen_range(1..=3) {
            f = f.plus(Objective::sqdist(sample::random_point(&TREE, &mut rng), rat(rng.gen_range(1..=4), 2)));
        }
        let y = sample::random_point(&TREE, &mut rng);
        let p = sample::random_point(&TREE, &mut rng);
        let r = prox_step_with(&TREE, &f, &y, &DualElement::zero(), &p, &ProxOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(!r.heuristic && r.certificate.passed, || format!("spoke tree prox at y = {y}: {}", r.certificate))?;
        examined += r.certificate.examined;
    }
    Ok(format!("{examined} checks, prox example -1/3 / -1/6 by grid refinement"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hadamono"))
            .args(["repro-paper", "--format", "json", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || format!("exit codes {:?} / {:?}", a.status, b.status))?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 flatness counterexample", Duration::from_secs(1), flatness_counterexample),
        ("2 F_l counterexample", Duration::from_secs(1), fl_counterexample),
        ("3 R-tree monotone set", Duration::from_secs(5), rtree_monotone),
        ("4 non-maximality", Duration::from_secs(5), non_maximality),
        ("5 dual norm", Duration::from_secs(5), dual_norm),
        ("6 polarity laws", Duration::from_secs(60), polarity_suite),
        ("7 quasilinearization axioms", Duration::from_secs(10), quasilinearization_axioms),
        ("8 variational suite", Duration::from_secs(60), variational_suite),
        ("9 determinism", Duration::from_secs(60), determinism),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > limit => Err(format!("{msg}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({took:.2?})"),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {name}: {msg} ({took:.2?})");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
