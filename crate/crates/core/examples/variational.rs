//! The functional I_f, membership in M^f, and the proximal step.

use hadamono::rational::{half, int};
use hadamono::varfun::{
    i_functional, mf_membership, mf_translate_check, prox_step, prox_step_with, Objective, ProxMethod, ProxOptions,
};
use hadamono::{DualElement, Pair, Point, SpaceHandle};

fn main() -> hadamono::Result<()> {
    let line = SpaceHandle::euclidean(1);
    let o = Point::ints(&[0]);
    let one = Point::ints(&[1]);
    let f = Objective::sqdist(o.clone(), half());
    let unit = DualElement::bound(o.clone(), one.clone());
    let grid: Vec<Point> = (-8..=8).map(|k| Point::euclid(vec![hadamono::rational::rat(k, 4)])).collect();

    let v = i_functional(&line, &f, &one, &unit, &DualElement::zero(), &grid)?;
    println!("I_f(1, [0 1], 0) <= {} at {}", v.value, v.argmin);
    for scale in [1, 2] {
        let pair = Pair::new(one.clone(), unit.scaled(&int(scale)));
        let r = mf_membership(&line, &f, &pair, &DualElement::zero(), &grid)?;
        println!("(1, {scale}[0 1]) in M^f: {:?}", r.verdict);
    }
    println!("{}", mf_translate_check(&line, &f, &Pair::new(one.clone(), unit.clone()), &unit, &o, &grid)?);

    let square = Objective::sqdist(o.clone(), int(1));
    let exact = prox_step(&line, &square, &o, &unit, &o)?;
    let refined = prox_step_with(
        &line,
        &square,
        &o,
        &unit,
        &o,
        &ProxOptions { method: ProxMethod::GridRefine, ..Default::default() },
    )?;
    println!("prox: closed form {} (value {}), refined {}", exact.minimizer, exact.value_exact, refined.minimizer);

    let tree = SpaceHandle::SpokeTree;
    let g = Objective::sqdist(Point::sp(1, 1, 1), half()).plus(Objective::sqdist(Point::sp(2, 1, 1), half()));
    let r = prox_step(&tree, &g, &Point::sp(3, 1, 2), &DualElement::zero(), &Point::root())?;
    println!("spoke tree prox: {} value {} heuristic {}", r.minimizer, r.value_exact, r.heuristic);
    println!("{}", r.certificate);
    Ok(())
}
