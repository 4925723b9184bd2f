//! The F_l-property: a failing spoke-tree family, base independence, and
//! the passage from a flatness violation to an F_l violation.

use hadamono::flatness::{check_fl_base_independence, check_fl_property, flat_violation_to_fl, FlSample, FlatTuple};
use hadamono::rational::rat;
use hadamono::repro::fl_family;
use hadamono::{Point, SpaceHandle};

fn main() -> hadamono::Result<()> {
    let tree = SpaceHandle::SpokeTree;
    let m = fl_family();
    let sample = FlSample::new(Point::sp(1, 1, 1)).with_lambdas(vec![rat(1, 3)]);
    println!("{}", check_fl_property(&tree, &m, &sample)?);

    let b = check_fl_base_independence(&tree, &m, &Point::sp(1, 1, 1), &Point::sp(2, 1, 1), &[rat(1, 3), rat(1, 2)])?;
    println!("at p: {}\nat q: {}\n{}", b.at_p.passed, b.at_q.passed, b.agreement);

    if let Some((m, s)) = flat_violation_to_fl(&tree, &FlatTuple::spoke_counterexample(rat(1, 4)))? {
        println!("from the flat identity: {}", check_fl_property(&tree, &m, &s)?);
    }
    Ok(())
}
