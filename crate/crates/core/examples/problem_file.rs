//! Loads a problem file and runs a few checks on its named entities.
//!
//! `cargo run --example problem_file -- crates/core/examples/problems/spoke_star.json`

use hadamono::flatness::check_fl_property;
use hadamono::monotone::{is_monotone, polar};
use hadamono::problem::Problem;

fn main() -> hadamono::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/problems/spoke_star.json").into());
    let pb = Problem::from_file(path.as_ref())?;
    let space = pb.space()?;
    println!("{path}: {space}, {} points, {} pair sets", pb.points.len(), pb.pair_sets.len());
    for (name, set) in &pb.pair_sets {
        println!("  {name}: {}", is_monotone(&space, set)?);
    }
    for (name, g) in &pb.ground_sets {
        for (mname, m) in &pb.pair_sets {
            if m.is_subset(g) {
                println!("  polar({mname}, {name}) has {} pairs", polar(&space, m, g)?.len());
            }
        }
    }
    for (sname, sample) in &pb.samples {
        for (mname, m) in &pb.pair_sets {
            println!("  F_l of {mname} on {sname}: {}", check_fl_property(&space, m, sample)?.passed);
        }
    }
    Ok(())
}
