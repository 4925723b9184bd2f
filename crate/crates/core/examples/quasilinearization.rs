//! Quasilinearization, Cauchy–Schwarz, and the flat identity that fails on
//! the spoke tree.

use hadamono::flatness::{check_flat_identity, test_flatness};
use hadamono::quasilin::{check_cauchy_schwarz, qlin};
use hadamono::rational::rat;
use hadamono::{BoundVector, Point, SpaceHandle};

fn main() -> hadamono::Result<()> {
    let tree = SpaceHandle::SpokeTree;
    let ab = BoundVector::new(Point::sp(3, 1, 3), Point::sp(2, 1, 2));
    let uv = BoundVector::new(Point::sp(2, 1, 2), Point::sp(1, 1, 2));
    println!("<ab, uv> = {}", qlin(&tree, &ab, &uv)?);
    println!("<ab, ba> = {} (= -d(a,b)^2)", qlin(&tree, &ab, &ab.reversed())?);
    println!("{}", check_cauchy_schwarz(&tree, &ab, &uv)?);

    let (x, y, a, b) = (Point::sp(2, 1, 2), Point::sp(1, 1, 2), Point::sp(3, 1, 3), Point::sp(2, 1, 2));
    for l in [rat(1, 4), rat(1, 3), rat(1, 2)] {
        println!("{}", check_flat_identity(&tree, &x, &y, &a, &b, &l)?);
    }

    println!("sampled, spoke tree: {}", test_flatness(&tree, 1, 500, false)?);
    println!("sampled, plane:      {}", test_flatness(&SpaceHandle::euclidean(2), 1, 500, false)?);
    Ok(())
}
