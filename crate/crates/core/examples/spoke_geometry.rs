//! Points, distances and geodesics on the spoke tree and in the plane.

use hadamono::rational::rat;
use hadamono::{Point, SpaceHandle};

fn main() -> hadamono::Result<()> {
    let tree = SpaceHandle::SpokeTree;
    let x = Point::sp(2, 1, 2);
    let y = Point::sp(1, 1, 2);
    let z = Point::sp(3, 1, 3);

    println!("d({x}, {y})^2 = {}", tree.dist_sq(&x, &y)?);
    println!("d({x}, {z}) = {:.6}", tree.dist(&x, &z)?);

    // The geodesic from x to y passes through the root.
    for k in 0..=4 {
        let l = rat(k, 4);
        println!("  lambda = {l:>3}: {}", tree.geodesic_point(&x, &y, &l)?);
    }

    // Radius 0 on any spoke is the root.
    let root: Point = serde_json::from_str(r#"{"spoke": 7, "radius": "0"}"#).expect("valid JSON");
    println!("canonical root: {root}");

    println!("{}", tree.check_cn(&x, &y, &z, &rat(1, 3))?);

    let plane = SpaceHandle::euclidean(2);
    let a = Point::ints(&[0, 0]);
    let b = Point::ints(&[3, 4]);
    println!("plane: d(a, b) = {}, midpoint {}", plane.dist(&a, &b)?, plane.geodesic_point(&a, &b, &rat(1, 2))?);
    Ok(())
}
