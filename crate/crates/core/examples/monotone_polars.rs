//! Monotone sets, polars, closures and maximal extensions.

use hadamono::monotone::{
    enumerate_maximal_extensions, extend_maximal, is_maximal_in, is_monotone, mu_closure, mu_value, polar,
};
use hadamono::rational::int;
use hadamono::repro::{star_extension, star_family};
use hadamono::{DualElement, Pair, PairSet, Point, SpaceHandle};

fn main() -> hadamono::Result<()> {
    let tree = SpaceHandle::SpokeTree;
    let m = star_family(6);
    println!("{}", is_monotone(&tree, &m)?);
    for (i, p) in m.iter().enumerate().take(3) {
        let row: Vec<String> =
            m.iter().map(|q| mu_value(&tree, p, q).map(|v| v.to_string())).collect::<Result<_, _>>()?;
        println!("  mu(x_{}, .) = {}", i + 1, row.join(" "));
    }

    let z = star_extension();
    let mut g = m.clone();
    g.insert(z.clone())?;
    let pol = polar(&tree, &m, &g)?;
    println!("polar has {} pairs, contains the extension: {}", pol.len(), pol.contains(&z));
    println!("maximal in G: {}", is_maximal_in(&tree, &m, &g)?);
    println!("closure has {} pairs", mu_closure(&tree, &m, &g)?.len());

    // On the line the candidates (1, 2) and (2, 1) are incompatible, so there
    // are several maximal extensions.
    let line = SpaceHandle::euclidean(1);
    let slope = |x: i64, s: i64| {
        Pair::new(Point::ints(&[x]), DualElement::term(int(s), int(1), Point::ints(&[0]), Point::ints(&[1])))
    };
    let g = PairSet::new(line, [slope(0, 0), slope(1, 2), slope(1, -1), slope(2, 1)])?;
    let start = PairSet::empty(line);
    println!("greedy: {} pairs", extend_maximal(&line, &start, &g, None)?.len());
    for (i, e) in enumerate_maximal_extensions(&line, &start, &g, 14)?.iter().enumerate() {
        let pts: Vec<String> = e.iter().map(|p| format!("({}, {})", p.point, p.dual)).collect();
        println!("  extension {i}: {}", pts.join("  "));
    }
    Ok(())
}
