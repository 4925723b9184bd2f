//! Linear dual elements: evaluation, couplings, norms and equivalence.

use hadamono::dual::{coupling, equiv_on_witnesses, evaluate, norm_lower_bound, norm_single, reduce_euclidean};
use hadamono::rational::{int, rat};
use hadamono::{BoundVector, DualElement, Point, SpaceHandle};

fn main() -> hadamono::Result<()> {
    let tree = SpaceHandle::SpokeTree;
    let (a, b) = (Point::sp(3, 1, 3), Point::sp(2, 1, 2));
    let phi = DualElement::term(int(1), int(3), a.clone(), b.clone());
    let psi = DualElement::term(int(3), int(1), a.clone(), b.clone());

    let v = BoundVector::new(Point::root(), Point::sp(2, 1, 1));
    println!("phi = {phi}");
    println!("phi(v) = {}", evaluate(&tree, &phi, &v)?);
    println!("coupling at base 0: {}", coupling(&tree, &Point::root(), &Point::sp(1, 1, 1), &phi)?);

    println!("|phi| = {:.6}", norm_single(&tree, &int(1), &int(3), &a, &b)?);
    let witnesses = [a.clone(), b.clone(), Point::root(), Point::sp(1, 1, 1)];
    println!("norm lower bound {:.6}", norm_lower_bound(&tree, &phi.plus(&psi.neg().scaled(&rat(1, 2))), &witnesses)?);
    println!("phi ~ psi on witnesses: {}", equiv_on_witnesses(&tree, &phi, &psi, &witnesses)?);

    let plane = SpaceHandle::euclidean(2);
    let o = Point::ints(&[0, 0]);
    let u = DualElement::bound(o.clone(), Point::ints(&[1, 2]))
        .plus(&DualElement::bound(Point::ints(&[1, 1]), Point::ints(&[2, 1])));
    let w = DualElement::term(int(2), int(1), o, Point::ints(&[1, 1]));
    let show = |v: Vec<hadamono::Rational>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    println!(
        "plane: u reduces to ({}), w to ({})",
        show(reduce_euclidean(&plane, &u)?),
        show(reduce_euclidean(&plane, &w)?)
    );
    Ok(())
}
