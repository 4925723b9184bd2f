//! Linear-dual elements.
//!
//! An element is kept as a formal sum `Σ αᵢ [tᵢ aᵢbᵢ→]` and acts on bound
//! vectors through quasilinearization. No quotienting is done on the spoke
//! tree: two term lists are compared either structurally or, relative to a
//! finite witness set, by their evaluations. In Euclidean space every element
//! reduces to the vector `Σ αᵢtᵢ(bᵢ − aᵢ)`, which is a complete invariant.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasilin::{qlin_points, BoundVector};
use crate::rational::{self, Rational};
use crate::spaces::{Point, SpaceHandle};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualTerm {
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    pub tail: Point,
    pub head: Point,
}

impl DualTerm {
    fn weight(&self) -> Rational {
        &self.alpha * &self.t
    }

    /// Contributes nothing to any evaluation.
    pub fn is_null(&self) -> bool {
        self.tail == self.head || self.alpha.is_zero() || self.t.is_zero()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualElement {
    pub terms: Vec<DualTerm>,
}

impl DualElement {
    /// `0` of the dual.
    pub fn zero() -> Self {
        DualElement { terms: Vec::new() }
    }

    /// `α [t ab→]`.
    pub fn term(alpha: Rational, t: Rational, tail: Point, head: Point) -> Self {
        DualElement { terms: vec![DualTerm { alpha, t, tail, head }] }
    }

    /// `[ab→]`, i.e. `1·[1·ab→]`.
    pub fn bound(tail: Point, head: Point) -> Self {
        DualElement::term(rational::one(), rational::one(), tail, head)
    }

    pub fn from_vector(v: &BoundVector) -> Self {
        DualElement::bound(v.tail.clone(), v.head.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Formal sum: the term lists are concatenated.
    pub fn plus(&self, other: &DualElement) -> DualElement {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        DualElement { terms }
    }

    pub fn scaled(&self, c: &Rational) -> DualElement {
        DualElement {
            terms: self.terms.iter().map(|term| DualTerm { alpha: c * &term.alpha, ..term.clone() }).collect(),
        }
    }

    pub fn neg(&self) -> DualElement {
        self.scaled(&-rational::one())
    }

    pub fn minus(&self, other: &DualElement) -> DualElement {
        self.plus(&other.neg())
    }

    /// Termwise `(1-λ)·self + λ·other`.
    pub fn combination(&self, other: &DualElement, lambda: &Rational) -> DualElement {
        self.scaled(&(rational::one() - lambda)).plus(&other.scaled(lambda))
    }

    /// Drops terms that vanish on every bound vector. Evaluation is unchanged.
    pub fn pruned(&self) -> DualElement {
        DualElement { terms: self.terms.iter().filter(|t| !t.is_null()).cloned().collect() }
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.terms.iter().flat_map(|t| [&t.tail, &t.head])
    }

    pub fn check(&self, space: &SpaceHandle) -> Result<()> {
        space.check_all(self.points())
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·[{}·{}{}→]", term.alpha, term.t, term.tail, term.head)?;
        }
        Ok(())
    }
}

/// `⟨φ, xy→⟩` for points already validated.
pub(crate) fn eval_points(phi: &DualElement, x: &Point, y: &Point) -> Rational {
    if x == y {
        return rational::zero();
    }
    phi.terms
        .iter()
        .filter(|term| !term.is_null())
        .map(|term| term.weight() * qlin_points(&term.tail, &term.head, x, y))
        .sum()
}

/// `⟨φ, v⟩ = Σ αᵢtᵢ ⟨aᵢbᵢ→, v⟩`.
pub fn evaluate(space: &SpaceHandle, phi: &DualElement, v: &BoundVector) -> Result<Rational> {
    phi.check(space)?;
    v.check(space)?;
    Ok(eval_points(phi, &v.tail, &v.head))
}

/// The `p`-coupling `π_p(x, φ) = ⟨φ, px→⟩`.
pub fn coupling(space: &SpaceHandle, p: &Point, x: &Point, phi: &DualElement) -> Result<Rational> {
    phi.check(space)?;
    space.check(p)?;
    space.check(x)?;
    Ok(eval_points(phi, p, x))
}

/// Norm of the single term `α[t ab→]`: `|αt|·d(a,b)`.
pub fn norm_single(space: &SpaceHandle, alpha: &Rational, t: &Rational, a: &Point, b: &Point) -> Result<f64> {
    let w = (alpha * t).abs();
    Ok(rational::to_f64(&w) * space.dist(a, b)?)
}

/// Supremum of `|⟨φ,ab→⟩ − ⟨φ,cd→⟩| / (d(a,b) + d(c,d))` over witness
/// quadruples. Every quotient is admissible in the full supremum, so the
/// result never exceeds the true norm.
pub fn norm_lower_bound(space: &SpaceHandle, phi: &DualElement, witnesses: &[Point]) -> Result<f64> {
    phi.check(space)?;
    space.check_all(witnesses)?;
    let mut distinct: Vec<&Point> = Vec::new();
    for w in witnesses {
        if !distinct.contains(&w) {
            distinct.push(w);
        }
    }
    if distinct.len() < 2 {
        return Err(Error::UndefinedSup);
    }
    let n = distinct.len();
    let mut values = vec![rational::zero(); n * n];
    let mut lengths = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            values[i * n + j] = eval_points(phi, distinct[i], distinct[j]);
            lengths[i * n + j] = space.dist(distinct[i], distinct[j])?;
        }
    }
    let mut best = 0.0f64;
    for ab in 0..n * n {
        for cd in 0..n * n {
            let denom = lengths[ab] + lengths[cd];
            if denom == 0.0 {
                continue;
            }
            let num = rational::to_f64(&(&values[ab] - &values[cd]).abs());
            best = best.max(num / denom);
        }
    }
    Ok(best)
}

/// Agreement of `φ` and `ψ` on every bound vector with both ends in `witnesses`.
///
/// `false` is a proof that the two elements differ; `true` only certifies
/// agreement on the witnesses.
pub fn equiv_on_witnesses(
    space: &SpaceHandle,
    phi: &DualElement,
    psi: &DualElement,
    witnesses: &[Point],
) -> Result<bool> {
    phi.check(space)?;
    psi.check(space)?;
    space.check_all(witnesses)?;
    if witnesses.is_empty() {
        return Err(Error::Validation("witness set is empty".into()));
    }
    for x in witnesses {
        for y in witnesses {
            if eval_points(phi, x, y) != eval_points(psi, x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Euclidean canonical form `Σ αᵢtᵢ (headᵢ − tailᵢ)`.
pub fn reduce_euclidean(space: &SpaceHandle, phi: &DualElement) -> Result<Vec<Rational>> {
    let dim = match space {
        SpaceHandle::Euclidean { dim } => *dim,
        other => return Err(Error::NotEuclidean(*other)),
    };
    phi.check(space)?;
    let mut out = vec![rational::zero(); dim];
    for term in &phi.terms {
        if let (Point::Euclid(a), Point::Euclid(b)) = (&term.tail, &term.head) {
            let w = term.weight();
            for (o, (x, y)) in out.iter_mut().zip(a.iter().zip(b)) {
                *o += &w * (y - x);
            }
        }
    }
    Ok(out)
}
