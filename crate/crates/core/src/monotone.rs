//! Monotone relatedness, monotone sets and the monotone polar.
//!
//! `(x,x◊) μ (y,y◊)` holds when `⟨x◊ − y◊, yx→⟩ ≥ 0`. Polars, closures and
//! maximality are computed relative to an explicit finite ground set `G`,
//! which stands in for the whole product `X × X◊`: `polar(M, G)` is the set
//! of elements of `G` related to every element of `M`.

use indexmap::IndexSet;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dual::{eval_points, DualElement};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::report::{Aggregate, CheckReport, Relation};
use crate::spaces::{check_unit, Point, SpaceHandle};

/// Default cap on the ground-set size for exhaustive extension enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 14;

/// An element `(x, x◊)` of `X × X◊`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub point: Point,
    pub dual: DualElement,
}

impl Pair {
    pub fn new(point: Point, dual: DualElement) -> Self {
        Pair { point, dual }
    }

    pub fn check(&self, space: &SpaceHandle) -> Result<()> {
        space.check(&self.point)?;
        self.dual.check(space)
    }
}

/// A finite subset of `X × X◊` with insertion order preserved.
///
/// Duplicates are detected structurally (same point, same term list).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSet {
    pub space: SpaceHandle,
    pairs: IndexSet<Pair>,
}

/// The finite universe used for relative polar computations.
pub type GroundSet = PairSet;

impl PairSet {
    pub fn empty(space: SpaceHandle) -> Self {
        PairSet { space, pairs: IndexSet::new() }
    }

    /// Validates every pair against `space`; structural duplicates are an error.
    pub fn new(space: SpaceHandle, pairs: impl IntoIterator<Item = Pair>) -> Result<Self> {
        space.validate()?;
        let mut set = PairSet::empty(space);
        for (i, p) in pairs.into_iter().enumerate() {
            p.check(&space)?;
            if !set.pairs.insert(p) {
                return Err(Error::Validation(format!("pair #{i} duplicates an earlier pair")));
            }
        }
        Ok(set)
    }

    /// Adds a pair; returns false if it was already present.
    pub fn insert(&mut self, pair: Pair) -> Result<bool> {
        pair.check(&self.space)?;
        Ok(self.pairs.insert(pair))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pair> {
        self.pairs.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Pair> {
        self.pairs.get_index(i)
    }

    pub fn contains(&self, pair: &Pair) -> bool {
        self.pairs.contains(pair)
    }

    pub fn index_of(&self, pair: &Pair) -> Option<usize> {
        self.pairs.get_index_of(pair)
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.space == other.space && self.pairs.iter().all(|p| other.pairs.contains(p))
    }

    /// Same elements, order ignored.
    pub fn set_eq(&self, other: &PairSet) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &PairSet) -> Result<PairSet> {
        same_space(self, other)?;
        let mut out = self.clone();
        out.pairs.extend(other.pairs.iter().cloned());
        Ok(out)
    }

    pub fn intersection(&self, other: &PairSet) -> Result<PairSet> {
        same_space(self, other)?;
        Ok(self.filtered(|p| other.contains(p)))
    }

    pub fn filtered(&self, keep: impl Fn(&Pair) -> bool) -> PairSet {
        PairSet { space: self.space, pairs: self.pairs.iter().filter(|p| keep(p)).cloned().collect() }
    }

    /// The distinct points of `Dom(M)`, in order.
    pub fn domain(&self) -> Vec<&Point> {
        let mut out: Vec<&Point> = Vec::new();
        for p in &self.pairs {
            if !out.contains(&&p.point) {
                out.push(&p.point);
            }
        }
        out
    }

    /// The distinct duals of `Range(M)`, in order.
    pub fn range(&self) -> Vec<&DualElement> {
        let mut out: Vec<&DualElement> = Vec::new();
        for p in &self.pairs {
            if !out.contains(&&p.dual) {
                out.push(&p.dual);
            }
        }
        out
    }
}

impl<'de> Deserialize<'de> for PairSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            space: SpaceHandle,
            pairs: Vec<Pair>,
        }
        let raw = Raw::deserialize(d)?;
        PairSet::new(raw.space, raw.pairs).map_err(serde::de::Error::custom)
    }
}

fn same_space(a: &PairSet, b: &PairSet) -> Result<()> {
    if a.space != b.space {
        return Err(Error::Validation(format!("pair sets live in {} and {}", a.space, b.space)));
    }
    Ok(())
}

fn check_subset(m: &PairSet, g: &GroundSet) -> Result<()> {
    same_space(m, g)?;
    if let Some((i, _)) = m.iter().enumerate().find(|(_, p)| !g.contains(p)) {
        return Err(Error::NotSubset(format!("pair #{i} of the set is missing from the ground set")));
    }
    Ok(())
}

/// `⟨x◊ − y◊, yx→⟩` for `p1 = (x, x◊)`, `p2 = (y, y◊)`; inputs pre-validated.
fn mu_value_unchecked(p1: &Pair, p2: &Pair) -> Rational {
    eval_points(&p1.dual, &p2.point, &p1.point) - eval_points(&p2.dual, &p2.point, &p1.point)
}

/// The monotonicity value `⟨x◊ − y◊, yx→⟩`.
pub fn mu_value(space: &SpaceHandle, p1: &Pair, p2: &Pair) -> Result<Rational> {
    p1.check(space)?;
    p2.check(space)?;
    Ok(mu_value_unchecked(p1, p2))
}

pub fn mu_related(space: &SpaceHandle, p1: &Pair, p2: &Pair) -> Result<bool> {
    Ok(!mu_value(space, p1, p2)?.is_negative())
}

/// Pairwise relatedness of all elements; the witness is the first violating
/// pair of indices in iteration order.
pub fn is_monotone(space: &SpaceHandle, m: &PairSet) -> Result<CheckReport> {
    same_space(m, &PairSet::empty(*space))?;
    let mut agg = Aggregate::new("monotone set");
    let pairs: Vec<&Pair> = m.iter().collect();
    'outer: for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let value = mu_value_unchecked(pairs[i], pairs[j]);
            let report = CheckReport::exact("mu", Relation::Ge, value.clone(), rational::zero())
                .with_witness(json!({ "first": i, "second": j, "value": rational::format(&value) }));
            agg.push(report);
            if agg.has_failure() {
                break 'outer;
            }
        }
    }
    Ok(agg.finish())
}

/// `(x, x◊) μ M`: related to every element of `M`.
pub fn mu_related_to_set(space: &SpaceHandle, p: &Pair, m: &PairSet) -> Result<bool> {
    p.check(space)?;
    same_space(m, &PairSet::empty(*space))?;
    Ok(m.iter().all(|q| !mu_value_unchecked(p, q).is_negative()))
}

/// The monotone polar of `M` relative to `G`, in the order of `G`.
pub fn polar(space: &SpaceHandle, m: &PairSet, g: &GroundSet) -> Result<PairSet> {
    same_space(g, &PairSet::empty(*space))?;
    check_subset(m, g)?;
    let members: Vec<&Pair> = g.iter().collect();
    let keep: Vec<bool> =
        members.par_iter().map(|p| m.iter().all(|q| !mu_value_unchecked(p, q).is_negative())).collect();
    Ok(PairSet {
        space: *space,
        pairs: members.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p.clone()).collect(),
    })
}

/// `polar(polar(M, G), G)`.
pub fn mu_closure(space: &SpaceHandle, m: &PairSet, g: &GroundSet) -> Result<PairSet> {
    polar(space, &polar(space, m, g)?, g)
}

fn require_monotone(space: &SpaceHandle, m: &PairSet) -> Result<()> {
    let report = is_monotone(space, m)?;
    if !report.passed {
        let w = report.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::NotMonotone(w));
    }
    Ok(())
}

/// Maximality of a monotone `M` inside `G`: `polar(M, G) = M`.
pub fn is_maximal_in(space: &SpaceHandle, m: &PairSet, g: &GroundSet) -> Result<bool> {
    require_monotone(space, m)?;
    Ok(polar(space, m, g)?.set_eq(m))
}

/// Greedy maximal extension: scans `G` in `order` (indices into `G`,
/// insertion order when `None`) and keeps every pair related to the set
/// built so far. Different orders can give different extensions.
pub fn extend_maximal(space: &SpaceHandle, m: &PairSet, g: &GroundSet, order: Option<&[usize]>) -> Result<PairSet> {
    require_monotone(space, m)?;
    check_subset(m, g)?;
    let order: Vec<usize> = match order {
        None => (0..g.len()).collect(),
        Some(o) => {
            let mut seen = vec![false; g.len()];
            for &i in o {
                if i >= g.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Validation(format!("order must be a permutation of 0..{}", g.len())));
                }
            }
            if o.len() != g.len() {
                return Err(Error::Validation(format!("order must be a permutation of 0..{}", g.len())));
            }
            o.to_vec()
        }
    };
    let mut current = m.clone();
    for i in order {
        let candidate = g.get(i).expect("index checked");
        if current.contains(candidate) {
            continue;
        }
        if current.iter().all(|q| !mu_value_unchecked(candidate, q).is_negative()) {
            current.pairs.insert(candidate.clone());
        }
    }
    Ok(current)
}

/// Every maximal monotone `M̃` with `M ⊆ M̃ ⊆ G`, by exhaustive search.
///
/// Only elements of `polar(M, G)` can ever join, and a branch is cut as soon
/// as a candidate is unrelated to the current choice.
pub fn enumerate_maximal_extensions(
    space: &SpaceHandle,
    m: &PairSet,
    g: &GroundSet,
    limit: usize,
) -> Result<Vec<PairSet>> {
    if g.len() > limit {
        return Err(Error::LimitExceeded { size: g.len(), limit });
    }
    require_monotone(space, m)?;
    check_subset(m, g)?;

    let n = g.len();
    let members: Vec<&Pair> = g.iter().collect();
    let related: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| !mu_value_unchecked(members[i], members[j]).is_negative()).collect()).collect();
    let forced: Vec<usize> = (0..n).filter(|&i| m.contains(members[i])).collect();
    let candidates: Vec<usize> =
        (0..n).filter(|&i| !m.contains(members[i]) && forced.iter().all(|&f| related[i][f])).collect();

    struct Search<'a> {
        related: &'a [Vec<bool>],
        candidates: &'a [usize],
        n: usize,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn run(&mut self, k: usize, chosen: &mut Vec<usize>) {
            if k == self.candidates.len() {
                let maximal =
                    (0..self.n).filter(|i| !chosen.contains(i)).all(|i| chosen.iter().any(|&c| !self.related[i][c]));
                if maximal {
                    let mut picked = chosen.clone();
                    picked.sort_unstable();
                    self.found.push(picked);
                }
                return;
            }
            let c = self.candidates[k];
            if chosen.iter().all(|&x| self.related[c][x]) {
                chosen.push(c);
                self.run(k + 1, chosen);
                chosen.pop();
            }
            self.run(k + 1, chosen);
        }
    }

    let mut search = Search { related: &related, candidates: &candidates, n, found: Vec::new() };
    let mut chosen = forced.clone();
    search.run(0, &mut chosen);

    Ok(search
        .found
        .into_iter()
        .map(|idx| PairSet { space: *space, pairs: idx.into_iter().map(|i| members[i].clone()).collect() })
        .collect())
}

/// The dual slice `{u◊ : (u, u◊) ∈ M}`.
pub fn slice_duals(space: &SpaceHandle, m: &PairSet, u: &Point) -> Result<Vec<DualElement>> {
    space.check(u)?;
    same_space(m, &PairSet::empty(*space))?;
    Ok(m.iter().filter(|p| &p.point == u).map(|p| p.dual.clone()).collect())
}

/// For every ordered pair of slice duals and every `λ`, the termwise
/// combination `(1−λ)u◊ + λv◊` at `u` must stay related to all of `M`.
pub fn check_slice_convex(space: &SpaceHandle, m: &PairSet, u: &Point, lambdas: &[Rational]) -> Result<CheckReport> {
    lambdas.iter().try_for_each(check_unit)?;
    let slice = slice_duals(space, m, u)?;
    let mut agg = Aggregate::new("dual slice convexity");
    for (i, a) in slice.iter().enumerate() {
        for (j, b) in slice.iter().enumerate() {
            for lambda in lambdas {
                let candidate = Pair::new(u.clone(), a.combination(b, lambda));
                for (k, q) in m.iter().enumerate() {
                    let value = mu_value_unchecked(&candidate, q);
                    agg.push(CheckReport::exact("mu", Relation::Ge, value, rational::zero()).with_witness(json!({
                        "first_dual": i,
                        "second_dual": j,
                        "lambda": rational::format(lambda),
                        "against": k,
                    })));
                    if agg.has_failure() {
                        return Ok(agg.finish());
                    }
                }
            }
        }
    }
    Ok(agg.finish())
}
