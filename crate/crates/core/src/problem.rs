//! Problem files: one JSON document declaring a space and named entities.
//!
//! ```json
//! {
//!   "space": {"kind": "spoke_tree"},
//!   "points": {"a": {"spoke": 1, "radius": "1/2"}, "b": {"spoke": 2, "radius": "1"}},
//!   "vectors": {"v": {"tail": "a", "head": "b"}},
//!   "duals": {"phi": {"terms": [{"alpha": "1", "t": "1", "tail": "a", "head": "b"}]}},
//!   "pair_sets": {"M": {"pairs": [{"point": "a", "dual": "phi"}]}},
//!   "ground_sets": {"G": {"include": ["M"], "pairs": [{"point": "b", "dual": "0"}]}},
//!   "objectives": {"f": {"op": "sqdist", "anchor": "a", "scale": "1/2"}},
//!   "grids": {"W": ["a", "b", {"spoke": 3, "radius": "1/4"}]},
//!   "samples": {"S": {"lambdas": ["1/3"], "base": "a"}}
//! }
//! ```
//!
//! Wherever a point is expected, either a point name or an inline point may
//! be given; likewise a dual name, `"0"` for the zero element, or an inline
//! dual. Names share one namespace across sections.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use serde_json::Value;

use crate::dual::{DualElement, DualTerm};
use crate::error::{Error, Result};
use crate::flatness::{default_lambdas, FlSample};
use crate::monotone::{Pair, PairSet};
use crate::quasilin::BoundVector;
use crate::rational::{self, Rational};
use crate::spaces::{Point, SpaceHandle};
use crate::varfun::Objective;

/// A fully resolved problem file.
#[derive(Clone, Debug, Default)]
pub struct Problem {
    pub space: Option<SpaceHandle>,
    pub points: IndexMap<String, Point>,
    pub vectors: IndexMap<String, BoundVector>,
    pub duals: IndexMap<String, DualElement>,
    pub pair_sets: IndexMap<String, PairSet>,
    pub ground_sets: IndexMap<String, PairSet>,
    pub objectives: IndexMap<String, Objective>,
    pub grids: IndexMap<String, Vec<Point>>,
    pub samples: IndexMap<String, FlSample>,
}

/// JSON object that rejects repeated keys, keeping their order.
struct UniqueMap(Vec<(String, Value)>);

impl<'de> Deserialize<'de> for UniqueMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = UniqueMap;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a JSON object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<UniqueMap, A::Error> {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, Value>()? {
                    if !seen.insert(k.clone()) {
                        return Err(serde::de::Error::custom(format!("duplicate name {k:?}")));
                    }
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    space: Option<SpaceHandle>,
    #[serde(default)]
    points: Option<UniqueMap>,
    #[serde(default)]
    vectors: Option<UniqueMap>,
    #[serde(default)]
    duals: Option<UniqueMap>,
    #[serde(default)]
    pair_sets: Option<UniqueMap>,
    #[serde(default)]
    ground_sets: Option<UniqueMap>,
    #[serde(default)]
    objectives: Option<UniqueMap>,
    #[serde(default)]
    grids: Option<UniqueMap>,
    #[serde(default)]
    samples: Option<UniqueMap>,
}

fn at(path: &str, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn entries(m: Option<UniqueMap>) -> Vec<(String, Value)> {
    m.map(|m| m.0).unwrap_or_default()
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Problem> {
        let raw: RawProblem = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut pb = Problem { space: raw.space, ..Problem::default() };
        if let Some(s) = &pb.space {
            s.validate()?;
        }
        let mut names = HashSet::new();
        let mut claim = |path: &str, name: &str| -> Result<()> {
            if !names.insert(name.to_string()) {
                return Err(at(path, format!("name {name:?} is already used")));
            }
            Ok(())
        };

        for (name, v) in entries(raw.points) {
            let path = format!("points.{name}");
            claim(&path, &name)?;
            let p: Point = serde_json::from_value(v).map_err(|e| at(&path, e))?;
            pb.check_point(&path, &p)?;
            pb.points.insert(name, p);
        }
        for (name, v) in entries(raw.vectors) {
            let path = format!("vectors.{name}");
            claim(&path, &name)?;
            let tail = pb.point(&format!("{path}.tail"), field(&v, "tail", &path)?)?;
            let head = pb.point(&format!("{path}.head"), field(&v, "head", &path)?)?;
            pb.vectors.insert(name, BoundVector::new(tail, head));
        }
        for (name, v) in entries(raw.duals) {
            let path = format!("duals.{name}");
            claim(&path, &name)?;
            let d = pb.dual(&path, &v)?;
            pb.duals.insert(name, d);
        }
        for (name, v) in entries(raw.pair_sets) {
            let path = format!("pair_sets.{name}");
            claim(&path, &name)?;
            let s = pb.pair_set(&path, &v, false)?;
            pb.pair_sets.insert(name, s);
        }
        for (name, v) in entries(raw.ground_sets) {
            let path = format!("ground_sets.{name}");
            claim(&path, &name)?;
            let s = pb.pair_set(&path, &v, true)?;
            pb.ground_sets.insert(name, s);
        }
        for (name, v) in entries(raw.objectives) {
            let path = format!("objectives.{name}");
            claim(&path, &name)?;
            let f = pb.objective(&path, &v)?;
            pb.objectives.insert(name, f);
        }
        for (name, v) in entries(raw.grids) {
            let path = format!("grids.{name}");
            claim(&path, &name)?;
            let items = v.as_array().ok_or_else(|| at(&path, "expected an array of points"))?;
            let pts = items
                .iter()
                .enumerate()
                .map(|(i, p)| pb.point(&format!("{path}[{i}]"), p))
                .collect::<Result<Vec<_>>>()?;
            pb.grids.insert(name, pts);
        }
        for (name, v) in entries(raw.samples) {
            let path = format!("samples.{name}");
            claim(&path, &name)?;
            let s = pb.sample(&path, &v)?;
            pb.samples.insert(name, s);
        }
        Ok(pb)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Problem> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Problem::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// The declared space; required by every geometric command.
    pub fn space(&self) -> Result<SpaceHandle> {
        self.space.ok_or_else(|| Error::Validation("problem file declares no space".into()))
    }

    fn check_point(&self, path: &str, p: &Point) -> Result<()> {
        let space = self.space().map_err(|e| at(path, e))?;
        space.check(p).map_err(|e| at(path, e))
    }

    fn point(&self, path: &str, v: &Value) -> Result<Point> {
        match v {
            Value::String(name) => {
                self.points.get(name).cloned().ok_or_else(|| at(path, format!("unknown point {name:?}")))
            }
            other => {
                let p: Point = serde_json::from_value(other.clone()).map_err(|e| at(path, e))?;
                self.check_point(path, &p)?;
                Ok(p)
            }
        }
    }

    fn dual(&self, path: &str, v: &Value) -> Result<DualElement> {
        match v {
            Value::String(s) if s == "0" || s == "zero" => Ok(DualElement::zero()),
            Value::String(name) => {
                self.duals.get(name).cloned().ok_or_else(|| at(path, format!("unknown dual {name:?}")))
            }
            Value::Object(_) => {
                let terms =
                    field(v, "terms", path)?.as_array().ok_or_else(|| at(path, "\"terms\" must be an array"))?;
                let mut out = Vec::new();
                for (i, t) in terms.iter().enumerate() {
                    let tp = format!("{path}.terms[{i}]");
                    out.push(DualTerm {
                        alpha: opt_rational(&tp, t.get("alpha"))?,
                        t: opt_rational(&tp, t.get("t"))?,
                        tail: self.point(&format!("{tp}.tail"), field(t, "tail", &tp)?)?,
                        head: self.point(&format!("{tp}.head"), field(t, "head", &tp)?)?,
                    });
                }
                Ok(DualElement { terms: out })
            }
            _ => Err(at(path, "expected a dual name or {\"terms\": [...]}")),
        }
    }

    fn pair_set(&self, path: &str, v: &Value, allow_include: bool) -> Result<PairSet> {
        let space = self.space().map_err(|e| at(path, e))?;
        if let Some(declared) = v.get("space") {
            let declared: SpaceHandle = serde_json::from_value(declared.clone()).map_err(|e| at(path, e))?;
            if declared != space {
                return Err(at(path, format!("declared space {declared} differs from the file space {space}")));
            }
        }
        let mut set = PairSet::empty(space);
        if let Some(inc) = v.get("include") {
            if !allow_include {
                return Err(at(path, "\"include\" is only allowed in ground sets"));
            }
            let inc = inc.as_array().ok_or_else(|| at(path, "\"include\" must be an array of names"))?;
            for name in inc {
                let name = name.as_str().ok_or_else(|| at(path, "\"include\" entries must be names"))?;
                let other = self.pair_sets.get(name).ok_or_else(|| at(path, format!("unknown pair set {name:?}")))?;
                set = set.union(other)?;
            }
        }
        let pairs = match v.get("pairs") {
            None => &Vec::new(),
            Some(p) => p.as_array().ok_or_else(|| at(path, "\"pairs\" must be an array"))?,
        };
        for (i, p) in pairs.iter().enumerate() {
            let pp = format!("{path}.pairs[{i}]");
            let point = self.point(&format!("{pp}.point"), field(p, "point", &pp)?)?;
            let dual = self.dual(&format!("{pp}.dual"), field(p, "dual", &pp)?)?;
            if !set.insert(Pair::new(point, dual))? && !allow_include {
                return Err(at(&pp, "duplicate pair"));
            }
        }
        Ok(set)
    }

    fn objective(&self, path: &str, v: &Value) -> Result<Objective> {
        let op = field(v, "op", path)?.as_str().ok_or_else(|| at(path, "\"op\" must be a string"))?;
        let space = self.space().map_err(|e| at(path, e))?;
        let f = match op {
            "add" => {
                let args = field(v, "args", path)?.as_array().ok_or_else(|| at(path, "\"args\" must be an array"))?;
                Objective::Add {
                    args: args
                        .iter()
                        .enumerate()
                        .map(|(i, a)| self.objective(&format!("{path}.args[{i}]"), a))
                        .collect::<Result<_>>()?,
                }
            }
            "sqdist" => Objective::SqDist {
                anchor: self.point(&format!("{path}.anchor"), field(v, "anchor", path)?)?,
                scale: opt_rational(path, v.get("scale"))?,
            },
            "coupling" => Objective::Coupling {
                base: self.point(&format!("{path}.base"), field(v, "base", path)?)?,
                dual: self.dual(&format!("{path}.dual"), field(v, "dual", path)?)?,
            },
            "const" => Objective::Const { value: rational_value(path, field(v, "value", path)?)? },
            other => return Err(at(path, format!("unknown objective op {other:?}"))),
        };
        f.check(&space).map_err(|e| at(path, e))?;
        Ok(f)
    }

    fn sample(&self, path: &str, v: &Value) -> Result<FlSample> {
        let lambdas = match v.get("lambdas") {
            None => default_lambdas(),
            Some(Value::Array(ls)) => ls
                .iter()
                .enumerate()
                .map(|(i, l)| rational_value(&format!("{path}.lambdas[{i}]"), l))
                .collect::<Result<_>>()?,
            Some(_) => return Err(at(path, "\"lambdas\" must be an array")),
        };
        for l in &lambdas {
            crate::spaces::check_unit(l).map_err(|e| at(path, e))?;
        }
        let base = self.point(&format!("{path}.base"), field(v, "base", path)?)?;
        let second_base = match v.get("second_base") {
            None | Some(Value::Null) => None,
            Some(q) => Some(self.point(&format!("{path}.second_base"), q)?),
        };
        Ok(FlSample { lambdas, base, second_base })
    }

    pub fn lookup_point(&self, name: &str) -> Result<Point> {
        self.points.get(name).cloned().ok_or_else(|| Error::Validation(format!("unknown point {name:?}")))
    }

    pub fn lookup_dual(&self, name: &str) -> Result<DualElement> {
        if name == "0" || name == "zero" {
            return Ok(DualElement::zero());
        }
        self.duals.get(name).cloned().ok_or_else(|| Error::Validation(format!("unknown dual {name:?}")))
    }

    pub fn lookup_vector(&self, name: &str) -> Result<BoundVector> {
        self.vectors.get(name).cloned().ok_or_else(|| Error::Validation(format!("unknown bound vector {name:?}")))
    }

    pub fn lookup_pair_set(&self, name: &str) -> Result<PairSet> {
        self.pair_sets
            .get(name)
            .or_else(|| self.ground_sets.get(name))
            .cloned()
            .ok_or_else(|| Error::Validation(format!("unknown pair set {name:?}")))
    }

    pub fn lookup_ground_set(&self, name: &str) -> Result<PairSet> {
        self.ground_sets
            .get(name)
            .or_else(|| self.pair_sets.get(name))
            .cloned()
            .ok_or_else(|| Error::Validation(format!("unknown ground set {name:?}")))
    }

    pub fn lookup_objective(&self, name: &str) -> Result<Objective> {
        self.objectives.get(name).cloned().ok_or_else(|| Error::Validation(format!("unknown objective {name:?}")))
    }

    pub fn lookup_sample(&self, name: &str) -> Result<FlSample> {
        self.samples.get(name).cloned().ok_or_else(|| Error::Validation(format!("unknown sample {name:?}")))
    }

    /// A grid by name, or a comma-separated list of point names.
    pub fn lookup_points(&self, spec: &str) -> Result<Vec<Point>> {
        if let Some(g) = self.grids.get(spec) {
            return Ok(g.clone());
        }
        spec.split(',').map(|n| self.lookup_point(n.trim())).collect()
    }
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| at(path, format!("missing field {key:?}")))
}

fn rational_value(path: &str, v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s).map_err(|e| at(path, e)),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().expect("checked"))),
        _ => Err(at(path, "expected a rational string such as \"p/q\"")),
    }
}

fn opt_rational(path: &str, v: Option<&Value>) -> Result<Rational> {
    v.map_or_else(|| Ok(rational::one()), |v| rational_value(path, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "space": {"kind": "spoke_tree"},
        "points": {"a": {"spoke": 1, "radius": "1/2"}, "b": {"spoke": 2, "radius": 1}},
        "vectors": {"v": {"tail": "a", "head": "b"}},
        "duals": {"phi": {"terms": [{"alpha": "2", "tail": "a", "head": "b"}]}},
        "pair_sets": {"M": {"pairs": [{"point": "a", "dual": "phi"}]}},
        "ground_sets": {"G": {"include": ["M"], "pairs": [{"point": "b", "dual": "0"}]}},
        "objectives": {"f": {"op": "add", "args": [{"op": "sqdist", "anchor": "a", "scale": "1/2"}, {"op": "const", "value": "3"}]}},
        "grids": {"W": ["a", "b", {"spoke": 3, "radius": "1/4"}]},
        "samples": {"S": {"lambdas": ["1/3"], "base": "a"}}
    }"#;

    #[test]
    fn resolves_everything() {
        let pb = Problem::from_json(DOC).unwrap();
        assert_eq!(pb.space().unwrap(), SpaceHandle::SpokeTree);
        assert_eq!(pb.duals["phi"].terms[0].t, rational::one());
        assert_eq!(pb.ground_sets["G"].len(), 2);
        assert!(pb.pair_sets["M"].is_subset(&pb.ground_sets["G"]));
        assert_eq!(pb.grids["W"].len(), 3);
        assert_eq!(pb.samples["S"].lambdas, vec![rational::rat(1, 3)]);
        assert_eq!(pb.lookup_points("a, b").unwrap().len(), 2);
    }

    #[test]
    fn reports_locations() {
        let bad = DOC.replace(r#""dual": "phi""#, r#""dual": "psi""#);
        let err = Problem::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains("pair_sets.M.pairs[0].dual"), "{err}");

        let bad = DOC.replace(r#""radius": 1}"#, r#""radius": 2}"#);
        assert!(Problem::from_json(&bad).unwrap_err().to_string().contains("points.b"));

        let dup = r#"{"space": {"kind": "spoke_tree"}, "points": {"a": {"spoke": 1, "radius": "1"}, "a": {"spoke": 2, "radius": "1"}}}"#;
        assert!(Problem::from_json(dup).unwrap_err().to_string().contains("duplicate name"));

        let clash =
            r#"{"space": {"kind": "spoke_tree"}, "points": {"a": {"spoke": 1, "radius": "1"}}, "grids": {"a": ["a"]}}"#;
        assert!(Problem::from_json(clash).unwrap_err().to_string().contains("already used"));

        let wrong_space = r#"{"space": {"kind": "euclidean", "dim": 2}, "points": {"a": {"coords": ["1"]}}}"#;
        assert!(Problem::from_json(wrong_space).is_err());
    }
}
