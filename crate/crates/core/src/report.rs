//! Analysis reports: a plain `key = value` text rendering and a JSON one
//! carrying the same content. Rationals are written `a/b` in lowest terms.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::format::parse_rational;
use crate::Rational;

/// An exact rational that serializes as its `a/b` text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl From<Rational> for Q {
    fn from(r: Rational) -> Self {
        Q(r)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = match Value::deserialize(d)? {
            Value::String(s) => s,
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("expected a rational, found {other}"))),
        };
        parse_rational(0, &text).map(Q).map_err(serde::de::Error::custom)
    }
}

pub fn qs(values: &[Rational]) -> Vec<Q> {
    values.iter().cloned().map(Q).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reliability: Option<ReliabilitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separability: Option<SeparabilitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<AssignmentSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dsep: Option<DsepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationSection {
    pub category: String,
    pub corank: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connectivity: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difficulty: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReliabilitySection {
    pub value: Q,
    /// `exhaustive` or `closed-form`.
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSection {
    /// Number of connected spanning subgraphs with `i` edges removed, `i = 0..=corank`.
    #[serde(default)]
    pub coefficients: Vec<u64>,
    pub tree_number: u64,
    pub connectivity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneRow {
    #[serde(default)]
    pub weights: Vec<Q>,
    /// `>` or `>=`.
    pub cmp: String,
    pub alpha0: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedWord {
    pub weight: Q,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparabilitySection {
    pub separable: bool,
    pub margin: Q,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<HyperplaneRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pathsets: Vec<WeightedWord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cutsets: Vec<WeightedWord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub point: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentSection {
    pub category: String,
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub costs: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_path_cost: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_cut_cost: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DsepSection {
    /// `verify`, `bound` or `min`.
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_d: Option<usize>,
    /// `None` when the search exceeded `max_d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hyperplanes: Vec<HyperplaneRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionSection {
    #[serde(default)]
    pub values: Vec<u64>,
    pub answer: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<usize>,
    pub difference: Q,
    pub half_sum_count: u64,
}

impl AnalysisReport {
    pub fn new(input: impl Into<String>) -> Self {
        AnalysisReport {
            input: input.into(),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    /// One `dotted.key = value` line per leaf; list items are numbered from 0.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        flatten(
            &serde_json::to_value(self).expect("reports always serialize"),
            "",
            &mut out,
        );
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut root = Value::Object(Map::new());
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let (key, raw) = line
                .split_once(" = ")
                .ok_or_else(|| Error::parse(no, "expected `key = value`"))?;
            insert(&mut root, key.trim(), leaf(raw).map_err(|m| Error::parse(no, m))?)
                .map_err(|m| Error::parse(no, m))?;
        }
        serde_json::from_value(root).map_err(|e| Error::parse(0, e.to_string()))
    }
}

fn flatten(value: &Value, prefix: &str, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(v, &key(k), out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(v, &key(&i.to_string()), out)),
        Value::String(s) if leaf(s).ok() != Some(Value::String(s.clone())) => {
            out.push_str(&format!("{prefix} = {}\n", Value::String(s.clone())))
        }
        Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
        Value::Null => {}
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}

/// Bare words are strings unless they read as a bool or an integer; anything
/// else is written as a quoted JSON string.
fn leaf(raw: &str) -> std::result::Result<Value, String> {
    if raw.starts_with('"') {
        return serde_json::from_str::<String>(raw)
            .map(Value::String)
            .map_err(|e| format!("bad quoted string: {e}"));
    }
    if raw.is_empty() || raw.trim() != raw || raw.contains('\n') {
        return Err("value needs quoting".to_string());
    }
    Ok(match raw {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => match raw.parse::<i64>() {
            Ok(i) => Value::from(i),
            Err(_) => match raw.parse::<u64>() {
                Ok(u) => Value::from(u),
                Err(_) => Value::String(raw.to_string()),
            },
        },
    })
}

fn insert(root: &mut Value, key: &str, value: Value) -> std::result::Result<(), String> {
    let mut node = root;
    let parts: Vec<&str> = key.split('.').collect();
    for (depth, part) in parts.iter().enumerate() {
        let last = depth + 1 == parts.len();
        let next_is_index = parts.get(depth + 1).is_some_and(|p| p.parse::<usize>().is_ok());
        let fresh = || {
            if last {
                Value::Null
            } else if next_is_index {
                Value::Array(Vec::new())
            } else {
                Value::Object(Map::new())
            }
        };
        node = match node {
            Value::Object(map) => map.entry(part.to_string()).or_insert_with(fresh),
            Value::Array(items) => {
                let i: usize = part
                    .parse()
                    .map_err(|_| format!("`{part}` in `{key}` is not an index"))?;
                if i == items.len() {
                    items.push(fresh());
                } else if i > items.len() {
                    return Err(format!("index {i} in `{key}` skips entries"));
                }
                &mut items[i]
            }
            _ => return Err(format!("`{key}` conflicts with an earlier key")),
        };
    }
    if !node.is_null() {
        return Err(format!("duplicate key `{key}`"));
    }
    *node = value;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(n: i64, d: i64) -> Q {
        Q(Rational::ratio(n, d))
    }

    fn sample() -> AnalysisReport {
        AnalysisReport {
            input: "graphs/true.g".into(),
            components: Some(3),
            classification: Some(ClassificationSection {
                category: "CYCLE".into(),
                corank: 1,
                connectivity: Some(2),
                utility: Some(1),
                difficulty: Some(-2),
            }),
            reliability: Some(ReliabilitySection {
                value: q(1, 2),
                method: "closed-form".into(),
                polynomial: Some(PolynomialSection {
                    coefficients: vec![1, 3],
                    tree_number: 3,
                    connectivity: 2,
                }),
            }),
            separability: Some(SeparabilitySection {
                separable: false,
                margin: q(-1, 6),
                hyperplane: None,
                pathsets: vec![WeightedWord {
                    weight: q(1, 1),
                    word: "011".into(),
                }],
                cutsets: vec![],
                point: vec![q(0, 1), q(1, 1), q(1, 1)],
            }),
            assignment: None,
            dsep: Some(DsepSection {
                mode: "min".into(),
                max_d: Some(3),
                d: Some(1),
                side: Some("pathset".into()),
                hyperplanes: vec![HyperplaneRow {
                    weights: vec![q(1, 1); 3],
                    cmp: ">=".into(),
                    alpha0: q(2, 1),
                }],
                valid: None,
                counterexample: Some(" 12".into()),
            }),
            partition: None,
        }
    }

    #[test]
    fn text_round_trip() {
        let r = sample();
        let text = r.to_text();
        assert!(text.contains("reliability.value = 1/2\n"));
        assert!(text.contains("separability.margin = -1/6\n"));
        assert!(text.contains("input = graphs/true.g\n"));
        assert!(text.contains("dsep.counterexample = \" 12\"\n"));
        assert_eq!(AnalysisReport::from_text(&text).unwrap(), r);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let json = r.to_json();
        assert!(json.contains("\"value\": \"1/2\""));
        assert_eq!(AnalysisReport::from_json(&json).unwrap(), r);
    }

    #[test]
    fn malformed_text() {
        assert!(matches!(
            AnalysisReport::from_text("input: x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(AnalysisReport::from_text("input = a\ninput = b\n").is_err());
        assert!(AnalysisReport::from_text("input = a\nreliability.value = 1/0\nreliability.method = x\n").is_err());
        assert!(AnalysisReport::from_text("input = a\nbogus = 1\n").is_err());
        assert!(AnalysisReport::from_text("input = a\nseparability.point.1 = 1\n").is_err());
    }

    #[test]
    fn integers_read_back_as_rationals() {
        let text = "input = \"7\"\nreliability.value = 1\nreliability.method = exhaustive\n";
        let r = AnalysisReport::from_text(text).unwrap();
        assert_eq!(r.reliability.unwrap().value, q(1, 1));
        assert_eq!(r.input, "7");
    }
}
