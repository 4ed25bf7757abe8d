//! Line-oriented text formats for graphs, systems, certificates and
//! PARTITION instances. Numbers are exact rationals written `a/b` or as
//! integers; blank lines and lines starting with `#` are skipped.
//!
//! ```text
//! graph 3 3            sbs 2                 dsep pathset 2
//! e 1 2 prob 1/2       probs 1/2 1/2         h 1 1 1 0 0 0 >= 2
//! e 2 3 prob 1/2       repr mincuts 2        h 0 0 0 1 1 1 >= 2
//! e 1 3 prob 1/2       01
//!                      10
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::dsep::{HyperplaneCertificate, Side};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::partition::PartitionInstance;
use crate::state::StateWord;
use crate::system::BinarySystem;
use crate::threshold::{Comparison, ThresholdDescription};
use crate::Rational;

/// Non-empty, non-comment lines with their 1-based line numbers.
struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it, last: 0 }
    }

    fn next_line(&mut self, expected: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((no, l)) => {
                self.last = no;
                Ok((no, l.split_whitespace().collect()))
            }
            None => Err(Error::parse(
                self.last + 1,
                format!("unexpected end of input, expected {expected}"),
            )),
        }
    }

    fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            Some((no, l)) => Err(Error::parse(no, format!("unexpected trailing line `{l}`"))),
            None => Ok(()),
        }
    }
}

fn keyword(line: usize, tokens: &[&str], word: &str) -> Result<()> {
    match tokens.first() {
        Some(&t) if t == word => Ok(()),
        Some(t) => Err(Error::parse(line, format!("expected `{word}`, found `{t}`"))),
        None => Err(Error::parse(line, format!("expected `{word}`"))),
    }
}

fn count(line: usize, token: Option<&&str>, what: &str) -> Result<usize> {
    let t = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| Error::parse(line, format!("{what} `{t}` is not a non-negative integer")))
}

/// `a/b` or an integer, reduced to lowest terms.
pub fn parse_rational(line: usize, token: &str) -> Result<Rational> {
    let bad = || Error::parse(line, format!("`{token}` is not a rational number"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == num_bigint::BigInt::from(0) {
        return Err(Error::parse(line, format!("`{token}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

fn rationals(line: usize, tokens: &[&str]) -> Result<Vec<Rational>> {
    tokens.iter().map(|t| parse_rational(line, t)).collect()
}

fn state_word(line: usize, token: &str, n: usize) -> Result<StateWord> {
    let w: StateWord = token
        .parse()
        .map_err(|_| Error::parse(line, format!("`{token}` is not a 0/1 word")))?;
    if w.len() != n {
        return Err(Error::parse(
            line,
            format!("word `{token}` has {} bits, expected {n}", w.len()),
        ));
    }
    Ok(w)
}

pub fn parse_graph(text: &str) -> Result<UndirectedGraph<Rational>> {
    let mut lines = Lines::new(text);
    let (no, head) = lines.next_line("`graph <n> <m>`")?;
    keyword(no, &head, "graph")?;
    let n = count(no, head.get(1), "node count")?;
    let m = count(no, head.get(2), "edge count")?;
    if head.len() > 3 {
        return Err(Error::parse(no, "`graph` takes two numbers"));
    }
    let mut edges = Vec::with_capacity(m);
    let (mut weights, mut probs) = (Vec::new(), Vec::new());
    for _ in 0..m {
        let (no, t) = lines.next_line("an edge line")?;
        keyword(no, &t, "e")?;
        let endpoint = |tok: Option<&&str>| -> Result<usize> {
            let v = count(no, tok, "endpoint")?;
            if v == 0 || v > n {
                return Err(Error::Validation(format!("line {no}: node {v} outside 1..{n}")));
            }
            Ok(v - 1)
        };
        edges.push((endpoint(t.get(1))?, endpoint(t.get(2))?));
        for pair in t[3.min(t.len())..].chunks(2) {
            let [key, value] = pair else {
                return Err(Error::parse(no, format!("attribute `{}` has no value", pair[0])));
            };
            let target = match *key {
                "weight" => &mut weights,
                "prob" => &mut probs,
                other => return Err(Error::parse(no, format!("unknown edge attribute `{other}`"))),
            };
            if target.last().map(|(i, _)| *i) == Some(edges.len()) {
                return Err(Error::parse(no, format!("repeated `{key}`")));
            }
            target.push((edges.len(), parse_rational(no, value)?));
        }
    }
    lines.finish()?;

    let mut graph = UndirectedGraph::new(n, edges)?;
    for (name, values) in [("weight", weights), ("prob", probs)] {
        if values.is_empty() {
            continue;
        }
        if values.len() != m {
            let missing = (1..=m).find(|e| !values.iter().any(|(i, _)| i == e)).unwrap_or(m);
            return Err(Error::Validation(format!(
                "edge {missing} has no {name} while other edges do"
            )));
        }
        let values = values.into_iter().map(|(_, v)| v).collect();
        graph = if name == "weight" {
            graph.with_weights(values)?
        } else {
            graph.with_probs(values)?
        };
    }
    Ok(graph)
}

/// Reads a system file; `repr graph <path>` is resolved relative to the
/// file's directory.
pub fn read_system(path: &Path) -> Result<BinarySystem<Rational>> {
    let text = read_text(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_system_with(&text, |name| read_text(&base.join(name)))
}

pub fn read_graph(path: &Path) -> Result<UndirectedGraph<Rational>> {
    parse_graph(&read_text(path)?)
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

/// System file without graph references.
pub fn parse_system(text: &str) -> Result<BinarySystem<Rational>> {
    parse_system_with(text, |name| {
        Err(Error::Validation(format!("cannot resolve graph file `{name}` here")))
    })
}

/// System file; `resolve` returns the text of a referenced graph file.
pub fn parse_system_with(text: &str, resolve: impl Fn(&str) -> Result<String>) -> Result<BinarySystem<Rational>> {
    let mut lines = Lines::new(text);
    let (no, head) = lines.next_line("`sbs <N>`")?;
    keyword(no, &head, "sbs")?;
    let n = count(no, head.get(1), "component count")?;
    if n == 0 || n > crate::MAX_COMPONENTS {
        return Err(Error::Validation(format!(
            "line {no}: component count must lie in 1..={}",
            crate::MAX_COMPONENTS
        )));
    }

    let (mut no, mut t) = lines.next_line("`probs` or `repr`")?;
    let mut probs = None;
    if t[0] == "probs" {
        let p = rationals(no, &t[1..])?;
        if p.len() != n {
            return Err(Error::parse(
                no,
                format!("{} probabilities for {n} components", p.len()),
            ));
        }
        probs = Some(p);
        (no, t) = lines.next_line("`repr`")?;
    }
    keyword(no, &t, "repr")?;
    let kind = t.get(1).copied().unwrap_or("");
    let system = match kind {
        "truthtable" => {
            let bits: String = t[2..].concat();
            let table = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::parse(no, format!("`{c}` is not a truth-table bit"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if n >= usize::BITS as usize - 1 || table.len() != 1usize << n {
                return Err(Error::parse(
                    no,
                    format!("truth table has {} bits, expected 2^{n}", table.len()),
                ));
            }
            BinarySystem::from_truth_table(n, table)?
        }
        "mincuts" => {
            let k = count(no, t.get(2), "mincut count")?;
            let mut cuts = Vec::with_capacity(k);
            for _ in 0..k {
                let (no, w) = lines.next_line("a mincut word")?;
                if w.len() != 1 {
                    return Err(Error::parse(no, "expected a single word"));
                }
                cuts.push(state_word(no, w[0], n)?);
            }
            BinarySystem::from_mincuts(n, cuts)?
        }
        "threshold" => {
            let (no, w) = lines.next_line("`weights`")?;
            keyword(no, &w, "weights")?;
            let weights = rationals(no, &w[1..])?;
            if weights.len() != n {
                return Err(Error::parse(
                    no,
                    format!("{} weights for {n} components", weights.len()),
                ));
            }
            let (no, a) = lines.next_line("`alpha0`")?;
            keyword(no, &a, "alpha0")?;
            if a.len() != 2 {
                return Err(Error::parse(no, "`alpha0` takes one rational"));
            }
            let alpha0 = parse_rational(no, a[1])?;
            let (no, c) = lines.next_line("`cmp`")?;
            keyword(no, &c, "cmp")?;
            let cmp = match c.get(1).copied() {
                Some("strict") => Comparison::Strict,
                Some("nonstrict") => Comparison::NonStrict,
                other => {
                    return Err(Error::parse(
                        no,
                        format!("`cmp` must be strict or nonstrict, found `{}`", other.unwrap_or("")),
                    ))
                }
            };
            BinarySystem::from_threshold(ThresholdDescription::new(weights, alpha0, cmp)?)?
        }
        "graph" => {
            let name = t
                .get(2)
                .ok_or_else(|| Error::parse(no, "`repr graph` needs a file name"))?;
            let graph = parse_graph(&resolve(name)?)?;
            if graph.edge_count() != n {
                return Err(Error::Validation(format!(
                    "line {no}: graph has {} edges but the system declares {n} components",
                    graph.edge_count()
                )));
            }
            BinarySystem::from_graph(graph)?
        }
        other => {
            return Err(Error::parse(
                no,
                format!("unknown representation `{other}`, expected truthtable, mincuts, threshold or graph"),
            ))
        }
    };
    lines.finish()?;
    match probs {
        Some(p) => system.with_probs(p),
        None => Ok(system),
    }
}

pub fn parse_certificate(text: &str) -> Result<HyperplaneCertificate<Rational>> {
    let mut lines = Lines::new(text);
    let (no, head) = lines.next_line("`dsep <side> <d>`")?;
    keyword(no, &head, "dsep")?;
    let side = head
        .get(1)
        .and_then(|s| Side::from_keyword(s))
        .ok_or_else(|| Error::parse(no, "side must be `pathset` or `cutset`"))?;
    let d = count(no, head.get(2), "hyperplane count")?;
    let mut hyperplanes = Vec::with_capacity(d);
    for _ in 0..d {
        let (no, t) = lines.next_line("a hyperplane line")?;
        keyword(no, &t, "h")?;
        let ge = t
            .iter()
            .position(|&x| x == ">=")
            .ok_or_else(|| Error::parse(no, "hyperplane needs `>=`"))?;
        if ge + 2 != t.len() || ge < 2 {
            return Err(Error::parse(no, "expected `h <w_1> ... <w_N> >= <alpha>`"));
        }
        let weights = rationals(no, &t[1..ge])?;
        let alpha = parse_rational(no, t[ge + 1])?;
        if let Some(len) = hyperplanes.first().map(ThresholdDescription::len) {
            if len != weights.len() {
                return Err(Error::parse(
                    no,
                    format!("{} weights, previous hyperplanes have {len}", weights.len()),
                ));
            }
        }
        hyperplanes.push(
            ThresholdDescription::new(weights, alpha, Comparison::NonStrict)
                .map_err(|e| Error::Validation(format!("line {no}: {e}")))?,
        );
    }
    lines.finish()?;
    Ok(HyperplaneCertificate { side, hyperplanes })
}

pub fn render_certificate(cert: &HyperplaneCertificate<Rational>) -> String {
    let mut out = format!("dsep {} {}\n", cert.side, cert.d());
    for h in &cert.hyperplanes {
        out.push('h');
        for w in h.weights() {
            let _ = write!(out, " {w}");
        }
        let _ = writeln!(out, " >= {}", h.alpha0());
    }
    out
}

pub fn render_graph(graph: &UndirectedGraph<Rational>) -> String {
    let mut out = format!("graph {} {}\n", graph.node_count(), graph.edge_count());
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        let _ = write!(out, "e {} {}", u + 1, v + 1);
        if let Some(w) = graph.edge_weights() {
            let _ = write!(out, " weight {}", w[i]);
        }
        if let Some(p) = graph.edge_probs() {
            let _ = write!(out, " prob {}", p[i]);
        }
        out.push('\n');
    }
    out
}

/// Whitespace-separated positive integers, across any number of lines.
pub fn parse_partition(text: &str) -> Result<PartitionInstance> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("`{tok}` is not a positive integer")))?;
            if v == 0 {
                return Err(Error::parse(i + 1, "partition values must be positive"));
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(Error::parse(1, "no values"));
    }
    PartitionInstance::new(values)
}
