//! JSON and DOT rendering of workbench objects.
//!
//! The object kind is recognised from the set of top-level JSON keys.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::Value;

use crate::biframe::{Biframe, Space};
use crate::completion::Uniformity;
use crate::congruence::BoundCongruence;
use crate::hom::FrameHom;
use crate::order::{bits, FiniteFrame, Poset};
use crate::paircover::{PairDownset, QuasiUniformity};

use super::search::SearchOutcome;
use super::suite::{SuiteReport, Witness};
use super::WorkbenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Format, WorkbenchError> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(WorkbenchError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Poset(Poset),
    Frame(FiniteFrame),
    Biframe(Biframe),
    Hom(FrameHom),
    Congruence(BoundCongruence),
    Space(Space),
    Paircover(PairDownset),
    QuasiUniformity(QuasiUniformity),
    Uniformity(Uniformity),
    Witness(Witness),
    Report(SuiteReport),
    Search(SearchOutcome),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Poset(_) => "poset",
            Object::Frame(_) => "frame",
            Object::Biframe(_) => "biframe",
            Object::Hom(_) => "homomorphism",
            Object::Congruence(_) => "congruence",
            Object::Space(_) => "space",
            Object::Paircover(_) => "paircover",
            Object::QuasiUniformity(_) => "quasi-uniformity",
            Object::Uniformity(_) => "uniformity",
            Object::Witness(_) => "witness",
            Object::Report(_) => "suite report",
            Object::Search(_) => "search outcome",
        }
    }

    fn to_json(&self) -> Result<String, serde_json::Error> {
        match self {
            Object::Poset(x) => serde_json::to_string_pretty(x),
            Object::Frame(x) => serde_json::to_string_pretty(x),
            Object::Biframe(x) => serde_json::to_string_pretty(x),
            Object::Hom(x) => serde_json::to_string_pretty(x),
            Object::Congruence(x) => serde_json::to_string_pretty(x),
            Object::Space(x) => serde_json::to_string_pretty(x),
            Object::Paircover(x) => serde_json::to_string_pretty(x),
            Object::QuasiUniformity(x) => serde_json::to_string_pretty(x),
            Object::Uniformity(x) => serde_json::to_string_pretty(x),
            Object::Witness(x) => serde_json::to_string_pretty(x),
            Object::Report(x) => serde_json::to_string_pretty(x),
            Object::Search(x) => serde_json::to_string_pretty(x),
        }
    }
}

/// Parses any documented object, choosing the type by its keys.
pub fn parse_object(text: &str) -> Result<Object, WorkbenchError> {
    let v: Value = serde_json::from_str(text)?;
    let Value::Object(map) = &v else {
        return Err(WorkbenchError::UnknownObject("top level is not a JSON object".into()));
    };
    let keys: BTreeSet<&str> = map.keys().map(String::as_str).collect();
    let has = |ks: &[&str]| ks.iter().all(|k| keys.contains(k)) && keys.len() == ks.len();
    let obj = if has(&["n", "le"]) {
        Object::Poset(serde_json::from_value(v)?)
    } else if has(&["poset"]) {
        Object::Frame(serde_json::from_value(v)?)
    } else if has(&["total", "part1", "part2"]) {
        Object::Biframe(serde_json::from_value(v)?)
    } else if has(&["dom", "cod", "map"]) {
        Object::Hom(serde_json::from_value(v)?)
    } else if has(&["frame", "classes"]) {
        Object::Congruence(serde_json::from_value(v)?)
    } else if has(&["points", "opens"]) {
        Object::Space(serde_json::from_value(v)?)
    } else if has(&["pairs"]) {
        Object::Paircover(serde_json::from_value(v)?)
    } else if has(&["biframe", "base"]) {
        Object::QuasiUniformity(serde_json::from_value(v)?)
    } else if has(&["frame", "base"]) {
        Object::Uniformity(serde_json::from_value(v)?)
    } else if keys.contains("claim") && keys.contains("instance") {
        Object::Witness(serde_json::from_value(v)?)
    } else if keys.contains("claims") && keys.contains("suite") {
        Object::Report(serde_json::from_value(v)?)
    } else if keys.contains("property") && keys.contains("examined") {
        Object::Search(serde_json::from_value(v)?)
    } else {
        return Err(WorkbenchError::UnknownObject(format!("keys {keys:?}")));
    };
    Ok(obj)
}

pub fn export(obj: &Object, format: Format) -> Result<String, WorkbenchError> {
    match format {
        Format::Json => Ok(obj.to_json()? + "\n"),
        Format::Dot => dot(obj),
    }
}

fn mask_label(m: u64) -> String {
    let items: Vec<String> = bits(m).map(|b| b.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn frame_nodes(out: &mut String, f: &FiniteFrame, prefix: &str, style: impl Fn(usize) -> String) {
    for e in f.elements() {
        let _ = writeln!(
            out,
            "  {prefix}{e} [label=\"{e}: {}\"{}];",
            mask_label(f.bits(e)),
            style(e)
        );
    }
    for (lo, hi) in f.covering_pairs() {
        let _ = writeln!(out, "  {prefix}{lo} -> {prefix}{hi};");
    }
}

fn dot(obj: &Object) -> Result<String, WorkbenchError> {
    let mut out = String::new();
    match obj {
        Object::Poset(p) => {
            out.push_str("digraph poset {\n  rankdir=BT;\n");
            for i in 0..p.n() {
                let _ = writeln!(out, "  p{i} [label=\"{i}\"];");
            }
            for i in 0..p.n() {
                for j in 0..p.n() {
                    let covers = i != j
                        && p.le(i, j)
                        && !(0..p.n()).any(|k| k != i && k != j && p.le(i, k) && p.le(k, j));
                    if covers {
                        let _ = writeln!(out, "  p{i} -> p{j};");
                    }
                }
            }
        }
        Object::Frame(f) => {
            out.push_str("digraph frame {\n  rankdir=BT;\n");
            frame_nodes(&mut out, f, "e", |_| String::new());
        }
        Object::Biframe(b) => {
            out.push_str("digraph biframe {\n  rankdir=BT;\n  node [style=filled];\n");
            frame_nodes(&mut out, b.total(), "e", |e| {
                let colour = match (b.in_part(1, e), b.in_part(2, e)) {
                    (true, true) => "plum",
                    (true, false) => "lightblue",
                    (false, true) => "lightpink",
                    (false, false) => "white",
                };
                format!(", fillcolor={colour}")
            });
        }
        Object::Congruence(c) => {
            out.push_str("digraph congruence {\n  rankdir=BT;\n");
            for (k, class) in c.congruence.classes().iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{k} {{");
                for e in class {
                    let _ = writeln!(out, "    e{e};");
                }
                out.push_str("  }\n");
            }
            frame_nodes(&mut out, &c.frame, "e", |_| String::new());
        }
        Object::Hom(h) => {
            out.push_str("digraph homomorphism {\n  rankdir=BT;\n  subgraph cluster_dom {\n  label=\"dom\";\n");
            frame_nodes(&mut out, h.dom(), "d", |_| String::new());
            out.push_str("  }\n  subgraph cluster_cod {\n  label=\"cod\";\n");
            frame_nodes(&mut out, h.cod(), "c", |_| String::new());
            out.push_str("  }\n");
            for (x, &y) in h.map().iter().enumerate() {
                let _ = writeln!(out, "  d{x} -> c{y} [style=dashed, constraint=false];");
            }
        }
        Object::Space(s) => {
            out.push_str("digraph space {\n  rankdir=BT;\n");
            let opens = s.validate().map_err(|e| WorkbenchError::UnknownObject(e.to_string()))?;
            for (k, &o) in opens.iter().enumerate() {
                let _ = writeln!(out, "  o{k} [label=\"{}\"];", mask_label(o));
            }
            for (a, &x) in opens.iter().enumerate() {
                for (c, &y) in opens.iter().enumerate() {
                    let covers = x != y
                        && x & y == x
                        && !opens.iter().any(|&z| z != x && z != y && x & z == x && z & y == z);
                    if covers {
                        let _ = writeln!(out, "  o{a} -> o{c};");
                    }
                }
            }
        }
        Object::Paircover(u) => {
            out.push_str("graph paircover {\n  rankdir=LR;\n");
            let firsts: BTreeSet<usize> = u.gens().iter().map(|p| p.0).collect();
            let seconds: BTreeSet<usize> = u.gens().iter().map(|p| p.1).collect();
            out.push_str("  subgraph cluster_first {\n    label=\"first\";\n");
            for x in &firsts {
                let _ = writeln!(out, "    x{x} [label=\"{x}\"];");
            }
            out.push_str("  }\n  subgraph cluster_second {\n    label=\"second\";\n");
            for y in &seconds {
                let _ = writeln!(out, "    y{y} [label=\"{y}\"];");
            }
            out.push_str("  }\n");
            for (x, y) in u.gens() {
                let _ = writeln!(out, "  x{x} -- y{y};");
            }
        }
        other => {
            return Err(WorkbenchError::Unsupported {
                kind: other.kind(),
                format: "dot",
            })
        }
    }
    out.push_str("}\n");
    Ok(out)
}
