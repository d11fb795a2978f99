//! The `.cox` format.
//!
//! ```text
//! coxeter v1
//! gen x y z
//! edge x y 3
//! edge y z 2
//! ```
//!
//! Pairs with no `edge` line have m = ∞. `#` starts a comment.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, ParseErrorKind, Result};
use crate::matrix::{is_valid_label, CoxeterMatrix, DiagramKind, Order};

const HEADER: &str = "coxeter v1";

fn err(line: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, kind }
}

pub fn read_cox(path: impl AsRef<Path>) -> Result<CoxeterMatrix> {
    parse_cox(&std::fs::read_to_string(path)?)
}

pub fn parse_cox(text: &str) -> Result<CoxeterMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["coxeter", "v1"] => {}
        Some((n, _)) => return Err(err(n, ParseErrorKind::MissingHeader)),
        None => return Err(err(1, ParseErrorKind::MissingHeader)),
    }

    let mut gens: Option<Vec<String>> = None;
    let mut edges: Vec<(usize, String, String, u32)> = Vec::new();
    let mut last = 1;
    for (n, line) in lines {
        last = n;
        let mut words = line.split_whitespace();
        match words.next() {
            Some("gen") => {
                if gens.is_some() {
                    return Err(err(n, ParseErrorKind::RepeatedGenerators));
                }
                let labels: Vec<String> = words.map(str::to_string).collect();
                if let Some(bad) = labels.iter().find(|l| !is_valid_label(l)) {
                    return Err(err(n, ParseErrorKind::BadLabel(bad.clone())));
                }
                let mut seen = BTreeSet::new();
                if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                    return Err(Error::DuplicateGenerator(dup.clone()));
                }
                gens = Some(labels);
            }
            Some("edge") => {
                let parts: Vec<&str> = words.collect();
                let [s, t, m] = parts[..] else {
                    return Err(err(n, ParseErrorKind::Malformed(line.to_string())));
                };
                for l in [s, t] {
                    if !is_valid_label(l) {
                        return Err(err(n, ParseErrorKind::BadLabel(l.to_string())));
                    }
                }
                if s == t {
                    return Err(err(n, ParseErrorKind::SelfEdge(s.to_string())));
                }
                let m: u32 = match m.parse() {
                    Ok(v) if v >= 2 => v,
                    _ => return Err(err(n, ParseErrorKind::BadM(m.to_string()))),
                };
                edges.push((n, s.to_string(), t.to_string(), m));
            }
            _ => return Err(err(n, ParseErrorKind::Malformed(line.to_string()))),
        }
    }

    let gens = gens.ok_or_else(|| err(last, ParseErrorKind::MissingGenerators))?;
    let known: BTreeSet<&str> = gens.iter().map(String::as_str).collect();
    let mut seen = BTreeSet::new();
    let mut builder = CoxeterMatrix::builder().generators(gens.iter().cloned());
    for (n, s, t, m) in edges {
        for l in [&s, &t] {
            if !known.contains(l.as_str()) {
                return Err(err(n, ParseErrorKind::UnknownGenerator(l.clone())));
            }
        }
        let key = if s < t { (s.clone(), t.clone()) } else { (t.clone(), s.clone()) };
        if !seen.insert(key) {
            return Err(err(n, ParseErrorKind::DuplicateEdge(s, t)));
        }
        builder = builder.edge(s, t, Order::Finite(m));
    }
    builder.build()
}

/// Canonical text: header, one `gen` line, finite pairs in generator order.
pub fn emit_cox(m: &CoxeterMatrix) -> String {
    let mut out = format!("{HEADER}\ngen {}\n", m.labels().collect::<Vec<_>>().join(" "));
    for (s, t, o) in m.edges(DiagramKind::Presentation) {
        out.push_str(&format!("edge {} {} {}\n", m.label(s), m.label(t), o));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> (&'static str, usize) {
        match parse_cox(text).unwrap_err() {
            e @ Error::Parse { line, .. } => (e.code(), line),
            e => (e.code(), 0),
        }
    }

    #[test]
    fn a2() {
        let m = parse_cox("coxeter v1\ngen x y\nedge x y 3\n").unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.m(m.gen("x").unwrap(), m.gen("y").unwrap()), Order::Finite(3));
    }

    #[test]
    fn comments_and_infinity() {
        let m = parse_cox("# a free product\ncoxeter v1  # header\n\ngen a b c\nedge a b 2 # commute\n").unwrap();
        assert_eq!(m.m(m.gen("a").unwrap(), m.gen("c").unwrap()), Order::Infinity);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(code("gen x y\n"), ("PARSE_ERROR", 1));
        assert_eq!(code(""), ("PARSE_ERROR", 1));
        assert_eq!(code("coxeter v1\ngen x y\nedge x y 3\nedge y x 4\n"), ("DUPLICATE_EDGE", 4));
        assert_eq!(code("coxeter v1\ngen x y\nedge x y 1\n"), ("BAD_M", 3));
        assert_eq!(code("coxeter v1\ngen x y\nedge x y 2.5\n"), ("BAD_M", 3));
        assert_eq!(code("coxeter v1\ngen x y\nedge x x 3\n"), ("SELF_EDGE", 3));
        assert_eq!(code("coxeter v1\ngen x 9y\n"), ("BAD_LABEL", 2));
        assert_eq!(code("coxeter v1\ngen x y\nedge x w 3\n"), ("PARSE_ERROR", 3));
        assert_eq!(code("coxeter v1\ngen x x\n"), ("DUPLICATE_GENERATOR", 0));
    }

    #[test]
    fn c3_d23_is_complete() {
        let text = "coxeter v1\ngen c1 c2 c3 d1 d2\n\
            edge c1 c2 3\nedge c2 c3 4\nedge c1 c3 2\nedge d1 d2 3\n\
            edge c1 d1 2\nedge c1 d2 2\nedge c2 d1 2\nedge c2 d2 2\nedge c3 d1 2\nedge c3 d2 2\n";
        let m = parse_cox(text).unwrap();
        assert_eq!(m.edges(DiagramKind::Presentation).len(), 10);
        assert_eq!(parse_cox(&emit_cox(&m)).unwrap(), m);
    }

    #[test]
    fn fresh_labels_round_trip() {
        let m = parse_cox("coxeter v1\ngen a!1 b\nedge a!1 b 4\n").unwrap();
        assert_eq!(parse_cox(&emit_cox(&m)).unwrap(), m);
    }
}
