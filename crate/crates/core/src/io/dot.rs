//! Graphviz output for the three diagrams of a presentation.

use std::fmt::Write;
use std::str::FromStr;

use crate::matrix::{CoxeterMatrix, DiagramKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotView {
    /// C-diagram: pairs with m > 2, ∞ included.
    C,
    /// P-diagram: pairs with finite m.
    P,
    /// Odd diagram: pairs with odd m.
    Odd,
}

impl DotView {
    pub fn kind(self) -> DiagramKind {
        match self {
            DotView::C => DiagramKind::Coxeter,
            DotView::P => DiagramKind::Presentation,
            DotView::Odd => DiagramKind::Odd,
        }
    }
}

impl FromStr for DotView {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "c" => Ok(DotView::C),
            "p" => Ok(DotView::P),
            "odd" => Ok(DotView::Odd),
            other => Err(format!("unknown view `{other}` (expected c, p or odd)")),
        }
    }
}

pub fn emit_dot(m: &CoxeterMatrix, view: DotView) -> String {
    let name = match view {
        DotView::C => "C",
        DotView::P => "P",
        DotView::Odd => "Odd",
    };
    let mut out = format!("graph {name} {{\n");
    for l in m.labels() {
        writeln!(out, "  \"{l}\";").unwrap();
    }
    for (s, t, o) in m.edges(view.kind()) {
        writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"];", m.label(s), m.label(t), o).unwrap();
    }
    out.push_str("}\n");
    out
}
