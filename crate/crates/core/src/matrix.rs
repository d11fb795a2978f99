//! Coxeter matrices and the purely diagrammatic notions built on them:
//! neighborhoods, perps, C-diagram components, odd components, simplices.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Separator reserved for generated labels (`a!1`, `z!2`, ...). User labels
/// can never contain it.
pub const FRESH_SEPARATOR: char = '!';

/// An off-diagonal Coxeter matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinity,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinity => None,
        }
    }

    /// Odd finite label. Infinity is neither odd nor even.
    pub fn is_odd(self) -> bool {
        matches!(self, Order::Finite(m) if m % 2 == 1)
    }

    pub fn is_even(self) -> bool {
        matches!(self, Order::Finite(m) if m % 2 == 0)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    User,
    Fresh,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub provenance: Provenance,
}

/// Index of a generator inside one [`CoxeterMatrix`]. Meaningless across
/// matrices; labels are the stable identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub usize);

impl Gen {
    pub fn index(self) -> usize {
        self.0
    }
}

pub type Subset = BTreeSet<Gen>;

/// Which labeled graph to derive from a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramKind {
    /// Edges with m > 2 (including infinity).
    Coxeter,
    /// Edges with m finite.
    Presentation,
    /// Presentation edges with odd label.
    Odd,
}

impl DiagramKind {
    pub fn has_edge(self, m: Order) -> bool {
        match self {
            DiagramKind::Coxeter => m != Order::Finite(2),
            DiagramKind::Presentation => m.is_finite(),
            DiagramKind::Odd => m.is_odd(),
        }
    }
}

/// Checks a label against `[A-Za-z][A-Za-z0-9_]*`, optionally followed by a
/// generated suffix `!<digits>`.
pub fn is_valid_label(label: &str) -> bool {
    let (root, suffix) = match label.split_once(FRESH_SEPARATOR) {
        Some((r, s)) => (r, Some(s)),
        None => (label, None),
    };
    let mut chars = root.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic());
    let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    let suffix_ok = match suffix {
        None => true,
        Some(s) => !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()),
    };
    head_ok && tail_ok && suffix_ok
}

fn provenance_of(label: &str) -> Provenance {
    if label.contains(FRESH_SEPARATOR) {
        Provenance::Fresh
    } else {
        Provenance::User
    }
}

/// A Coxeter matrix over an ordered generator set. Immutable once built.
///
/// The generator order is significant: it is the shortlex order used by the
/// word engine and the deterministic tie-break everywhere else.
#[derive(Clone, Debug)]
pub struct CoxeterMatrix {
    gens: Vec<Generator>,
    index: HashMap<String, Gen>,
    entries: Vec<Order>,
}

impl PartialEq for CoxeterMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.entries == other.entries
    }
}

impl Eq for CoxeterMatrix {}

#[derive(Clone, Debug, Default)]
pub struct MatrixBuilder {
    labels: Vec<String>,
    edges: Vec<(String, String, Order)>,
}

impl MatrixBuilder {
    pub fn generator(mut self, label: impl Into<String>) -> Self {
        self.labels.push(label.into());
        self
    }

    pub fn generators<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.labels.extend(labels.into_iter().map(Into::into));
        self
    }

    /// Sets m(s,t). Pairs that are never set default to infinity.
    pub fn edge(mut self, s: impl Into<String>, t: impl Into<String>, m: Order) -> Self {
        self.edges.push((s.into(), t.into(), m));
        self
    }

    pub fn finite(self, s: impl Into<String>, t: impl Into<String>, m: u32) -> Self {
        self.edge(s, t, Order::Finite(m))
    }

    pub fn build(self) -> Result<CoxeterMatrix> {
        let n = self.labels.len();
        let mut index = HashMap::with_capacity(n);
        let mut gens = Vec::with_capacity(n);
        for (i, label) in self.labels.into_iter().enumerate() {
            if !is_valid_label(&label) {
                return Err(Error::BadLabel(label));
            }
            if index.insert(label.clone(), Gen(i)).is_some() {
                return Err(Error::DuplicateGenerator(label));
            }
            gens.push(Generator {
                provenance: provenance_of(&label),
                label,
            });
        }
        let mut entries = vec![Order::Infinity; n * n];
        for i in 0..n {
            entries[i * n + i] = Order::Finite(1);
        }
        for (s, t, m) in self.edges {
            let a = *index.get(&s).ok_or_else(|| Error::UnknownGenerator(s.clone()))?;
            let b = *index.get(&t).ok_or_else(|| Error::UnknownGenerator(t.clone()))?;
            if a == b {
                return Err(Error::BadEntry(format!("m({s},{s}) is fixed at 1")));
            }
            if let Order::Finite(v) = m {
                if v < 2 {
                    return Err(Error::BadEntry(format!("m({s},{t}) = {v} < 2")));
                }
            }
            entries[a.0 * n + b.0] = m;
            entries[b.0 * n + a.0] = m;
        }
        Ok(CoxeterMatrix {
            gens,
            index,
            entries,
        })
    }
}

impl CoxeterMatrix {
    pub fn builder() -> MatrixBuilder {
        MatrixBuilder::default()
    }

    /// Convenience constructor from labels and finite edges; all other pairs
    /// are infinity.
    pub fn from_edges(labels: &[&str], edges: &[(&str, &str, u32)]) -> Result<Self> {
        edges
            .iter()
            .fold(Self::builder().generators(labels.iter().copied()), |b, &(s, t, m)| {
                b.finite(s, t, m)
            })
            .build()
    }

    /// Number of generators, i.e. the rank.
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> impl ExactSizeIterator<Item = Gen> + '_ {
        (0..self.gens.len()).map(Gen)
    }

    pub fn all(&self) -> Subset {
        self.generators().collect()
    }

    pub fn generator(&self, g: Gen) -> &Generator {
        &self.gens[g.0]
    }

    pub fn label(&self, g: Gen) -> &str {
        &self.gens[g.0].label
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.gens.iter().map(|g| g.label.as_str())
    }

    pub fn gen(&self, label: &str) -> Result<Gen> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn subset(&self, labels: &[&str]) -> Result<Subset> {
        labels.iter().map(|l| self.gen(l)).collect()
    }

    /// Parses a comma- or whitespace-separated list of labels.
    pub fn subset_from_list(&self, list: &str) -> Result<Subset> {
        list.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|l| self.gen(l))
            .collect()
    }

    pub fn subset_labels(&self, a: &Subset) -> Vec<String> {
        a.iter().map(|&g| self.label(g).to_string()).collect()
    }

    pub fn m(&self, s: Gen, t: Gen) -> Order {
        self.entries[s.0 * self.gens.len() + t.0]
    }

    /// Unordered pairs `s < t` with their entries.
    pub fn pairs(&self) -> impl Iterator<Item = (Gen, Gen, Order)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (Gen(i), Gen(j), self.m(Gen(i), Gen(j)))))
    }

    /// Edges of the requested diagram, in generator order.
    pub fn edges(&self, kind: DiagramKind) -> Vec<(Gen, Gen, Order)> {
        self.pairs().filter(|&(_, _, m)| kind.has_edge(m)).collect()
    }

    /// Distinct finite labels that occur off the diagonal.
    pub fn finite_labels(&self) -> BTreeSet<u32> {
        self.pairs().filter_map(|(_, _, m)| m.finite()).collect()
    }

    /// N(a) = {s : m(s,a) < inf}; contains `a` itself.
    pub fn neighborhood(&self, a: Gen) -> Subset {
        self.generators().filter(|&s| self.m(s, a).is_finite()).collect()
    }

    /// A⊥ = {s : m(s,a) = 2 for every a in A}.
    pub fn perp(&self, a: &Subset) -> Subset {
        self.generators()
            .filter(|&s| a.iter().all(|&t| self.m(s, t) == Order::Finite(2)))
            .collect()
    }

    /// Connected components of the diagram of kind `kind` induced on `a`,
    /// each listed by its smallest generator first.
    pub fn components_of(&self, a: &Subset, kind: DiagramKind) -> Vec<Subset> {
        let mut seen = Subset::new();
        let mut out = Vec::new();
        for &start in a {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Subset::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &v in a {
                    if !seen.contains(&v) && kind.has_edge(self.m(u, v)) {
                        seen.insert(v);
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Components of the C-diagram induced on `a`.
    pub fn components(&self, a: &Subset) -> Vec<Subset> {
        self.components_of(a, DiagramKind::Coxeter)
    }

    pub fn is_irreducible(&self, a: &Subset) -> bool {
        !a.is_empty() && self.components(a).len() == 1
    }

    /// Odd(a): the component of the odd diagram containing `a`.
    pub fn odd_component(&self, a: Gen) -> Subset {
        let all = self.all();
        self.components_of(&all, DiagramKind::Odd)
            .into_iter()
            .find(|c| c.contains(&a))
            .unwrap_or_default()
    }

    /// EOdd(a) = Odd(a) ∪ {s : m(s,b) even for some b in Odd(a)}.
    pub fn extended_odd(&self, a: Gen) -> Subset {
        let odd = self.odd_component(a);
        let mut out = odd.clone();
        for s in self.generators() {
            if odd.iter().any(|&b| self.m(s, b).is_even()) {
                out.insert(s);
            }
        }
        out
    }

    /// Complete in the P-diagram.
    pub fn is_simplex(&self, a: &Subset) -> bool {
        a.iter()
            .all(|&s| a.iter().all(|&t| self.m(s, t).is_finite()))
    }

    /// The induced matrix on `a`, keeping generator order and labels.
    pub fn restrict(&self, a: &Subset) -> CoxeterMatrix {
        let keep: Vec<Gen> = a.iter().copied().collect();
        let n = keep.len();
        let gens: Vec<Generator> = keep.iter().map(|&g| self.gens[g.0].clone()).collect();
        let index = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.label.clone(), Gen(i)))
            .collect();
        let mut entries = Vec::with_capacity(n * n);
        for &s in &keep {
            for &t in &keep {
                entries.push(self.m(s, t));
            }
        }
        CoxeterMatrix {
            gens,
            index,
            entries,
        }
    }

    /// A label `root!k` (k minimal) unused in this matrix and not in `taken`.
    pub fn fresh_label(&self, root: &str, taken: &BTreeSet<String>) -> String {
        let root = root.split(FRESH_SEPARATOR).next().unwrap_or(root);
        (1..)
            .map(|k| format!("{root}{FRESH_SEPARATOR}{k}"))
            .find(|l| !self.contains_label(l) && !taken.contains(l))
            .expect("unbounded counter")
    }

    /// Direct product: all cross pairs get m = 2. Labels must be disjoint.
    pub fn direct_product(parts: &[&CoxeterMatrix]) -> Result<CoxeterMatrix> {
        Self::join(parts, Order::Finite(2))
    }

    /// Free product: all cross pairs get m = inf.
    pub fn free_product(parts: &[&CoxeterMatrix]) -> Result<CoxeterMatrix> {
        Self::join(parts, Order::Infinity)
    }

    fn join(parts: &[&CoxeterMatrix], cross: Order) -> Result<CoxeterMatrix> {
        let mut b = CoxeterMatrix::builder();
        let mut owner = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            for g in p.generators() {
                b = b.generator(p.label(g));
                owner.push((k, g));
            }
        }
        for (i, &(pi, gi)) in owner.iter().enumerate() {
            for &(pj, gj) in &owner[i + 1..] {
                let m = if pi == pj { parts[pi].m(gi, gj) } else { cross };
                b = b.edge(parts[pi].label(gi), parts[pj].label(gj), m);
            }
        }
        b.build()
    }

    /// Same matrix with labels replaced through `f` (must stay injective).
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> Result<CoxeterMatrix> {
        let mut b = CoxeterMatrix::builder();
        for g in self.generators() {
            b = b.generator(f(self.label(g)));
        }
        for (s, t, m) in self.pairs() {
            b = b.edge(f(self.label(s)), f(self.label(t)), m);
        }
        b.build()
    }

    /// Same matrix with the generator order permuted: `order[i]` is the old
    /// index of the new i-th generator.
    pub fn reordered(&self, order: &[Gen]) -> Result<CoxeterMatrix> {
        let mut b = CoxeterMatrix::builder();
        for &g in order {
            b = b.generator(self.label(g));
        }
        for (s, t, m) in self.pairs() {
            b = b.edge(self.label(s), self.label(t), m);
        }
        b.build()
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.labels().collect();
        write!(f, "<{}", labels.join(" "))?;
        let finite: Vec<String> = self
            .pairs()
            .filter(|(_, _, m)| m.is_finite())
            .map(|(s, t, m)| format!("{}{}:{}", self.label(s), self.label(t), m))
            .collect();
        if !finite.is_empty() {
            write!(f, " | {}", finite.join(" "))?;
        }
        f.write_str(">")
    }
}
