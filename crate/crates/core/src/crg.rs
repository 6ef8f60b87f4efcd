//! Irreducible complex reflection groups, their hyperplane orbit counts and the
//! resulting descriptor of the rational completion of the braid group.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fpnilq::AbelianGroup;
use crate::pclie::CommutationGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrgError {
    #[error("cannot parse reflection group `{0}`: expected G(m,p,n) or G4..G37")]
    Parse(String),
    #[error("G({m},{p},{n}): p must divide m")]
    NotDivisible { m: u32, p: u32, n: u32 },
    #[error("parameters must be positive")]
    ZeroParameter,
    #[error("G(1,1,{0}) is the symmetric group acting reducibly; use G(1,1,n+1) as a Coxeter group of type A_n instead")]
    SymmetricGroup(u32),
    #[error("G(2,2,2) is reducible (Klein four-group)")]
    KleinFour,
    #[error("G({m},{m},1) is the trivial group")]
    TrivialGroup { m: u32 },
    #[error("no exceptional group G{0}; the exceptional indices are 4..37")]
    UnknownExceptional(u32),
    #[error("exceptional group G{0} has no entry in the data table")]
    MissingTableEntry(u32),
    #[error("table line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("table entry G{index}: {msg}")]
    TableConstraint { index: u32, msg: String },
    #[error("hyperplane data only exists for the infinite series")]
    NotSeries,
}

/// `G(de,e,n)` or the exceptional group `G_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReflectionGroupSpec {
    Series { d: u32, e: u32, n: u32 },
    Exceptional(u32),
}

impl ReflectionGroupSpec {
    /// `G(de,e,n)`, rejecting reducible and trivial parameter sets.
    pub fn series(d: u32, e: u32, n: u32) -> Result<Self, CrgError> {
        if d == 0 || e == 0 || n == 0 {
            return Err(CrgError::ZeroParameter);
        }
        match (d * e, e, n) {
            (1, 1, n) if n > 1 => Err(CrgError::SymmetricGroup(n)),
            (2, 2, 2) => Err(CrgError::KleinFour),
            (m, _, 1) if d == 1 => Err(CrgError::TrivialGroup { m }),
            _ => Ok(ReflectionGroupSpec::Series { d, e, n }),
        }
    }

    /// `G(m,p,n)` in Shephard–Todd notation.
    pub fn from_mpn(m: u32, p: u32, n: u32) -> Result<Self, CrgError> {
        if m == 0 || p == 0 || n == 0 {
            return Err(CrgError::ZeroParameter);
        }
        if !m.is_multiple_of(p) {
            return Err(CrgError::NotDivisible { m, p, n });
        }
        Self::series(m / p, p, n)
    }

    pub fn exceptional(index: u32) -> Result<Self, CrgError> {
        if (4..=37).contains(&index) {
            Ok(ReflectionGroupSpec::Exceptional(index))
        } else {
            Err(CrgError::UnknownExceptional(index))
        }
    }

    /// Every irreducible `G(de,e,n)` with `de ≤ max_m` and `n ≤ max_n`.
    pub fn series_up_to(max_m: u32, max_n: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for m in 1..=max_m {
            for e in (1..=m).filter(|e| m % e == 0) {
                for n in 1..=max_n {
                    if let Ok(s) = Self::series(m / e, e, n) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    pub fn is_series(&self) -> bool {
        matches!(self, ReflectionGroupSpec::Series { .. })
    }
}

impl fmt::Display for ReflectionGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ReflectionGroupSpec::Series { d, e, n } => write!(f, "G({},{},{})", d * e, e, n),
            ReflectionGroupSpec::Exceptional(k) => write!(f, "G{k}"),
        }
    }
}

impl FromStr for ReflectionGroupSpec {
    type Err = CrgError;

    fn from_str(s: &str) -> Result<Self, CrgError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || CrgError::Parse(s.trim().to_owned());
        let body = compact
            .strip_prefix('G')
            .or_else(|| compact.strip_prefix('g'))
            .ok_or_else(bad)?;
        if let Some(args) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            let nums = args
                .split(',')
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            let [m, p, n] = nums[..] else {
                return Err(bad());
            };
            Self::from_mpn(m, p, n)
        } else {
            let k = body.parse::<u32>().map_err(|_| bad())?;
            Self::exceptional(k)
        }
    }
}

impl Serialize for ReflectionGroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reflecting hyperplane of `G(de,e,n)`, coordinates numbered from 0.
/// `Cross { i, j, a }` is `x_i = ζ^a x_j` with `i < j` and `ζ = exp(2πi/de)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hyperplane {
    Diagonal(usize),
    Cross { i: usize, j: usize, a: u32 },
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Hyperplane::Diagonal(i) => write!(f, "x{} = 0", i + 1),
            Hyperplane::Cross { i, j, a: 0 } => write!(f, "x{} = x{}", i + 1, j + 1),
            Hyperplane::Cross { i, j, a } => write!(f, "x{} = z^{} x{}", i + 1, a, j + 1),
        }
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Monomial matrix `g` with `(g x)_{perm[j]} = ζ^{shift[j]} x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Monomial {
    perm: Vec<usize>,
    shift: Vec<u32>,
}

impl Monomial {
    fn act(&self, h: Hyperplane, m: u32) -> Hyperplane {
        match h {
            Hyperplane::Diagonal(i) => Hyperplane::Diagonal(self.perm[i]),
            Hyperplane::Cross { i, j, a } => {
                let b = (a + self.shift[i] + m - self.shift[j]) % m;
                let (pi, pj) = (self.perm[i], self.perm[j]);
                if pi < pj {
                    Hyperplane::Cross { i: pi, j: pj, a: b }
                } else {
                    Hyperplane::Cross { i: pj, j: pi, a: (m - b) % m }
                }
            }
        }
    }
}

fn series_params(spec: &ReflectionGroupSpec) -> Result<(u32, u32, usize), CrgError> {
    match *spec {
        ReflectionGroupSpec::Series { d, e, n } => Ok((d, e, n as usize)),
        ReflectionGroupSpec::Exceptional(_) => Err(CrgError::NotSeries),
    }
}

/// All reflecting hyperplanes, in sorted order.
pub fn hyperplanes(spec: &ReflectionGroupSpec) -> Result<Vec<Hyperplane>, CrgError> {
    let (d, e, n) = series_params(spec)?;
    let m = d * e;
    let mut out = Vec::new();
    if d > 1 {
        out.extend((0..n).map(Hyperplane::Diagonal));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.extend((0..m).map(|a| Hyperplane::Cross { i, j, a }));
        }
    }
    Ok(out)
}

/// Every reflection of the group, one matrix per (hyperplane, nontrivial eigenvalue).
fn reflections(d: u32, e: u32, n: usize) -> Vec<Monomial> {
    let m = d * e;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..m {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(i, j);
                let mut shift = vec![0; n];
                shift[i] = (m - a) % m;
                shift[j] = a;
                out.push(Monomial { perm, shift });
            }
        }
    }
    for i in 0..n {
        for t in 1..d {
            let mut shift = vec![0; n];
            shift[i] = e * t;
            out.push(Monomial { perm: (0..n).collect(), shift });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneOrbits {
    pub orbits: Vec<Vec<Hyperplane>>,
}

impl HyperplaneOrbits {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// Orbits of the hyperplane set under the group generated by its reflections.
pub fn hyperplane_orbits(spec: &ReflectionGroupSpec) -> Result<HyperplaneOrbits, CrgError> {
    let (d, e, n) = series_params(spec)?;
    let m = d * e;
    let refl = reflections(d, e, n);
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for h in hyperplanes(spec)? {
        if !seen.insert(h) {
            continue;
        }
        let mut orbit = BTreeSet::from([h]);
        let mut queue = VecDeque::from([h]);
        while let Some(x) = queue.pop_front() {
            for r in &refl {
                let y = r.act(x, m);
                if seen.insert(y) {
                    orbit.insert(y);
                    queue.push_back(y);
                }
            }
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(HyperplaneOrbits { orbits })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Derived from the parameters of the infinite series.
    ClosedForm,
    /// Forced by the rank-2 classification argument.
    ClassificationArgument,
    /// Taken from published tables of reflection groups.
    ExternalLiterature,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::ClassificationArgument => "classification-argument",
            Provenance::ExternalLiterature => "external-literature",
        }
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closed-form" => Ok(Provenance::ClosedForm),
            "classification-argument" => Ok(Provenance::ClassificationArgument),
            "external-literature" => Ok(Provenance::ExternalLiterature),
            other => Err(format!("unknown provenance `{other}`")),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExceptionalEntry {
    pub index: u32,
    pub rank: u32,
    pub c: u32,
    pub provenance: Provenance,
}

/// Rank and orbit count of the exceptional groups.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExceptionalTable {
    entries: BTreeMap<u32, ExceptionalEntry>,
}

const BUILTIN_TABLE: &str = include_str!("../data/exceptional.tsv");

impl ExceptionalTable {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_TABLE).expect("bundled table is valid")
    }

    /// Whitespace-separated records `index rank c provenance`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CrgError> {
        let mut entries = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CrgError::Table { line: k + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [index, rank, c, prov] = fields[..] else {
                return Err(err(format!("expected 4 fields, found {}", fields.len())));
            };
            let num = |s: &str, what: &str| {
                s.parse::<u32>()
                    .map_err(|_| err(format!("{what} `{s}` is not a non-negative integer")))
            };
            let entry = ExceptionalEntry {
                index: num(index, "index")?,
                rank: num(rank, "rank")?,
                c: num(c, "c")?,
                provenance: prov.parse().map_err(err)?,
            };
            if !(4..=37).contains(&entry.index) {
                return Err(err(format!("index {} outside 4..37", entry.index)));
            }
            if entries.insert(entry.index, entry).is_some() {
                return Err(err(format!("duplicate entry for G{}", entry.index)));
            }
        }
        let table = ExceptionalTable { entries };
        table.validate()?;
        Ok(table)
    }

    /// `1 ≤ c ≤ 3`, and `c = 3` only in rank 2.
    pub fn validate(&self) -> Result<(), CrgError> {
        for e in self.entries.values() {
            let fail = |msg: &str| {
                Err(CrgError::TableConstraint {
                    index: e.index,
                    msg: msg.to_owned(),
                })
            };
            if e.rank < 2 {
                return fail("exceptional groups have rank at least 2");
            }
            if !(1..=3).contains(&e.c) {
                return fail("c must lie in 1..3");
            }
            if e.c == 3 && e.rank != 2 {
                return fail("c = 3 requires rank 2");
            }
        }
        Ok(())
    }

    pub fn get(&self, index: u32) -> Option<&ExceptionalEntry> {
        self.entries.get(&index)
    }

    pub fn entries(&self) -> impl Iterator<Item = &ExceptionalEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitCount {
    pub c: u32,
    pub rank: u32,
    pub provenance: Provenance,
}

/// Number of hyperplane orbits, from the closed form for the series and the table otherwise.
pub fn c_formula(spec: &ReflectionGroupSpec, table: &ExceptionalTable) -> Result<OrbitCount, CrgError> {
    match *spec {
        ReflectionGroupSpec::Series { d, e, n } => {
            let c = match n {
                1 => 1,
                2 if e % 2 == 0 => {
                    if d > 1 {
                        3
                    } else {
                        2
                    }
                }
                _ => {
                    if d > 1 {
                        2
                    } else {
                        1
                    }
                }
            };
            Ok(OrbitCount {
                c,
                rank: n,
                provenance: Provenance::ClosedForm,
            })
        }
        ReflectionGroupSpec::Exceptional(k) => {
            let entry = table.get(k).ok_or(CrgError::MissingTableEntry(k))?;
            Ok(OrbitCount {
                c: entry.c,
                rank: entry.rank,
                provenance: entry.provenance,
            })
        }
    }
}

/// Abelianized braid group, free of rank `c`.
pub fn braid_ab(spec: &ReflectionGroupSpec, table: &ExceptionalTable) -> Result<AbelianGroup, CrgError> {
    Ok(AbelianGroup::free(c_formula(spec, table)?.c as usize))
}

/// Commutation graph whose completed partially commutative Lie algebra exponentiates to
/// the rational completion of the braid group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalcevDescriptor {
    pub graph: CommutationGraph,
    pub tag: String,
}

impl MalcevDescriptor {
    /// `Q^c` for `c ≠ 3`; the product of `Q` with the completed free group on two letters for `c = 3`.
    pub fn for_orbit_count(c: u32) -> Self {
        match c {
            3 => MalcevDescriptor {
                graph: CommutationGraph::new(
                    vec!["z".into(), "f1".into(), "f2".into()],
                    &[("z", "f1"), ("z", "f2")],
                )
                .expect("star graph"),
                tag: "Q × (F₂ ⊗ Q)".into(),
            },
            1 => MalcevDescriptor {
                graph: CommutationGraph::complete(1),
                tag: "Q".into(),
            },
            c => MalcevDescriptor {
                graph: CommutationGraph::complete(c as usize),
                tag: format!("Q^{c}"),
            },
        }
    }
}

impl Serialize for MalcevDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let edges: Vec<[&str; 2]> = self
            .graph
            .edges()
            .into_iter()
            .map(|(a, b)| [self.graph.vertices()[a].as_str(), self.graph.vertices()[b].as_str()])
            .collect();
        let mut st = s.serialize_struct("MalcevDescriptor", 3)?;
        st.serialize_field("vertices", self.graph.vertices())?;
        st.serialize_field("edges", &edges)?;
        st.serialize_field("tag", &self.tag)?;
        st.end()
    }
}

pub fn malcev_descriptor(spec: &ReflectionGroupSpec, table: &ExceptionalTable) -> Result<MalcevDescriptor, CrgError> {
    Ok(MalcevDescriptor::for_orbit_count(c_formula(spec, table)?.c))
}

/// Everything known about one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub spec: ReflectionGroupSpec,
    pub c: u32,
    pub rank: u32,
    pub provenance: Provenance,
    pub ab: AbelianGroup,
    pub descriptor: MalcevDescriptor,
    /// Orbit sizes from the reflection action, for the infinite series.
    pub orbit_sizes: Option<Vec<usize>>,
}

impl Classification {
    /// `true` when there is no orbit computation or it matches the closed form.
    pub fn oracle_agrees(&self) -> bool {
        self.orbit_sizes
            .as_ref()
            .is_none_or(|sizes| sizes.len() == self.c as usize)
    }
}

pub fn classify(spec: &ReflectionGroupSpec, table: &ExceptionalTable) -> Result<Classification, CrgError> {
    let count = c_formula(spec, table)?;
    let orbit_sizes = if spec.is_series() {
        Some(hyperplane_orbits(spec)?.sizes())
    } else {
        None
    };
    Ok(Classification {
        spec: *spec,
        c: count.c,
        rank: count.rank,
        provenance: count.provenance,
        ab: AbelianGroup::free(count.c as usize),
        descriptor: MalcevDescriptor::for_orbit_count(count.c),
        orbit_sizes,
    })
}
