//! Coxeter graphs, Artin presentations, the odd-label partition and the
//! right-angled quotient graph.
//!
//! Text input: the first line lists vertex labels; the next lines give the
//! strictly upper-triangular part of the Coxeter matrix row by row (row `i`
//! holds `m[i][i+1..]`). `inf` or `0` denotes an infinite label. A JSON object
//! `{"vertices": [...], "matrix": [[...]]}` is accepted as well.

use std::collections::HashSet;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::word::{GroupPresentation, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid JSON input: {0}")]
    Json(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("matrix must be {expected}x{expected}")]
    Dimension { expected: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("invalid label at ({row}, {col}): off-diagonal entries must be >= 2 or inf")]
    InvalidOffDiagonal { row: usize, col: usize },
    #[error("invalid diagonal entry at {0}: must be 1")]
    InvalidDiagonal(usize),
    #[error("graph has no vertices")]
    Empty,
}

/// An entry of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Label::Infinity
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }

    /// `inf` and `0` are infinity.
    pub fn parse(token: &str) -> Option<Label> {
        if token.eq_ignore_ascii_case("inf") || token == "∞" {
            return Some(Label::Infinity);
        }
        match token.parse::<u32>().ok()? {
            0 => Some(Label::Infinity),
            m => Some(Label::Finite(m)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => s.serialize_u32(*m),
            Label::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Symmetric Coxeter matrix over an ordered vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    vertices: Vec<String>,
    m: Vec<Vec<Label>>,
}

impl CoxeterGraph {
    pub fn new(vertices: Vec<String>, m: Vec<Vec<Label>>) -> Result<Self, CoxeterError> {
        let n = vertices.len();
        if n == 0 {
            return Err(CoxeterError::Empty);
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(CoxeterError::DuplicateLabel(v.clone()));
            }
        }
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(CoxeterError::Dimension { expected: n });
        }
        for i in 0..n {
            if m[i][i] != Label::Finite(1) {
                return Err(CoxeterError::InvalidDiagonal(i));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::NotSymmetric { row: i, col: j });
                }
                if matches!(m[i][j], Label::Finite(x) if x < 2) {
                    return Err(CoxeterError::InvalidOffDiagonal { row: i, col: j });
                }
            }
        }
        Ok(CoxeterGraph { vertices, m })
    }

    /// Builds a graph from its strictly upper-triangular labels, listed row by row.
    pub fn from_upper(vertices: Vec<String>, upper: &[Label]) -> Result<Self, CoxeterError> {
        let n = vertices.len();
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(CoxeterError::Dimension { expected: n });
        }
        let mut m = vec![vec![Label::Finite(1); n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let l = *it.next().expect("length checked");
                m[i][j] = l;
                m[j][i] = l;
            }
        }
        Self::new(vertices, m)
    }

    /// Dihedral graph `I_2(m)` on vertices `a0`, `a1`.
    pub fn dihedral(m: u32) -> Result<Self, CoxeterError> {
        Self::from_upper(vec!["a0".into(), "a1".into()], &[Label::Finite(m)])
    }

    pub fn parse(text: &str) -> Result<Self, CoxeterError> {
        if text.trim_start().starts_with('{') {
            return Self::parse_json(text);
        }
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(CoxeterError::Empty)?;
        let vertices: Vec<String> = header.split_whitespace().map(str::to_owned).collect();
        let n = vertices.len();

        let mut upper = Vec::new();
        let mut row = 0;
        let mut last_line = 1;
        for (line, body) in lines {
            last_line = line;
            if row + 1 >= n {
                return Err(CoxeterError::Parse {
                    line,
                    msg: format!("unexpected extra row; {n} vertices need {} rows", n.saturating_sub(1)),
                });
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            let expected = n - 1 - row;
            if tokens.len() != expected {
                return Err(CoxeterError::Parse {
                    line,
                    msg: format!("row {} needs {expected} entries, found {}", row + 1, tokens.len()),
                });
            }
            for (k, tok) in tokens.iter().enumerate() {
                let label = Label::parse(tok).ok_or_else(|| CoxeterError::Parse {
                    line,
                    msg: format!("invalid label `{tok}`"),
                })?;
                if matches!(label, Label::Finite(x) if x < 2) {
                    return Err(CoxeterError::Parse {
                        line,
                        msg: format!(
                            "off-diagonal label for ({}, {}) must be >= 2 or inf, found `{tok}`",
                            vertices[row],
                            vertices[row + 1 + k]
                        ),
                    });
                }
                upper.push(label);
            }
            row += 1;
        }
        if row + 1 < n {
            return Err(CoxeterError::Parse {
                line: last_line,
                msg: format!("expected {} rows of labels, found {row}", n - 1),
            });
        }
        Self::from_upper(vertices, &upper)
    }

    fn parse_json(text: &str) -> Result<Self, CoxeterError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CoxeterError::Json(e.to_string()))?;
        let json_err = |msg: &str| CoxeterError::Json(msg.to_owned());
        let vertices = value
            .get("vertices")
            .and_then(|v| v.as_array())
            .ok_or_else(|| json_err("missing array field `vertices`"))?
            .iter()
            .map(|v| v.as_str().map(str::to_owned))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| json_err("vertex labels must be strings"))?;
        let rows = value
            .get("matrix")
            .and_then(|v| v.as_array())
            .ok_or_else(|| json_err("missing array field `matrix`"))?;
        let mut m = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| json_err("matrix rows must be arrays"))?;
            let mut out = Vec::with_capacity(row.len());
            for entry in row {
                let label = match entry {
                    serde_json::Value::Number(x) => x
                        .as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .and_then(|x| Label::parse(&x.to_string())),
                    serde_json::Value::String(s) => Label::parse(s),
                    _ => None,
                }
                .ok_or_else(|| json_err(&format!("invalid matrix entry {entry}")))?;
                out.push(label);
            }
            m.push(out);
        }
        Self::new(vertices, m)
    }

    pub fn to_text(&self) -> String {
        let n = self.len();
        let mut out = self.vertices.join(" ");
        out.push('\n');
        for i in 0..n.saturating_sub(1) {
            let row: Vec<String> = (i + 1..n).map(|j| self.m[i][j].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn label(&self, s: usize, t: usize) -> Label {
        self.m[s][t]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Unordered pairs `s < t` with their labels.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.m[i][j])))
    }

    pub fn is_free_of_infinity(&self) -> bool {
        self.pairs().all(|(_, _, l)| !l.is_infinite())
    }

    /// All labels in `{2, inf}`.
    pub fn is_right_angled(&self) -> bool {
        self.pairs()
            .all(|(_, _, l)| matches!(l, Label::Finite(2) | Label::Infinity))
    }

    /// Braid relator `(sts…)(tst…)^{-1}` for one pair, `s` the smaller vertex.
    pub fn braid_relator(s: usize, t: usize, m: u32) -> Word {
        let alt = |a: usize, b: usize| -> Vec<Letter> {
            (0..m)
                .map(|k| Letter::pos(if k % 2 == 0 { a } else { b }))
                .collect()
        };
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        let left = Word::new(alt(s, t));
        let right = Word::new(alt(t, s));
        left.concat(&right.inverse())
    }

    pub fn artin_presentation(&self) -> GroupPresentation {
        let relators = self
            .pairs()
            .filter_map(|(s, t, l)| l.finite().map(|m| Self::braid_relator(s, t, m)))
            .collect();
        GroupPresentation::new(self.vertices.clone(), relators)
            .expect("relators only use graph vertices")
    }

    pub fn odd_partition(&self) -> OddPartition {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for (s, t, l) in self.pairs() {
            if l.is_odd() {
                let (a, b) = (find(&mut parent, s), find(&mut parent, t));
                // keep the smaller index as root so blocks come out in first-vertex order
                if a < b {
                    parent[b] = a;
                } else if b < a {
                    parent[a] = b;
                }
            }
        }
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            if block_of[root] == usize::MAX {
                block_of[root] = blocks.len();
                blocks.push(Vec::new());
            }
            let b = block_of[root];
            block_of[v] = b;
            blocks[b].push(v);
        }
        let names = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&v| self.vertices[v].as_str())
                    .min()
                    .expect("blocks are non-empty")
                    .to_owned()
            })
            .collect();
        OddPartition {
            blocks,
            block_of,
            names,
        }
    }

    pub fn ab_rank(&self) -> usize {
        self.odd_partition().len()
    }

    /// The right-angled graph on the odd blocks.
    pub fn quotient_graph(&self) -> CoxeterGraph {
        self.odd_partition().quotient(self)
    }

    pub fn analysis(&self) -> CoxeterAnalysis {
        let partition = self.odd_partition();
        let quotient_graph = partition.quotient(self);
        CoxeterAnalysis {
            blocks: partition.labelled_blocks(self),
            rank: partition.len(),
            quotient_graph,
        }
    }
}

impl Serialize for CoxeterGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CoxeterGraph", 2)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("matrix", &self.m)?;
        st.end()
    }
}

/// Connected components under odd labels, in first-vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    names: Vec<String>,
}

impl OddPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, vertex: usize) -> usize {
        self.block_of[vertex]
    }

    /// Block names: the lexicographically least member label.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labelled_blocks(&self, g: &CoxeterGraph) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| g.vertices[v].clone()).collect())
            .collect()
    }

    fn quotient(&self, g: &CoxeterGraph) -> CoxeterGraph {
        let r = self.len();
        let mut m = vec![vec![Label::Infinity; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Label::Finite(1);
        }
        for (s, t, l) in g.pairs() {
            let (bs, bt) = (self.block_of[s], self.block_of[t]);
            if bs != bt && !l.is_infinite() {
                m[bs][bt] = Label::Finite(2);
                m[bt][bs] = Label::Finite(2);
            }
        }
        CoxeterGraph::new(self.names.clone(), m).expect("quotient graph is a valid Coxeter matrix")
    }
}

/// Structured summary of a Coxeter graph.
#[derive(Debug, Clone, Serialize)]
pub struct CoxeterAnalysis {
    pub blocks: Vec<Vec<String>>,
    pub rank: usize,
    pub quotient_graph: CoxeterGraph,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> CoxeterGraph {
        CoxeterGraph::parse("s1 s2 s3\n3 2\n3\n").unwrap()
    }

    fn b3_like() -> CoxeterGraph {
        CoxeterGraph::parse("s1 s2 s3\n4 2\n3\n").unwrap()
    }

    #[test]
    fn parse_dihedral() {
        let g = CoxeterGraph::parse("a0 a1\n4\n").unwrap();
        assert_eq!(g, CoxeterGraph::dihedral(4).unwrap());
        assert_eq!(g.label(1, 0), Label::Finite(4));
    }

    #[test]
    fn parse_chain_and_infinity_tokens() {
        assert_eq!(a3().label(0, 2), Label::Finite(2));
        let g = CoxeterGraph::parse("a b c\ninf 0\n3\n").unwrap();
        assert_eq!(g.label(0, 1), Label::Infinity);
        assert_eq!(g.label(0, 2), Label::Infinity);
        assert_eq!(g.to_text(), "a b c\ninf inf\n3\n");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            CoxeterGraph::parse("a b\n1\n"),
            Err(CoxeterError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse("a a\n3\n"),
            Err(CoxeterError::DuplicateLabel(_))
        ));
        assert!(matches!(
            CoxeterGraph::parse("a b c\n3\n3\n"),
            Err(CoxeterError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse("a b c\n3 3\n"),
            Err(CoxeterError::Parse { .. })
        ));
        assert!(matches!(
            CoxeterGraph::parse("a b\nx\n"),
            Err(CoxeterError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn parse_json() {
        let g = CoxeterGraph::parse(r#"{"vertices": ["a","b"], "matrix": [[1, "inf"], [0, 1]]}"#)
            .unwrap();
        assert_eq!(g.label(0, 1), Label::Infinity);
        assert_eq!(
            CoxeterGraph::parse(r#"{"vertices": ["a","b"], "matrix": [[1, 3], [4, 1]]}"#),
            Err(CoxeterError::NotSymmetric { row: 0, col: 1 })
        );
        assert_eq!(
            CoxeterGraph::parse(r#"{"vertices": ["a","b"], "matrix": [[1, 1], [1, 1]]}"#),
            Err(CoxeterError::InvalidOffDiagonal { row: 0, col: 1 })
        );
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"vertices":["a","b"],"matrix":[[1,"inf"],["inf",1]]}"#);
        assert_eq!(CoxeterGraph::parse(&json).unwrap(), g);
    }

    #[test]
    fn relators() {
        let w = CoxeterGraph::braid_relator(0, 1, 2);
        assert_eq!(
            w.letters,
            vec![Letter::pos(0), Letter::pos(1), Letter::neg(0), Letter::neg(1)]
        );
        let w = CoxeterGraph::braid_relator(1, 0, 3);
        assert_eq!(
            w.letters,
            vec![
                Letter::pos(0),
                Letter::pos(1),
                Letter::pos(0),
                Letter::neg(1),
                Letter::neg(0),
                Letter::neg(1)
            ]
        );
        let g = CoxeterGraph::parse("a b c\ninf 3\n2\n").unwrap();
        assert_eq!(g.artin_presentation().relators().len(), 2);
    }

    #[test]
    fn odd_partitions() {
        let p = a3().odd_partition();
        assert_eq!(p.blocks(), [vec![0, 1, 2]]);
        let p = b3_like().odd_partition();
        assert_eq!(p.blocks(), [vec![0], vec![1, 2]]);
        assert_eq!(p.names(), ["s1", "s2"]);
        assert_eq!(CoxeterGraph::dihedral(4).unwrap().ab_rank(), 2);
    }

    #[test]
    fn block_names_use_least_label() {
        let g = CoxeterGraph::parse("z y x\n3 2\n2\n").unwrap();
        let p = g.odd_partition();
        assert_eq!(p.blocks(), [vec![0, 1], vec![2]]);
        assert_eq!(p.names(), ["y", "x"]);
    }

    #[test]
    fn quotients() {
        let q = b3_like().quotient_graph();
        assert_eq!(q.vertices(), ["s1", "s2"]);
        assert_eq!(q.label(0, 1), Label::Finite(2));
        let q = CoxeterGraph::parse("a b c d\n3 inf inf\ninf inf\n3\n")
            .unwrap()
            .quotient_graph();
        assert_eq!(q.len(), 2);
        assert_eq!(q.label(0, 1), Label::Infinity);
        assert!(q.is_right_angled());
    }

    #[test]
    fn free_of_infinity() {
        assert!(CoxeterGraph::dihedral(4).unwrap().is_free_of_infinity());
        assert!(!CoxeterGraph::parse("a b\ninf\n").unwrap().is_free_of_infinity());
        assert!(CoxeterGraph::parse("a\n").unwrap().is_free_of_infinity());
    }

    #[test]
    fn ab_rank_of_discrete_graph() {
        let g = CoxeterGraph::parse("a b c d\ninf inf inf\ninf inf\ninf\n").unwrap();
        assert_eq!(g.ab_rank(), 4);
        assert_eq!(a3().ab_rank(), 1);
    }
}
