//! Partially commutative algebras: the trace monoid of a commutation graph,
//! its Hilbert series and Lie dimensions, and degree-truncated series
//! arithmetic in the completed enveloping algebra (exp, log, BCH, coproduct).

mod series;
mod trace;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use series::{bch, phi_image, PhiMap, TensorSeries, TruncatedSeries};
pub use trace::{bfs_normal_form, commutation_class, count_traces_bfs, Trace};

use crate::coxeter::{CoxeterGraph, Label};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PcError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("a vertex cannot commute with itself: `{0}`")]
    SelfLoop(String),
    #[error("at most 255 vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("graph is not right-angled: label {label} between `{s}` and `{t}`")]
    NotRightAngled { s: String, t: String, label: Label },
    #[error("series live over different commutation graphs")]
    GraphMismatch,
    #[error("series have different truncation degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("exp needs a series with zero constant term")]
    NonzeroConstant,
    #[error("log needs a series with constant term 1")]
    ConstantNotOne,
    #[error("bch needs primitive arguments")]
    NotPrimitive,
    #[error("negative Lie dimension at degree {0}")]
    NegativeLieDimension(usize),
    #[error("exhaustive enumeration of {vertices}^{length} words is too large")]
    EnumerationTooLarge { vertices: usize, length: usize },
}

/// Vertices plus the set of commuting pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommutationGraph {
    vertices: Vec<String>,
    adjacent: Vec<Vec<bool>>,
}

impl CommutationGraph {
    pub fn new<S: AsRef<str>>(vertices: Vec<String>, edges: &[(S, S)]) -> Result<Self, PcError> {
        let n = vertices.len();
        if n > 255 {
            return Err(PcError::TooManyVertices(n));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(PcError::DuplicateVertex(v.clone()));
            }
        }
        let mut g = CommutationGraph {
            vertices,
            adjacent: vec![vec![false; n]; n],
        };
        for (s, t) in edges {
            let (s, t) = (s.as_ref(), t.as_ref());
            let i = g.index_of(s).ok_or_else(|| PcError::UnknownVertex(s.to_owned()))?;
            let j = g.index_of(t).ok_or_else(|| PcError::UnknownVertex(t.to_owned()))?;
            if i == j {
                return Err(PcError::SelfLoop(s.to_owned()));
            }
            g.adjacent[i][j] = true;
            g.adjacent[j][i] = true;
        }
        Ok(g)
    }

    /// Complete graph on `z1..zn` (free abelian).
    pub fn complete(n: usize) -> Self {
        let vertices = (1..=n).map(|i| format!("z{i}")).collect();
        let mut adjacent = vec![vec![true; n]; n];
        for (i, row) in adjacent.iter_mut().enumerate() {
            row[i] = false;
        }
        CommutationGraph { vertices, adjacent }
    }

    /// Edge iff the label is 2; every label must be 2 or infinite.
    pub fn from_coxeter(g: &CoxeterGraph) -> Result<Self, PcError> {
        let mut edges = Vec::new();
        for (s, t, label) in g.pairs() {
            match label {
                Label::Finite(2) => edges.push((g.vertices()[s].as_str(), g.vertices()[t].as_str())),
                Label::Infinity => {}
                label => {
                    return Err(PcError::NotRightAngled {
                        s: g.vertices()[s].clone(),
                        t: g.vertices()[t].clone(),
                        label,
                    })
                }
            }
        }
        Self::new(g.vertices().to_vec(), &edges)
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn commute(&self, a: u8, b: u8) -> bool {
        self.adjacent[a as usize][b as usize]
    }

    /// Commuting pairs `(i, j)`, `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacent[i][j])
            .collect()
    }

    /// Number of cliques of each size `0..=ω`, the empty clique included.
    pub fn clique_counts(&self) -> Vec<u64> {
        fn extend(g: &CommutationGraph, clique: &mut Vec<usize>, counts: &mut Vec<u64>) {
            if counts.len() <= clique.len() {
                counts.push(0);
            }
            counts[clique.len()] += 1;
            let start = clique.last().map_or(0, |&v| v + 1);
            for v in start..g.len() {
                if clique.iter().all(|&u| g.adjacent[u][v]) {
                    clique.push(v);
                    extend(g, clique, counts);
                    clique.pop();
                }
            }
        }
        let mut counts = Vec::new();
        extend(self, &mut Vec::new(), &mut counts);
        counts
    }

    /// Coefficients of `Σ_K (−1)^{|K|} t^{|K|}`.
    pub fn clique_polynomial(&self) -> Vec<BigInt> {
        self.clique_counts()
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                let c = BigInt::from(c);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect()
    }
}

/// `h_0..h_N` of `1 / clique_polynomial`.
pub fn hilbert_series(graph: &CommutationGraph, degree: usize) -> Vec<BigInt> {
    let q = graph.clique_polynomial();
    let mut h: Vec<BigInt> = Vec::with_capacity(degree + 1);
    h.push(BigInt::one());
    for n in 1..=degree {
        let mut acc = BigInt::zero();
        for (j, qj) in q.iter().enumerate().skip(1).take_while(|(j, _)| *j <= n) {
            acc -= qj * &h[n - j];
        }
        h.push(acc);
    }
    h
}

/// Truncated product `∏_{n≥1} (1 − t^n)^{d_n}` for `dims = [d_1, d_2, …]`.
pub fn witt_product(dims: &[BigInt], degree: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); degree + 1];
    p[0] = BigInt::one();
    for (idx, d) in dims.iter().enumerate() {
        let n = idx + 1;
        if n > degree {
            break;
        }
        p = multiply_by_power_of_binomial(&p, n, d);
    }
    p
}

/// `p · (1 − t^n)^d`, truncated to `p.len()` coefficients, `d ≥ 0`.
fn multiply_by_power_of_binomial(p: &[BigInt], n: usize, d: &BigInt) -> Vec<BigInt> {
    let len = p.len();
    let mut factor = Vec::new();
    let mut k = 0usize;
    while n * k < len {
        let c = if BigInt::from(k) > *d {
            BigInt::zero()
        } else {
            binomial(d.clone(), BigInt::from(k))
        };
        factor.push(if k.is_multiple_of(2) { c } else { -c });
        k += 1;
    }
    let mut out = vec![BigInt::zero(); len];
    for (i, pi) in p.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (k, fk) in factor.iter().enumerate() {
            let deg = i + n * k;
            if deg >= len {
                break;
            }
            out[deg] += pi * fk;
        }
    }
    out
}

/// Graded dimensions `d_1..d_N` of the partially commutative Lie algebra,
/// the unique exponents with `∏ (1 − t^n)^{d_n} ≡ clique_polynomial mod t^{N+1}`.
pub fn lie_dimensions(graph: &CommutationGraph, degree: usize) -> Result<Vec<BigInt>, PcError> {
    let mut q = graph.clique_polynomial();
    q.resize(degree + 1, BigInt::zero());
    let mut p = vec![BigInt::zero(); degree + 1];
    p[0] = BigInt::one();
    let mut dims = Vec::with_capacity(degree);
    for n in 1..=degree {
        let d = &p[n] - &q[n];
        if d.is_negative() {
            return Err(PcError::NegativeLieDimension(n));
        }
        p = multiply_by_power_of_binomial(&p, n, &d);
        dims.push(d);
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    fn free(n: usize) -> CommutationGraph {
        CommutationGraph::new((0..n).map(|i| format!("x{i}")).collect(), &[] as &[(&str, &str)])
            .unwrap()
    }

    fn path3() -> CommutationGraph {
        CommutationGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "b"), ("b", "c")],
        )
        .unwrap()
    }

    fn star() -> CommutationGraph {
        CommutationGraph::new(
            vec!["z".into(), "f1".into(), "f2".into()],
            &[("z", "f1"), ("z", "f2")],
        )
        .unwrap()
    }

    #[test]
    fn clique_polynomials() {
        assert_eq!(free(2).clique_polynomial(), ints(&[1, -2]));
        assert_eq!(path3().clique_polynomial(), ints(&[1, -3, 2]));
        assert_eq!(CommutationGraph::complete(3).clique_polynomial(), ints(&[1, -3, 3, -1]));
    }

    #[test]
    fn hilbert_free_path_complete() {
        assert_eq!(hilbert_series(&free(2), 5), ints(&[1, 2, 4, 8, 16, 32]));
        // 2^{n+1} − 1
        assert_eq!(hilbert_series(&path3(), 5), ints(&[1, 3, 7, 15, 31, 63]));
        assert_eq!(
            hilbert_series(&CommutationGraph::complete(2), 5),
            ints(&[1, 2, 3, 4, 5, 6])
        );
    }

    #[test]
    fn lie_dimensions_free_two() {
        // Lyndon words over two letters: 2, 1, 2, 3, 6, 9
        assert_eq!(lie_dimensions(&free(2), 6).unwrap(), ints(&[2, 1, 2, 3, 6, 9]));
    }

    #[test]
    fn lie_dimensions_abelian_and_star() {
        assert_eq!(
            lie_dimensions(&CommutationGraph::complete(4), 5).unwrap(),
            ints(&[4, 0, 0, 0, 0])
        );
        let d = lie_dimensions(&star(), 4).unwrap();
        // Z × free Lie algebra on two generators
        assert_eq!(d, ints(&[3, 1, 2, 3]));
    }

    #[test]
    fn witt_round_trip() {
        for g in [free(3), path3(), star(), CommutationGraph::complete(3)] {
            let n = 12;
            let d = lie_dimensions(&g, n).unwrap();
            let p = witt_product(&d, n);
            let h = hilbert_series(&g, n);
            for k in 0..=n {
                let c: BigInt = (0..=k).map(|i| &p[i] * &h[k - i]).sum();
                assert_eq!(c, if k == 0 { BigInt::one() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn from_coxeter() {
        let g = CoxeterGraph::parse("a b c\n2 inf\n2\n").unwrap();
        let c = CommutationGraph::from_coxeter(&g).unwrap();
        assert_eq!(c.edges(), vec![(0, 1), (1, 2)]);
        let g = CoxeterGraph::parse("a b\n3\n").unwrap();
        assert!(matches!(
            CommutationGraph::from_coxeter(&g),
            Err(PcError::NotRightAngled { .. })
        ));
    }

    #[test]
    fn bad_graphs() {
        assert_eq!(
            CommutationGraph::new(vec!["a".into()], &[("a", "a")]),
            Err(PcError::SelfLoop("a".into()))
        );
        assert_eq!(
            CommutationGraph::new(vec!["a".into(), "a".into()], &[] as &[(&str, &str)]),
            Err(PcError::DuplicateVertex("a".into()))
        );
        assert_eq!(
            CommutationGraph::new(vec!["a".into()], &[("a", "b")]),
            Err(PcError::UnknownVertex("b".into()))
        );
    }
}
