use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use super::trace::normal_form_indices;
use super::{CommutationGraph, PcError, Trace};
use crate::coxeter::CoxeterGraph;
use crate::fpnilq::IntRepr;
use crate::word::Word;

/// Element of the degree-completed algebra, truncated above `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    graph: Arc<CommutationGraph>,
    degree: usize,
    terms: BTreeMap<Trace, BigRational>,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, BigRational>, key: K, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Common denominator of the coefficients and the numerators over it.
fn integer_coefficients<K>(terms: &BTreeMap<K, BigRational>) -> (BigInt, Vec<(&K, BigInt)>) {
    let denom = terms
        .values()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scaled = terms
        .iter()
        .map(|(k, c)| (k, c.numer() * (&denom / c.denom())))
        .collect();
    (denom, scaled)
}

fn divide_out<K: Ord + Hash>(sums: HashMap<K, BigInt>, denom: &BigInt) -> BTreeMap<K, BigRational> {
    sums.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, BigRational::new(c, denom.clone())))
        .collect()
}

fn add_to<K: Eq + Hash>(sums: &mut HashMap<K, BigInt>, key: K, c: BigInt) {
    *sums.entry(key).or_insert_with(BigInt::zero) += c;
}

impl TruncatedSeries {
    pub fn zero(graph: Arc<CommutationGraph>, degree: usize) -> Self {
        TruncatedSeries {
            graph,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(graph: Arc<CommutationGraph>, degree: usize) -> Self {
        let mut s = Self::zero(graph, degree);
        s.terms.insert(Trace::empty(), BigRational::one());
        s
    }

    /// The generator `x_v` for vertex index `v`.
    pub fn generator(graph: Arc<CommutationGraph>, degree: usize, v: usize) -> Result<Self, PcError> {
        if v >= graph.len() {
            return Err(PcError::UnknownVertex(v.to_string()));
        }
        let mut s = Self::zero(graph, degree);
        if degree >= 1 {
            s.terms.insert(Trace(vec![v as u8]), BigRational::one());
        }
        Ok(s)
    }

    pub fn generator_named(graph: Arc<CommutationGraph>, degree: usize, name: &str) -> Result<Self, PcError> {
        let v = graph
            .index_of(name)
            .ok_or_else(|| PcError::UnknownVertex(name.to_owned()))?;
        Self::generator(graph, degree, v)
    }

    /// Sum of `c · word` over the given index words; words longer than `degree` are dropped.
    pub fn from_words(
        graph: Arc<CommutationGraph>,
        degree: usize,
        words: impl IntoIterator<Item = (Vec<u8>, BigRational)>,
    ) -> Result<Self, PcError> {
        let mut s = Self::zero(graph, degree);
        for (w, c) in words {
            let t = s.graph.trace_of_indices(&w)?;
            if t.len() <= degree {
                accumulate(&mut s.terms, t, c);
            }
        }
        Ok(s)
    }

    pub fn graph(&self) -> &Arc<CommutationGraph> {
        &self.graph
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Trace, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, t: &Trace) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Trace::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    fn compatible(&self, other: &Self) -> Result<(), PcError> {
        if !Arc::ptr_eq(&self.graph, &other.graph) && self.graph != other.graph {
            return Err(PcError::GraphMismatch);
        }
        if self.degree != other.degree {
            return Err(PcError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.graph.clone(), self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect();
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PcError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            accumulate(&mut out.terms, t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PcError> {
        self.try_add(&other.scale(&-BigRational::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PcError> {
        self.compatible(other)?;
        let (da, left) = integer_coefficients(&self.terms);
        let (db, right) = integer_coefficients(&other.terms);
        let mut sums = HashMap::new();
        let mut word = Vec::with_capacity(self.degree);
        for (u, a) in &left {
            let room = self.degree - u.len();
            // traces are graded: once the right factor is too long, so is everything after
            for (v, b) in right.iter().take_while(|(v, _)| v.len() <= room) {
                word.clear();
                word.extend_from_slice(&u.0);
                word.extend_from_slice(&v.0);
                add_to(&mut sums, Trace(normal_form_indices(&word, &self.graph)), a * b);
            }
        }
        let mut out = Self::zero(self.graph.clone(), self.degree);
        out.terms = divide_out(sums, &(da * db));
        Ok(out)
    }

    /// `[u, v] = uv − vu`.
    pub fn bracket(&self, other: &Self) -> Result<Self, PcError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// `Σ_{k≤N} u^k / k!` for `u` without constant term.
    pub fn exp(&self) -> Result<Self, PcError> {
        if !self.constant_term().is_zero() {
            return Err(PcError::NonzeroConstant);
        }
        let mut out = Self::one(self.graph.clone(), self.degree);
        let mut power = out.clone();
        for k in 1..=self.degree {
            power = power.try_mul(self)?.scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if power.is_zero() {
                break;
            }
            out = out.try_add(&power)?;
        }
        Ok(out)
    }

    /// `Σ_{k≤N} (−1)^{k+1} (g − 1)^k / k` for `g` with constant term 1.
    pub fn log(&self) -> Result<Self, PcError> {
        if !self.constant_term().is_one() {
            return Err(PcError::ConstantNotOne);
        }
        let mut w = self.clone();
        w.terms.remove(&Trace::empty());
        let mut out = Self::zero(self.graph.clone(), self.degree);
        let mut power = Self::one(self.graph.clone(), self.degree);
        for k in 1..=self.degree {
            power = power.try_mul(&w)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.try_add(&power.scale(&BigRational::new(BigInt::from(sign), BigInt::from(k))))?;
        }
        Ok(out)
    }

    /// Algebra morphism extending `Δ(x_s) = x_s ⊗ 1 + 1 ⊗ x_s`.
    pub fn coproduct(&self) -> TensorSeries {
        let (denom, scaled) = integer_coefficients(&self.terms);
        let mut sums = HashMap::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (t, c) in scaled {
            let len = t.len();
            for mask in 0u32..(1u32 << len) {
                left.clear();
                right.clear();
                for (i, &l) in t.0.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(l);
                    } else {
                        right.push(l);
                    }
                }
                let key = (
                    Trace(normal_form_indices(&left, &self.graph)),
                    Trace(normal_form_indices(&right, &self.graph)),
                );
                add_to(&mut sums, key, c.clone());
            }
        }
        let mut out = TensorSeries::zero(self.graph.clone(), self.degree);
        out.terms = divide_out(sums, &denom);
        out
    }

    /// `self ⊗ other`, truncated at total degree `N`.
    pub fn tensor(&self, other: &Self) -> Result<TensorSeries, PcError> {
        self.compatible(other)?;
        let mut out = TensorSeries::zero(self.graph.clone(), self.degree);
        for (u, a) in &self.terms {
            let room = self.degree - u.len();
            for (v, b) in other.terms.iter().take_while(|(v, _)| v.len() <= room) {
                accumulate(&mut out.terms, (u.clone(), v.clone()), a * b);
            }
        }
        Ok(out)
    }

    pub fn is_grouplike(&self) -> bool {
        self.constant_term().is_one()
            && self.tensor(self).is_ok_and(|gg| gg == self.coproduct())
    }

    pub fn is_primitive(&self) -> bool {
        let one = Self::one(self.graph.clone(), self.degree);
        let expected = self
            .tensor(&one)
            .and_then(|a| Ok(a.try_add(&one.tensor(self)?)))
            .expect("same graph and degree");
        self.coproduct() == expected
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let body = if t.is_empty() {
                mag.to_string()
            } else {
                let word = self.graph.render_trace(t).replace(' ', "*");
                if mag.is_one() {
                    word
                } else {
                    format!("{mag}*{word}")
                }
            };
            match (k == 0, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Sorted `[word, numerator, denominator]` triples in graded-lex trace order.
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (t, c) in &self.terms {
            seq.serialize_element(&(
                self.graph.render_trace(t),
                IntRepr(c.numer()),
                IntRepr(c.denom()),
            ))?;
        }
        seq.end()
    }
}

/// Element of `Â ⊗ Â` truncated at total degree `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSeries {
    graph: Arc<CommutationGraph>,
    degree: usize,
    terms: BTreeMap<(Trace, Trace), BigRational>,
}

impl TensorSeries {
    pub fn zero(graph: Arc<CommutationGraph>, degree: usize) -> Self {
        TensorSeries {
            graph,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Trace, Trace), BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, left: &Trace, right: &Trace) -> BigRational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn try_add(&self, other: &Self) -> TensorSeries {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        out
    }
}

/// `log(exp u · exp v)` for primitive `u`, `v`.
pub fn bch(u: &TruncatedSeries, v: &TruncatedSeries) -> Result<TruncatedSeries, PcError> {
    u.compatible(v)?;
    if !u.is_primitive() || !v.is_primitive() {
        return Err(PcError::NotPrimitive);
    }
    u.exp()?.try_mul(&v.exp()?)?.log()
}

/// `A(Γ) → Â(Γ̄)`, `s ↦ exp(x_{block(s)})`.
#[derive(Debug, Clone)]
pub struct PhiMap {
    target: Arc<CommutationGraph>,
    block_of: Vec<usize>,
    exp_pos: Vec<TruncatedSeries>,
    exp_neg: Vec<TruncatedSeries>,
    degree: usize,
}

impl PhiMap {
    pub fn new(g: &CoxeterGraph, degree: usize) -> Result<Self, PcError> {
        let partition = g.odd_partition();
        let quotient = g.quotient_graph();
        let target = Arc::new(CommutationGraph::from_coxeter(&quotient)?);
        let mut exp_pos = Vec::with_capacity(partition.len());
        let mut exp_neg = Vec::with_capacity(partition.len());
        for b in 0..partition.len() {
            let x = TruncatedSeries::generator(target.clone(), degree, b)?;
            exp_pos.push(x.exp()?);
            exp_neg.push(x.scale(&-BigRational::one()).exp()?);
        }
        Ok(PhiMap {
            target,
            block_of: (0..g.len()).map(|v| partition.block_of(v)).collect(),
            exp_pos,
            exp_neg,
            degree,
        })
    }

    pub fn target(&self) -> &Arc<CommutationGraph> {
        &self.target
    }

    pub fn block_of(&self, generator: usize) -> usize {
        self.block_of[generator]
    }

    pub fn image(&self, w: &Word) -> Result<TruncatedSeries, PcError> {
        let mut out = TruncatedSeries::one(self.target.clone(), self.degree);
        for l in &w.letters {
            let b = *self
                .block_of
                .get(l.generator)
                .ok_or_else(|| PcError::UnknownVertex(l.generator.to_string()))?;
            let factor = if l.inverse { &self.exp_neg[b] } else { &self.exp_pos[b] };
            out = out.try_mul(factor)?;
        }
        Ok(out)
    }
}

/// Image of a word over the generators of `g` in the completed algebra of its quotient graph.
pub fn phi_image(word: &Word, g: &CoxeterGraph, degree: usize) -> Result<TruncatedSeries, PcError> {
    PhiMap::new(g, degree)?.image(word)
}
