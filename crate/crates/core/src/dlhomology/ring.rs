//! The dihedral Artin monoid `<a0, a1 | (a0 a1)^{e/2} = (a1 a0)^{e/2}>`, its
//! integral monoid ring, and the Laurent ring of the abelianization.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::DlError;

/// Positive word over `a0 < a1`, ordered shortlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MonoidWord(pub Vec<u8>);

impl MonoidWord {
    pub fn empty() -> Self {
        MonoidWord(Vec::new())
    }

    /// Alternating word of length `len` starting with `first`.
    pub fn alternating(first: u8, len: usize) -> Self {
        MonoidWord((0..len).map(|k| first ^ (k % 2) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MonoidWord(v)
    }

    /// Exponents `(#a0, #a1)`.
    pub fn abelianize(&self) -> (i64, i64) {
        let ones = self.0.iter().filter(|&&l| l == 1).count() as i64;
        (self.0.len() as i64 - ones, ones)
    }
}

impl Ord for MonoidWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MonoidWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("a{l}")).collect();
        f.write_str(&parts.join(""))
    }
}

fn check_even(e: u32) -> Result<(), DlError> {
    if e < 2 || e % 2 == 1 {
        Err(DlError::InvalidLabel(e))
    } else {
        Ok(())
    }
}

/// All words reachable from `w` by rewriting `(a0a1)^{e/2} ↔ (a1a0)^{e/2}` anywhere.
pub fn equivalence_class(w: &MonoidWord, e: u32) -> Result<BTreeSet<MonoidWord>, DlError> {
    check_even(e)?;
    let e = e as usize;
    let left = MonoidWord::alternating(0, e);
    let right = MonoidWord::alternating(1, e);
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur.len() < e {
            continue;
        }
        for pos in 0..=cur.len() - e {
            let window = &cur.0[pos..pos + e];
            let replacement = if window == left.0.as_slice() {
                &right
            } else if window == right.0.as_slice() {
                &left
            } else {
                continue;
            };
            let mut next = cur.clone();
            next.0[pos..pos + e].copy_from_slice(&replacement.0);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

pub fn word_equiv(w1: &MonoidWord, w2: &MonoidWord, e: u32) -> Result<bool, DlError> {
    if w1.len() != w2.len() {
        check_even(e)?;
        return Ok(false);
    }
    Ok(equivalence_class(w1, e)?.contains(w2))
}

/// Shortlex-least member of the class of `w`.
pub fn canonical_word(w: &MonoidWord, e: u32) -> Result<MonoidWord, DlError> {
    Ok(equivalence_class(w, e)?
        .into_iter()
        .next()
        .expect("class contains w"))
}

/// Element of `Z M` on canonical words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    e: u32,
    terms: BTreeMap<MonoidWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero(e: u32) -> Result<Self, DlError> {
        check_even(e)?;
        Ok(GroupRingElement {
            e,
            terms: BTreeMap::new(),
        })
    }

    pub fn monomial(e: u32, w: &MonoidWord, coefficient: impl Into<BigInt>) -> Result<Self, DlError> {
        let mut x = Self::zero(e)?;
        x.add_term(w, coefficient.into());
        Ok(x)
    }

    pub fn label(&self) -> u32 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<MonoidWord, BigInt> {
        &self.terms
    }

    fn add_term(&mut self, w: &MonoidWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = canonical_word(w, self.e).expect("label validated at construction");
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Augmentation `ε(w) = 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Image in `Z[t0^±, t1^±]` under `a_i ↦ t_i`.
    pub fn abelianize(&self) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.abelianize(), c.clone());
        }
        out
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.e, other.e, "mixing monoid rings with different labels");
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.assert_same(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w, c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            e: self.e,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.assert_same(rhs);
        let mut out = GroupRingElement {
            e: self.e,
            terms: BTreeMap::new(),
        };
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(&u.concat(v), a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (c, (!w.is_empty()).then(|| w.to_string())));
        f.write_str(&signed_sum(terms))
    }
}

/// Element of `Z[t0^±1, t1^±1]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentElement {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(k0: i64, k1: i64, c: impl Into<BigInt>) -> Self {
        let mut x = Self::zero();
        x.add_term((k0, k1), c.into());
        x
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (i64, i64), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &LaurentElement {
    type Output = LaurentElement;
    fn add(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        LaurentElement {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &LaurentElement {
    type Output = LaurentElement;
    fn sub(self, rhs: &LaurentElement) -> LaurentElement {
        self + &(-rhs)
    }
}

impl Mul for &LaurentElement {
    type Output = LaurentElement;
    fn mul(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for ((a0, a1), x) in &self.terms {
            for ((b0, b1), y) in &rhs.terms {
                out.add_term((a0 + b0, a1 + b1), x * y);
            }
        }
        out
    }
}

fn power(var: &str, k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some(var.to_owned()),
        k => Some(format!("{var}^{k}")),
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(&(k0, k1), c)| {
            let mono = match (power("t0", k0), power("t1", k1)) {
                (None, None) => None,
                (Some(a), None) | (None, Some(a)) => Some(a),
                (Some(a), Some(b)) => Some(format!("{a}*{b}")),
            };
            (c, mono)
        });
        f.write_str(&signed_sum(terms))
    }
}

/// `c1*m1 + c2*m2 - …` with unit coefficients dropped; `None` is the unit monomial.
fn signed_sum<'a>(terms: impl Iterator<Item = (&'a BigInt, Option<String>)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let mag = if c.is_negative() { -c } else { c.clone() };
        let body = match mono {
            None => mag.to_string(),
            Some(m) if mag.is_one() => m,
            Some(m) => format!("{mag}*{m}"),
        };
        match (out.is_empty(), c.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> MonoidWord {
        MonoidWord(s.bytes().map(|b| b - b'0').collect())
    }

    #[test]
    fn defining_relation_holds() {
        for e in (2..=12).step_by(2) {
            let l = MonoidWord::alternating(0, e as usize);
            let r = MonoidWord::alternating(1, e as usize);
            assert!(word_equiv(&l, &r, e).unwrap());
            assert_eq!(canonical_word(&r, e).unwrap(), l);
        }
    }

    #[test]
    fn distinct_letters_and_short_words() {
        assert!(!word_equiv(&w("0"), &w("1"), 4).unwrap());
        assert!(!word_equiv(&w("01"), &w("10"), 4).unwrap());
        assert_eq!(canonical_word(&w("10"), 4).unwrap(), w("10"));
        assert_eq!(canonical_word(&w(""), 4).unwrap(), w(""));
        // e = 2 makes the monoid commutative
        assert!(word_equiv(&w("0011"), &w("1100"), 2).unwrap());
    }

    #[test]
    fn odd_label_rejected() {
        assert_eq!(word_equiv(&w("0"), &w("0"), 3), Err(DlError::InvalidLabel(3)));
        assert_eq!(canonical_word(&w("0"), 0), Err(DlError::InvalidLabel(0)));
    }

    #[test]
    fn class_of_overlapping_factor() {
        // e = 4: 0101 0 ~ 1010 0, and 0 1010 ~ 0 0101
        let class = equivalence_class(&w("01010"), 4).unwrap();
        assert_eq!(class, BTreeSet::from([w("01010"), w("10100"), w("00101")]));
    }

    #[test]
    fn ring_arithmetic() {
        let e = 4;
        let a0 = GroupRingElement::monomial(e, &w("0"), 1).unwrap();
        let a1 = GroupRingElement::monomial(e, &w("1"), 1).unwrap();
        let one = GroupRingElement::monomial(e, &w(""), 1).unwrap();
        let x = &(&a0 * &a1) * &(&a0 * &a1);
        let y = &(&a1 * &a0) * &(&a1 * &a0);
        assert!((&x - &y).is_zero());
        let z = &(&a0 - &one) * &(&a1 + &one);
        assert_eq!(z.augmentation(), BigInt::zero());
        assert_eq!(z.terms().len(), 4);
    }

    #[test]
    fn laurent_arithmetic() {
        let t0 = LaurentElement::monomial(1, 0, 1);
        let one = LaurentElement::one();
        let p = &(&t0 - &one) * &(&t0 + &one);
        assert_eq!(p, &LaurentElement::monomial(2, 0, 1) - &one);
        assert_eq!(p.augmentation(), BigInt::zero());
        assert_eq!(p.to_string(), "-1 + t0^2");
        let q = &LaurentElement::monomial(1, 1, -2) + &LaurentElement::monomial(0, -1, 1);
        assert_eq!(q.to_string(), "t1^-1 - 2*t0*t1");
        assert_eq!(LaurentElement::zero().to_string(), "0");
    }
}
