//! Collection in the free nilpotent group of class 2.
//!
//! An element is written `s_1^{a_1} … s_n^{a_n} · ∏_{i<j} c_ij^{k_ij}` with
//! `c_ij = (s_i, s_j) = s_i s_j s_i^{-1} s_j^{-1}` central. The mirrored
//! collector uses `s_n^{a_n} … s_1^{a_1}` instead; central coordinates mean
//! the same thing under both.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("generator count mismatch: {left} vs {right}")]
pub struct DimensionMismatch {
    pub left: usize,
    pub right: usize,
}

/// Number of basic commutators `c_ij`, `i < j`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `c_ij` (`i < j`) in lexicographic pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Class2Element {
    /// Generator exponents (image in the abelianization).
    pub a: Vec<BigInt>,
    /// Exponents of `c_ij`, indexed by [`pair_index`].
    pub c: Vec<BigInt>,
}

impl Class2Element {
    pub fn identity(n: usize) -> Self {
        Class2Element {
            a: vec![BigInt::zero(); n],
            c: vec![BigInt::zero(); pair_count(n)],
        }
    }

    pub fn generator(n: usize, k: usize, exponent: i64) -> Self {
        let mut x = Self::identity(n);
        x.a[k] = BigInt::from(exponent);
        x
    }

    pub fn generator_count(&self) -> usize {
        self.a.len()
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().chain(&self.c).all(Zero::is_zero)
    }

    pub fn is_central(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }
}

/// Which generator order the normal form uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CollectionOrder {
    /// `s_1^{a_1} … s_n^{a_n}`
    #[default]
    Ascending,
    /// `s_n^{a_n} … s_1^{a_1}`
    Descending,
}

impl CollectionOrder {
    /// Commutator correction picked up when collecting `x · y`; bilinear in `(x, y)`.
    fn correction(self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let n = x.len();
        let mut out = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                out.push(match self {
                    // s_j^p s_i^q = s_i^q s_j^p c_ij^{-pq}
                    CollectionOrder::Ascending => -(&y[i] * &x[j]),
                    // s_i^p s_j^q = s_j^q s_i^p c_ij^{pq}
                    CollectionOrder::Descending => &x[i] * &y[j],
                });
            }
        }
        out
    }

    pub fn multiply(
        self,
        x: &Class2Element,
        y: &Class2Element,
    ) -> Result<Class2Element, DimensionMismatch> {
        if x.a.len() != y.a.len() {
            return Err(DimensionMismatch {
                left: x.a.len(),
                right: y.a.len(),
            });
        }
        let delta = self.correction(&x.a, &y.a);
        Ok(Class2Element {
            a: x.a.iter().zip(&y.a).map(|(p, q)| p + q).collect(),
            c: x
                .c
                .iter()
                .zip(&y.c)
                .zip(&delta)
                .map(|((p, q), d)| p + q + d)
                .collect(),
        })
    }

    /// `x^k` for any integer `k`: `(k a, k c + binom(k, 2) δ(a, a))`.
    pub fn pow(self, x: &Class2Element, k: &BigInt) -> Class2Element {
        let binom: BigInt = k * (k - 1) / 2;
        let delta = self.correction(&x.a, &x.a);
        Class2Element {
            a: x.a.iter().map(|p| k * p).collect(),
            c: x.c.iter().zip(&delta).map(|(p, d)| k * p + &binom * d).collect(),
        }
    }

    pub fn inverse(self, x: &Class2Element) -> Class2Element {
        self.pow(x, &BigInt::from(-1))
    }

    pub fn evaluate(self, w: &Word, n: usize) -> Class2Element {
        w.letters.iter().fold(Class2Element::identity(n), |acc, l| {
            let g = Class2Element::generator(n, l.generator, l.sign());
            self.multiply(&acc, &g).expect("same generator count")
        })
    }
}

/// Product in the ascending normal form.
pub fn class2_multiply(
    x: &Class2Element,
    y: &Class2Element,
) -> Result<Class2Element, DimensionMismatch> {
    CollectionOrder::Ascending.multiply(x, y)
}

/// Left-to-right evaluation of a word in the ascending normal form.
pub fn evaluate_word_class2(w: &Word, n: usize) -> Class2Element {
    CollectionOrder::Ascending.evaluate(w, n)
}

/// Coordinates of `[u, e_k]` in the central lattice: `u_i δ_jk − u_j δ_ik` at `(i, j)`.
pub fn bracket_with_generator(u: &[BigInt], k: usize) -> Vec<BigInt> {
    let n = u.len();
    let mut out = vec![BigInt::zero(); pair_count(n)];
    for (i, ui) in u.iter().enumerate() {
        if i < k {
            out[pair_index(n, i, k)] += ui;
        } else if i > k {
            out[pair_index(n, k, i)] -= ui;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGraph;
    use crate::word::Letter;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn pair_indexing() {
        let n = 4;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(pair_index(n, i, j), k);
                k += 1;
            }
        }
        assert_eq!(k, pair_count(n));
    }

    #[test]
    fn s_times_t() {
        let s = Class2Element::generator(2, 0, 1);
        let t = Class2Element::generator(2, 1, 1);
        let st = class2_multiply(&s, &t).unwrap();
        assert_eq!(st.a, ints(&[1, 1]));
        assert_eq!(st.c, ints(&[0]));
    }

    #[test]
    fn t_times_s_is_st_times_inverse_commutator() {
        let s = Class2Element::generator(2, 0, 1);
        let t = Class2Element::generator(2, 1, 1);
        let ts = class2_multiply(&t, &s).unwrap();
        assert_eq!(ts.a, ints(&[1, 1]));
        assert_eq!(ts.c, ints(&[-1]));
    }

    #[test]
    fn commutator_word_is_plus_one_in_both_orders() {
        let w = Word::new(vec![
            Letter::pos(0),
            Letter::pos(1),
            Letter::neg(0),
            Letter::neg(1),
        ]);
        for order in [CollectionOrder::Ascending, CollectionOrder::Descending] {
            let v = order.evaluate(&w, 2);
            assert_eq!(v.a, ints(&[0, 0]));
            assert_eq!(v.c, ints(&[1]));
        }
    }

    #[test]
    fn inverses() {
        let x = Class2Element {
            a: ints(&[3, -2, 5]),
            c: ints(&[1, 0, -7]),
        };
        for order in [CollectionOrder::Ascending, CollectionOrder::Descending] {
            assert!(order.multiply(&x, &order.inverse(&x)).unwrap().is_identity());
            assert!(order.multiply(&order.inverse(&x), &x).unwrap().is_identity());
        }
    }

    #[test]
    fn dimension_mismatch() {
        let err = class2_multiply(&Class2Element::identity(2), &Class2Element::identity(3));
        assert_eq!(err, Err(DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn dihedral_relator_values() {
        let w = CoxeterGraph::braid_relator(0, 1, 4);
        let v = evaluate_word_class2(&w, 2);
        // stst = s²t²c⁻¹ and tsts = s²t²c⁻³, so the relator is c²
        assert!(v.is_central());
        assert_eq!(v.c, ints(&[2]));

        let w = CoxeterGraph::braid_relator(0, 1, 3);
        let v = evaluate_word_class2(&w, 2);
        assert_eq!(v.a, ints(&[1, -1]));
    }

    #[test]
    fn bracket_vectors() {
        assert_eq!(bracket_with_generator(&ints(&[1, -1]), 0), ints(&[1]));
        assert_eq!(bracket_with_generator(&ints(&[1, -1]), 1), ints(&[1]));
        assert_eq!(
            bracket_with_generator(&ints(&[1, 2, 3]), 1),
            ints(&[1, 0, -3])
        );
    }
}
