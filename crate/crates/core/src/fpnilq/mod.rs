//! Exact integer linear algebra and the class-2 nilpotent quotient.
//!
//! For a presentation `F/R`, `gr_1 = H_1` is the cokernel of the relator
//! exponent matrix, and `gr_2 = C²G/C³G` is the free class-2 central lattice
//! `Z^{n(n-1)/2}` modulo
//!
//! 1. the brackets `[a(r), e_k]` of every relator's abelian image with every
//!    generator (conjugates of relators), and
//! 2. the central parts of `∏ r^{n_r}` for every integer relation `n` among
//!    the abelian images `a(r)`.

mod class2;
mod matrix;
mod smith;

use num_bigint::BigInt;
use serde::Serialize;

pub use class2::{
    bracket_with_generator, class2_multiply, evaluate_word_class2, pair_count, pair_index,
    Class2Element, CollectionOrder, DimensionMismatch,
};
pub use matrix::{AbelianGroup, IntegerMatrix};
pub(crate) use matrix::{IntRepr, IntSlice};
pub use smith::{cokernel, kernel_basis, smith_normal_form, SmithDecomposition};

use crate::word::GroupPresentation;

/// Generators × relators matrix of exponent sums.
pub fn exponent_matrix(p: &GroupPresentation) -> IntegerMatrix {
    let n = p.generator_count();
    let columns: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
        .collect();
    IntegerMatrix::from_columns(n, &columns)
}

pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    cokernel(&exponent_matrix(p))
}

/// The first two lower-central quotients of a finitely presented group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerCentralQuotients {
    pub gr1: AbelianGroup,
    pub gr2: AbelianGroup,
}

/// Generators of the relation lattice inside `Z^{n(n-1)/2}`, as matrix columns.
pub fn gr2_relation_lattice(p: &GroupPresentation, order: CollectionOrder) -> IntegerMatrix {
    let n = p.generator_count();
    let values: Vec<Class2Element> = p.relators().iter().map(|r| order.evaluate(r, n)).collect();

    let mut columns = Vec::new();
    for v in &values {
        for k in 0..n {
            columns.push(bracket_with_generator(&v.a, k));
        }
    }

    let a_part = IntegerMatrix::from_columns(
        n,
        &values.iter().map(|v| v.a.clone()).collect::<Vec<_>>(),
    );
    let kernel = kernel_basis(&a_part);
    for col in 0..kernel.cols() {
        let product = values
            .iter()
            .enumerate()
            .fold(Class2Element::identity(n), |acc, (r, v)| {
                let power = order.pow(v, &kernel[(r, col)]);
                order.multiply(&acc, &power).expect("same generator count")
            });
        debug_assert!(product.is_central());
        columns.push(product.c);
    }
    IntegerMatrix::from_columns(pair_count(n), &columns)
}

pub fn gr2_with_order(p: &GroupPresentation, order: CollectionOrder) -> LowerCentralQuotients {
    LowerCentralQuotients {
        gr1: abelianization(p),
        gr2: cokernel(&gr2_relation_lattice(p, order)),
    }
}

pub fn gr2(p: &GroupPresentation) -> LowerCentralQuotients {
    gr2_with_order(p, CollectionOrder::Ascending)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGraph;

    #[test]
    fn abelianizations() {
        let p = CoxeterGraph::dihedral(6).unwrap().artin_presentation();
        assert_eq!(abelianization(&p), AbelianGroup::free(2));
        let p = CoxeterGraph::dihedral(3).unwrap().artin_presentation();
        assert_eq!(abelianization(&p), AbelianGroup::free(1));
        assert_eq!(
            abelianization(&GroupPresentation::free(3).unwrap()),
            AbelianGroup::free(3)
        );
        let p = GroupPresentation::parse("a\na a a a a a\n").unwrap();
        assert_eq!(abelianization(&p), AbelianGroup::cyclic(6));
    }

    #[test]
    fn dihedral_gr2() {
        for e in [2u32, 4, 6, 8] {
            let p = CoxeterGraph::dihedral(e).unwrap().artin_presentation();
            let q = gr2(&p);
            assert_eq!(q.gr1, AbelianGroup::free(2));
            assert_eq!(q.gr2, AbelianGroup::cyclic(e / 2), "e = {e}");
        }
    }

    #[test]
    fn free_group_gr2() {
        let q = gr2(&GroupPresentation::free(2).unwrap());
        assert_eq!(q.gr2, AbelianGroup::free(1));
        let q = gr2(&GroupPresentation::free(4).unwrap());
        assert_eq!(q.gr2, AbelianGroup::free(6));
    }

    #[test]
    fn a2_gr2_trivial() {
        let p = CoxeterGraph::dihedral(3).unwrap().artin_presentation();
        assert!(gr2(&p).gr2.is_trivial());
    }

    #[test]
    fn z2_gr2_trivial() {
        let p = GroupPresentation::parse("a b\na b A B\n").unwrap();
        let q = gr2(&p);
        assert_eq!(q.gr1, AbelianGroup::free(2));
        assert!(q.gr2.is_trivial());
    }

    #[test]
    fn heisenberg_quotient() {
        // <x, y | [x,[x,y]], [y,[x,y]]> is free class-2: gr2 = Z
        let p = GroupPresentation::parse(
            "x y\nx x y X Y X y x Y X\ny x y X Y Y y x Y X\n",
        )
        .unwrap();
        let q = gr2(&p);
        assert_eq!(q.gr1, AbelianGroup::free(2));
        assert_eq!(q.gr2, AbelianGroup::free(1));
    }

    #[test]
    fn torsion_in_abelianization_feeds_gr2() {
        // <x, y | x^2, y^2> = Z/2 * Z/2: gr2 = Z/2
        let p = GroupPresentation::parse("x y\nx x\ny y\n").unwrap();
        let q = gr2(&p);
        assert_eq!(q.gr1.invariant_factors.len(), 2);
        assert_eq!(q.gr2, AbelianGroup::cyclic(2));
    }
}
