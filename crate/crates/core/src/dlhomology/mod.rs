//! Dehornoy–Lafont order complex of the even dihedral Artin monoid
//! `<a0, a1 | (a0a1)^{e/2} = (a1a0)^{e/2}>` with `a0 < a1`, the comparison
//! map to the complex of its abelianization, integral homology, and the
//! five-term computation of `C²B/C³B`.
//!
//! Chain modules are left modules; a boundary `∂[x] = Σ λ_y [y]` composes as
//! `∂∂[x] = Σ λ_y ∂[y]`.

mod ring;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use ring::{
    canonical_word, equivalence_class, word_equiv, GroupRingElement, LaurentElement, MonoidWord,
};

use crate::coxeter::CoxeterGraph;
use crate::fpnilq::{self, cokernel, smith_normal_form, AbelianGroup, IntSlice, IntegerMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DlError {
    #[error("dihedral label must be even and at least 2, got {0}")]
    InvalidLabel(u32),
    #[error("boundary maps {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("boundary maps {0} and {1} compose to a nonzero map")]
    NonzeroComposition(usize, usize),
    #[error("complex has no boundary maps")]
    EmptyComplex,
    #[error("the five-term sequence only determines gr2 when H1(B) -> H1(B^ab) is an isomorphism")]
    UnsupportedFiveTerm,
}

/// One summand `± w [a_i]` of the displayed `∂₂([a0, a1])`, before simplification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub sign: i8,
    pub word: MonoidWord,
    /// Index `i` of the basis element `[a_i]`.
    pub generator: u8,
}

impl BoundaryTerm {
    pub fn render(&self) -> String {
        let sign = if self.sign < 0 { "-" } else { "+" };
        format!("{sign} {}[a{}]", self.word, self.generator)
    }
}

/// `0 → D₂ → D₁ → D₀ → Z` with bases `[a0,a1]`, `{[a0],[a1]}`, `[∅]`.
#[derive(Debug, Clone)]
pub struct DihedralComplex {
    pub e: u32,
    /// `∂₁([a_i])` as the coefficient of `[∅]`.
    pub d1: [GroupRingElement; 2],
    /// `∂₂([a0,a1])` as coefficients of `[a0]` and `[a1]`.
    pub d2: [GroupRingElement; 2],
    pub d2_terms: Vec<BoundaryTerm>,
}

pub fn dihedral_complex(e: u32) -> Result<DihedralComplex, DlError> {
    if e < 2 || e % 2 == 1 {
        return Err(DlError::InvalidLabel(e));
    }
    let len = e as usize;
    let mut terms = vec![
        BoundaryTerm {
            sign: 1,
            word: MonoidWord::alternating(0, len - 1),
            generator: 1,
        },
        BoundaryTerm {
            sign: -1,
            word: MonoidWord::alternating(1, len - 1),
            generator: 0,
        },
    ];
    // − [a1] − a1[a0] − a1a0[a1] − …   and   + [a0] + a0[a1] + a0a1[a0] + …
    for k in 0..len - 1 {
        let parity = (k % 2) as u8;
        terms.push(BoundaryTerm {
            sign: -1,
            word: MonoidWord::alternating(1, k),
            generator: 1 ^ parity,
        });
    }
    for k in 0..len - 1 {
        let parity = (k % 2) as u8;
        terms.push(BoundaryTerm {
            sign: 1,
            word: MonoidWord::alternating(0, k),
            generator: parity,
        });
    }

    let mut d2 = [GroupRingElement::zero(e)?, GroupRingElement::zero(e)?];
    for t in &terms {
        let m = GroupRingElement::monomial(e, &t.word, t.sign)?;
        let slot = &mut d2[t.generator as usize];
        *slot = &*slot + &m;
    }
    let one = GroupRingElement::monomial(e, &MonoidWord::empty(), 1)?;
    let atom = |i: u8| GroupRingElement::monomial(e, &MonoidWord(vec![i]), 1);
    let d1 = [&atom(0)? - &one, &atom(1)? - &one];
    Ok(DihedralComplex {
        e,
        d1,
        d2,
        d2_terms: terms,
    })
}

impl DihedralComplex {
    /// `∂₁∂₂([a0,a1])` as the coefficient of `[∅]`.
    pub fn d1_after_d2(&self) -> GroupRingElement {
        let a = &self.d2[0] * &self.d1[0];
        let b = &self.d2[1] * &self.d1[1];
        &a + &b
    }

    /// The complex of `Z` ⊗ over the group ring: `[∂₁ ⊗ Z (1×2), ∂₂ ⊗ Z (2×1)]`.
    pub fn augmented(&self) -> Vec<IntegerMatrix> {
        let d1 = IntegerMatrix::from_rows(&[vec![
            self.d1[0].augmentation(),
            self.d1[1].augmentation(),
        ]]);
        let d2 = IntegerMatrix::from_rows(&[
            vec![self.d2[0].augmentation()],
            vec![self.d2[1].augmentation()],
        ]);
        vec![d1, d2]
    }
}

/// The comparison map `D(B) → D(B^ab)`: identity in degrees 0 and 1, and
/// `f₂([a0,a1]) = x [a0,a1]` with `x = Σ_{k=0}^{(e-2)/2} (t0 t1)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub e: u32,
    pub x: LaurentElement,
}

pub fn chain_map_f(e: u32) -> Result<ChainMap, DlError> {
    if e < 2 || e % 2 == 1 {
        return Err(DlError::InvalidLabel(e));
    }
    let mut x = LaurentElement::zero();
    for k in 0..e as i64 / 2 {
        x = &x + &LaurentElement::monomial(k, k, 1);
    }
    Ok(ChainMap { e, x })
}

/// Boundary of the commutative complex (`e = 2` over `Z[t0^±, t1^±]`):
/// `∂₂^ab [a0,a1] = (t0 − 1)[a1] − (t1 − 1)[a0]`, as coefficients of `[a0]`, `[a1]`.
pub fn abelian_d2() -> [LaurentElement; 2] {
    let one = LaurentElement::one();
    [
        &one - &LaurentElement::monomial(0, 1, 1),
        &LaurentElement::monomial(1, 0, 1) - &one,
    ]
}

/// Outcome of the exact identity checks for one label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainIdentities {
    pub d1_d2_zero: bool,
    pub augmentation_d1_zero: bool,
    pub chain_map_degree1: bool,
    pub chain_map_degree2: bool,
}

impl ChainIdentities {
    pub fn all(&self) -> bool {
        self.d1_d2_zero && self.augmentation_d1_zero && self.chain_map_degree1 && self.chain_map_degree2
    }
}

pub fn check_chain_identities(e: u32) -> Result<ChainIdentities, DlError> {
    let cx = dihedral_complex(e)?;
    let f = chain_map_f(e)?;
    let one = LaurentElement::one();
    let ab_d1 = [
        &LaurentElement::monomial(1, 0, 1) - &one,
        &LaurentElement::monomial(0, 1, 1) - &one,
    ];
    let ab_d2 = abelian_d2();
    Ok(ChainIdentities {
        d1_d2_zero: cx.d1_after_d2().is_zero(),
        augmentation_d1_zero: cx.d1.iter().all(|c| c.augmentation() == BigInt::from(0)),
        chain_map_degree1: (0..2).all(|i| cx.d1[i].abelianize() == ab_d1[i]),
        chain_map_degree2: (0..2).all(|i| cx.d2[i].abelianize() == &f.x * &ab_d2[i]),
    })
}

pub fn verify_chain_identities(e: u32) -> Result<bool, DlError> {
    Ok(check_chain_identities(e)?.all())
}

pub fn augmented_complex(e: u32) -> Result<Vec<IntegerMatrix>, DlError> {
    Ok(dihedral_complex(e)?.augmented())
}

/// Kernel of `d` with a coordinate map: `coords · y` gives the coordinates of
/// `y ∈ ker d` in the returned basis.
fn kernel_with_coordinates(d: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let snf = smith_normal_form(d);
    let basis = snf.v.cols_from(snf.rank());
    let coords = snf.v_inverse().rows_from(snf.rank());
    (basis, coords)
}

fn validate_complex(boundaries: &[IntegerMatrix]) -> Result<(), DlError> {
    if boundaries.is_empty() {
        return Err(DlError::EmptyComplex);
    }
    for k in 1..boundaries.len() {
        let (lower, upper) = (&boundaries[k - 1], &boundaries[k]);
        if lower.cols() != upper.rows() {
            return Err(DlError::NotComposable(k, k + 1));
        }
        if !(lower * upper).is_zero() {
            return Err(DlError::NonzeroComposition(k, k + 1));
        }
    }
    Ok(())
}

/// Integral homology `H_0..H_m` of `C_m → … → C_0`, where `boundaries[k-1]`
/// is `∂_k : C_k → C_{k-1}`.
pub fn homology(boundaries: &[IntegerMatrix]) -> Result<Vec<AbelianGroup>, DlError> {
    validate_complex(boundaries)?;
    let m = boundaries.len();
    let mut out = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let (kdim, coords) = if k == 0 {
            let n0 = boundaries[0].rows();
            (n0, IntegerMatrix::identity(n0))
        } else {
            let (basis, coords) = kernel_with_coordinates(&boundaries[k - 1]);
            (basis.cols(), coords)
        };
        let incoming = match boundaries.get(k) {
            Some(d) => &coords * d,
            None => IntegerMatrix::zeros(kdim, 0),
        };
        out.push(cokernel(&incoming));
    }
    Ok(out)
}

/// Matrix of the map induced on top-degree homology `H_top = ker ∂_top` by a
/// chain map component `f : C_top → C'_top`, in the kernel bases.
pub fn induced_top_map(
    f: &IntegerMatrix,
    source_top: &IntegerMatrix,
    target_top: &IntegerMatrix,
) -> IntegerMatrix {
    let (source_basis, _) = kernel_with_coordinates(source_top);
    let (_, target_coords) = kernel_with_coordinates(target_top);
    &target_coords * &(f * &source_basis)
}

/// `H₂(B) → H₂(B^ab)`, computed from the comparison map after tensoring with `Z`.
pub fn induced_h2_map(e: u32) -> Result<IntegerMatrix, DlError> {
    let source = augmented_complex(e)?;
    let target = augmented_complex(2)?;
    let f = chain_map_f(e)?;
    let f2 = IntegerMatrix::from_rows(&[vec![f.x.augmentation()]]);
    Ok(induced_top_map(&f2, &source[1], &target[1]))
}

/// `C²B/C³B = coker(H₂(B) → H₂(B^ab))` when `H₁(B) → H₁(B^ab)` is an isomorphism.
pub fn five_term_gr2(h2_map: &IntegerMatrix, h1_iso: bool) -> Result<AbelianGroup, DlError> {
    if !h1_iso {
        return Err(DlError::UnsupportedFiveTerm);
    }
    Ok(cokernel(h2_map))
}

/// Everything computed for one dihedral label.
#[derive(Debug, Clone)]
pub struct DihedralSummary {
    pub e: u32,
    pub d2_terms: Vec<String>,
    /// `ε` of the `∂₂` coefficients of `[a0]`, `[a1]`.
    pub d2_augmentation: [BigInt; 2],
    pub d2_coefficients: [String; 2],
    pub chain_map_x: String,
    pub identities: ChainIdentities,
    pub homology: Vec<AbelianGroup>,
    pub h2_map: IntegerMatrix,
    pub gr2: AbelianGroup,
    pub nilq_gr2: AbelianGroup,
}

impl DihedralSummary {
    pub fn agrees(&self) -> bool {
        self.gr2 == self.nilq_gr2
    }

    pub fn expected_homology(&self) -> bool {
        self.homology == [AbelianGroup::free(1), AbelianGroup::free(2), AbelianGroup::free(1)]
    }
}

impl Serialize for DihedralSummary {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DihedralSummary", 12)?;
        st.serialize_field("e", &self.e)?;
        st.serialize_field("d2_terms", &self.d2_terms)?;
        st.serialize_field("d2_coefficients", &self.d2_coefficients)?;
        st.serialize_field("d2_augmentation", &IntSlice(&self.d2_augmentation))?;
        st.serialize_field("chain_map_x", &self.chain_map_x)?;
        st.serialize_field("identities", &self.identities)?;
        st.serialize_field("homology", &self.homology)?;
        st.serialize_field("h2_map", &self.h2_map)?;
        st.serialize_field("gr2", &self.gr2)?;
        st.serialize_field("nilq_gr2", &self.nilq_gr2)?;
        st.serialize_field("agrees", &self.agrees())?;
        st.serialize_field("expected_homology", &self.expected_homology())?;
        st.end()
    }
}

pub fn dihedral_summary(e: u32) -> Result<DihedralSummary, DlError> {
    let cx = dihedral_complex(e)?;
    let f = chain_map_f(e)?;
    let identities = check_chain_identities(e)?;
    let homology = homology(&cx.augmented())?;
    let h2_map = induced_h2_map(e)?;
    let gr2 = five_term_gr2(&h2_map, true)?;
    let presentation = CoxeterGraph::dihedral(e)
        .expect("even label >= 2 is a valid Coxeter label")
        .artin_presentation();
    let nilq_gr2 = fpnilq::gr2(&presentation).gr2;
    Ok(DihedralSummary {
        e,
        d2_terms: cx.d2_terms.iter().map(BoundaryTerm::render).collect(),
        d2_augmentation: [cx.d2[0].augmentation(), cx.d2[1].augmentation()],
        d2_coefficients: [cx.d2[0].to_string(), cx.d2[1].to_string()],
        chain_map_x: f.x.to_string(),
        identities,
        homology,
        h2_map,
        gr2,
        nilq_gr2,
    })
}
