//! Arithmetic in the group algebra F2[G].
//!
//! Coefficients live in GF(2), so an element is just its support: the set
//! of group elements with coefficient 1. Addition is XOR of supports and
//! multiplication is the convolution product driven by the Cayley table,
//! O(|supp a| * |supp b|) with parity accumulation. The coordinate map onto
//! F2^n uses the group's fixed element ordering, so a support bitset *is*
//! the coordinate vector.

use crate::bits::Bitset;
use crate::gf2::BitMatrix;
use crate::groups::{assert_same_group, FiniteGroup, Subset};

/// An element of F2[G], stored as its support over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement<'g> {
    group: &'g FiniteGroup,
    support: Bitset,
}

impl<'g> AlgebraElement<'g> {
    pub fn zero(group: &'g FiniteGroup) -> Self {
        AlgebraElement {
            group,
            support: Bitset::empty(group.order()),
        }
    }

    /// The multiplicative identity g0.
    pub fn one(group: &'g FiniteGroup) -> Self {
        Self::from_indices(group, [group.identity()])
    }

    /// Element with the given support. Panics on an index out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(group: &'g FiniteGroup, indices: I) -> Self {
        AlgebraElement {
            group,
            support: Bitset::from_indices(group.order(), indices),
        }
    }

    pub fn from_support(group: &'g FiniteGroup, support: Bitset) -> Self {
        assert_eq!(
            support.len(),
            group.order(),
            "support length must equal group order"
        );
        AlgebraElement { group, support }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn support(&self) -> &Bitset {
        &self.support
    }

    pub fn support_indices(&self) -> Vec<usize> {
        self.support.to_indices()
    }

    /// The component set M as a group subset.
    pub fn component_set(&self) -> Subset<'g> {
        Subset::new(self.group, self.support.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Hamming weight wt(a) = |supp(a)|.
    pub fn weight(&self) -> usize {
        self.support.count()
    }

    /// a + b: symmetric difference of supports (characteristic 2).
    pub fn add(&self, other: &AlgebraElement<'g>) -> AlgebraElement<'g> {
        assert_same_group(self.group, other.group);
        let mut support = self.support.clone();
        support.xor_with(&other.support);
        AlgebraElement {
            group: self.group,
            support,
        }
    }

    /// Convolution product: the coefficient of g is Σ_h a_h b_{h⁻¹g} mod 2,
    /// accumulated by toggling the bit at mul[h][k] for each support pair.
    pub fn mul(&self, other: &AlgebraElement<'g>) -> AlgebraElement<'g> {
        assert_same_group(self.group, other.group);
        let mut support = Bitset::empty(self.group.order());
        for h in self.support.iter() {
            for k in other.support.iter() {
                support.toggle(self.group.mul(h, k));
            }
        }
        AlgebraElement {
            group: self.group,
            support,
        }
    }

    /// The adjoint â: support mapped through g -> g⁻¹.
    pub fn adjoint(&self) -> AlgebraElement<'g> {
        let mut support = Bitset::empty(self.group.order());
        for i in self.support.iter() {
            support.insert(self.group.inverse(i));
        }
        AlgebraElement {
            group: self.group,
            support,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    /// e² = e = ê: exactly the generators of LCD group codes.
    pub fn is_lcd_idempotent(&self) -> bool {
        self.is_self_adjoint() && self.is_idempotent()
    }

    /// The coordinate map: a 1 x n row whose bit i is the coefficient of
    /// element i under the group's fixed ordering.
    pub fn to_vector(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(1, self.group.order());
        m.set_row(0, &self.support);
        m
    }

    /// ⟨a, b⟩ over GF(2): parity of |supp(a) ∩ supp(b)|.
    pub fn inner_product(&self, other: &AlgebraElement<'g>) -> bool {
        assert_same_group(self.group, other.group);
        self.support.intersection_count(&other.support) % 2 == 1
    }
}

impl std::fmt::Debug for AlgebraElement<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<&str> = self.support.iter().map(|i| self.group.label(i)).collect();
        write!(f, "{}", terms.join("+"))
    }
}
