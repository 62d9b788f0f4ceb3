//! Group codes: right ideals e·F2[G] as binary linear codes.
//!
//! A code is built from the right-multiplication orbit {e·g_h}, row-reduced
//! to a full-rank generator matrix. LCD status is decided two independent
//! ways — Gram-matrix invertibility and the definitional intersection with
//! the dual — and the two are cross-checked throughout the test suite.
//! Enumeration of all LCD idempotents of a group comes in three flavours
//! with explicit capacity bounds; the artifact refuses rather than
//! approximating when a bound is exceeded.

use std::fmt;
use std::sync::OnceLock;

use crate::algebra::AlgebraElement;
use crate::bits::Bitset;
use crate::cyclotomic::CosetPartition;
use crate::gf2::{row_space_intersection_dim, BitMatrix};
use crate::groups::{FiniteGroup, Subset};

/// Minimum-distance enumeration walks 2^k codewords; beyond this we refuse.
pub const MAX_DISTANCE_DIM: usize = 20;
/// Exhaustive enumeration scans 2^n supports.
pub const MAX_EXHAUSTIVE_ORDER: usize = 15;
/// Adjoint-filtered enumeration scans 2^atoms supports.
pub const MAX_ADJOINT_ATOMS: usize = 24;
/// Coset-union enumeration yields 2^blocks codes.
pub const MAX_COSET_BLOCKS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodesError {
    /// dual_idempotent needs e^2 = e = ê.
    NotLcdIdempotent,
    /// The zero code has no nonzero codeword, hence no minimum distance.
    ZeroCode,
    /// k exceeds the 2^k distance-enumeration bound.
    DistanceCapacity { k: usize },
    /// The chosen enumeration method does not apply to this group.
    MethodNotApplicable(String),
    /// An enumeration capacity bound was exceeded.
    CapacityExceeded(String),
    /// power-of-two length exponent outside 1..=4.
    InvalidLengthExponent(u32),
}

impl fmt::Display for CodesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodesError::NotLcdIdempotent => write!(f, "element is not a self-adjoint idempotent"),
            CodesError::ZeroCode => write!(f, "the zero code has no minimum distance"),
            CodesError::DistanceCapacity { k } => {
                write!(
                    f,
                    "minimum distance not computed: k = {k} exceeds the bound {MAX_DISTANCE_DIM}"
                )
            }
            CodesError::MethodNotApplicable(s) => {
                write!(f, "enumeration method not applicable: {s}")
            }
            CodesError::CapacityExceeded(s) => write!(f, "capacity exceeded: {s}"),
            CodesError::InvalidLengthExponent(a) => {
                write!(f, "length exponent {a} outside the supported range 1..=4")
            }
        }
    }
}

impl std::error::Error for CodesError {}

/// A right ideal e·F2[G] with its reduced generator matrix.
#[derive(Clone)]
pub struct GroupCode<'g> {
    group: &'g FiniteGroup,
    idempotent: AlgebraElement<'g>,
    gen: BitMatrix,
    k: usize,
    min_dist: OnceLock<usize>,
}

impl<'g> GroupCode<'g> {
    /// Builds the code spanned by {Φ(e·g_h) : h ∈ G}, row-reduced.
    pub fn build(group: &'g FiniteGroup, e: &AlgebraElement<'g>) -> GroupCode<'g> {
        assert!(
            std::ptr::eq(e.group(), group) || e.group() == group,
            "group mismatch: element belongs to {}",
            e.group().kind()
        );
        let n = group.order();
        let mut orbit = BitMatrix::zeros(n, n);
        for h in 0..n {
            let g_h = AlgebraElement::from_indices(group, [h]);
            orbit.set_row(h, e.mul(&g_h).support());
        }
        let rref = orbit.rref();
        let k = rref.pivots.len();
        let mut gen = BitMatrix::zeros(k, n);
        for r in 0..k {
            gen.set_row(r, &rref.matrix.row(r));
        }
        GroupCode {
            group,
            idempotent: e.clone(),
            gen,
            k,
            min_dist: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    /// The generating element e (an LCD idempotent when the code came from
    /// one; arbitrary elements are allowed and still span a right ideal).
    pub fn idempotent(&self) -> &AlgebraElement<'g> {
        &self.idempotent
    }

    /// Reduced generator matrix: k rows, n columns, rank k.
    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn length(&self) -> usize {
        self.group.order()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Generator of the dual code: a basis of the nullspace of `gen`.
    pub fn dual_generator(&self) -> BitMatrix {
        self.gen.nullspace_basis()
    }

    /// Massey's criterion: the code is LCD iff G·G^T is invertible.
    /// The 0x0 Gram of the zero code is vacuously invertible.
    pub fn is_lcd_gram(&self) -> bool {
        self.gen.gram().is_invertible()
    }

    /// Definitional criterion: C ∩ C⊥ = {0}, computed from row spaces.
    pub fn is_lcd_intersection(&self) -> bool {
        row_space_intersection_dim(&self.gen, &self.dual_generator()) == 0
    }

    /// Minimum weight over all 2^k - 1 nonzero codewords, enumerated with
    /// Gray-code single-row XOR updates. Cached after the first call.
    pub fn min_distance(&self) -> Result<usize, CodesError> {
        if self.k == 0 {
            return Err(CodesError::ZeroCode);
        }
        if self.k > MAX_DISTANCE_DIM {
            return Err(CodesError::DistanceCapacity { k: self.k });
        }
        if let Some(&d) = self.min_dist.get() {
            return Ok(d);
        }
        let rows: Vec<Bitset> = (0..self.k).map(|r| self.gen.row(r)).collect();
        let mut current = Bitset::empty(self.length());
        let mut best = usize::MAX;
        for i in 1u64..1 << self.k {
            current.xor_with(&rows[i.trailing_zeros() as usize]);
            best = best.min(current.count());
        }
        let _ = self.min_dist.set(best);
        Ok(best)
    }

    /// Dimension/distance predictions when the component set (or the
    /// component set plus the identity) is a subgroup, cross-checked
    /// against the computed values.
    pub fn structural_parameters(&self) -> StructureReport {
        let n = self.length();
        let supp = self.idempotent.component_set();
        let id = self.group.identity();
        let weight = self.idempotent.weight();

        let (case, predicted_k, predicted_d) = if supp.is_subgroup() {
            (StructureCase::Subgroup, Some(n / weight), Some(weight))
        } else if !supp.contains(id) && {
            let with_id =
                Subset::from_indices(self.group, supp.to_indices().into_iter().chain([id]));
            with_id.is_subgroup()
        } {
            let index = n / (weight + 1);
            (StructureCase::AdjoinedIdentity, Some(n - index), Some(2))
        } else {
            (StructureCase::Neither, None, None)
        };

        let computed_d = self.min_distance().ok();
        StructureReport {
            case,
            predicted_k,
            predicted_d,
            computed_k: self.k,
            computed_d,
            k_matches: predicted_k.map(|pk| pk == self.k),
            d_matches: match (predicted_d, computed_d) {
                (Some(pd), Some(cd)) => Some(pd == cd),
                _ => None,
            },
        }
    }

    /// MDS status (d = n - k + 1), maximality (k = n - 1) and whether the
    /// maximal⟺MDS equivalence plus the even-order exclusion hold here.
    pub fn mds_report(&self) -> Result<MdsReport, CodesError> {
        let n = self.length();
        let d = self.min_distance()?;
        let is_mds = d == n - self.k + 1;
        let is_maximal_ideal = self.k + 1 == n;

        let supp = self.idempotent.component_set();
        let id = self.group.identity();
        let adjoined_subgroup = !supp.contains(id)
            && Subset::from_indices(self.group, supp.to_indices().into_iter().chain([id]))
                .is_subgroup();
        let subgroup_hypothesis = supp.is_subgroup() || adjoined_subgroup;
        // The structural hypotheses read M off the generating LCD
        // idempotent; an arbitrary generator's support is not that M.
        let lcd = self.idempotent.is_lcd_idempotent();

        // Both checks concern proper codes: the full space [n,n,1] is
        // degenerate-MDS and its dual has no distance, so k = n is out of
        // scope for the even-order exclusion.
        let mut consistent = true;
        if lcd && adjoined_subgroup {
            consistent &= is_mds == is_maximal_ideal;
        }
        if lcd && subgroup_hypothesis && n & 1 == 0 && self.k < n {
            consistent &= !is_mds;
        }

        Ok(MdsReport {
            is_mds,
            is_maximal_ideal,
            consistent,
        })
    }
}

impl fmt::Debug for GroupCode<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupCode[{}, {}] e={:?}",
            self.length(),
            self.k,
            self.idempotent
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureCase {
    /// supp(e) is a subgroup M: k = [G:M], d = wt(e).
    Subgroup,
    /// g0 ∉ supp(e) and supp(e) ∪ {g0} is a subgroup: d = 2,
    /// k = n - [G : M ∪ {g0}].
    AdjoinedIdentity,
    Neither,
}

impl fmt::Display for StructureCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureCase::Subgroup => "subgroup",
            StructureCase::AdjoinedIdentity => "adjoined_identity",
            StructureCase::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub case: StructureCase,
    pub predicted_k: Option<usize>,
    pub predicted_d: Option<usize>,
    pub computed_k: usize,
    /// None when the distance is unavailable (zero code or capacity).
    pub computed_d: Option<usize>,
    pub k_matches: Option<bool>,
    pub d_matches: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdsReport {
    pub is_mds: bool,
    pub is_maximal_ideal: bool,
    pub consistent: bool,
}

/// 1 - e in characteristic 2: toggles the identity coefficient. Requires
/// e^2 = e = ê; the result generates the dual code of e·F2[G].
pub fn dual_idempotent<'g>(e: &AlgebraElement<'g>) -> Result<AlgebraElement<'g>, CodesError> {
    if !e.is_lcd_idempotent() {
        return Err(CodesError::NotLcdIdempotent);
    }
    let mut support = e.support().clone();
    support.toggle(e.group().identity());
    Ok(AlgebraElement::from_support(e.group(), support))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMethod {
    /// Unions of negation-closed cyclotomic blocks; standard cyclic groups
    /// of odd order only.
    CosetUnion,
    /// All 2^n supports; group order at most 15.
    Exhaustive,
    /// Unions of inverse-closed atoms ({g} with g = g⁻¹, else {g, g⁻¹}),
    /// which captures every self-adjoint element; idempotency is then
    /// tested by convolution.
    AdjointFiltered,
}

impl fmt::Display for EnumerationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnumerationMethod::CosetUnion => "coset-union",
            EnumerationMethod::Exhaustive => "exhaustive",
            EnumerationMethod::AdjointFiltered => "adjoint-filtered",
        })
    }
}

/// All e with e^2 = e = ê, each wrapped as a GroupCode, sorted by support
/// read as a bit-integer. The zero element is included; counts that mirror
/// the 2^t - 1 convention should drop only that one entry.
pub fn enumerate_lcd_codes<'g>(
    group: &'g FiniteGroup,
    method: EnumerationMethod,
) -> Result<Vec<GroupCode<'g>>, CodesError> {
    let supports = match method {
        EnumerationMethod::CosetUnion => coset_union_supports(group)?,
        EnumerationMethod::Exhaustive => exhaustive_supports(group)?,
        EnumerationMethod::AdjointFiltered => adjoint_filtered_supports(group)?,
    };
    let mut codes: Vec<GroupCode<'g>> = supports
        .into_iter()
        .map(|s| GroupCode::build(group, &AlgebraElement::from_support(group, s)))
        .collect();
    codes.sort_by(|a, b| a.idempotent.support().cmp(b.idempotent.support()));
    Ok(codes)
}

fn coset_union_supports(group: &FiniteGroup) -> Result<Vec<Bitset>, CodesError> {
    let n = group.order();
    if !group.is_standard_cyclic() {
        return Err(CodesError::MethodNotApplicable(format!(
            "coset-union needs a cyclic group in exponent order, got {}",
            group.kind()
        )));
    }
    if n & 1 == 0 {
        return Err(CodesError::MethodNotApplicable(format!(
            "coset-union needs odd order, got {n}"
        )));
    }
    let partition = CosetPartition::new(n as u64).expect("odd order checked above");
    let blocks = partition.block_count();
    if blocks > MAX_COSET_BLOCKS {
        return Err(CodesError::CapacityExceeded(format!(
            "{blocks} blocks would enumerate 2^{blocks} codes (bound 2^{MAX_COSET_BLOCKS})"
        )));
    }
    let block_sets: Vec<Bitset> = (0..blocks)
        .map(|b| Bitset::from_indices(n, partition.block_residues(b).iter().map(|&r| r as usize)))
        .collect();
    let mut out = Vec::with_capacity(1 << blocks);
    for mask in 0u64..1 << blocks {
        let mut support = Bitset::empty(n);
        for (b, set) in block_sets.iter().enumerate() {
            if mask >> b & 1 == 1 {
                support.xor_with(set);
            }
        }
        debug_assert!(AlgebraElement::from_support(group, support.clone()).is_lcd_idempotent());
        out.push(support);
    }
    Ok(out)
}

fn exhaustive_supports(group: &FiniteGroup) -> Result<Vec<Bitset>, CodesError> {
    let n = group.order();
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(CodesError::CapacityExceeded(format!(
            "exhaustive scan over 2^{n} supports (bound 2^{MAX_EXHAUSTIVE_ORDER})"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let support = Bitset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let e = AlgebraElement::from_support(group, support);
        if e.is_lcd_idempotent() {
            out.push(e.support().clone());
        }
    }
    Ok(out)
}

fn adjoint_filtered_supports(group: &FiniteGroup) -> Result<Vec<Bitset>, CodesError> {
    let n = group.order();
    let mut atoms: Vec<Bitset> = Vec::new();
    for i in 0..n {
        let j = group.inverse(i);
        if i == j {
            atoms.push(Bitset::from_indices(n, [i]));
        } else if i < j {
            atoms.push(Bitset::from_indices(n, [i, j]));
        }
    }
    if atoms.len() > MAX_ADJOINT_ATOMS {
        return Err(CodesError::CapacityExceeded(format!(
            "{} inverse-closed atoms would scan 2^{} supports (bound 2^{MAX_ADJOINT_ATOMS})",
            atoms.len(),
            atoms.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << atoms.len() {
        let mut support = Bitset::empty(n);
        for (b, atom) in atoms.iter().enumerate() {
            if mask >> b & 1 == 1 {
                support.xor_with(atom);
            }
        }
        let e = AlgebraElement::from_support(group, support);
        debug_assert!(e.is_self_adjoint());
        if e.is_idempotent() {
            out.push(e.support().clone());
        }
    }
    Ok(out)
}

/// Result of the exhaustive LCD-idempotent scan over F2[Z_{2^a}].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOfTwoReport {
    pub exponent: u32,
    pub length: usize,
    /// Supports of every self-adjoint idempotent found, ascending.
    pub found: Vec<Vec<usize>>,
    /// True when only e = 0 and e = g0 occur, i.e. no nontrivial cyclic
    /// LCD code of length 2^a exists.
    pub only_trivial: bool,
}

/// Exhaustively scans F2[Z_{2^a}] for self-adjoint idempotents, a in 1..=4.
pub fn power_of_two_length_check(a: u32) -> Result<PowerOfTwoReport, CodesError> {
    if !(1..=4).contains(&a) {
        return Err(CodesError::InvalidLengthExponent(a));
    }
    let n = 1usize << a;
    let group = FiniteGroup::cyclic(n).expect("power-of-two order within cap");
    let mut found = Vec::new();
    for mask in 0u64..1 << n {
        let support = Bitset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let e = AlgebraElement::from_support(&group, support);
        if e.is_lcd_idempotent() {
            found.push(e.support_indices());
        }
    }
    let only_trivial = found == vec![vec![], vec![0]];
    Ok(PowerOfTwoReport {
        exponent: a,
        length: n,
        found,
        only_trivial,
    })
}
