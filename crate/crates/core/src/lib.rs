//! Binary group codes as right ideals of F2[G].
//!
//! The pieces, bottom up:
//!
//! - [`bits`] / [`gf2`]: word-packed bitsets and dense GF(2) linear algebra
//!   (rank, rref, nullspace, row-space intersection).
//! - [`groups`]: concrete finite groups as Cayley tables — cyclic, dihedral,
//!   symmetric and direct products — with subgroup and coset machinery.
//! - [`algebra`]: arithmetic in F2[G]: XOR addition, convolution product,
//!   adjoint, the coordinate map onto F2^n.
//! - [`cyclotomic`]: 2-cyclotomic cosets mod odd n, negation-closed blocks,
//!   counts of LCD cyclic group codes and the closed-form audit.
//! - [`codes`]: the right ideal e·F2[G] as a linear code; LCD verification
//!   by Gram invertibility and by intersection with the dual; dimension,
//!   minimum distance and MDS status; enumeration of all LCD idempotents.
//!
//! A code e·F2[G] is linear complementary dual exactly when e^2 = e = ê,
//! which reduces classification to a search over self-adjoint idempotents;
//! for odd cyclic groups that search collapses to unions of cyclotomic
//! blocks.
//!
//! ```
//! use lcdgc_core::{AlgebraElement, FiniteGroup, GroupCode};
//!
//! let g = FiniteGroup::from_spec("cyclic:9")?;
//! let e = AlgebraElement::from_indices(&g, [0, 3, 6]); // the order-3 subgroup
//! assert!(e.is_lcd_idempotent());
//!
//! let code = GroupCode::build(&g, &e);
//! assert_eq!(code.dimension(), 3);
//! assert_eq!(code.min_distance()?, 3);
//! assert!(code.is_lcd_gram() && code.is_lcd_intersection());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod algebra;
pub mod bits;
pub mod codes;
pub mod cyclotomic;
pub mod gf2;
pub mod groups;

pub use algebra::AlgebraElement;
pub use bits::Bitset;
pub use codes::{
    dual_idempotent, enumerate_lcd_codes, power_of_two_length_check, CodesError, EnumerationMethod,
    GroupCode, MdsReport, PowerOfTwoReport, StructureCase, StructureReport,
};
pub use cyclotomic::{
    count_lcd_cyclic, divides_pow2_plus_one, general_formula_audit, CosetPartition, CountResult,
    CyclotomicError, GeneralFormulaAudit, TheoremPath,
};
pub use gf2::{row_space_intersection_dim, BitMatrix, Rref};
pub use groups::{FiniteGroup, GroupError, Subset};
