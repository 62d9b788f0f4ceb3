//! 2-cyclotomic cosets modulo odd n and the LCD cyclic group-code counts.
//!
//! The coset `C_i = {i·2^j mod n}` partitions Z_n. Supports of LCD cyclic
//! idempotents are exactly the unions of *blocks*: minimal unions of cosets
//! closed under both multiplication by 2 and negation mod n. The
//! authoritative count is therefore `2^blocks - 1` (every nonempty union of
//! blocks); the closed forms per hypothesis class are computed alongside as
//! audit targets, including the literal U-set general formula, which is
//! known to diverge from direct computation at n = 15.

use std::fmt;

/// Caps the representable count `2^blocks - 1` to a u128.
const MAX_BLOCKS: usize = 127;
/// The partition holds O(n) residues; refuse absurd moduli.
pub const MAX_MODULUS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    /// The coset theory assumes gcd(2, n) = 1.
    EvenModulus(u64),
    ZeroModulus,
    ModulusTooLarge(u64),
    /// The U-set general formula assumes n does not divide any 2^m + 1.
    HypothesisViolated {
        n: u64,
    },
    /// More than 127 blocks: 2^blocks - 1 does not fit a u128.
    CountOverflow {
        blocks: usize,
    },
}

impl fmt::Display for CyclotomicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclotomicError::EvenModulus(n) => write!(f, "modulus {n} must be odd"),
            CyclotomicError::ZeroModulus => write!(f, "modulus must be >= 1"),
            CyclotomicError::ModulusTooLarge(n) => {
                write!(f, "modulus {n} exceeds the cap {MAX_MODULUS}")
            }
            CyclotomicError::HypothesisViolated { n } => {
                write!(
                    f,
                    "n = {n} divides some 2^m + 1; the U-set formula does not apply"
                )
            }
            CyclotomicError::CountOverflow { blocks } => {
                write!(f, "2^{blocks} - 1 exceeds the 128-bit count capacity")
            }
        }
    }
}

impl std::error::Error for CyclotomicError {}

fn check_odd(n: u64) -> Result<(), CyclotomicError> {
    if n == 0 {
        Err(CyclotomicError::ZeroModulus)
    } else if n & 1 == 0 {
        Err(CyclotomicError::EvenModulus(n))
    } else if n > MAX_MODULUS {
        Err(CyclotomicError::ModulusTooLarge(n))
    } else {
        Ok(())
    }
}

/// The 2-cyclotomic cosets mod n with their inverse-closure structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    n: u64,
    cosets: Vec<Vec<u64>>,
    inverse_closed: Vec<bool>,
    blocks: Vec<Vec<usize>>,
    t1: usize,
}

impl CosetPartition {
    /// Partitions `{0, …, n-1}` into orbits under multiplication by 2,
    /// ordered by smallest representative (so C0 = {0} is first), and merges
    /// cosets into negation-closed blocks.
    pub fn new(n: u64) -> Result<CosetPartition, CyclotomicError> {
        check_odd(n)?;
        let mut coset_of = vec![usize::MAX; n as usize];
        let mut cosets: Vec<Vec<u64>> = Vec::new();
        for start in 0..n {
            if coset_of[start as usize] != usize::MAX {
                continue;
            }
            let id = cosets.len();
            let mut members = Vec::new();
            let mut x = start;
            loop {
                coset_of[x as usize] = id;
                members.push(x);
                x = x * 2 % n;
                if x == start {
                    break;
                }
            }
            members.sort_unstable();
            cosets.push(members);
        }

        let inverse_closed: Vec<bool> = cosets
            .iter()
            .map(|c| coset_of[((n - c[0]) % n) as usize] == coset_of[c[0] as usize])
            .collect();
        let t1 = inverse_closed.iter().filter(|&&b| b).count();

        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut merged = vec![false; cosets.len()];
        for i in 0..cosets.len() {
            if merged[i] {
                continue;
            }
            merged[i] = true;
            let partner = coset_of[((n - cosets[i][0]) % n) as usize];
            if partner == i {
                blocks.push(vec![i]);
            } else {
                merged[partner] = true;
                blocks.push(vec![i, partner]);
            }
        }

        Ok(CosetPartition {
            n,
            cosets,
            inverse_closed,
            blocks,
            t1,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Cosets as sorted residue lists, ordered by smallest representative.
    pub fn cosets(&self) -> &[Vec<u64>] {
        &self.cosets
    }

    /// Number of cosets.
    pub fn t(&self) -> usize {
        self.cosets.len()
    }

    /// Per-coset flag: is -C_i = C_i mod n?
    pub fn inverse_closed(&self) -> &[bool] {
        &self.inverse_closed
    }

    /// Number of individually inverse-closed cosets.
    pub fn t1(&self) -> usize {
        self.t1
    }

    /// Coset-index groups whose residue unions are closed under both
    /// multiplication by 2 and negation mod n.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the coset containing residue `r`.
    pub fn coset_containing(&self, r: u64) -> usize {
        let r = r % self.n;
        self.cosets
            .iter()
            .position(|c| c.binary_search(&r).is_ok())
            .unwrap()
    }

    /// Residues of one block, sorted.
    pub fn block_residues(&self, b: usize) -> Vec<u64> {
        let mut out: Vec<u64> = self.blocks[b]
            .iter()
            .flat_map(|&c| self.cosets[c].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// True iff `d | 2^m + 1` for some m >= 1, decided exactly by walking the
/// cycle of 2 mod d (equivalently: -1 lies in the subgroup generated by 2).
pub fn divides_pow2_plus_one(d: u64) -> bool {
    assert!(d >= 1 && d & 1 == 1, "d must be odd and positive, got {d}");
    if d == 1 {
        return true;
    }
    let mut pow = 2 % d;
    loop {
        if pow == d - 1 {
            return true;
        }
        if pow == 1 {
            return false;
        }
        pow = pow * 2 % d;
    }
}

/// Which closed-form hypothesis class an odd modulus falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremPath {
    /// n | 2^j + 1: every coset is inverse-closed, count 2^t - 1.
    DividesPow2Plus1,
    /// n = p^s, n ∤ 2^m + 1: only C0 inverse-closed, count 2^((t+1)/2) - 1.
    OddPrimePower,
    /// n = pq with exactly one prime dividing some 2^m + 1: 2^(t/2+1) - 1.
    TwoPrimesMixed,
    /// n = pq with neither prime dividing: 2^((t+1)/2) - 1.
    TwoPrimesNeither,
    /// Everything else: 2^((t+t1)/2) - 1 with t1 counted directly.
    General,
}

impl fmt::Display for TheoremPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremPath::DividesPow2Plus1 => "n divides 2^j+1",
            TheoremPath::OddPrimePower => "odd prime power",
            TheoremPath::TwoPrimesMixed => "pq, one prime divides 2^m+1",
            TheoremPath::TwoPrimesNeither => "pq, neither prime divides 2^m+1",
            TheoremPath::General => "general",
        };
        f.write_str(s)
    }
}

/// The count of LCD cyclic group codes in F2[Z_n] plus the structure that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub n: u64,
    /// Authoritative: 2^blocks - 1, i.e. all nonempty unions of blocks.
    pub count: u128,
    pub theorem_path: TheoremPath,
    pub t: usize,
    pub t1: usize,
    pub blocks: usize,
    /// The applicable closed form, when its exponent is integral.
    pub closed_form: Option<u128>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow2_minus_one(k: usize) -> Result<u128, CyclotomicError> {
    if k > MAX_BLOCKS {
        return Err(CyclotomicError::CountOverflow { blocks: k });
    }
    Ok((1u128 << k) - 1)
}

fn half(x: usize) -> Option<usize> {
    (x & 1 == 0).then_some(x / 2)
}

/// Counts LCD cyclic group codes of odd length n from the block structure,
/// recording which hypothesis class n satisfies and the matching closed
/// form.
pub fn count_lcd_cyclic(n: u64) -> Result<CountResult, CyclotomicError> {
    let partition = CosetPartition::new(n)?;
    let (t, t1, blocks) = (partition.t(), partition.t1(), partition.block_count());
    let count = pow2_minus_one(blocks)?;

    let theorem_path = if divides_pow2_plus_one(n) {
        TheoremPath::DividesPow2Plus1
    } else {
        let factors = factorize(n);
        match factors.as_slice() {
            [(_, _)] => TheoremPath::OddPrimePower,
            [(p, 1), (q, 1)] => match (divides_pow2_plus_one(*p), divides_pow2_plus_one(*q)) {
                (true, false) | (false, true) => TheoremPath::TwoPrimesMixed,
                (false, false) => TheoremPath::TwoPrimesNeither,
                (true, true) => TheoremPath::General,
            },
            _ => TheoremPath::General,
        }
    };

    let closed_form = match theorem_path {
        TheoremPath::DividesPow2Plus1 => Some(pow2_minus_one(t)?),
        TheoremPath::OddPrimePower | TheoremPath::TwoPrimesNeither => match half(t + 1) {
            Some(k) => Some(pow2_minus_one(k)?),
            None => None,
        },
        TheoremPath::TwoPrimesMixed => match half(t) {
            Some(k) => Some(pow2_minus_one(k + 1)?),
            None => None,
        },
        TheoremPath::General => match half(t + t1) {
            Some(k) => Some(pow2_minus_one(k)?),
            None => None,
        },
    };

    Ok(CountResult {
        n,
        count,
        theorem_path,
        t,
        t1,
        blocks,
        closed_form,
    })
}

/// Two readings of t1 for the general count 2^((t+t1)/2) - 1: the literal
/// U-set definition versus direct inverse-closure of cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFormulaAudit {
    pub n: u64,
    /// d1 with n = d1·d2, d1 ∤ 2^l+1 for all l, d2 | 2^m+1 for some m.
    pub u_set: Vec<u64>,
    /// Distinct cosets C_{d1} over the U-set (d1 = n yields C0).
    pub u_set_t1: usize,
    pub direct_t1: usize,
    /// 2^((t + u_set_t1)/2) - 1 when the exponent is integral.
    pub u_set_count: Option<u128>,
    /// 2^blocks - 1 (always equals 2^((t + direct_t1)/2) - 1).
    pub direct_count: u128,
    pub agrees: bool,
}

/// Evaluates the literal U-set count against the direct block count.
/// Requires the formula's hypothesis: n must not divide any 2^m + 1.
pub fn general_formula_audit(n: u64) -> Result<GeneralFormulaAudit, CyclotomicError> {
    check_odd(n)?;
    if divides_pow2_plus_one(n) {
        return Err(CyclotomicError::HypothesisViolated { n });
    }
    let partition = CosetPartition::new(n)?;
    let t = partition.t();

    let mut u_set = Vec::new();
    for d1 in (1..=n).filter(|&d| n.is_multiple_of(d)) {
        let d2 = n / d1;
        if !divides_pow2_plus_one(d1) && divides_pow2_plus_one(d2) {
            u_set.push(d1);
        }
    }
    let mut u_cosets: Vec<usize> = u_set
        .iter()
        .map(|&d| partition.coset_containing(d))
        .collect();
    u_cosets.sort_unstable();
    u_cosets.dedup();
    let u_set_t1 = u_cosets.len();

    let u_set_count = match half(t + u_set_t1) {
        Some(k) if k <= MAX_BLOCKS => Some(pow2_minus_one(k)?),
        _ => None,
    };
    let direct_count = pow2_minus_one(partition.block_count())?;

    Ok(GeneralFormulaAudit {
        n,
        u_set,
        u_set_t1,
        direct_t1: partition.t1(),
        u_set_count,
        direct_count,
        agrees: u_set_count == Some(direct_count),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_mod_9() {
        let p = CosetPartition::new(9).unwrap();
        assert_eq!(p.cosets(), &[vec![0], vec![1, 2, 4, 5, 7, 8], vec![3, 6]]);
        assert_eq!(p.t(), 3);
        assert_eq!(p.inverse_closed(), &[true, true, true]);
        assert_eq!(p.t1(), 3);
        assert_eq!(p.block_count(), 3);
    }

    #[test]
    fn cosets_mod_1() {
        let p = CosetPartition::new(1).unwrap();
        assert_eq!(p.cosets(), &[vec![0]]);
        assert_eq!(p.t(), 1);
        assert_eq!(p.t1(), 1);
    }

    #[test]
    fn cosets_mod_15() {
        let p = CosetPartition::new(15).unwrap();
        assert_eq!(
            p.cosets(),
            &[
                vec![0],
                vec![1, 2, 4, 8],
                vec![3, 6, 9, 12],
                vec![5, 10],
                vec![7, 11, 13, 14],
            ]
        );
        assert_eq!(p.t(), 5);
        assert_eq!(p.inverse_closed(), &[true, false, true, true, false]);
        assert_eq!(p.t1(), 3);
        assert_eq!(p.blocks(), &[vec![0], vec![1, 4], vec![2], vec![3]]);
        assert_eq!(p.block_count(), 4);
    }

    #[test]
    fn even_modulus_rejected() {
        assert_eq!(CosetPartition::new(8), Err(CyclotomicError::EvenModulus(8)));
        assert_eq!(
            count_lcd_cyclic(6).unwrap_err(),
            CyclotomicError::EvenModulus(6)
        );
    }

    #[test]
    fn pow2_plus_one_divisors() {
        assert!(divides_pow2_plus_one(9)); // 9 | 2^3 + 1
        assert!(!divides_pow2_plus_one(7));
        assert!(divides_pow2_plus_one(1));
        assert!(divides_pow2_plus_one(3));
        assert!(!divides_pow2_plus_one(15));
        assert!(!divides_pow2_plus_one(21));
        assert!(divides_pow2_plus_one(27)); // 27 | 2^9 + 1 = 513
    }

    #[test]
    fn count_9_is_7() {
        let r = count_lcd_cyclic(9).unwrap();
        assert_eq!(r.count, 7);
        assert_eq!(r.theorem_path, TheoremPath::DividesPow2Plus1);
        assert_eq!(r.theorem_path.to_string(), "n divides 2^j+1");
        assert_eq!(r.closed_form, Some(7));
        assert_eq!((r.t, r.t1, r.blocks), (3, 3, 3));
    }

    #[test]
    fn count_7_is_3() {
        let r = count_lcd_cyclic(7).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.theorem_path, TheoremPath::OddPrimePower);
        assert_eq!(r.closed_form, Some(3));
        assert_eq!((r.t, r.blocks), (3, 2));
    }

    #[test]
    fn count_21_is_15() {
        let r = count_lcd_cyclic(21).unwrap();
        assert_eq!(r.count, 15);
        assert_eq!(r.theorem_path, TheoremPath::TwoPrimesMixed);
        assert_eq!(r.closed_form, Some(15));
        assert_eq!((r.t, r.blocks), (6, 4));
    }

    #[test]
    fn count_15_takes_general_path() {
        // 3 and 5 both divide some 2^m + 1 but 15 does not: no pq theorem applies.
        let r = count_lcd_cyclic(15).unwrap();
        assert_eq!(r.count, 15);
        assert_eq!(r.theorem_path, TheoremPath::General);
        assert_eq!(r.closed_form, Some(15)); // direct t1 = 3
    }

    #[test]
    fn audit_21() {
        let a = general_formula_audit(21).unwrap();
        assert_eq!(a.u_set, vec![7, 21]);
        assert_eq!(a.u_set_t1, 2);
        assert_eq!(a.direct_t1, 2);
        assert_eq!(a.u_set_count, Some(15));
        assert_eq!(a.direct_count, 15);
        assert!(a.agrees);
    }

    #[test]
    fn audit_15_diverges() {
        let a = general_formula_audit(15).unwrap();
        assert_eq!(a.u_set, vec![15]);
        assert_eq!(a.u_set_t1, 1);
        assert_eq!(a.direct_t1, 3);
        assert_eq!(a.u_set_count, Some(7));
        assert_eq!(a.direct_count, 15);
        assert!(!a.agrees);
    }

    #[test]
    fn audit_7_agrees() {
        let a = general_formula_audit(7).unwrap();
        assert_eq!(a.u_set, vec![7]);
        assert_eq!(a.u_set_t1, 1);
        assert_eq!(a.u_set_count, Some(3));
        assert_eq!(a.direct_count, 3);
        assert!(a.agrees);
    }

    #[test]
    fn audit_requires_hypothesis() {
        assert_eq!(
            general_formula_audit(9).unwrap_err(),
            CyclotomicError::HypothesisViolated { n: 9 }
        );
    }
}
