//! Cross-cutting verification: the cyclotomic block structure against the
//! exhaustive idempotent scan, the closed-form counts, and the structural
//! theorems about supports, dimensions, distances and MDS status over every
//! enumerated LCD code on a roster of groups.

use lcdgc_core::codes::{enumerate_lcd_codes, EnumerationMethod, GroupCode, StructureCase};
use lcdgc_core::cyclotomic::{
    count_lcd_cyclic, divides_pow2_plus_one, general_formula_audit, CosetPartition, TheoremPath,
};
use lcdgc_core::{FiniteGroup, Subset};

fn odd(limit: u64) -> impl Iterator<Item = u64> {
    (1..=limit).step_by(2)
}

#[test]
fn coset_partition_invariants_to_99() {
    for n in odd(99) {
        let p = CosetPartition::new(n).unwrap();
        // partition of {0..n-1}
        let mut all: Vec<u64> = p.cosets().iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..n).collect::<Vec<_>>(), "n={n}: not a partition");
        // each coset closed under doubling
        for c in p.cosets() {
            for &x in c {
                assert!(
                    c.binary_search(&(x * 2 % n)).is_ok(),
                    "n={n}: coset not 2-closed"
                );
            }
        }
        // each block's residue union closed under negation
        for b in 0..p.block_count() {
            let res = p.block_residues(b);
            for &x in &res {
                assert!(
                    res.binary_search(&((n - x) % n)).is_ok(),
                    "n={n}: block not negation-closed"
                );
            }
        }
        // block count identity and t1 consistency
        let t = p.t();
        let t1 = p.t1();
        assert_eq!(p.block_count(), (t - t1) / 2 + t1, "n={n}: block identity");
        assert_eq!(
            t1,
            p.inverse_closed().iter().filter(|&&b| b).count(),
            "n={n}: t1 flag count"
        );
    }
}

#[test]
fn closed_forms_match_block_counts_to_99() {
    for n in odd(99) {
        let r = count_lcd_cyclic(n).unwrap();
        assert_eq!(r.count, (1u128 << r.blocks) - 1, "n={n}");
        let cf = r
            .closed_form
            .unwrap_or_else(|| panic!("n={n}: closed form exponent not integral"));
        assert_eq!(
            cf, r.count,
            "n={n}: closed form vs block count ({:?})",
            r.theorem_path
        );
    }
}

#[test]
fn inverse_closure_specializations() {
    for n in odd(99) {
        let p = CosetPartition::new(n).unwrap();
        if divides_pow2_plus_one(n) {
            assert!(
                p.inverse_closed().iter().all(|&b| b),
                "n={n}: all cosets should be inverse-closed"
            );
            assert_eq!(count_lcd_cyclic(n).unwrap().count, (1u128 << p.t()) - 1);
        } else if n > 1 {
            let r = count_lcd_cyclic(n).unwrap();
            if r.theorem_path == TheoremPath::OddPrimePower {
                // only C0 is inverse-closed
                assert!(p.inverse_closed()[0]);
                assert!(
                    p.inverse_closed().iter().skip(1).all(|&b| !b),
                    "n={n}: only C0 should be inverse-closed"
                );
                assert_eq!(r.count, (1u128 << p.t().div_ceil(2)) - 1);
            }
        }
    }
}

/// For n = pq with p dividing some 2^m + 1 and q dividing none, C_q is
/// inverse-closed and C_p is not.
#[test]
fn two_prime_closure_dichotomy() {
    let mut checked = 0;
    for n in odd(99) {
        if divides_pow2_plus_one(n) {
            continue;
        }
        let factors: Vec<u64> = {
            let mut f = Vec::new();
            let mut m = n;
            let mut d = 3;
            while d * d <= m {
                while m.is_multiple_of(d) {
                    f.push(d);
                    m /= d;
                }
                d += 2;
            }
            if m > 1 {
                f.push(m);
            }
            f
        };
        let [a, b] = factors.as_slice() else { continue };
        if a == b {
            continue;
        }
        let (p, q) = match (divides_pow2_plus_one(*a), divides_pow2_plus_one(*b)) {
            (true, false) => (*a, *b),
            (false, true) => (*b, *a),
            _ => continue,
        };
        let part = CosetPartition::new(n).unwrap();
        assert!(
            part.inverse_closed()[part.coset_containing(q)],
            "n={n}: C_{q} should be inverse-closed"
        );
        assert!(
            !part.inverse_closed()[part.coset_containing(p)],
            "n={n}: C_{p} should not be inverse-closed"
        );
        checked += 1;
    }
    assert!(checked >= 3, "dichotomy never exercised (found {checked})");
}

#[test]
fn coset_union_equals_exhaustive_scan_to_15() {
    for n in odd(15) {
        let g = FiniteGroup::cyclic(n as usize).unwrap();
        let a: Vec<Vec<usize>> = enumerate_lcd_codes(&g, EnumerationMethod::CosetUnion)
            .unwrap()
            .iter()
            .map(|c| c.idempotent().support_indices())
            .collect();
        let b: Vec<Vec<usize>> = enumerate_lcd_codes(&g, EnumerationMethod::Exhaustive)
            .unwrap()
            .iter()
            .map(|c| c.idempotent().support_indices())
            .collect();
        assert_eq!(a, b, "n={n}: enumeration methods disagree");
        let expected = count_lcd_cyclic(n).unwrap().count as usize;
        assert_eq!(a.len() - 1, expected, "n={n}: nonzero count vs block count");
    }
}

/// Past the 2^n scan bound the adjoint-filtered search still provides an
/// independent convolution-based count to hold the block formula against.
#[test]
fn block_counts_match_adjoint_filter_to_31() {
    for n in (17..=31u64).step_by(2) {
        let g = FiniteGroup::cyclic(n as usize).unwrap();
        let found = enumerate_lcd_codes(&g, EnumerationMethod::AdjointFiltered)
            .unwrap()
            .iter()
            .filter(|c| !c.idempotent().is_zero())
            .count();
        assert_eq!(found as u128, count_lcd_cyclic(n).unwrap().count, "n={n}");
    }
}

#[test]
fn exhaustive_supports_are_coset_unions_to_15() {
    for n in odd(15) {
        let g = FiniteGroup::cyclic(n as usize).unwrap();
        let p = CosetPartition::new(n).unwrap();
        for code in enumerate_lcd_codes(&g, EnumerationMethod::Exhaustive).unwrap() {
            let support = code.idempotent().support_indices();
            // the exponent set must absorb whole cosets
            for c in p.cosets() {
                let hits = c
                    .iter()
                    .filter(|&&r| support.contains(&(r as usize)))
                    .count();
                assert!(
                    hits == 0 || hits == c.len(),
                    "n={n}: support {support:?} splits coset {c:?}"
                );
            }
        }
    }
}

#[test]
fn adjoint_filter_matches_exhaustive_on_small_groups() {
    for spec in [
        "sym:3",
        "dihedral:4",
        "dihedral:5",
        "product:cyclic:3,cyclic:3",
        "cyclic:15",
    ] {
        let g = FiniteGroup::from_spec(spec).unwrap();
        let filtered: Vec<Vec<usize>> = enumerate_lcd_codes(&g, EnumerationMethod::AdjointFiltered)
            .unwrap()
            .iter()
            .map(|c| c.idempotent().support_indices())
            .collect();
        let scanned: Vec<Vec<usize>> = enumerate_lcd_codes(&g, EnumerationMethod::Exhaustive)
            .unwrap()
            .iter()
            .map(|c| c.idempotent().support_indices())
            .collect();
        assert_eq!(filtered, scanned, "{spec}");
    }
}

/// The frozen exhaustive counts for small odd lengths (nonzero idempotents).
#[test]
fn small_length_counts_frozen() {
    let expected: &[(u64, u128)] = &[
        (1, 1),
        (3, 3),
        (5, 3),
        (7, 3),
        (9, 7),
        (11, 3),
        (13, 3),
        (15, 15),
    ];
    for &(n, count) in expected {
        assert_eq!(count_lcd_cyclic(n).unwrap().count, count, "n={n}");
        let g = FiniteGroup::cyclic(n as usize).unwrap();
        let found = enumerate_lcd_codes(&g, EnumerationMethod::Exhaustive)
            .unwrap()
            .iter()
            .filter(|c| !c.idempotent().is_zero())
            .count();
        assert_eq!(found as u128, count, "n={n}: exhaustive");
    }
}

#[test]
fn u_set_formula_diverges_only_at_15_below_27() {
    for n in (3..=27u64).step_by(2) {
        if divides_pow2_plus_one(n) {
            continue;
        }
        let audit = general_formula_audit(n).unwrap();
        if n == 15 {
            assert!(!audit.agrees, "n=15 must diverge");
            assert_eq!(audit.u_set_count, Some(7));
            assert_eq!(audit.direct_count, 15);
        } else {
            assert!(audit.agrees, "n={n}: U-set formula unexpectedly diverges");
        }
    }
}

fn roster() -> Vec<FiniteGroup> {
    [
        "cyclic:3",
        "cyclic:5",
        "cyclic:7",
        "cyclic:9",
        "cyclic:11",
        "cyclic:13",
        "cyclic:15",
        "sym:3",
        "dihedral:4",
        "dihedral:5",
        "product:cyclic:3,cyclic:3",
    ]
    .iter()
    .map(|s| FiniteGroup::from_spec(s).unwrap())
    .collect()
}

fn enumerate_any(g: &FiniteGroup) -> Vec<GroupCode<'_>> {
    let method = if g.order() <= 15 {
        EnumerationMethod::Exhaustive
    } else {
        EnumerationMethod::AdjointFiltered
    };
    enumerate_lcd_codes(g, method).unwrap()
}

#[test]
fn supports_avoid_involutions_and_even_orders() {
    for g in roster() {
        let involutions = g.involutions();
        let abelian = g.is_abelian();
        for code in enumerate_any(&g) {
            for i in code.idempotent().support_indices() {
                assert!(
                    !involutions.contains(i),
                    "{}: support of {:?} contains an involution",
                    g.kind(),
                    code.idempotent()
                );
                if abelian {
                    assert!(
                        g.element_order(i) & 1 == 1,
                        "{}: abelian support contains an even-order element",
                        g.kind()
                    );
                }
            }
        }
    }
}

#[test]
fn lcd_tests_agree_on_enumerated_codes() {
    for g in roster() {
        for code in enumerate_any(&g) {
            assert!(code.is_lcd_gram(), "{}: {:?}", g.kind(), code.idempotent());
            assert!(
                code.is_lcd_intersection(),
                "{}: {:?}",
                g.kind(),
                code.idempotent()
            );
        }
    }
}

/// Left multiplication by e fixes exactly the right ideal e·F2[G], so every
/// generator row pulled back through the coordinate map must be fixed by it.
#[test]
fn generator_rows_lie_in_the_ideal() {
    for g in roster() {
        for code in enumerate_any(&g) {
            let e = code.idempotent();
            for r in 0..code.dimension() {
                let row = lcdgc_core::AlgebraElement::from_support(&g, code.generator().row(r));
                assert_eq!(e.mul(&row), row, "{}: row {r} escapes the ideal", g.kind());
            }
        }
    }
}

#[test]
fn duality_complements_dimensions() {
    for g in roster() {
        let n = g.order();
        for code in enumerate_any(&g) {
            let dual_e = lcdgc_core::dual_idempotent(code.idempotent()).unwrap();
            let dual = GroupCode::build(&g, &dual_e);
            assert_eq!(code.dimension() + dual.dimension(), n, "{}", g.kind());
            if code.dimension() > 0 && dual.dimension() > 0 {
                assert!(
                    code.generator()
                        .multiply(&dual.generator().transpose())
                        .is_zero(),
                    "{}: dual not orthogonal",
                    g.kind()
                );
            }
        }
    }
}

#[test]
fn subgroup_structure_predictions_hold() {
    for g in roster() {
        for code in enumerate_any(&g) {
            let s = code.structural_parameters();
            match s.case {
                StructureCase::Subgroup => {
                    assert_eq!(s.k_matches, Some(true), "{}: k", g.kind());
                    assert_eq!(s.d_matches, Some(true), "{}: d", g.kind());
                }
                StructureCase::AdjoinedIdentity => {
                    assert_eq!(s.k_matches, Some(true), "{}: k", g.kind());
                    if code.dimension() > 0 {
                        assert_eq!(s.d_matches, Some(true), "{}: d", g.kind());
                    }
                }
                StructureCase::Neither => {}
            }
        }
    }
}

#[test]
fn lcd_subgroup_supports_have_odd_order() {
    for g in roster() {
        for code in enumerate_any(&g) {
            let e = code.idempotent();
            if !e.is_zero() && e.component_set().is_subgroup() {
                assert!(
                    e.weight() & 1 == 1,
                    "{}: subgroup support with even order",
                    g.kind()
                );
            }
        }
    }
}

#[test]
fn even_order_groups_yield_no_mds_under_subgroup_hypotheses() {
    for g in roster() {
        if g.order() & 1 == 1 {
            continue;
        }
        for code in enumerate_any(&g) {
            // proper codes only: [n,n,1] is degenerate-MDS and the theorem's
            // dual-distance argument does not apply to it
            if code.dimension() == 0 || code.dimension() == g.order() {
                continue;
            }
            let e = code.idempotent();
            let supp = e.component_set();
            let id = g.identity();
            let adjoined = !supp.contains(id)
                && Subset::from_indices(&g, supp.to_indices().into_iter().chain([id]))
                    .is_subgroup();
            if supp.is_subgroup() || adjoined {
                let m = code.mds_report().unwrap();
                assert!(
                    !m.is_mds,
                    "{}: {:?} is MDS on an even-order group",
                    g.kind(),
                    e
                );
                assert!(m.consistent);
                // the weight bound that drives the contrapositive: an MDS pair
                // would force |M| >= n/2 + 1
                assert!(e.weight() < g.order() / 2 + 1);
            }
        }
    }
}

#[test]
fn maximal_iff_mds_in_adjoined_scenario() {
    for g in roster() {
        for code in enumerate_any(&g) {
            if code.dimension() == 0 {
                continue;
            }
            let s = code.structural_parameters();
            if s.case == StructureCase::AdjoinedIdentity {
                let m = code.mds_report().unwrap();
                assert_eq!(m.is_mds, m.is_maximal_ideal, "{}: equivalence", g.kind());
            }
        }
    }
}
