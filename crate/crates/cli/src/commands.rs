//! The five subcommands, each producing a [`Report`].

use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;

use serde_json::{json, Value};

use lcdgc_core::codes::{enumerate_lcd_codes, CodesError, EnumerationMethod, GroupCode};
use lcdgc_core::cyclotomic::{
    count_lcd_cyclic, divides_pow2_plus_one, general_formula_audit, CosetPartition, CyclotomicError,
};
use lcdgc_core::{AlgebraElement, FiniteGroup, GroupError};

use crate::report::{count_value, GroupInfo, Report};

/// Process exit codes: 2 invalid input, 3 capacity exceeded, 4 audit oracle
/// failure (0 success).
pub enum CliError {
    Invalid(String),
    Capacity(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Capacity(_) | CliError::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Capacity(m) | CliError::Io(m) => m,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CyclotomicError> for CliError {
    fn from(e: CyclotomicError) -> Self {
        match e {
            CyclotomicError::CountOverflow { .. } | CyclotomicError::ModulusTooLarge(_) => {
                CliError::Capacity(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CodesError> for CliError {
    fn from(e: CodesError) -> Self {
        match e {
            CodesError::CapacityExceeded(_) | CodesError::DistanceCapacity { .. } => {
                CliError::Capacity(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn cyclic_info(n: u64) -> Option<GroupInfo> {
    Some(GroupInfo {
        kind: format!("cyclic:{n}"),
        order: n as usize,
    })
}

pub fn cmd_cosets(n: u64) -> Result<Report, CliError> {
    let p = CosetPartition::new(n)?;
    let results = json!({
        "n": n,
        "t": p.t(),
        "t1": p.t1(),
        "cosets": p.cosets(),
        "inverse_closed": p.inverse_closed(),
        "blocks": p.blocks(),
    });
    Ok(Report {
        command: "cosets".into(),
        group: cyclic_info(n),
        results,
        warnings: Vec::new(),
    })
}

pub fn cmd_count(n: u64) -> Result<Report, CliError> {
    let r = count_lcd_cyclic(n)?;
    let mut warnings = Vec::new();
    let audit = if divides_pow2_plus_one(n) {
        Value::Null
    } else {
        let a = general_formula_audit(n)?;
        if !a.agrees {
            warnings.push(format!(
                "the literal U-set closed form gives {} at n = {}, but the direct block count is {}",
                a.u_set_count.map_or("no integral exponent".to_string(), |c| c.to_string()),
                n,
                a.direct_count
            ));
        }
        json!({
            "u_set": a.u_set,
            "u_set_t1": a.u_set_t1,
            "direct_t1": a.direct_t1,
            "u_set_count": a.u_set_count.map(count_value),
            "direct_count": count_value(a.direct_count),
            "agrees": a.agrees,
        })
    };
    let results = json!({
        "n": n,
        "count": count_value(r.count),
        "theorem_path": r.theorem_path.to_string(),
        "t": r.t,
        "t1": r.t1,
        "blocks": r.blocks,
        "closed_form": r.closed_form.map(count_value),
        "audit": audit,
    });
    Ok(Report {
        command: "count".into(),
        group: cyclic_info(n),
        results,
        warnings,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    /// Pick coset-union for odd cyclic groups, exhaustive for order <= 15,
    /// adjoint-filtered otherwise.
    Auto,
    CosetUnion,
    Exhaustive,
    AdjointFiltered,
}

fn resolve_method(group: &FiniteGroup, arg: MethodArg) -> EnumerationMethod {
    match arg {
        MethodArg::CosetUnion => EnumerationMethod::CosetUnion,
        MethodArg::Exhaustive => EnumerationMethod::Exhaustive,
        MethodArg::AdjointFiltered => EnumerationMethod::AdjointFiltered,
        MethodArg::Auto => {
            if group.is_standard_cyclic() && group.order() & 1 == 1 {
                EnumerationMethod::CosetUnion
            } else if group.order() <= lcdgc_core::codes::MAX_EXHAUSTIVE_ORDER {
                EnumerationMethod::Exhaustive
            } else {
                EnumerationMethod::AdjointFiltered
            }
        }
    }
}

struct CodeParams {
    k: usize,
    d: Option<usize>,
    lcd_gram: bool,
    lcd_intersection: bool,
    mds: Option<bool>,
}

fn code_params(code: &GroupCode) -> CodeParams {
    CodeParams {
        k: code.dimension(),
        d: code.min_distance().ok(),
        lcd_gram: code.is_lcd_gram(),
        lcd_intersection: code.is_lcd_intersection(),
        mds: code.mds_report().ok().map(|m| m.is_mds),
    }
}

pub fn cmd_enumerate(
    spec: &str,
    method: MethodArg,
    with_params: bool,
    catalog: Option<&PathBuf>,
) -> Result<Report, CliError> {
    let group = FiniteGroup::from_spec(spec)?;
    let method = resolve_method(&group, method);
    let codes = enumerate_lcd_codes(&group, method)?;
    let total = codes.len();
    let nonzero: Vec<&GroupCode> = codes.iter().filter(|c| !c.idempotent().is_zero()).collect();

    let need_params = with_params || catalog.is_some();
    let mut entries = Vec::with_capacity(nonzero.len());
    let mut catalog_lines = Vec::new();
    for code in &nonzero {
        let support = code.idempotent().support_indices();
        let labels: Vec<&str> = support.iter().map(|&i| group.label(i)).collect();
        let mut entry = json!({ "support": support, "labels": labels });
        if need_params {
            let p = code_params(code);
            if with_params {
                let obj = entry.as_object_mut().expect("entry is an object");
                obj.insert("n".into(), json!(group.order()));
                obj.insert("k".into(), json!(p.k));
                obj.insert("d".into(), json!(p.d));
                obj.insert("lcd_gram".into(), json!(p.lcd_gram));
                obj.insert("lcd_intersection".into(), json!(p.lcd_intersection));
                obj.insert("mds".into(), json!(p.mds));
            }
            if catalog.is_some() {
                catalog_lines.push(json!({
                    "group": group.kind(),
                    "support": code.idempotent().support_indices(),
                    "n": group.order(),
                    "k": p.k,
                    "d": p.d,
                    "lcd": p.lcd_gram,
                    "mds": p.mds,
                }));
            }
        }
        entries.push(entry);
    }

    if let Some(path) = catalog {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| CliError::Io(format!("cannot open catalog {}: {e}", path.display())))?;
        for line in &catalog_lines {
            writeln!(file, "{line}")
                .map_err(|e| CliError::Io(format!("cannot write catalog: {e}")))?;
        }
    }

    let results = json!({
        "method": method.to_string(),
        "count_nonzero": nonzero.len(),
        "count_including_zero": total,
        "codes": entries,
    });
    Ok(Report {
        command: "enumerate".into(),
        group: Some(GroupInfo {
            kind: group.kind().to_string(),
            order: group.order(),
        }),
        results,
        warnings: Vec::new(),
    })
}

pub fn cmd_analyze(spec: &str, support: &[usize]) -> Result<Report, CliError> {
    let group = FiniteGroup::from_spec(spec)?;
    let n = group.order();
    if let Some(&bad) = support.iter().find(|&&i| i >= n) {
        return Err(CliError::Invalid(format!(
            "support index {bad} out of range for {} (order {n})",
            group.kind()
        )));
    }
    let mut warnings = Vec::new();
    let e = AlgebraElement::from_indices(&group, support.iter().copied());
    let code = GroupCode::build(&group, &e);
    let is_idempotent = e.is_idempotent();
    let is_self_adjoint = e.is_self_adjoint();
    let lcd_applicable = is_idempotent && is_self_adjoint;
    if !lcd_applicable {
        warnings.push(
            "generator is not a self-adjoint idempotent; the ideal is analyzed as a plain linear code"
                .to_string(),
        );
    }

    let d = match code.min_distance() {
        Ok(d) => Some(d),
        Err(err) => {
            warnings.push(err.to_string());
            None
        }
    };
    let s = code.structural_parameters();
    let mds = code.mds_report().ok();

    let results = json!({
        "support": e.support_indices(),
        "labels": e.support_indices().iter().map(|&i| group.label(i)).collect::<Vec<_>>(),
        "is_idempotent": is_idempotent,
        "is_self_adjoint": is_self_adjoint,
        "lcd_applicable": lcd_applicable,
        "lcd_gram": code.is_lcd_gram(),
        "lcd_intersection": code.is_lcd_intersection(),
        "n": n,
        "k": code.dimension(),
        "d": d,
        "weight": e.weight(),
        "structure": {
            "case": s.case.to_string(),
            "predicted_k": s.predicted_k,
            "predicted_d": s.predicted_d,
            "computed_k": s.computed_k,
            "computed_d": s.computed_d,
            "k_matches": s.k_matches,
            "d_matches": s.d_matches,
        },
        "mds": mds.map(|m| json!({
            "is_mds": m.is_mds,
            "is_maximal_ideal": m.is_maximal_ideal,
            "consistent": m.consistent,
        })),
    });
    Ok(Report {
        command: "analyze".into(),
        group: Some(GroupInfo {
            kind: group.kind().to_string(),
            order: n,
        }),
        results,
        warnings,
    })
}

/// Returns the report plus whether every exhaustive oracle agreed; a
/// disagreement is the caller's cue to exit 4.
pub fn cmd_audit(max_n: u64) -> Result<(Report, bool), CliError> {
    if max_n == 0 || max_n > 99 {
        return Err(CliError::Invalid(format!(
            "--max-n must be between 1 and 99, got {max_n}"
        )));
    }
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut oracles_ok = true;
    for n in (1..=max_n).step_by(2) {
        let r = count_lcd_cyclic(n)?;
        let closed_form_agrees = r.closed_form == Some(r.count);
        if !closed_form_agrees {
            warnings.push(format!(
                "n = {n}: closed form {:?} disagrees with block count {}",
                r.closed_form, r.count
            ));
        }

        let (oracle_count, oracle_agrees) = if n as usize <= lcdgc_core::codes::MAX_EXHAUSTIVE_ORDER
        {
            let group = FiniteGroup::cyclic(n as usize).expect("audit bound keeps order small");
            let found = enumerate_lcd_codes(&group, EnumerationMethod::Exhaustive)?
                .iter()
                .filter(|c| !c.idempotent().is_zero())
                .count() as u128;
            let agrees = found == r.count;
            if !agrees {
                oracles_ok = false;
                warnings.push(format!(
                    "n = {n}: exhaustive oracle found {found} nonzero idempotents, block count says {}",
                    r.count
                ));
            }
            (Some(found), Some(agrees))
        } else {
            (None, None)
        };

        let (u_set_count, u_set_agrees) = if divides_pow2_plus_one(n) {
            (None, None)
        } else {
            let a = general_formula_audit(n)?;
            if !a.agrees {
                warnings.push(format!(
                    "n = {n}: the literal U-set closed form gives {}, direct block count gives {}",
                    a.u_set_count
                        .map_or("no integral exponent".to_string(), |c| c.to_string()),
                    a.direct_count
                ));
            }
            (a.u_set_count, Some(a.agrees))
        };

        rows.push(json!({
            "n": n,
            "t": r.t,
            "t1": r.t1,
            "blocks": r.blocks,
            "count": count_value(r.count),
            "theorem_path": r.theorem_path.to_string(),
            "closed_form": r.closed_form.map(count_value),
            "closed_form_agrees": closed_form_agrees,
            "oracle_count": oracle_count.map(count_value),
            "oracle_agrees": oracle_agrees,
            "u_set_count": u_set_count.map(count_value),
            "u_set_agrees": u_set_agrees,
        }));
    }
    let results = json!({
        "max_n": max_n,
        "rows": rows,
        "all_oracles_agree": oracles_ok,
    });
    let report = Report {
        command: "audit".into(),
        group: None,
        results,
        warnings,
    };
    Ok((report, oracles_ok))
}
