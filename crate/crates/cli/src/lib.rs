//! Batch front end: read a problem file, run an analysis, emit a JSON report.
//!
//! Exit codes: `0` success, `1` input error, `2` the space is not
//! `M`-invariant (`analyze`), `3` the fiber criteria and the dense oracle
//! disagree (`verify`).

pub mod problem;

use anyhow::Result;
use extrainv::oracle::{brute_decomposition_check, brute_invariance_set};
use extrainv::{
    construct_exactly_invariant, dft, invariance_set, is_invariant_rank, is_invariant_subspace, refine_context,
    support_report, FiberContext,
};
use serde_json::{json, Value};

pub use problem::{ComplexValue, GeneratorSpec, GroupSpec, Problem, ProblemFile, SubgroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_INVARIANT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

fn header(command: &str, p: &Problem) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("group".into(), json!(p.group));
    m.insert("H".into(), json!(p.h));
    if let Some(ms) = &p.m {
        m.insert("M".into(), json!(ms));
    }
    m
}

/// Both fiber criteria and the support bound for the given `M`.
pub fn cmd_analyze(problem: &ProblemFile, tol: f64) -> Result<Outcome> {
    let p = problem.validate()?;
    let m = p.require_m()?;
    let family = p.require_generators()?;
    let base = FiberContext::new(&p.group, &p.h)?;
    let ictx = refine_context(&base, m)?;
    let rank = is_invariant_rank(&ictx, family, tol)?;
    let subspace = is_invariant_subspace(&ictx, family, tol)?;
    let support = support_report(&ictx, family, tol)?;
    let agree = rank.verdict == subspace.verdict;
    let verdict = agree && rank.verdict;

    let mut report = header("analyze", &p);
    report.insert("verdict".into(), json!(verdict));
    report.insert("criteria_agree".into(), json!(agree));
    report.insert("rank_criterion".into(), serde_json::to_value(&rank)?);
    report.insert("subspace_criterion".into(), serde_json::to_value(&subspace)?);
    report.insert("support_report".into(), serde_json::to_value(&support)?);
    Ok(Outcome {
        report: Value::Object(report),
        exit_code: if verdict { EXIT_OK } else { EXIT_NOT_INVARIANT },
    })
}

/// The largest subgroup leaving the space invariant.
pub fn cmd_invariance_set(problem: &ProblemFile, tol: f64) -> Result<Outcome> {
    let p = problem.validate()?;
    let family = p.require_generators()?;
    let base = FiberContext::new(&p.group, &p.h)?;
    let set = invariance_set(&base, family, tol)?;

    let mut report = header("invariance-set", &p);
    report.insert("index".into(), json!(p.group.order() / set.order()));
    report.insert("is_subgroup".into(), json!(true));
    report.insert("contains_H".into(), json!(p.h.is_subgroup_of(&set)));
    report.insert("invariance_set".into(), json!(set));
    Ok(Outcome {
        report: Value::Object(report),
        exit_code: EXIT_OK,
    })
}

/// Emits a problem file whose single generator spans an exactly `M`-invariant space.
pub fn cmd_construct(problem: &ProblemFile) -> Result<Outcome> {
    let p = problem.validate()?;
    let m = p.require_m()?;
    let phi = construct_exactly_invariant(&p.group, &p.h, m)?;
    // the spectrum is an indicator; write it back as exact 0/1 values
    let spectrum = dft(&phi)
        .values()
        .iter()
        .map(|v| ComplexValue::Pair([v.re.round() + 0.0, v.im.round() + 0.0]))
        .collect();
    let out = ProblemFile {
        group: GroupSpec::Moduli {
            moduli: p.group.moduli().iter().map(|&n| n as i64).collect(),
        },
        h: problem::subgroup_spec(&p.h),
        m: Some(problem::subgroup_spec(m)),
        generators: vec![GeneratorSpec {
            spectrum: Some(spectrum),
            signal: None,
        }],
    };
    Ok(Outcome {
        report: serde_json::to_value(out)?,
        exit_code: EXIT_OK,
    })
}

/// Runs the fiber criteria and the dense oracle side by side.
pub fn cmd_verify(problem: &ProblemFile, tol: f64) -> Result<Outcome> {
    let p = problem.validate()?;
    let family = p.require_generators()?;
    let base = FiberContext::new(&p.group, &p.h)?;

    let fiber_set = invariance_set(&base, family, tol)?;
    let brute_set = brute_invariance_set(&p.group, &p.h, family, tol)?;
    let mut agreement = fiber_set == brute_set;

    let mut report = header("verify", &p);
    report.insert(
        "invariance_set".into(),
        json!({ "fiber": fiber_set, "oracle": brute_set, "agree": fiber_set == brute_set }),
    );
    if let Some(m) = &p.m {
        let ictx = refine_context(&base, m)?;
        let rank = is_invariant_rank(&ictx, family, tol)?.verdict;
        let subspace = is_invariant_subspace(&ictx, family, tol)?.verdict;
        let oracle = brute_decomposition_check(&p.group, &p.h, m, family, tol)?;
        let agree = rank == subspace && subspace == oracle;
        agreement &= agree;
        report.insert(
            "verdicts".into(),
            json!({ "rank": rank, "subspace": subspace, "oracle": oracle, "agree": agree }),
        );
    }
    report.insert("agreement".into(), json!(agreement));
    Ok(Outcome {
        report: Value::Object(report),
        exit_code: if agreement { EXIT_OK } else { EXIT_DISAGREE },
    })
}
