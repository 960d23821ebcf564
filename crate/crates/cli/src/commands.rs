use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use toruscalc::fpgroup::quotient_census;
use toruscalc::linalg::transvection::product;
use toruscalc::mapping_torus::{
    circle_surgery_group, cs_condition, cs_search, realize_by_surgeries, replay, torus_presentation,
};
use toruscalc::surgery::{verify_sphere, Verdict, VerificationReport};
use toruscalc::three_manifold::{build_Y, link_h1, replay_moves, y_simplification, FramedLink};
use toruscalc::{
    factor_transvections, AbelianInvariants, EnumerationOutcome, IntMatrix, MappingTorus, Presentation, DEFAULT_BUDGET,
};

use crate::{Command, BUDGET_ENV};

const SPHERE_CLAIM: &str = "sphere-family-homotopy-s4";

#[derive(Serialize)]
struct SphereReport {
    command: String,
    claim: &'static str,
    params: [i64; 4],
    chi: i64,
    h1: AbelianInvariants,
    enumeration: EnumerationOutcome,
    presentation: Presentation,
    verdict: Verdict,
    elapsed_ms: Option<u128>,
}

impl SphereReport {
    fn new(r: VerificationReport, budget: usize, elapsed_ms: Option<u128>) -> Self {
        let [m, n, mp, np] = r.params;
        SphereReport {
            command: format!("verify-sphere --m {m} --n {n} --mp {mp} --np {np} --budget {budget}"),
            claim: SPHERE_CLAIM,
            params: r.params,
            chi: r.chi,
            h1: r.h1,
            enumeration: r.enumeration,
            presentation: r.presentation,
            verdict: r.verdict,
            elapsed_ms,
        }
    }
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Certified => 0,
        Verdict::Inconclusive => 2,
        Verdict::Failed => 1,
    }
}

fn resolve_budget(flag: Option<usize>) -> Result<usize> {
    let budget = match flag {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(text) => {
                text.trim().parse().with_context(|| format!("{BUDGET_ENV}={text:?} is not a positive integer"))?
            }
            Err(std::env::VarError::NotPresent) => DEFAULT_BUDGET,
            Err(e) => bail!("{BUDGET_ENV}: {e}"),
        },
    };
    if budget == 0 {
        bail!("budget must be a positive integer");
    }
    Ok(budget)
}

fn timed<T>(timing: bool, f: impl FnOnce() -> T) -> (T, Option<u128>) {
    let start = Instant::now();
    let out = f();
    (out, timing.then(|| start.elapsed().as_millis()))
}

fn sphere(params: [i64; 4], budget: usize, timing: bool) -> Result<SphereReport> {
    let [m, n, mp, np] = params;
    let (r, ms) = timed(timing, || verify_sphere(m, n, mp, np, budget));
    Ok(SphereReport::new(r?, budget, ms))
}

fn parse_matrix(text: &str) -> Result<IntMatrix> {
    text.parse::<IntMatrix>().with_context(|| format!("cannot read matrix {text:?}"))
}

#[derive(Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
}

fn parse_presentation(text: &str) -> Result<Presentation> {
    if text.trim_start().starts_with('{') {
        let raw: PresentationJson = serde_json::from_str(text).context("invalid presentation JSON")?;
        Ok(Presentation::from_text(&raw.generators, &raw.relators)?)
    } else {
        Ok(text.parse()?)
    }
}

fn render<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn run(command: Command, timing: bool) -> Result<(String, u8)> {
    match command {
        Command::VerifySphere { m, n, mp, np, budget } => {
            let report = sphere([m, n, mp, np], resolve_budget(budget)?, timing)?;
            let code = exit_code(report.verdict);
            Ok((render(&report)?, code))
        }
        Command::Scan { range, parallel, budget } => scan(range, parallel, resolve_budget(budget)?, timing),
        Command::CsSearch { bound } => {
            let found = cs_search(bound)?;
            Ok((
                render(&json!({ "command": "cs-search", "bound": bound, "count": found.len(), "matrices": found }))?,
                0,
            ))
        }
        Command::Factor { matrix } => {
            let m = parse_matrix(&matrix)?;
            let factors = factor_transvections(&m)?;
            let names: Vec<String> = factors.iter().map(ToString::to_string).collect();
            let check: IntMatrix = product(&factors, m.rows());
            Ok((
                render(&json!({
                    "command": "factor",
                    "matrix": m,
                    "factors": names,
                    "transvections": factors,
                    "product": check,
                    "product_matches": check == m,
                }))?,
                0,
            ))
        }
        Command::MtH1 { matrix } => {
            let mt = MappingTorus::new(parse_matrix(&matrix)?, None)?;
            let cs = cs_condition(mt.monodromy())?;
            let is_cs = cs == 1.into() || cs == (-1).into();
            let factors = realize_by_surgeries(mt.monodromy())?;
            Ok((
                render(&json!({
                    "command": "mt-h1",
                    "monodromy": mt.monodromy(),
                    "h1": torus_presentation(&mt).abelianization(),
                    "cs_condition": cs.to_string(),
                    "cappell_shaneson": is_cs,
                    "circle_surgery_group": circle_surgery_group(&mt),
                    "surgeries": factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "replay_matches": replay(&factors).monodromy() == mt.monodromy(),
                }))?,
                0,
            ))
        }
        Command::Y3 { m, n } => {
            let y = build_Y(m, n);
            let moves = y_simplification(m, n);
            let reduced = replay_moves(&y, &moves)?;
            Ok((
                render(&json!({
                    "command": "y3",
                    "m": m,
                    "n": n,
                    "link": y,
                    "h1": link_h1(&y),
                    "moves": moves,
                    "reduced": reduced,
                    "reduced_h1": link_h1(&reduced),
                    "note": "linking-matrix level only; the knot type of the reduced component is not determined",
                }))?,
                0,
            ))
        }
        Command::LinkH1 { matrix } => {
            let link = FramedLink::unlabelled(parse_matrix(&matrix)?)?;
            Ok((render(&json!({ "command": "link-h1", "link": link, "h1": link_h1(&link) }))?, 0))
        }
        Command::Census { presentation, file, bound } => {
            let text = match (presentation, file) {
                (Some(t), _) => t,
                (None, Some(path)) => {
                    std::fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?
                }
                (None, None) => bail!("one of --presentation or --file is required"),
            };
            let p = parse_presentation(&text)?;
            let entries = quotient_census(&p, bound)?;
            Ok((render(&json!({ "command": "census", "presentation": p, "bound": bound, "entries": entries }))?, 0))
        }
    }
}

fn scan(range: i64, parallel: bool, budget: usize, timing: bool) -> Result<(String, u8)> {
    if range < 0 {
        bail!("--range must be non-negative, got {range}");
    }
    let mut tuples: Vec<[i64; 4]> = Vec::new();
    for m in -range..=range {
        for n in -range..=range {
            for mp in -range..=range {
                for np in -range..=range {
                    tuples.push([m, n, mp, np]);
                }
            }
        }
    }
    let reports: Vec<SphereReport> = if parallel {
        tuples.par_iter().map(|&t| sphere(t, budget, timing)).collect::<Result<_>>()?
    } else {
        tuples.iter().map(|&t| sphere(t, budget, timing)).collect::<Result<_>>()?
    };
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (certified, inconclusive, failed) =
        (count(Verdict::Certified), count(Verdict::Inconclusive), count(Verdict::Failed));
    eprintln!(
        "scan --range {range}: {} tuples; certified {certified}, inconclusive {inconclusive}, failed {failed}",
        reports.len()
    );
    let code = if failed > 0 {
        1
    } else if inconclusive > 0 {
        2
    } else {
        0
    };
    Ok((render(&reports)?, code))
}
