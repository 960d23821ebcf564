//! Acceptance suite: one PASS/FAIL line per criterion, then a single assert.
//! Run with `cargo test -p toruscalc-cli --test acceptance -- --nocapture`.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use toruscalc::fpgroup::coset_enumerate;
use toruscalc::linalg::transvection::product;
use toruscalc::mapping_torus::{circle_surgery_group, cs_condition, realize_by_surgeries, replay};
use toruscalc::surgery::{build_X, build_sphere};
use toruscalc::three_manifold::{build_Y, cancel_pair, handle_slide, link_h1};
use toruscalc::{AbelianInvariants, IntMatrix, MappingTorus, Presentation, Transvection, DEFAULT_BUDGET};

const SCAN_LIMIT: Duration = Duration::from_secs(300);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(5);
const ROUND_TRIPS: usize = 200;
const MOVE_SEQUENCES: usize = 1000;
const SEED: u64 = 20_240_601;

fn toruscalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toruscalc"))
        .env_remove("TORUSCALC_BUDGET")
        .args(args)
        .output()
        .expect("binary runs")
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sphere_family() -> Outcome {
    let start = Instant::now();
    let out = toruscalc(&["scan", "--range", "3", "--parallel"]);
    let elapsed = start.elapsed();
    let reports: Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("unreadable scan output: {e}")),
    };
    let reports = reports.as_array().cloned().unwrap_or_default();
    let certified = reports
        .iter()
        .filter(|r| {
            r["verdict"] == "certified"
                && r["chi"] == 2
                && r["h1"]["free_rank"] == 0
                && r["h1"]["invariant_factors"].as_array().is_some_and(Vec::is_empty)
                && r["enumeration"]["index"] == 1
                && r["enumeration"]["budget"] == DEFAULT_BUDGET
        })
        .count();
    outcome(
        reports.len() == 2401 && certified == 2401 && out.status.code() == Some(0) && elapsed < SCAN_LIMIT,
        format!(
            "{certified}/{} certified, exit {:?}, {:.1}s (limit 300s)",
            reports.len(),
            out.status.code(),
            elapsed.as_secs_f64()
        ),
    )
}

fn betti_number() -> Outcome {
    let mut bad = Vec::new();
    for m in -6..=6 {
        for n in -6..=6 {
            let h1 = build_X(m, n).presentation.abelianization();
            if h1.free_rank() != 2 || !h1.torsion().is_empty() {
                bad.push(format!("X({m},{n}) = {h1}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { "H1(X(m,n)) = Z^2 for all 169 pairs in [-6,6]^2".into() } else { bad.join("; ") },
    )
}

fn cs_obstruction() -> Outcome {
    let a: IntMatrix = product(&[Transvection::r12(), Transvection::r21()], 3);
    let det = cs_condition(&a).map(|d| d.to_string()).unwrap_or_default();
    let out = toruscalc(&["cs-search", "--bound", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    let matrices = v["matrices"].as_array().cloned().unwrap_or_default();
    let mut violations = 0;
    for m in &matrices {
        let rows: Vec<Vec<i64>> = serde_json::from_value(m.clone()).unwrap_or_default();
        let phi = IntMatrix::from_i64_rows(&rows);
        let cs = cs_condition(&phi).map(|d| d.to_string()).unwrap_or_default();
        let trivial = MappingTorus::new(phi, None).map(|mt| circle_surgery_group(&mt).is_trivial()).unwrap_or(false);
        if !(cs == "1" || cs == "-1") || !trivial {
            violations += 1;
        }
    }
    outcome(
        det == "0" && !matrices.is_empty() && violations == 0,
        format!("det(R12 R21 - I) = {det}; {} search results, {violations} violations", matrices.len()),
    )
}

fn surgery_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let mut failures = 0;
    for _ in 0..ROUND_TRIPS {
        let len = rng.gen_range(0..=10);
        let factors: Vec<Transvection> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=3);
                let j = (i + rng.gen_range(0..2)) % 3 + 1;
                Transvection::new(i, j, if rng.gen() { 1 } else { -1 }).expect("distinct indices")
            })
            .collect();
        let phi: IntMatrix = product(&factors, 3);
        let ok = realize_by_surgeries(&phi).map(|f| replay(&f).monodromy() == &phi).unwrap_or(false);
        failures += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && elapsed < ROUND_TRIP_LIMIT,
        format!(
            "{}/{ROUND_TRIPS} reproduced exactly in {:.3}s (limit 5s)",
            ROUND_TRIPS - failures,
            elapsed.as_secs_f64()
        ),
    )
}

fn y_homology() -> Outcome {
    let z = AbelianInvariants::free(1);
    let mut grid_bad = 0;
    for m in -5..=5 {
        for n in -5..=5 {
            grid_bad += usize::from(link_h1(&build_Y(m, n)) != z);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut seq_bad, mut slides, mut cancels) = (0, 0, 0);
    for _ in 0..MOVE_SEQUENCES {
        let mut l = build_Y(rng.gen_range(-5..=5), rng.gen_range(-5..=5));
        for _ in 0..rng.gen_range(1..=12) {
            let n = l.len();
            if n < 2 {
                break;
            }
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            if rng.gen_bool(0.3) {
                if let Ok(smaller) = cancel_pair(&l, i, j) {
                    l = smaller;
                    cancels += 1;
                    continue;
                }
            }
            l = handle_slide(&l, i, j, if rng.gen() { 1 } else { -1 }).expect("valid slide");
            slides += 1;
        }
        seq_bad += usize::from(link_h1(&l) != z || !l.lk().is_symmetric());
    }
    outcome(
        grid_bad == 0 && seq_bad == 0,
        format!(
            "Z for {}/121 pairs; {}/{MOVE_SEQUENCES} move sequences preserve H1 ({slides} slides, {cancels} cancellations)",
            121 - grid_bad,
            MOVE_SEQUENCES - seq_bad
        ),
    )
}

fn enumeration_engine() -> Outcome {
    let cases: [(Presentation, usize); 3] = [
        ("gens: a / rels: a^5".parse().expect("valid"), 5),
        ("gens: a,b / rels: a^2; b^3; (a b)^3".parse().expect("valid"), 12),
        (build_sphere(1, 1, 1, 1).presentation, 1),
    ];
    let mut lines = Vec::new();
    let mut pass = true;
    for (p, expected) in &cases {
        let first = coset_enumerate(p, DEFAULT_BUDGET).expect("positive budget");
        let second = coset_enumerate(p, DEFAULT_BUDGET).expect("positive budget");
        pass &= first.index() == Some(*expected) && first == second;
        lines.push(format!("{:?} (cosets {})", first.index(), first.cosets_defined));
    }
    outcome(pass, format!("indices {} expected [5, 12, 1]; repeat runs identical", lines.join(", ")))
}

fn cli_determinism() -> Outcome {
    let serial = toruscalc(&["scan", "--range", "2"]);
    let parallel = toruscalc(&["scan", "--range", "2", "--parallel"]);
    let identical = serial.stdout == parallel.stdout && !serial.stdout.is_empty();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/exit_codes.txt");
    let text = std::fs::read_to_string(golden).unwrap_or_default();
    let (mut total, mut matched) = (0, 0);
    for line in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let mut words = line.split_whitespace();
        let expected: i32 = words.next().and_then(|w| w.parse().ok()).unwrap_or(-1);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_toruscalc"));
        cmd.env_remove("TORUSCALC_BUDGET");
        for w in words {
            match w.split_once('=') {
                Some((k, v)) if k.chars().all(|c| c.is_ascii_uppercase() || c == '_') => {
                    cmd.env(k, v);
                }
                _ => {
                    cmd.arg(w);
                }
            }
        }
        total += 1;
        matched += usize::from(cmd.output().map(|o| o.status.code() == Some(expected)).unwrap_or(false));
    }
    outcome(
        identical && total == 10 && matched == 10,
        format!("scan --range 2 serial/parallel identical: {identical}; golden exit codes {matched}/{total}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("sphere family certification", sphere_family),
        ("betti number of X(m,n)", betti_number),
        ("cappell-shaneson obstruction", cs_obstruction),
        ("surgery round-trip", surgery_round_trip),
        ("Y(m,n) homology", y_homology),
        ("enumeration engine", enumeration_engine),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let o = check();
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
