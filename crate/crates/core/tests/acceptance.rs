//! Acceptance gate. Prints one `[PASS]`/`[FAIL]` line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::Path;
use std::time::Instant;

use uinorm::calculus::{g1_certify, g1_certify_at};
use uinorm::harness::{
    calculus_check, replay, sharpness, verify, Instance, ReportFormat, RunConfig, SharpnessConfig, SharpnessResult,
};
use uinorm::inequalities::TheoremId;
use uinorm::linalg::ComplexMatrix;
use uinorm::samplers::{random_normal_in_disk, SamplerConfig};
use uinorm::Complex64;

const RATIO_CAP: f64 = 1.0 + 1e-9;
const WITNESS_TOL: f64 = 1e-12;
const CALCULUS_TOL: f64 = 1e-9;
const CALCULUS_NODES: usize = 256;
const G1_TOL: f64 = 1e-7;
const JORDAN_MIN_DEVIATION: f64 = 0.5;
const REPLAY_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

/// Runs `verify` for every (theorem, dim) and requires every record to pass.
fn verify_all(ids: &[TheoremId], dims: &[usize], trials: u64, seed: u64, dir: &Path) -> Outcome {
    let mut records = 0;
    let mut worst = 0.0f64;
    for &id in ids {
        for &dim in dims {
            let out = dir.join(format!("{id}-{dim}.jsonl"));
            let cfg = RunConfig::new(id, dim, trials, seed, &out);
            let s = verify(&cfg).map_err(|e| format!("{id} dim {dim}: {e}"))?;
            if !s.success() {
                return Err(format!(
                    "{id} dim {dim}: failed trials {:?}, anomalies {:?}",
                    s.failed_trials, s.anomalous_trials
                ));
            }
            let expected = trials as usize * id.supported_norms(dim).len();
            if s.records != expected {
                return Err(format!("{id} dim {dim}: {} records, expected {expected}", s.records));
            }
            records += s.records;
            worst = worst.max(s.max_ratio);
        }
    }
    Ok(format!("{records} records, all pass, max ratio {worst:.6}"))
}

fn criterion_1(dir: &Path) -> Outcome {
    verify_all(&[TheoremId::Thm1Plus, TheoremId::Thm1Minus], &[1, 2, 4, 8], 1000, 1, dir)
}

fn criterion_2(dir: &Path) -> Outcome {
    verify_all(TheoremId::ALL, &[1, 2, 4, 6], 500, 2, dir)
}

fn criterion_3(dir: &Path) -> Outcome {
    let lemmas: Vec<TheoremId> = TheoremId::ALL.iter().copied().filter(|t| t.is_lemma()).collect();
    if lemmas.len() != 7 {
        return Err(format!("expected 7 lemma ids, found {}", lemmas.len()));
    }
    verify_all(&lemmas, &[1, 2, 4, 8], 500, 3, dir)
}

fn criterion_4() -> Outcome {
    let s = calculus_check(8, 100, 4).map_err(|e| e.to_string())?;
    if s.nodes != CALCULUS_NODES {
        return Err(format!("ran with {} nodes", s.nodes));
    }
    if !(s.worst <= CALCULUS_TOL) {
        return Err(format!("worst discrepancy {:e} at N = {}", s.worst, s.nodes));
    }
    if !s.non_decreasing.is_empty() {
        return Err(format!("doubling N did not help in trials {:?}", s.non_decreasing));
    }
    Ok(format!(
        "worst {:.3e} at N = {}, worst {:.3e} at N = {}",
        s.worst, s.nodes, s.worst_coarse, s.coarse_nodes
    ))
}

/// Instances at `A = B = 0` with sampled `X`, `f`, `g`; every norm.
fn origin_ratios(id: TheoremId, dims: &[usize], per_dim: u64) -> Result<Vec<f64>, String> {
    let mut ratios = Vec::new();
    for &dim in dims {
        let cfg = SamplerConfig::new(5, dim).map_err(|e| e.to_string())?;
        for t in 0..per_dim {
            let inst = Instance::sample(id, &cfg, &mut cfg.stream(t))
                .map_err(|e| e.to_string())?
                .at_origin();
            let bound = inst.evaluate().map_err(|e| e.to_string())?;
            for k in id.supported_norms(dim) {
                ratios.push(bound.ratio(&k));
            }
        }
    }
    Ok(ratios)
}

fn criterion_5() -> Outcome {
    let dims = [1, 2, 3, 5, 8];
    let plus = origin_ratios(TheoremId::Thm1Plus, &dims, 20)?;
    let dev1 = plus.iter().map(|r| (r - FRAC_1_SQRT_2).abs()).fold(0.0, f64::max);
    let hs = origin_ratios(TheoremId::ThmHsPlusFirst, &dims, 20)?;
    let dev2 = hs.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    if dev1 > WITNESS_TOL || dev2 > WITNESS_TOL {
        return Err(format!("|ratio - 1/√2| = {dev1:e}, |ratio - 1| = {dev2:e}"));
    }
    Ok(format!(
        "{} thm1-plus ratios within {dev1:.1e} of 1/√2, {} thm-hs-plus-first ratios within {dev2:.1e} of 1",
        plus.len(),
        hs.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    for t in 0..1000u64 {
        let dim = 1 + (t % 8) as usize;
        let cfg = SamplerConfig::new(6, dim).map_err(|e| e.to_string())?;
        let a = random_normal_in_disk(&cfg, &mut cfg.stream(t));
        let cert = g1_certify(&a.matrix, 16).map_err(|e| e.to_string())?;
        worst = worst.max(cert.max_deviation);
    }
    if !(worst <= G1_TOL) {
        return Err(format!("normal matrices: max deviation {worst:e}"));
    }
    let jordan = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).map_err(|e| e.to_string())?;
    let j = g1_certify_at(&jordan, &[Complex64::new(0.5, 0.0)]).map_err(|e| e.to_string())?;
    if !(j.max_deviation > JORDAN_MIN_DEVIATION) {
        return Err(format!("Jordan block deviation {:e} at z = 0.5", j.max_deviation));
    }
    Ok(format!(
        "1000 normal matrices max deviation {worst:.3e}, Jordan block deviation {:.4} at z = 0.5",
        j.max_deviation
    ))
}

fn criterion_7(dir: &Path) -> Outcome {
    let cases = [
        (TheoremId::Thm1Plus, 4, ReportFormat::JsonLines, false),
        (TheoremId::PropT2nBound2, 3, ReportFormat::Csv, false),
        (TheoremId::LemmaResolvent, 2, ReportFormat::JsonLines, true),
        (TheoremId::ThmHsMinusSecond, 6, ReportFormat::Csv, true),
    ];
    for (id, dim, format, dump) in cases {
        let run = |tag: &str| -> Result<(Vec<u8>, Option<Vec<u8>>), String> {
            let mut cfg = RunConfig::new(id, dim, 200, 7, dir.join(format!("det-{id}-{tag}")));
            cfg.format = format;
            cfg.dump_instances = dump;
            let s = verify(&cfg).map_err(|e| e.to_string())?;
            let body = std::fs::read(&s.report).map_err(|e| e.to_string())?;
            let inst = s.instances.map(|p| std::fs::read(p).map_err(|e| e.to_string())).transpose()?;
            Ok((body, inst))
        };
        let (first, second) = (run("a")?, run("b")?);
        if first != second {
            return Err(format!("{id}: reports differ between identical runs"));
        }
    }
    Ok(format!("{} configurations byte-identical across two runs", cases.len()))
}

fn criterion_8() -> Outcome {
    let cfg = SharpnessConfig::new(TheoremId::Thm1Plus, 2, 20_000, 8);
    let r = sharpness(&cfg).map_err(|e| e.to_string())?;
    if !(r.best_ratio > FRAC_1_SQRT_2 - 1e-9 && r.best_ratio <= RATIO_CAP) || r.anomaly {
        return Err(format!("best ratio {} outside (1/√2, 1]", r.best_ratio));
    }
    let json = serde_json::to_string(&r).map_err(|e| e.to_string())?;
    let back: SharpnessResult = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let replayed = replay(&back.best_instance, &back.best_norm).map_err(|e| e.to_string())?;
    if (replayed - r.best_ratio).abs() > REPLAY_TOL {
        return Err(format!("replay gave {replayed}, search reported {}", r.best_ratio));
    }
    let again = sharpness(&cfg).map_err(|e| e.to_string())?;
    if again.best_ratio != r.best_ratio {
        return Err("second search with the same seed differs".into());
    }
    Ok(format!(
        "best ratio {:.9} under {} after {} evaluations, replay diff {:.1e}",
        r.best_ratio,
        r.best_norm,
        r.evaluations_used,
        (replayed - r.best_ratio).abs()
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 thm1 suite, dims 1/2/4/8, 1000 trials", Box::new(|| criterion_1(dir.path()))),
        ("2 full statement matrix, dims 1/2/4/6, 500 trials", Box::new(|| criterion_2(dir.path()))),
        ("3 lemma suite, dims 1/2/4/8, 500 trials", Box::new(|| criterion_3(dir.path()))),
        ("4 contour vs spectral calculus, dim 8, 100 trials", Box::new(criterion_4)),
        ("5 exact origin witnesses", Box::new(criterion_5)),
        ("6 G1 certification", Box::new(criterion_6)),
        ("7 report determinism", Box::new(|| criterion_7(dir.path()))),
        ("8 sharpness sanity, thm1-plus dim 2, budget 20000", Box::new(criterion_8)),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
