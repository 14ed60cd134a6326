//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! A criterion passes when every check meets its tolerance and the wall time
//! stays inside its budget.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lbcft::numerics::QuadSettings;
use lbcft::specialfn::double_gamma;
use lbcft::structure_constants::{BulkBoundaryArgs, Chi, ReflectionArgs};
use lbcft::verify::{
    check_contour_robustness, check_g_residues, check_h_residues, check_h_shift, check_hyp_connection,
    check_r_combined, check_r_reflection, check_r_shift, check_sine_integral_identities, check_special_values,
    check_specialfn_suite, check_three_term, sample_hyp, sample_residue_case, sample_three_point, specialfn_grid,
    IdentityReport,
};
use lbcft::LiouvilleParams;
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_reports(reports: &[IdentityReport], expected: usize) -> Outcome {
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    let worst = reports.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    let mut detail = format!("{} checks, worst rel err {:.2e}", reports.len(), worst);
    if let Some(f) = failed.first() {
        detail += &format!(
            ", {} failed (first: {} rel_err {:.2e}{})",
            failed.len(),
            f.identity_name,
            f.rel_err,
            f.error.as_deref().map(|e| format!(" {}", e)).unwrap_or_default()
        );
    }
    if reports.len() != expected {
        detail += &format!(", expected {} checks", expected);
    }
    Outcome {
        ok: failed.is_empty() && reports.len() == expected,
        detail,
    }
}

fn gp(g: f64) -> LiouvilleParams {
    LiouvilleParams::new(g).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Three-point samples spread over two values of γ.
fn three_point_samples(n: usize, seed: u64) -> Vec<(LiouvilleParams, lbcft::structure_constants::ThreePointArgs)> {
    let s = QuadSettings::default();
    let mut r = rng(seed);
    (0..n)
        .map(|i| {
            let p = gp(if i % 2 == 0 { 1.2 } else { 1.6 });
            let a = sample_three_point(&mut r, &p, &s);
            (p, a)
        })
        .collect()
}

fn c1_specialfn() -> Outcome {
    let gammas = [0.7, 1.1, 1.7];
    let points: usize = gammas.iter().map(|&g| specialfn_grid(&gp(g)).len()).sum();
    // each report is the worst case over the grid of one γ
    let reports: Vec<_> = gammas.iter().flat_map(|&g| check_specialfn_suite(&gp(g))).collect();
    let worst = |prefix: &str| {
        reports
            .iter()
            .filter(|r| r.identity_name.starts_with(prefix))
            .map(|r| r.rel_err)
            .fold(0.0, f64::max)
    };
    let mut o = from_reports(&reports, reports.len());
    o.ok &= points == 120;
    o.detail = format!(
        "{} grid points; shift {:.1e}, inversion {:.1e}, Γ_b(Q/2) {:.1e}; {}",
        points,
        worst("gamma_b_shift"),
        worst("sine_inversion"),
        worst("gamma_b_half_q"),
        o.detail
    );
    o
}

fn c2_oracle() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/oracle/oracle_values.json");
    let o: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let cx = |v: &Value| C::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap());
    let recs = o["double_gamma"].as_array().unwrap();
    let mut worst = 0f64;
    let mut bad = 0;
    for r in recs {
        let p = gp(r["gamma"].as_f64().unwrap());
        let want = cx(&r["value"]);
        let e = match double_gamma(cx(&r["x"]), &p) {
            Ok(v) => (v - want).norm() / want.norm(),
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(e);
        bad += usize::from(!(e < 1e-10));
    }
    Outcome {
        ok: bad == 0 && recs.len() == 20,
        detail: format!(
            "{} points, worst rel err {:.2e}, {} above 1e-10",
            recs.len(),
            worst,
            bad
        ),
    }
}

fn c3_hyp() -> Outcome {
    let mut r = rng(3);
    let reports: Vec<_> = (0..10)
        .flat_map(|_| check_hyp_connection(&sample_hyp(&mut r), 1e-8))
        .collect();
    from_reports(&reports, 20)
}

fn c4_rfzz() -> Outcome {
    let mut r = rng(4);
    let mut reports = Vec::new();
    let mut sigma_pairs: Vec<(LiouvilleParams, (C, C))> = Vec::new();
    for i in 0..20 {
        let p = gp([0.7, 1.1, 1.7][i % 3]);
        let q = p.q;
        let beta = C::new(r.gen_range(0.2..q - 0.2), r.gen_range(-0.3..0.3));
        let mut sig = || C::new(q / 2.0 + r.gen_range(-0.6..0.6), r.gen_range(-0.4..0.4));
        let (s1, s2) = (sig(), sig());
        let a = ReflectionArgs::new(beta, s1, s2);
        reports.push(check_r_reflection(&a, &p, 1e-10).swap_remove(0));
        for chi in Chi::both() {
            reports.extend(check_r_shift(chi, &a, &p, 1e-9));
        }
        reports.push(check_r_combined(&a, &p, 1e-8).swap_remove(0));
        sigma_pairs.push((p, (s1, s2)));
    }
    for (p, pair) in &sigma_pairs {
        reports.extend(check_special_values(p, &[*pair], 1e-9));
    }
    let n = reports.len();
    let mut o = from_reports(&reports, n);
    o.ok &= n >= 20 * 6;
    o
}

fn c5_h_shift() -> Outcome {
    let s = QuadSettings::default();
    let reports: Vec<_> = three_point_samples(10, 5)
        .iter()
        .flat_map(|(p, a)| {
            Chi::both()
                .into_iter()
                .flat_map(move |chi| check_h_shift(chi, a, p, &s, 1e-6))
        })
        .collect();
    from_reports(&reports, 40)
}

fn c6_h_residues() -> Outcome {
    let s = QuadSettings::default();
    let mut r = rng(6);
    let mut reports = Vec::new();
    for i in 0..5 {
        let p = gp(if i % 2 == 0 { 1.2 } else { 1.6 });
        let a = sample_residue_case(&mut r, &p, &s);
        reports.extend(check_h_residues(&a, &p, &s, 1e-5));
    }
    let n = reports.len();
    from_reports(&reports, n.max(15))
}

fn c7_three_term() -> Outcome {
    let s = QuadSettings::default();
    let reports: Vec<_> = three_point_samples(6, 7)
        .iter()
        .flat_map(|(p, a)| {
            Chi::both()
                .into_iter()
                .flat_map(move |chi| check_three_term(chi, a, p, &s, 1e-5, 1e-12))
        })
        .collect();
    let n = reports.len();
    from_reports(&reports, n.max(12))
}

fn c8_g_residues() -> Outcome {
    let s = QuadSettings::default();
    let mut r = rng(8);
    let mut reports = Vec::new();
    for i in 0..5 {
        let p = gp([0.9, 1.2, 1.6][i % 3]);
        let q = p.q;
        let beta = C::new(r.gen_range(p.gamma / 2.0 + 0.1..q - 0.1), 0.0);
        let sigma = C::new(q / 2.0 + r.gen_range(-0.2..0.2), r.gen_range(-0.2..0.2));
        reports.extend(check_g_residues(
            &BulkBoundaryArgs::new(C::new(q, 0.0), beta, sigma),
            &p,
            &s,
            1e-5,
        ));
    }
    from_reports(&reports, 10)
}

fn c9_sine_integrals() -> Outcome {
    let reports = check_sine_integral_identities(&gp(1.2), &QuadSettings::default(), 1e-6);
    from_reports(&reports, 4)
}

fn c10_robustness() -> Outcome {
    let s = QuadSettings::default();
    let reports: Vec<_> = three_point_samples(10, 10)
        .iter()
        .flat_map(|(p, a)| check_contour_robustness(a, p, &s, 1e-8))
        .collect();
    let n = reports.len();
    let lines = reports
        .iter()
        .filter(|r| r.identity_name == "contour_line_shift")
        .count();
    let trunc = reports
        .iter()
        .filter(|r| r.identity_name == "contour_truncation")
        .count();
    let mut o = from_reports(&reports, n);
    o.ok &= lines >= 10 && trunc >= 10;
    o.detail += &format!(" ({} line shifts, {} truncation doublings)", lines, trunc);
    o
}

/// The `lbcft` binary from the same target directory, built on demand.
fn cli_binary() -> Result<PathBuf, String> {
    let exe = std::env::current_exe().map_err(|e| e.to_string())?;
    let dir = exe
        .parent()
        .and_then(|d| d.parent())
        .ok_or("no target directory")?
        .to_path_buf();
    let bin = dir.join(format!("lbcft{}", std::env::consts::EXE_SUFFIX));
    if !bin.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let mut cmd = Command::new(cargo);
        cmd.args(["build", "-q", "-p", "lbcft-cli"]);
        if dir.file_name().is_some_and(|n| n == "release") {
            cmd.arg("--release");
        }
        let st = cmd.status().map_err(|e| e.to_string())?;
        if !st.success() || !bin.exists() {
            return Err(format!("could not build {}", bin.display()));
        }
    }
    Ok(bin)
}

fn c11_cli() -> Outcome {
    let fail = |detail: String| Outcome { ok: false, detail };
    let bin = match cli_binary() {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let run = |args: &[&str]| Command::new(&bin).args(args).output().expect("spawn lbcft");

    let report = std::env::temp_dir().join(format!("lbcft-acceptance-{}.json", std::process::id()));
    let t = Instant::now();
    let out = run(&["verify", "--report", report.to_str().unwrap()]);
    let verify_s = t.elapsed().as_secs_f64();
    let text = std::fs::read_to_string(&report).unwrap_or_default();
    let _ = std::fs::remove_file(&report);
    let parsed: Vec<Value> = serde_json::from_str(&text).unwrap_or_default();
    let failing = parsed.iter().filter(|r| r["pass"] != Value::Bool(true)).count();
    if out.status.code() != Some(0) || parsed.is_empty() || failing > 0 {
        return fail(format!(
            "verify exit {:?}, {} reports, {} not passing",
            out.status.code(),
            parsed.len(),
            failing
        ));
    }

    // Γ_b has a pole at x = 0, which the grid hits exactly.
    let scan = [
        "scan", "dgamma", "--vary", "x", "--from", "-1", "--to", "1", "--count", "41", "--gamma", "1.2",
    ];
    let a = run(&[&scan[..], &["--jobs", "1"]].concat());
    let b = run(&[&scan[..], &["--jobs", "3"]].concat());
    let csv = String::from_utf8_lossy(&a.stdout).into_owned();
    let lines: Vec<&str> = csv.lines().collect();
    let header_ok = lines.first() == Some(&"param,value_re,value_im,err_est,status");
    let zero_row = lines.iter().find(|l| l.starts_with("0,") || l.starts_with("0.0,"));
    let pole_ok = zero_row.is_some_and(|l| l.ends_with(",pole"));
    let rest_ok = lines.iter().skip(1).filter(|l| l.ends_with(",ok")).count() >= 36;
    let same = a.stdout == b.stdout && !csv.contains('\r');
    let ok = a.status.success() && lines.len() == 42 && header_ok && pole_ok && rest_ok && same;
    Outcome {
        ok,
        detail: format!(
            "verify: {} reports all pass in {:.0} s; scan: {} lines, header {}, pole at 0 {}, jobs-invariant {}",
            parsed.len(),
            verify_s,
            lines.len(),
            header_ok,
            pole_ok,
            same
        ),
    }
}

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("special-function suite", 10, c1_specialfn),
        ("oracle equivalence", 30, c2_oracle),
        ("hypergeometric connection", 10, c3_hyp),
        ("R_FZZ identities", 20, c4_rfzz),
        ("H_PT shift equations", 300, c5_h_shift),
        ("H_PT residues", 180, c6_h_residues),
        ("three-term relation", 180, c7_three_term),
        ("G_Hos residues", 120, c8_g_residues),
        ("double-sine integral identities", 60, c9_sine_integrals),
        ("contour robustness", 120, c10_robustness),
        ("CLI contract", 600, c11_cli),
    ];
    let only: Option<usize> = std::env::var("LBCFT_ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut all = true;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let o = f();
        let el = t.elapsed();
        let ok = o.ok && el <= Duration::from_secs(*budget);
        all &= ok;
        println!(
            "{} {:>2} {}: {} [{:.1} s, budget {} s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            name,
            o.detail,
            el.as_secs_f64(),
            budget
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
