//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use harmap::bounds::{coefficient_bound_check, growth_envelope_check, growth_lower, growth_upper};
use harmap::closure::{convex_combination, convolve_harmonic, goodloe_product};
use harmap::corpus::{random_member, random_params};
use harmap::document::{load_map, save_document, MapDocument};
use harmap::geometry::convex_on_circle;
use harmap::harmonic::{make_extremal_full, make_extremal_single};
use harmap::operator::{apply_l, close_to_convex_check, half_plane_check, membership_sampled};
use harmap::radii::{
    convexity_threshold_lambda, numeric_radius_oracle, pc_poly, ps_poly, radius_fully_convex,
    radius_fully_starlike, CircleProperty, ThresholdOutcome,
};
use harmap::{ClassParams, Complex64, HarmonicMap, PolarGrid, TruncatedSeries};

const SEED: u64 = 0x5eed_acce;
const CORPUS_SIZE: usize = 200;
const CORPUS_ORDER: usize = 16;
const MARGIN_FLOOR: f64 = -1e-9;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(g: f64, d: f64, l: f64) -> ClassParams {
    ClassParams::new(g, d, l).expect("valid parameters")
}

fn corpus() -> Vec<(ClassParams, HarmonicMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let p = random_params(&mut rng);
            let f = random_member(&mut rng, &p, CORPUS_ORDER);
            (p, f)
        })
        .collect()
}

/// `Li₂(x) = Σ x^k / k²` for `|x| ≤ 1/2`, summed to below 1e−17.
fn dilog_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..200 {
        power *= x;
        sum += power / (k * k) as f64;
        if power.abs() < 1e-18 {
            break;
        }
    }
    sum
}

fn c1_closed_form_radii() -> Outcome {
    let a = radius_fully_starlike(&params(1.0, 1.0, 0.0), 1e-12).map_err(|e| e.to_string())?;
    let b = radius_fully_starlike(&params(1.0, 2.0, 0.0), 1e-12).map_err(|e| e.to_string())?;
    let want_a = 1.0 - 1.0 / 3f64.sqrt();
    ensure((a.radius - want_a).abs() <= 1e-9, || {
        format!("r_s(1,1,0) = {} vs {want_a}", a.radius)
    })?;
    ensure((b.radius - 0.5).abs() <= 1e-9, || {
        format!("r_s(1,2,0) = {}", b.radius)
    })?;
    Ok(format!(
        "r_s(1,1,0) = {:.12}, r_s(1,2,0) = {:.12}",
        a.radius, b.radius
    ))
}

fn c2_bisection_radii() -> Outcome {
    let p = params(1.0, 1.0, 0.0);
    let rc = radius_fully_convex(&p, 1e-12).map_err(|e| e.to_string())?;
    ensure(rc.radius > 0.25 && rc.radius < 0.26, || {
        format!("r_c = {}", rc.radius)
    })?;
    let residual = pc_poly(&p, rc.radius).abs();
    ensure(residual <= 1e-9, || format!("|pc(r_c)| = {residual:e}"))?;
    ensure(pc_poly(&p, 0.25) > 0.0 && pc_poly(&p, 0.26) < 0.0, || {
        "pc sign bracket".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    for i in 0..100 {
        let q = random_params(&mut rng);
        let (g, d, l) = (q.gamma(), q.delta(), q.lambda());
        let endpoints = [
            ("pc(0)", pc_poly(&q, 0.0), d + g, 1.0),
            ("pc(1)", pc_poly(&q, 1.0), 2.0 * (l - g), -1.0),
            ("ps(0)", ps_poly(&q, 0.0), d + g, 1.0),
            ("ps(1)", ps_poly(&q, 1.0), l - g, -1.0),
        ];
        for (name, value, closed, sign) in endpoints {
            ensure(value.signum() == sign && closed.signum() == sign, || {
                format!("sample {i}: {name} = {value} has the wrong sign")
            })?;
            ensure(
                (value - closed).abs() <= 1e-12 * (1.0 + closed.abs()),
                || format!("sample {i}: {name} = {value}, closed form {closed}"),
            )?;
        }
    }
    Ok(format!(
        "r_c(1,1,0) = {:.12}, |pc(r_c)| = {residual:.1e}; 100 endpoint sign sets agree",
        rc.radius
    ))
}

fn c3_sharpness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = random_params(&mut rng);
        for m in 2..=10 {
            let f = make_extremal_single(&p, m).map_err(|e| e.to_string())?;
            let report = coefficient_bound_check(&f, &p);
            let slack = report.record(m).ok_or("missing record")?.slack_b;
            ensure(report.holds(), || {
                format!("extremal_single m={m} violates a bound")
            })?;
            worst = worst.max(slack.abs());
        }
        let full = make_extremal_full(&p, 64).map_err(|e| e.to_string())?;
        let report = coefficient_bound_check(&full, &p);
        ensure(report.holds(), || "extremal_full violates a bound".into())?;
        for r in &report.records {
            worst = worst.max(r.slack_a.abs());
        }
    }
    ensure(worst <= 1e-12, || format!("largest slack {worst:e}"))?;
    Ok(format!("largest slack {worst:.1e} over 20 parameter sets"))
}

fn c4_membership_chain(corpus: &[(ClassParams, HarmonicMap)]) -> Outcome {
    let grid = PolarGrid::with_radius(0.95);
    let n_eps = 16;
    let (mut min_member, mut min_ctc, mut min_half) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for (i, (p, f)) in corpus.iter().enumerate() {
        let v = membership_sampled(f, p, &grid).map_err(|e| e.to_string())?;
        ensure(v.holds && v.margin >= MARGIN_FLOOR, || {
            format!("member {i}: sampled margin {:e} at {}", v.margin, v.witness)
        })?;
        min_member = min_member.min(v.margin);
        for k in 0..n_eps {
            let eps = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n_eps as f64);
            let slice = f.slice(eps).map_err(|e| e.to_string())?;
            let ctc = close_to_convex_check(&slice, &grid).map_err(|e| e.to_string())?;
            let half = half_plane_check(&slice, &grid).map_err(|e| e.to_string())?;
            ensure(ctc.margin >= MARGIN_FLOOR, || {
                format!("member {i}, ε index {k}: Re F′ margin {:e}", ctc.margin)
            })?;
            ensure(half.margin >= MARGIN_FLOOR, || {
                format!(
                    "member {i}, ε index {k}: Re F/z − 1/2 margin {:e}",
                    half.margin
                )
            })?;
            min_ctc = min_ctc.min(ctc.margin);
            min_half = min_half.min(half.margin);
        }
    }
    Ok(format!(
        "{} members; min margins: sampled {min_member:.3e}, Re F′ {min_ctc:.3e}, Re F/z − 1/2 {min_half:.3e}",
        corpus.len()
    ))
}

fn c5_closure() -> Outcome {
    let grid = PolarGrid::with_radius(0.95);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut min_margin = f64::INFINITY;
    for i in 0..50 {
        let p = random_params(&mut rng);
        let a = random_member(&mut rng, &p, CORPUS_ORDER);
        let b = random_member(&mut rng, &p, CORPUS_ORDER);
        let w: f64 = rng.random_range(0.0..=1.0);
        let combo = convex_combination(&[a.clone(), b.clone()], &[w, 1.0 - w])
            .map_err(|e| e.to_string())?;
        let conv = convolve_harmonic(&a, &b);
        let phi = TruncatedSeries::geometric(CORPUS_ORDER);
        let prod = goodloe_product(&a, &phi).map_err(|e| e.to_string())?;
        for (name, g) in [
            ("convex combination", &combo),
            ("convolution", &conv),
            ("product with z/(1−z)", &prod),
        ] {
            let v = membership_sampled(g, &p, &grid).map_err(|e| e.to_string())?;
            ensure(v.holds, || {
                format!("pair {i}: {name} margin {:e}", v.margin)
            })?;
            min_margin = min_margin.min(v.margin);
        }
    }
    Ok(format!(
        "50 pairs × 3 operations; min sampled margin {min_margin:.3e}"
    ))
}

fn c6_growth(corpus: &[(ClassParams, HarmonicMap)]) -> Outcome {
    let p = params(1.0, 1.0, 0.0);
    let upper = growth_upper(&p, 0.5, 512).map_err(|e| e.to_string())?;
    let lower = growth_lower(&p, 0.5, 512).map_err(|e| e.to_string())?;
    ensure((upper.value - 0.664481).abs() <= 1e-5, || {
        format!("upper {}", upper.value)
    })?;
    ensure((lower.value - 0.396828).abs() <= 1e-5, || {
        format!("lower {}", lower.value)
    })?;
    // For (1,1,0): upper = 2 Li₂(r) − r and lower = −r − 2 Li₂(−r).
    let li2_half = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
    let li2_minus_half = -dilog_series(1.0 / 3.0) - 0.5 * 1.5f64.ln().powi(2);
    let (want_up, want_lo) = (2.0 * li2_half - 0.5, -0.5 - 2.0 * li2_minus_half);
    ensure((upper.value - want_up).abs() <= 1e-12, || {
        format!("upper vs dilogarithm {want_up}")
    })?;
    ensure((lower.value - want_lo).abs() <= 1e-12, || {
        format!("lower vs dilogarithm {want_lo}")
    })?;

    let grid = PolarGrid::with_radius(0.9);
    for (i, (q, f)) in corpus.iter().enumerate() {
        let v = growth_envelope_check(f, q, &grid, 512).map_err(|e| e.to_string())?;
        ensure(v.holds, || {
            format!("member {i}: envelope margin {:e}", v.margin)
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let q = random_params(&mut rng);
        let f = make_extremal_full(&q, 512).map_err(|e| e.to_string())?;
        for r in [0.1, 0.5, 0.9, 0.99] {
            let w = f
                .evaluate(Complex64::new(r, 0.0))
                .map_err(|e| e.to_string())?;
            let g = growth_upper(&q, r, 512).map_err(|e| e.to_string())?;
            worst = worst.max((w.re - g.value).abs()).max(w.im.abs());
        }
    }
    ensure(worst <= 1e-12, || {
        format!("extremal vs upper bound differ by {worst:e}")
    })?;
    Ok(format!(
        "upper {:.7}, lower {:.7}; {} envelopes hold; extremal matches upper to {worst:.1e}",
        upper.value,
        lower.value,
        corpus.len()
    ))
}

fn c7_oracle_cross_check(corpus: &[(ClassParams, HarmonicMap)]) -> Outcome {
    let mut min_gap = f64::INFINITY;
    for (i, (p, f)) in corpus.iter().enumerate() {
        for (property, class) in [
            (CircleProperty::Starlike, radius_fully_starlike(p, 1e-12)),
            (CircleProperty::Convex, radius_fully_convex(p, 1e-12)),
        ] {
            let class = class.map_err(|e| e.to_string())?.radius;
            let numeric =
                numeric_radius_oracle(f, property, 1e-4, 1024).map_err(|e| e.to_string())?;
            let gap = numeric.radius - class;
            ensure(gap >= -1e-3, || {
                format!(
                    "member {i}: {property:?} oracle {} < class radius {class}",
                    numeric.radius
                )
            })?;
            min_gap = min_gap.min(gap);
        }
    }
    Ok(format!(
        "{} members × 2 properties; smallest oracle − class radius {min_gap:.4}",
        corpus.len()
    ))
}

fn c8_convexity_threshold() -> Outcome {
    let lambda = match convexity_threshold_lambda(3.0, 10_000).map_err(|e| e.to_string())? {
        ThresholdOutcome::Converged { lambda, .. } => lambda,
        other => return Err(format!("δ = 3 reported {other:?}")),
    };
    // At δ = 3 the terms are −1/(m+1)², so S = 1 − ζ(2).
    let s = 1.0 - PI * PI / 6.0;
    let exact = (-2.0 - 4.0 * s) / (4.0 - 4.0 * s);
    ensure((lambda - 0.088109).abs() <= 1e-4, || {
        format!("λ = {lambda}")
    })?;
    ensure((exact - 0.088109).abs() <= 1e-6, || {
        format!("oracle λ = {exact}")
    })?;
    for delta in [1.0, 2.0] {
        match convexity_threshold_lambda(delta, 10_000).map_err(|e| e.to_string())? {
            ThresholdOutcome::Divergent { .. } => {}
            other => return Err(format!("δ = {delta} reported {other:?}")),
        }
    }
    let p = params(1.0, 3.0, lambda);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut min_margin = f64::INFINITY;
    for i in 0..20 {
        let f = random_member(&mut rng, &p, CORPUS_ORDER);
        let v = convex_on_circle(&f, 0.99, 1024).map_err(|e| e.to_string())?;
        ensure(v.holds, || {
            format!("member {i}: turning margin {:e}", v.margin)
        })?;
        min_margin = min_margin.min(v.margin);
    }
    Ok(format!(
        "λ = {lambda:.7} (exact {exact:.7}); δ = 1, 2 divergent; 20 members convex at r = 0.99 (min turning rate {min_margin:.3e})"
    ))
}

fn c9_operator_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let (g, d) = (p.gamma(), p.delta());
        for m in 2..=10 {
            let value = apply_l(&TruncatedSeries::monomial(m), &p, Complex64::new(1.0, 0.0))
                .map_err(|e| e.to_string())?;
            let mf = m as f64;
            let want = mf * mf * (g + 0.5 * (d - g) * (mf - 1.0));
            worst = worst.max((value - Complex64::new(want, 0.0)).norm() / want.max(1.0));
        }
    }
    ensure(worst <= 1e-12, || format!("largest deviation {worst:e}"))?;
    Ok(format!(
        "m = 2..10 × 20 parameter sets; largest relative deviation {worst:.1e}"
    ))
}

fn harmap(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_harmap"))
        .args(args)
        .output()
        .map_err(|e| format!("spawning harmap: {e}"))
}

fn c10_cli() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).display().to_string();
    let (f, f2, svg1, svg2) = (
        path("f.json"),
        path("f2.json"),
        path("a.svg"),
        path("b.svg"),
    );
    let p = ["--gamma", "1", "--delta", "1", "--lambda", "0"];

    let out = harmap(&[&["extremal"][..], &p, &["--m", "2", "--out", &f]].concat())?;
    ensure(out.status.code() == Some(0), || {
        format!("extremal exit {:?}", out.status.code())
    })?;
    let loaded = load_map(Path::new(&f)).map_err(|e| e.to_string())?;
    ensure(loaded.map.t().coeff(2) == Complex64::new(0.25, 0.0), || {
        "b₂ ≠ 0.25".into()
    })?;

    // round trip through save and reload
    let doc = loaded.to_document();
    save_document(&doc, Path::new(&f2)).map_err(|e| e.to_string())?;
    let again: MapDocument = load_map(Path::new(&f2))
        .map_err(|e| e.to_string())?
        .to_document();
    ensure(doc == again, || "document changed across save/load".into())?;
    let bytes = |p: &str| std::fs::read(p).map_err(|e| e.to_string());
    let first = std::fs::read_to_string(&f).map_err(|e| e.to_string())?;
    ensure(first.as_bytes() == bytes(&f2)?.as_slice(), || {
        "saved bytes differ".into()
    })?;

    let codes = [
        (
            harmap(&[&["check", "--in", &f, "--grid-radius", "0.95"][..], &p].concat())?,
            0,
            "member check",
        ),
        (
            harmap(&[
                "check", "--in", &f, "--gamma", "1", "--delta", "1", "--lambda", "0.99",
            ])?,
            1,
            "non-member check",
        ),
        (
            harmap(&[
                "radii",
                "--gamma",
                "1",
                "--delta",
                "1",
                "--lambda",
                "0",
                "--frobnicate",
            ])?,
            2,
            "unknown flag",
        ),
        (
            harmap(&["radii", "--gamma", "1", "--delta", "0.5", "--lambda", "0"])?,
            2,
            "invalid params",
        ),
        (
            harmap(&["check", "--in", &path("missing.json")])?,
            2,
            "missing file",
        ),
    ];
    for (out, want, name) in &codes {
        ensure(out.status.code() == Some(*want), || {
            format!("{name}: exit {:?}, expected {want}", out.status.code())
        })?;
    }
    ensure(
        String::from_utf8_lossy(&codes[2].0.stderr).contains("Usage"),
        || "unknown flag printed no usage".into(),
    )?;

    let radii = harmap(&[
        "radii", "--gamma", "1", "--delta", "1", "--lambda", "0", "--tol", "1e-9",
    ])?;
    let json: serde_json::Value =
        serde_json::from_slice(&radii.stdout).map_err(|e| e.to_string())?;
    let rs = json["r_s"].as_f64().ok_or("no r_s")?;
    let rc = json["r_c"].as_f64().ok_or("no r_c")?;
    ensure(
        (rs - 0.4226497).abs() < 1e-7 && rc > 0.25 && rc < 0.26,
        || format!("r_s {rs}, r_c {rc}"),
    )?;

    for target in [&svg1, &svg2] {
        let out = harmap(&[
            "plot",
            "--in",
            &f,
            "--radii",
            "0.25,0.5,0.75",
            "--out",
            target,
        ])?;
        ensure(out.status.success(), || "plot failed".into())?;
    }
    ensure(bytes(&svg1)? == bytes(&svg2)?, || {
        "SVG output differs between runs".into()
    })?;
    Ok("round trip exact; exit codes 0/1/2 as specified; SVG byte-identical across runs".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("radii closed form", Box::new(c1_closed_form_radii)),
        ("radii bisection", Box::new(c2_bisection_radii)),
        ("sharpness of coefficient bounds", Box::new(c3_sharpness)),
        (
            "membership implication chain",
            Box::new(|| c4_membership_chain(&corpus)),
        ),
        ("closure", Box::new(c5_closure)),
        ("growth", Box::new(|| c6_growth(&corpus))),
        (
            "oracle vs class radii",
            Box::new(|| c7_oracle_cross_check(&corpus)),
        ),
        ("convexity threshold", Box::new(c8_convexity_threshold)),
        ("operator identity", Box::new(c9_operator_identity)),
        ("command line", Box::new(c10_cli)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match check() {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failures += 1;
                ("FAIL", detail)
            }
        };
        println!(
            "{tag} [{:>2}] {name}: {detail} ({:.2} s)",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1} s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
