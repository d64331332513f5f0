//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zeno_core::bae::{
    ancilla_states_closed_form, ancilla_states_numeric, interaction_unitary, ModelParams, RotationAngle,
};
use zeno_core::engine::{
    curve_sweep, entanglement_at_interaction, pointer_overlap, prob_innocent_free, prob_innocent_free_expanded,
    projective_baseline, transition_rate_analytic, transition_rate_numeric, zeno_sequence, CurveSample, ExperimentSpec,
    Interaction, Mode, Phase,
};
use zeno_core::qlin::trace_distance;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn boundary(samples: &[CurveSample]) -> Result<(CurveSample, CurveSample), String> {
    let i = samples
        .iter()
        .position(|s| s.phase == Phase::PostInteractionBoundary)
        .ok_or("no boundary sample")?;
    Ok((samples[i - 1], samples[i]))
}

fn free_closed_form() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let b: f64 = rng.gen_range(-10.0..10.0);
        worst = worst.max((prob_innocent_free(RotationAngle(b)) - b.cos().powi(2)).abs());
        let (b01, b12): (f64, f64) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        worst = worst.max((prob_innocent_free_expanded(b01, b12) - (b01 + b12).cos().powi(2)).abs());
    }
    ensure(worst <= 1e-12, format!("max error {worst:e} > 1e-12"))?;
    Ok(format!("max error {worst:e}"))
}

fn pointer_grid() -> Outcome {
    let mus = [0.0, 0.3, 0.6, 1.4, 5.0];
    let times = [0.0, FRAC_PI_4, FRAC_PI_2, 1.0, PI];
    let mut worst = 0.0f64;
    for &mu0 in &mus {
        for &mu1 in &mus {
            for &t in &times {
                let p = ModelParams::new(mu0, mu1, 0.0, t).map_err(|e| e.to_string())?;
                let (nu, eta) = ancilla_states_closed_form(&p).map_err(|e| e.to_string())?;
                let u = interaction_unitary(&p).map_err(|e| e.to_string())?;
                let (nu_n, eta_n) = ancilla_states_numeric(&u).map_err(|e| e.to_string())?;
                for (a, b) in nu
                    .amplitudes()
                    .iter()
                    .zip(nu_n.amplitudes())
                    .chain(eta.amplitudes().iter().zip(eta_n.amplitudes()))
                {
                    worst = worst.max((a - b).norm());
                }
            }
        }
    }
    ensure(worst <= 1e-10, format!("max amplitude deviation {worst:e} > 1e-10"))?;
    Ok(format!("max amplitude deviation {worst:e}"))
}

fn figure1() -> Outcome {
    let samples = curve_sweep(&ExperimentSpec::fig1()).map_err(|e| e.to_string())?;
    let (pre, post) = boundary(&samples)?;
    let before = samples
        .iter()
        .filter(|s| s.phase == Phase::PreInteraction && s.b.0 <= 0.2);
    let gap_before = before.map(|s| (s.p_free - s.p_interaction).abs()).fold(0.0, f64::max);
    ensure(
        gap_before <= 1e-10,
        format!("(a) curves differ by {gap_before:e} for B <= 0.2"),
    )?;
    let jump = (pre.p_interaction - post.p_interaction).abs();
    ensure(jump <= 1e-10, format!("(b) boundary jump {jump:e}"))?;

    let r = oracle::FIG1_OVERLAP;
    let mut wide = ExperimentSpec::fig1();
    wide.b_total = RotationAngle(FRAC_PI_2);
    let mut worst = 0.0f64;
    let mut checked = 0;
    for s in curve_sweep(&wide).map_err(|e| e.to_string())? {
        let b = s.b.0;
        if !(b > 0.2 && b < FRAC_PI_2) {
            continue;
        }
        let (b1, b2) = (0.2f64, b - 0.2);
        let margin = 2.0 * b1.cos() * b2.cos() * b1.sin() * b2.sin() * (1.0 - r);
        let gap = s.p_interaction - s.p_free;
        ensure(gap > 0.0, format!("(c) P_I <= P_free at B = {b}"))?;
        worst = worst.max((gap - margin).abs());
        checked += 1;
    }
    ensure(worst <= 1e-10, format!("(c) margin mismatch {worst:e}"))?;
    Ok(format!(
        "jump {jump:e}, margin mismatch {worst:e} over {checked} grid points"
    ))
}

fn figure2() -> Outcome {
    let samples = curve_sweep(&ExperimentSpec::fig2()).map_err(|e| e.to_string())?;
    let (pre, post) = boundary(&samples)?;
    ensure(pre.b.0 == 0.2 && post.b.0 == 0.2, "boundary pair not at B = 0.2")?;
    ensure(post.p_interaction < pre.p_interaction, "no drop across the interaction")?;
    let last = samples.last().ok_or("empty sweep")?;
    ensure(last.b.0 == 0.8, "sweep does not end at 0.8")?;
    let errs = [
        (pre.p_interaction - oracle::FIG2_P_BEFORE).abs(),
        (post.p_interaction - oracle::FIG2_P_AFTER).abs(),
        (last.p_interaction - oracle::FIG2_P_INTERACTION_AT_0_8).abs(),
    ];
    let worst = errs.iter().copied().fold(0.0, f64::max);
    ensure(worst <= 1e-10, format!("oracle mismatch {errs:?}"))?;
    Ok(format!(
        "drop {:.6} -> {:.6}, oracle mismatch {worst:e}",
        pre.p_interaction, post.p_interaction
    ))
}

fn transition_rates() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst = 0.0f64;
    let mut specs = vec![ExperimentSpec::fig1()];
    for _ in 0..50 {
        let p = ModelParams::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            0.0,
            rng.gen_range(0.0..PI),
        )
        .map_err(|e| e.to_string())?;
        let b1 = rng.gen_range(0.0..1.5);
        specs.push(ExperimentSpec::new(p, b1, b1 + 0.1));
    }
    for spec in &specs {
        let r = pointer_overlap(spec).map_err(|e| e.to_string())?;
        let numeric = transition_rate_numeric(spec, 1e-5).map_err(|e| e.to_string())?;
        worst = worst.max((numeric - transition_rate_analytic(spec.b_first, r)).abs());
    }
    ensure(worst <= 1e-6, format!("finite difference off by {worst:e}"))?;

    let orthogonal = ModelParams::new(1.0, -1.0, 0.0, FRAC_PI_2).map_err(|e| e.to_string())?;
    let mut null_rate = 0.0f64;
    for b1 in [0.2, FRAC_PI_4, 1.0] {
        for interaction in [Interaction::BeliefAction, Interaction::IdealDephasing] {
            let spec = ExperimentSpec::new(orthogonal, b1, FRAC_PI_2).with_interaction(interaction);
            let r = pointer_overlap(&spec).map_err(|e| e.to_string())?;
            ensure(r.abs() <= 1e-12, format!("pointers not orthogonal: {r:e}"))?;
            null_rate = null_rate.max(transition_rate_numeric(&spec, 1e-5).map_err(|e| e.to_string())?.abs());
            null_rate = null_rate.max(transition_rate_analytic(spec.b_first, r).abs());
        }
    }
    ensure(null_rate <= 1e-6, format!("rate at zero overlap {null_rate:e}"))?;

    for _ in 0..1000 {
        let b = RotationAngle(rng.gen_range(-PI..PI));
        let r = rng.gen_range(-1.0..=1.0);
        let (slow, free) = (
            transition_rate_analytic(b, r).abs(),
            transition_rate_analytic(b, 1.0).abs(),
        );
        ensure(slow <= free, format!("|rate({r})| = {slow} > |rate(1)| = {free}"))?;
    }
    Ok(format!("fd error {worst:e}, zero-overlap rate {null_rate:e}"))
}

fn dephasing_spec(n: usize, b_total: f64) -> ExperimentSpec {
    let mut spec = ExperimentSpec::fig1()
        .with_interaction(Interaction::IdealDephasing)
        .with_interactions(n, Mode::Channel);
    spec.b_first = RotationAngle(0.0);
    spec.b_total = RotationAngle(b_total);
    spec
}

fn survival(n: usize, b_total: f64) -> Result<f64, String> {
    Ok(zeno_sequence(&dephasing_spec(n, b_total))
        .map_err(|e| e.to_string())?
        .survival)
}

fn zeno_limit() -> Outcome {
    let s100 = survival(100, FRAC_PI_2)?;
    let want = (1.0 + (PI / 101.0).cos().powi(101)) / 2.0;
    ensure(
        (s100 - want).abs() <= 1e-9,
        format!("survival(100) = {s100}, want {want}"),
    )?;
    let mut last = f64::NEG_INFINITY;
    for k in 0..=10 {
        let n = 1usize << k;
        let s = survival(n, FRAC_PI_2)?;
        ensure(s > last, format!("survival not increasing at n = {n}: {s} <= {last}"))?;
        last = s;
    }
    ensure(last >= 0.997, format!("survival(1024) = {last} < 0.997"))?;
    Ok(format!("survival(100) = {s100:.12}, survival(1024) = {last:.6}"))
}

fn mode_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let p = ModelParams::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.0..PI),
        )
        .map_err(|e| e.to_string())?;
        let n = rng.gen_range(0..=12);
        let mut spec = ExperimentSpec::new(p, 0.0, rng.gen_range(0.0..3.0)).with_interactions(n, Mode::PureState);
        let pure = zeno_sequence(&spec).map_err(|e| e.to_string())?;
        spec.mode = Mode::Channel;
        let chan = zeno_sequence(&spec).map_err(|e| e.to_string())?;
        worst = worst.max(trace_distance(&pure.belief, &chan.belief).map_err(|e| e.to_string())?);
    }
    ensure(worst <= 1e-10, format!("trace distance {worst:e}"))?;
    Ok(format!("max trace distance {worst:e} over 50 draws"))
}

fn collapse_equals_dephasing() -> Outcome {
    let mut worst = 0.0f64;
    for b_total in [FRAC_PI_2, 1.0] {
        for n in 1..=64 {
            let projective = projective_baseline(n, RotationAngle(b_total), false);
            worst = worst.max((projective - survival(n, b_total)?).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max difference {worst:e}"))?;
    Ok(format!("max difference {worst:e}"))
}

fn entanglement() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut unentangled = 0.0f64;
    for _ in 0..50 {
        let mu = rng.gen_range(-5.0..5.0);
        let p = ModelParams::new(mu, mu, 0.0, rng.gen_range(0.0..PI)).map_err(|e| e.to_string())?;
        let b1 = rng.gen_range(0.0..FRAC_PI_2);
        let spec = ExperimentSpec::new(p, b1, FRAC_PI_2);
        unentangled = unentangled.max(entanglement_at_interaction(&spec).map_err(|e| e.to_string())?);
    }
    ensure(
        unentangled <= 1e-10,
        format!("equal utilities give entropy {unentangled:e}"),
    )?;

    let orthogonal = ModelParams::new(1.0, -1.0, 0.0, FRAC_PI_2).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for interaction in [Interaction::BeliefAction, Interaction::IdealDephasing] {
        let spec = ExperimentSpec::new(orthogonal, FRAC_PI_4, FRAC_PI_2).with_interaction(interaction);
        let s = entanglement_at_interaction(&spec).map_err(|e| e.to_string())?;
        worst = worst.max((s - LN_2).abs());
    }
    ensure(worst <= 1e-9, format!("orthogonal pointers miss ln 2 by {worst:e}"))?;
    Ok(format!("equal-utility entropy {unentangled:e}, ln 2 error {worst:e}"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for experiment in ["fig1", "fig2"] {
        let mut runs = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("{experiment}-{k}.csv"));
            let status = Command::new(env!("CARGO_BIN_EXE_zenoctl"))
                .args([experiment, "--out"])
                .arg(&path)
                .status()
                .map_err(|e| e.to_string())?;
            ensure(status.success(), format!("zenoctl {experiment} exited with {status}"))?;
            runs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(
            !runs[0].is_empty() && runs[0] == runs[1],
            format!("{experiment} outputs differ"),
        )?;
        sizes.push(format!("{experiment} {} bytes", runs[0].len()));
    }
    Ok(format!("identical reruns: {}", sizes.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("free-evolution closed form", free_closed_form),
        ("pointer closed form vs exponential", pointer_grid),
        ("figure 1 reproduction", figure1),
        ("figure 2 reproduction", figure2),
        ("transition rates", transition_rates),
        ("zeno limit", zeno_limit),
        ("mode equivalence", mode_equivalence),
        ("collapse equals dephasing", collapse_equals_dephasing),
        ("entanglement diagnostics", entanglement),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
