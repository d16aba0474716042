//! Acceptance suite: each criterion prints one PASS/FAIL line with its
//! measured figure and runtime, and the test fails if any criterion does.

mod common;

use std::time::{Duration, Instant};

use common::{command_configs, log_points, loglog_slope, mixed_battery, power_battery, random_weight, rng, INF};
use gammaspace::cli::run;
use gammaspace::duality::DualWeight;
use gammaspace::inequalities::{hardy_p_sides, hardy_q_sides, stieltjes_sides};
use gammaspace::operators::Evaluable;
use gammaspace::sampling::StepSampler;
use gammaspace::*;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion<F: FnOnce() -> Outcome>(id: usize, name: &str, limit: Duration, f: F) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let pass = out.pass && elapsed < limit;
    println!(
        "criterion {id:>2} {name:<28} {}  {}  [{:.2} s of {} s]",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn dual_weight_goldens() -> Outcome {
    let ts = log_points(-6.0, 6.0, 48);
    let mut worst: f64 = 0.0;
    for (p, alpha, w) in power_battery() {
        let psi = DualWeight::new(p, &w).unwrap();
        let ys: Vec<f64> = ts.iter().map(|&t| psi.value(t)).collect();
        worst = worst.max((loglog_slope(&ts, &ys) + alpha / (p - 1.0)).abs());
    }
    let unit = DualWeight::new(2.0, &PiecewisePowerWeight::unit()).unwrap();
    let flat = ts.iter().map(|&t| (unit.value(t) - 0.125).abs()).fold(0.0, f64::max);
    Outcome {
        pass: worst < 1e-6 && flat < 1e-10,
        detail: format!("max slope error {worst:.2e}, |psi - 1/8| {flat:.2e}"),
    }
}

fn bracket_identity() -> Outcome {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = r.gen_range(1.2..4.0);
        let w = random_weight(&mut r, p);
        for _ in 0..100 {
            let t = 10f64.powf(r.gen_range(-4.0..4.0));
            let lhs = t * p_q_p_phi(&w, p, t).unwrap();
            let rhs = phi_bracket(&w, p, t).unwrap();
            worst = worst.max((lhs / rhs - 1.0).abs());
        }
    }
    Outcome { pass: worst < 1e-9, detail: format!("max relative error {worst:.2e}") }
}

fn theorem_a() -> Outcome {
    let config = OracleConfig::default();
    let mut sampler = StepSampler::new(3);
    let (mut lo, mut hi, mut drift): (f64, f64, f64) = (f64::INFINITY, 0.0, 0.0);
    for (p, w) in mixed_battery() {
        let psi = DualWeight::new(p, &w).unwrap();
        for _ in 0..20 {
            let g = sampler.decreasing().into_step();
            let d = gammaspace::duality::dual_norm_parts(&psi, &g).unwrap().value;
            let a = gammaspace::duality::associate_norm_oracle_with(&psi, &g, &config).unwrap().value / d;
            let b = gammaspace::duality::associate_norm_oracle_with(&psi, &g, &config.doubled()).unwrap().value / d;
            lo = lo.min(a);
            hi = hi.max(a);
            drift = drift.max((b / a - 1.0).abs());
        }
    }
    let chi = StepFunction::indicator(1.0);
    let unit = PiecewisePowerWeight::unit();
    let oracle = associate_norm_oracle(2.0, &unit, &chi, &config).unwrap().value;
    let dual = dual_norm(2.0, &unit, &chi).unwrap();
    let golden = (oracle - 0.5f64.sqrt()).abs() < 1e-6 && (dual - 0.5).abs() < 1e-6;
    Outcome {
        pass: lo >= 0.1 && hi <= 100.0 && drift < 0.05 && golden,
        detail: format!(
            "ratios in [{lo:.3}, {hi:.3}], doubling drift {:.2}%, golden oracle {oracle:.9} dual {dual:.9}",
            100.0 * drift
        ),
    }
}

fn sandwich() -> Outcome {
    let mut sampler = StepSampler::new(4);
    let ts = log_points(-4.0, 4.0, 19);
    let mut slack = f64::INFINITY;
    for _ in 0..500 {
        let f = sampler.step();
        let (pf, qf) = (hardy_p(&f), hardy_q(&f, INF));
        for &t in &ts {
            let (a, b, s) = (pf.eval(t), qf.eval(t), stieltjes(&f, t));
            let scale = (a + b).max(f64::MIN_POSITIVE);
            slack = slack.min((s - 0.5 * (a + b)) / scale).min((a + b - s) / scale);
        }
    }
    Outcome { pass: slack >= -1e-12, detail: format!("min relative slack {slack:.3e}") }
}

fn hardy_stieltjes() -> Outcome {
    let one = PiecewisePower::power(INF, 1.0, 0.0).unwrap();
    let bp = hardy_p_constant(2.0, 2.0, &one, &one, INF).unwrap();
    let bq = hardy_q_constant(2.0, 2.0, &one, &one, INF).unwrap();
    let ks = stieltjes_constant(2.0, 2.0, &one, &one).unwrap();
    let mut sampler = StepSampler::new(5);
    let (mut ep, mut eq, mut es): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..500 {
        let f = sampler.step();
        ep = ep.max(hardy_p_sides(2.0, 2.0, &one, &one, INF, &f).unwrap().ratio() / bp);
        eq = eq.max(hardy_q_sides(2.0, 2.0, &one, &one, INF, &f).unwrap().ratio() / bq);
        es = es.max(stieltjes_sides(2.0, 2.0, &one, &one, &f).unwrap().ratio() / ks);
    }
    let golden = (bp - 1.0).abs() < 1e-6 && (bq - 1.0).abs() < 1e-6 && (ks - 1.0).abs() < 1e-3;
    Outcome {
        pass: golden && ep <= 64.0 && eq <= 64.0 && es <= 64.0,
        detail: format!("B_P {bp:.9}, B_Q {bq:.9}, K {ks:.6}; LHS/(B RHS) max P {ep:.3} Q {eq:.3} S {es:.3}"),
    }
}

fn embeddings() -> Outcome {
    let unit = PiecewisePowerWeight::unit();
    let sqrt = PiecewisePowerWeight::power(INF, 1.0, 0.5).unwrap();
    let same = embedding_norm(2.0, &sqrt, 2.0, &sqrt).unwrap();
    let golden = embedding_norm(2.0, &unit, 3.0, &sqrt).unwrap();
    let exact = (4.0f64 / 3.0).cbrt() / 2f64.sqrt();
    let mismatched = embedding_norm(2.0, &unit, 3.0, &unit).unwrap();
    Outcome {
        pass: same == 1.0 && (golden - exact).abs() < 1e-6 && mismatched == f64::INFINITY,
        detail: format!("identical {same}, golden {golden:.9} (closed form {exact:.9}), mismatched {mismatched}"),
    }
}

fn boyd() -> Outcome {
    let mut worst_power: f64 = 0.0;
    let mut chain = true;
    let mut sub: f64 = 0.0;
    for (p, alpha, w) in power_battery() {
        let r = boyd_indices(p, &w).unwrap();
        let want = (alpha + 1.0) / p;
        worst_power = worst_power.max((r.i_lower - want).abs()).max((r.i_upper - want).abs());
        chain &= r.chain_ok;
    }
    for (p, w) in mixed_battery().into_iter().filter(|(_, w)| w.b().is_infinite()) {
        let r = boyd_indices(p, &w).unwrap();
        chain &= r.chain_ok
            && 0.0 <= r.i_lower
            && r.i_lower <= r.fundamental_i
            && r.fundamental_i <= r.fundamental_upper
            && r.fundamental_upper <= r.i_upper
            && r.i_upper <= 1.0;
        let ts = [1e-3, 0.1, 0.5, 2.0, 10.0, 1e3];
        for &s in &ts {
            for &t in &ts {
                let h = |x: f64| dilation_norm(p, &w, x).unwrap();
                sub = sub.max(h(s * t) / (h(s) * h(t)) - 1.0);
            }
        }
    }
    Outcome {
        pass: worst_power < 1e-3 && chain && sub <= 0.01,
        detail: format!("power index error {worst_power:.2e}, chain ok {chain}, h(st)/(h(s)h(t)) - 1 <= {sub:.2e}"),
    }
}

fn cz() -> Outcome {
    let r = cz_admissible(2.0, &PiecewisePowerWeight::unit()).unwrap();
    let c = r.c_star.unwrap_or(f64::NAN);
    // `∫ φ min(1, s^-p) = ∞` for both weights at p = 2.
    let gated = |alpha: f64| {
        let w = PiecewisePowerWeight::power(INF, 1.0, alpha).unwrap();
        matches!(cz_admissible(2.0, &w), Err(GammaError::Hypothesis(_)))
    };
    let gate = gated(1.0) && gated(2.0);
    Outcome {
        pass: r.admissible && (c - 0.61803).abs() < 1e-3 && gate,
        detail: format!("c* {c:.9}, admissible {}, violating weights rejected {gate}", r.admissible),
    }
}

fn balance() -> Outcome {
    let ts = log_points(-6.0, 6.0, 24);
    let (mut lo, mut hi): (f64, f64) = (f64::INFINITY, 0.0);
    let mut dominated = true;
    for (p, _, w) in power_battery() {
        let psi = DualWeight::new(p, &w).unwrap();
        for &t in &ts {
            let a = gammaspace::duality::appendix_balance_with(&psi, t).unwrap();
            let m2 = a.m2_residual + 1.0;
            lo = lo.min(m2);
            hi = hi.max(m2);
            if w.total_mass().is_infinite() {
                dominated &= a.domination_ok;
            }
        }
    }
    Outcome {
        pass: lo >= 0.1 && hi <= 10.0 && dominated,
        detail: format!("balance LHS in [{lo:.4}, {hi:.4}], domination holds {dominated}"),
    }
}

fn determinism_and_schema() -> Outcome {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut identical = true;
    let mut invalid = Vec::new();
    let configs = command_configs();
    for cfg in &configs {
        let a = run(cfg).unwrap();
        let b = run(cfg).unwrap();
        identical &= a.to_json_untimed() == b.to_json_untimed();
        let doc: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
        if !validator.is_valid(&doc) {
            invalid.push(a.command.name());
        }
    }
    Outcome {
        pass: identical && invalid.is_empty(),
        detail: format!("{} commands, byte-identical {identical}, schema failures {invalid:?}", configs.len()),
    }
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "dual weight goldens", s(5), dual_weight_goldens),
        criterion(2, "bracket identity", s(5), bracket_identity),
        criterion(3, "associate norm equivalence", s(120), theorem_a),
        criterion(4, "Stieltjes sandwich", s(10), sandwich),
        criterion(5, "Hardy and Stieltjes", s(60), hardy_stieltjes),
        criterion(6, "embedding goldens", s(10), embeddings),
        criterion(7, "Boyd indices", s(30), boyd),
        criterion(8, "CZ admissibility", s(30), cz),
        criterion(9, "balance and domination", s(60), balance),
        criterion(10, "determinism and schema", s(120), determinism_and_schema),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| k + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
