#![allow(dead_code)]

use gammaspace::{PiecewisePowerWeight, StepFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: f64 = f64::INFINITY;

/// Random non-trivial weight for `p` on `(0, ∞)`: up to four pieces with
/// breaks in `[10^-2, 10^2]` and exponents in `(-1, p - 1)`, so both the head
/// and the tail conditions hold.
pub fn random_weight(rng: &mut ChaCha8Rng, p: f64) -> PiecewisePowerWeight {
    let n = rng.gen_range(0..4);
    let mut breaks: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.gen_range(-2.0..2.0))).collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let parts: Vec<(f64, f64)> = (0..=breaks.len())
        .map(|_| (10f64.powf(rng.gen_range(-1.0..1.0)), rng.gen_range(-0.9..p - 1.05)))
        .collect();
    PiecewisePowerWeight::from_breaks(INF, &breaks, &parts).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Power weights `t^α` for `p ∈ {1.5, 2, 3}` and `α ∈ {-1/2, 0, (p-1)/2}`.
pub fn power_battery() -> Vec<(f64, f64, PiecewisePowerWeight)> {
    let mut out = Vec::new();
    for p in [1.5, 2.0, 3.0] {
        for alpha in [-0.5, 0.0, (p - 1.0) / 2.0] {
            out.push((p, alpha, PiecewisePowerWeight::power(INF, 1.0, alpha).unwrap()));
        }
    }
    out
}

/// Weights with breaks, finite mass and finite `b`, all non-trivial for `p`.
pub fn mixed_battery() -> Vec<(f64, PiecewisePowerWeight)> {
    let w = |b: f64, breaks: &[f64], parts: &[(f64, f64)]| PiecewisePowerWeight::from_breaks(b, breaks, parts).unwrap();
    vec![
        (2.0, PiecewisePowerWeight::unit()),
        (2.0, w(INF, &[], &[(1.0, 0.5)])),
        (3.0, w(INF, &[], &[(1.0, 1.0)])),
        (1.5, w(INF, &[], &[(1.0, -0.5)])),
        (2.0, w(INF, &[1.0], &[(1.0, 0.0), (1.0, 0.5)])),
        (2.0, w(INF, &[1.0], &[(1.0, 0.0), (1.0, -2.0)])),
        (3.0, w(INF, &[0.1, 10.0], &[(2.0, 1.5), (0.5, -0.5), (1.0, 1.0)])),
        (2.0, w(1.0, &[], &[(1.0, 0.0)])),
        (4.0, w(INF, &[1.0], &[(1.0, 2.0), (1.0, 0.0)])),
        (1.5, w(INF, &[0.01, 100.0], &[(1.0, 0.25), (3.0, 0.0), (1.0, -3.0)])),
    ]
}

/// Least-squares slope of `log y` against `log t`.
pub fn loglog_slope(ts: &[f64], ys: &[f64]) -> f64 {
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let zs: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = xs.len() as f64;
    let (mx, mz) = (xs.iter().sum::<f64>() / n, zs.iter().sum::<f64>() / n);
    let sxz: f64 = xs.iter().zip(&zs).map(|(x, z)| (x - mx) * (z - mz)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxz / sxx
}

/// `n + 1` log-spaced points from `10^lo` to `10^hi`.
pub fn log_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / n as f64)).collect()
}

pub fn step(breaks: &[f64], values: &[f64]) -> StepFunction {
    StepFunction::new(breaks.to_vec(), values.to_vec()).unwrap()
}

/// One configuration per command, sharing a small grid so the suite stays fast.
pub fn command_configs() -> Vec<gammaspace::cli::RunConfig> {
    let base = r#"
        "p": 2,
        "q": 3,
        "weight": {"b": "inf", "pieces": [{"lo": 0, "hi": "inf", "coeff": 1, "exp": 0}]},
        "weight2": {"b": "inf", "pieces": [{"lo": 0, "hi": "inf", "coeff": 1, "exp": 0.5}]},
        "u": {"b": "inf", "pieces": [{"lo": 0, "hi": "inf", "coeff": 1, "exp": 0}]},
        "v": {"b": "inf", "pieces": [{"lo": 0, "hi": "inf", "coeff": 1, "exp": 0}]},
        "functions": [
            {"breaks": [0, 1], "values": [1]},
            {"breaks": [0, 0.5, 2, 5], "values": [3, 1, 0.25]}
        ],
        "grid": {"decades_lo": -4, "decades_hi": 4, "points_per_decade": 4},
        "samples": 40,
        "seed": 11
    "#;
    [
        "validate", "dual-weight", "norm", "dual-check", "embed", "stieltjes", "indices", "cz-check", "report-all",
    ]
    .iter()
    .map(|c| {
        let q = if *c == "stieltjes" { "2" } else { "3" };
        let text = format!("{{\"command\": \"{c}\", {}}}", base.replace("\"q\": 3", &format!("\"q\": {q}")));
        gammaspace::cli::RunConfig::from_json(&text).unwrap()
    })
    .chain(std::iter::once(
        gammaspace::cli::RunConfig::from_json(&format!("{{\"command\": \"hardy\", {}}}", base.replace("\"q\": 3", "\"q\": 2")))
            .unwrap(),
    ))
    .collect()
}
