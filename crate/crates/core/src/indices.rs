//! Dilation norms, Boyd and fundamental indices, and the CZ admissibility
//! test, all through the scalar formula
//! `h(t) ≈ sup_s (Φ_p(st) / Φ_p(s))^{1/p}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptote::{Asymptote, Endpoint};
use crate::duality::DualWeight;
use crate::error::{GammaError, Result};
use crate::grid::{try_sup_with_limits, LogGrid, SupResult};
use crate::norms::check_index;
use crate::quadrature::Quadrature;
use crate::weights::{bracket_asymptote, phi_bracket, validate_nontrivial, PiecewisePowerWeight, Weight};

/// Slope drift beyond which an index is reported as unsettled.
pub const SLOPE_DRIFT_WARNING: f64 = 1e-2;

fn check_space(p: f64, w: &PiecewisePowerWeight) -> Result<()> {
    check_index(p)?;
    if w.b().is_finite() {
        return Err(GammaError::Unsupported(format!(
            "dilation indices need a weight on (0, inf), got b = {}",
            w.b()
        )));
    }
    if let Some(reason) = validate_nontrivial(w, p).reason {
        return Err(GammaError::TrivialWeight(reason));
    }
    Ok(())
}

/// `sup_s (Φ_p(st)/Φ_p(s))^{1/p}`, equivalent to the norm of `f ↦ f(·/t)`.
pub fn dilation_norm(p: f64, w: &PiecewisePowerWeight, t: f64) -> Result<f64> {
    check_space(p, w)?;
    Ok(dilation_sup(p, w, t, &LogGrid::default())?.value)
}

/// [`dilation_norm`] with the search details, without revalidating `(p, w)`.
pub fn dilation_sup(p: f64, w: &PiecewisePowerWeight, t: f64, grid: &LogGrid) -> Result<SupResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(GammaError::Domain(format!("dilation factor must be positive and finite, got {t}")));
    }
    let f = |s: f64| -> Result<f64> { Ok((phi_bracket(w, p, s * t)? / phi_bracket(w, p, s)?).powf(1.0 / p)) };
    // Φ(st)/Φ(s) → t^e when Φ behaves like s^e at the endpoint.
    let limit = |end: Endpoint| t.powf(bracket_asymptote(w, p, end).power / p);
    try_sup_with_limits(f, &grid.points(), limit(Endpoint::Zero), limit(Endpoint::Infinity))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HSample {
    pub t: f64,
    pub h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeSample {
    pub t: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CzResult {
    pub admissible: bool,
    pub c_star: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub i_lower: f64,
    #[serde(rename = "I_upper")]
    pub i_upper: f64,
    pub fundamental_i: f64,
    #[serde(rename = "fundamental_I")]
    pub fundamental_upper: f64,
    /// The fundamental indices come from the same formula as the Boyd ones.
    pub fundamental_by_construction: bool,
    pub lower_slopes: Vec<SlopeSample>,
    pub upper_slopes: Vec<SlopeSample>,
    /// `|slope(10^∓12) - slope(10^∓10)|`.
    pub drift_lower: f64,
    pub drift_upper: f64,
    pub chain_ok: bool,
    pub h_samples: Vec<HSample>,
    /// `None` when the CZ hypothesis on the weight fails.
    pub cz: Option<CzResult>,
    pub warnings: Vec<String>,
}

/// Boyd indices from `log h(t)/log t` at `t = 10^{∓12}`, with the slopes at
/// `10^{∓k}`, `k = 1..12`, and a sampled `h` for plotting.
pub fn boyd_indices(p: f64, w: &PiecewisePowerWeight) -> Result<IndexReport> {
    boyd_indices_with(p, w, &LogGrid::default())
}

pub fn boyd_indices_with(p: f64, w: &PiecewisePowerWeight, grid: &LogGrid) -> Result<IndexReport> {
    check_space(p, w)?;
    let h = |t: f64| dilation_sup(p, w, t, grid).map(|r| r.value);
    let slopes = |sign: f64| -> Result<Vec<SlopeSample>> {
        (1..=12)
            .map(|k| {
                let t = 10f64.powf(sign * k as f64);
                Ok(SlopeSample { t, slope: h(t)?.ln() / t.ln() })
            })
            .collect()
    };
    let lower_slopes = slopes(-1.0)?;
    let upper_slopes = slopes(1.0)?;
    let (i_lower, i_upper) = (lower_slopes[11].slope, upper_slopes[11].slope);
    let drift_lower = (lower_slopes[11].slope - lower_slopes[9].slope).abs();
    let drift_upper = (upper_slopes[11].slope - upper_slopes[9].slope).abs();
    let mut warnings = Vec::new();
    for (name, d) in [("lower", drift_lower), ("upper", drift_upper)] {
        if d > SLOPE_DRIFT_WARNING {
            warnings.push(format!("{name} index slope has not settled: drift {d:.3e}"));
        }
    }
    let h_samples = (-24..=24)
        .map(|j| {
            let t = 10f64.powf(j as f64 / 2.0);
            Ok(HSample { t, h: h(t)? })
        })
        .collect::<Result<Vec<_>>>()?;
    const SLACK: f64 = 1e-9;
    let chain_ok = -SLACK <= i_lower && i_lower <= i_upper + SLACK && i_upper <= 1.0 + SLACK;
    if !chain_ok {
        warnings.push(format!("index chain violated: i = {i_lower}, I = {i_upper}"));
    }
    let cz = match cz_admissible_with(p, w, grid) {
        Ok(r) => Some(r),
        Err(GammaError::Hypothesis(msg)) => {
            warnings.push(msg);
            None
        }
        Err(e) => return Err(e),
    };
    Ok(IndexReport {
        i_lower,
        i_upper,
        fundamental_i: i_lower,
        fundamental_upper: i_upper,
        fundamental_by_construction: true,
        lower_slopes,
        upper_slopes,
        drift_lower,
        drift_upper,
        chain_ok,
        h_samples,
        cz,
        warnings,
    })
}

/// Largest `c ∈ (0, 1)` for which both CZ inequalities
/// `∫_0^{ct} φ + c^p t^p ∫_t^∞ φ s^{-p} ≤ ½ Φ_p(t)` and the same with
/// `(ψ, p')` hold for every `t`.
pub fn cz_admissible(p: f64, w: &PiecewisePowerWeight) -> Result<CzResult> {
    cz_admissible_with(p, w, &LogGrid::default())
}

/// Bisection steps on `c`.
const CZ_BISECTIONS: usize = 48;
/// Relative slack allowed on each inequality.
const CZ_SLACK: f64 = 1e-12;

pub fn cz_admissible_with(p: f64, w: &PiecewisePowerWeight, grid: &LogGrid) -> Result<CzResult> {
    check_index(p)?;
    if w.b().is_finite() {
        return Err(GammaError::Unsupported(format!("the CZ test needs b = inf, got b = {}", w.b())));
    }
    if !validate_nontrivial(w, p).cz_hypothesis {
        return Err(GammaError::Hypothesis(
            "CZ hypothesis fails: need int phi min(1, s^-p) < inf and int phi max(1, s^-p) = inf".into(),
        ));
    }
    let psi = DualWeight::new(p, w)?;
    let pts = grid.points();
    let phi_line = PhiLine::new(p, w, &pts)?;
    let psi_line = PsiLine::new(&psi, &pts)?;
    let feasible = |c: f64| -> Result<bool> { Ok(phi_line.feasible(c)? && psi_line.feasible(c)?) };
    let (mut lo, mut hi, mut found) = (0.0, 1.0, false);
    for _ in 0..CZ_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            lo = mid;
            found = true;
        } else {
            hi = mid;
        }
    }
    Ok(CzResult { admissible: found, c_star: found.then_some(lo) })
}

/// Limit at `end` of `(L(ct) + c^r t^r U(t)) / (L(t) + t^r U(t))` from the
/// asymptotes of `L` and `t^r U`.
fn line_limit(lower: Asymptote, upper_shifted: Asymptote, r: f64, c: f64, end: Endpoint) -> f64 {
    let lhs = lower.scale(c.powf(lower.power)).add(upper_shifted.scale(c.powf(r)), end);
    lhs.div(lower.add(upper_shifted, end)).limit(end)
}

struct PhiLine<'a> {
    p: f64,
    w: &'a PiecewisePowerWeight,
    pts: &'a [f64],
    /// `(Φ_p(t), t^p ∫_t^∞ φ s^{-p})` on the grid.
    table: Vec<(f64, f64)>,
    asym: [(Asymptote, Asymptote); 2],
}

impl<'a> PhiLine<'a> {
    fn new(p: f64, w: &'a PiecewisePowerWeight, pts: &'a [f64]) -> Result<Self> {
        let table = pts
            .iter()
            .map(|&t| Ok((phi_bracket(w, p, t)?, t.powf(p) * w.moment(t, f64::INFINITY, -p)?)))
            .collect::<Result<Vec<_>>>()?;
        let raw = w.raw();
        let asym = [Endpoint::Zero, Endpoint::Infinity]
            .map(|e| (raw.lower_moment_asymptote(0.0, e), raw.upper_moment_asymptote(-p, e).shift(p)));
        Ok(Self { p, w, pts, table, asym })
    }

    fn feasible(&self, c: f64) -> Result<bool> {
        for (i, end) in [Endpoint::Zero, Endpoint::Infinity].into_iter().enumerate() {
            let (lo, up) = self.asym[i];
            if line_limit(lo, up, self.p, c, end) > 0.5 * (1.0 + CZ_SLACK) {
                return Ok(false);
            }
        }
        let cp = c.powf(self.p);
        for (&t, &(phi, tail)) in self.pts.iter().zip(&self.table) {
            let lhs = self.w.moment(0.0, c * t, 0.0)? + cp * tail;
            if lhs > 0.5 * phi * (1.0 + CZ_SLACK) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct PsiLine<'a> {
    psi: &'a DualWeight,
    pp: f64,
    pts: &'a [f64],
    quad: Quadrature,
    /// `∫_0^{t_j} ψ` on the grid.
    head: Vec<f64>,
    /// `t^{p'} ∫_t^∞ ψ s^{-p'}` on the grid.
    tail: Vec<f64>,
    asym: [(Asymptote, Asymptote); 2],
}

impl<'a> PsiLine<'a> {
    fn new(psi: &'a DualWeight, pts: &'a [f64]) -> Result<Self> {
        let pp = psi.pprime;
        let quad = psi.quadrature();
        let n = pts.len();
        let head_steps = (0..n)
            .into_par_iter()
            .map(|j| if j == 0 { psi.moment(0.0, pts[0], 0.0) } else { psi.moment(pts[j - 1], pts[j], 0.0) })
            .collect::<Result<Vec<f64>>>()?;
        let tail_steps = (0..n)
            .into_par_iter()
            .map(|j| {
                if j + 1 == n {
                    psi.moment(pts[j], f64::INFINITY, -pp)
                } else {
                    psi.moment(pts[j], pts[j + 1], -pp)
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        let head: Vec<f64> = head_steps
            .iter()
            .scan(0.0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        let mut tail = vec![0.0; n];
        let mut acc = 0.0;
        for j in (0..n).rev() {
            acc += tail_steps[j];
            tail[j] = pts[j].powf(pp) * acc;
        }
        let mass = || psi.moment(0.0, f64::INFINITY, 0.0).unwrap_or(f64::INFINITY);
        let upper_total = || psi.moment(0.0, f64::INFINITY, -pp).unwrap_or(f64::INFINITY);
        let asym = [Endpoint::Zero, Endpoint::Infinity].map(|e| {
            let a = psi.asymptote(e);
            (lower_integral(a, e, mass), upper_integral(a, pp, e, upper_total).shift(pp))
        });
        Ok(Self { psi, pp, pts, quad, head, tail, asym })
    }

    /// `∫_0^x ψ` from the grid table plus a short quadrature.
    fn head_at(&self, x: f64) -> Result<f64> {
        let j = self.pts.partition_point(|&t| t <= x);
        if j == 0 {
            return self.psi.moment(0.0, x, 0.0);
        }
        let f = |s: f64| self.psi.value(s);
        Ok(self.head[j - 1] + self.quad.integrate(&f, self.pts[j - 1], x)?)
    }

    fn feasible(&self, c: f64) -> Result<bool> {
        for (i, end) in [Endpoint::Zero, Endpoint::Infinity].into_iter().enumerate() {
            let (lo, up) = self.asym[i];
            if line_limit(lo, up, self.pp, c, end) > 0.5 * (1.0 + CZ_SLACK) {
                return Ok(false);
            }
        }
        let cp = c.powf(self.pp);
        let ok = (0..self.pts.len())
            .into_par_iter()
            .map(|j| {
                let lhs = self.head_at(c * self.pts[j])? + cp * self.tail[j];
                Ok(lhs <= 0.5 * (self.head[j] + self.tail[j]) * (1.0 + CZ_SLACK))
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(ok.into_iter().all(|b| b))
    }
}

const EXP_EPS: f64 = 1e-9;

/// Asymptote of `∫_0^x g` from that of `g`; `total` is `∫_0^∞ g`.
fn lower_integral(a: Asymptote, end: Endpoint, total: impl Fn() -> f64) -> Asymptote {
    if a.is_infinite() {
        return a;
    }
    let (beta, k) = (a.power, a.log_power);
    let log_form = |coef: f64| Asymptote { coef, power: 0.0, log_power: k + 1.0 };
    if beta > -1.0 + EXP_EPS {
        return a.shift(1.0).scale(1.0 / (beta + 1.0));
    }
    match end {
        Endpoint::Zero if (beta + 1.0).abs() <= EXP_EPS && k < -1.0 => log_form(a.coef / (-k - 1.0)),
        Endpoint::Zero => Asymptote::infinite(),
        Endpoint::Infinity if (beta + 1.0).abs() <= EXP_EPS && k > -1.0 => log_form(a.coef / (k + 1.0)),
        Endpoint::Infinity if (beta + 1.0).abs() <= EXP_EPS && k == -1.0 => Asymptote::infinite(),
        Endpoint::Infinity => Asymptote::constant(total()),
    }
}

/// Asymptote of `∫_x^∞ g s^{-r}`; `total` is `∫_0^∞ g s^{-r}`.
fn upper_integral(a: Asymptote, r: f64, end: Endpoint, total: impl Fn() -> f64) -> Asymptote {
    if a.is_infinite() {
        return a;
    }
    let b = a.shift(-r);
    let (gamma, k) = (b.power, b.log_power);
    let log_form = |coef: f64| Asymptote { coef, power: 0.0, log_power: k + 1.0 };
    if gamma < -1.0 - EXP_EPS {
        return b.shift(1.0).scale(1.0 / (-gamma - 1.0));
    }
    match end {
        Endpoint::Infinity if (gamma + 1.0).abs() <= EXP_EPS && k < -1.0 => log_form(b.coef / (-k - 1.0)),
        Endpoint::Infinity => Asymptote::infinite(),
        Endpoint::Zero if (gamma + 1.0).abs() <= EXP_EPS && k > -1.0 => log_form(b.coef / (k + 1.0)),
        Endpoint::Zero if (gamma + 1.0).abs() <= EXP_EPS && k == -1.0 => Asymptote::infinite(),
        Endpoint::Zero => Asymptote::constant(total()),
    }
}
