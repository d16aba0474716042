//! The dual weight `ψ`, the dual-norm expression, a brute-force associate
//! norm oracle, and the consistency checks built on them.

use serde::{Deserialize, Serialize};

use crate::asymptote::{Asymptote, Endpoint};
use crate::error::{GammaError, Result};
use crate::functions::StepFunction;
use crate::norms::{gamma_norm_with, level_power_integral};
use crate::operators::{hardy_q, p_phi, p_q_p_phi, q_sub_p, stieltjes};
use crate::quadrature::{GaussLegendre, Quadrature};
use crate::weights::{conjugate, phi_bracket, GammaSpace, PiecewisePowerWeight, Weight};

/// The weight `ψ` dual to `φ`:
/// `ψ(t) = t^{p'-1} X(t) Y(t) / (X(t) + Y(t))^{p'+1}` with
/// `X = ∫_0^t φ` and `Y = t^p ∫_t^b φ(s) s^{-p} ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualWeight {
    pub p: f64,
    pub pprime: f64,
    weight: PiecewisePowerWeight,
    pub asym0: f64,
    pub asym_inf: Option<f64>,
    quad: Quadrature,
}

impl DualWeight {
    pub fn new(p: f64, w: &PiecewisePowerWeight) -> Result<Self> {
        let space = GammaSpace::new(p, w.clone())?;
        Ok(Self::from_space(&space))
    }

    pub fn from_space(space: &GammaSpace) -> Self {
        let mut dw = Self {
            p: space.p,
            pprime: space.pprime,
            weight: space.weight.clone(),
            asym0: 0.0,
            asym_inf: None,
            quad: Quadrature::default(),
        };
        dw.asym0 = dw.asymptote(Endpoint::Zero).power;
        if dw.weight.b().is_infinite() {
            dw.asym_inf = Some(dw.asymptote(Endpoint::Infinity).power);
        }
        dw
    }

    pub fn with_quadrature(mut self, quad: Quadrature) -> Self {
        self.quad = quad;
        self
    }

    pub fn source(&self) -> &PiecewisePowerWeight {
        &self.weight
    }

    /// `(X, Y)` at `t`.
    fn parts(&self, t: f64) -> (f64, f64) {
        let b = self.weight.b();
        let x = self.weight.moment(0.0, t, 0.0).unwrap_or(f64::NAN);
        let y = t.powf(self.p) * self.weight.moment(t, b, -self.p).unwrap_or(f64::NAN);
        (x, y)
    }

    /// `ψ(t)`; zero outside `(0, b)`.
    pub fn value(&self, t: f64) -> f64 {
        if !(t > 0.0 && t < self.weight.b()) {
            return 0.0;
        }
        let (x, y) = self.parts(t);
        let phi = x + y;
        (x / phi) * (y / phi) * (t / phi).powf(self.pprime - 1.0)
    }

    /// `(Pφ)(Q_pφ) / [(PQ_p)(φ)]^{p'+1}`, computed from the operators.
    /// Equals `p · ψ`.
    pub fn value_operator_form(&self, t: f64) -> Result<f64> {
        let a = p_phi(&self.weight, t)?;
        let q = q_sub_p(&self.weight, self.p, t)?;
        let pq = p_q_p_phi(&self.weight, self.p, t)?;
        Ok(a * q / pq.powf(self.pprime + 1.0))
    }

    /// Leading behaviour of `ψ` at an endpoint.
    pub fn asymptote(&self, end: Endpoint) -> Asymptote {
        let raw = self.weight.raw();
        let x = raw.lower_moment_asymptote(0.0, end);
        let y = raw.upper_moment_asymptote(-self.p, end).shift(self.p);
        let phi = x.add(y, end);
        x.mul(y).shift(self.pprime - 1.0).div(phi.powf(self.pprime + 1.0))
    }

    /// `d ln ψ / d ln t` by a central difference.
    pub fn local_slope(&self, t: f64) -> f64 {
        let h: f64 = 1e-4;
        let (lo, hi) = (t * (-h).exp(), t * h.exp());
        if hi >= self.weight.b() {
            return f64::NAN;
        }
        (self.value(hi).ln() - self.value(lo).ln()) / (2.0 * h)
    }

    /// Samples `(t, ψ(t), local slope)` on a log grid.
    pub fn sample(&self, grid: &[f64]) -> Vec<PsiSample> {
        grid.iter()
            .filter(|&&t| t > 0.0 && t < self.weight.b())
            .map(|&t| PsiSample { t, psi: self.value(t), local_slope: self.local_slope(t) })
            .collect()
    }
}

impl Weight for DualWeight {
    fn upper(&self) -> f64 {
        self.weight.b()
    }
    fn eval(&self, t: f64) -> f64 {
        self.value(t)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.weight.breakpoints()
    }
    fn exponent_at_zero(&self) -> Option<f64> {
        Some(self.asym0)
    }
    fn exponent_at_infinity(&self) -> Option<f64> {
        self.asym_inf
    }
    fn quadrature(&self) -> Quadrature {
        self.quad
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiSample {
    pub t: f64,
    pub psi: f64,
    pub local_slope: f64,
}

pub fn dual_weight(p: f64, w: &PiecewisePowerWeight) -> Result<DualWeight> {
    DualWeight::new(p, w)
}

/// The two terms of the dual-norm expression.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualNorm {
    /// `ρ_{p',ψ}(g)`.
    pub gamma_part: f64,
    /// `∫ g / (∫ φ)^{1/p}`, zero when `∫ φ = ∞`.
    pub l1_part: f64,
    pub value: f64,
}

/// `ρ_{p',ψ}(g) + ∫g / (∫φ)^{1/p}`.
pub fn dual_norm(p: f64, w: &PiecewisePowerWeight, g: &StepFunction) -> Result<f64> {
    Ok(dual_norm_parts(&DualWeight::new(p, w)?, g)?.value)
}

pub fn dual_norm_parts(psi: &DualWeight, g: &StepFunction) -> Result<DualNorm> {
    let g = g.restrict(psi.upper());
    let gamma_part = gamma_norm_with(psi.pprime, psi, &g)?;
    let mass = psi.weight.total_mass();
    let l1_part = if mass.is_finite() { g.integral() / mass.powf(1.0 / psi.p) } else { 0.0 };
    Ok(DualNorm { gamma_part, l1_part, value: gamma_part + l1_part })
}

/// Candidate family that produced the oracle's best ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleFamily {
    Characteristic,
    Extremal,
    Constant,
    CoordinateAscent,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub points_per_decade: usize,
    /// Grid spans `[10^-decades_below, 10^decades_above] · suppmax`.
    pub decades_below: f64,
    pub decades_above: f64,
    /// Maximum number of coordinate-ascent sweeps.
    pub budget: usize,
    /// Relative sweep improvement below which the ascent stops.
    pub sweep_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { points_per_decade: 16, decades_below: 6.0, decades_above: 3.0, budget: 50, sweep_tol: 1e-9 }
    }
}

impl OracleConfig {
    pub fn doubled(self) -> Self {
        Self { points_per_decade: 2 * self.points_per_decade, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub family: OracleFamily,
    pub characteristic: f64,
    /// Point `s` of the best `χ_(0,s)`.
    pub characteristic_argmax: f64,
    pub extremal: f64,
    pub constant: Option<f64>,
    pub ascent: f64,
    pub sweeps: usize,
    pub grid_points: usize,
}

/// Certified lower bound for `ρ'_{p,φ}(g) = sup ∫ f g / ρ_{p,φ}(f)`.
pub fn associate_norm_oracle(
    p: f64,
    w: &PiecewisePowerWeight,
    g: &StepFunction,
    config: &OracleConfig,
) -> Result<OracleResult> {
    let psi = DualWeight::new(p, w)?;
    associate_norm_oracle_with(&psi, g, config)
}

pub fn associate_norm_oracle_with(psi: &DualWeight, g: &StepFunction, config: &OracleConfig) -> Result<OracleResult> {
    let gstar = g.restrict(psi.upper()).rearrange().into_step();
    if gstar.is_zero() {
        return Ok(OracleResult::zero());
    }
    let lvl = gstar.average();
    let total = gstar.integral();
    let cumulative = move |s: f64| if s <= 0.0 { 0.0 } else { s * lvl.eval(s) };
    let problem = RatioProblem {
        psi,
        cumulative: &cumulative,
        total,
        breaks: gstar.breaks()[1..].to_vec(),
        scale: gstar.support_end(),
    };
    problem.solve(config)
}

impl OracleResult {
    fn zero() -> Self {
        Self {
            value: 0.0,
            family: OracleFamily::Zero,
            characteristic: 0.0,
            characteristic_argmax: f64::NAN,
            extremal: 0.0,
            constant: None,
            ascent: 0.0,
            sweeps: 0,
            grid_points: 0,
        }
    }
}

/// Maximizes `L(f) / ρ_{p,φ}(f)` over decreasing `f`, where
/// `L(f) = ∫ f dG` for an increasing concave cumulative `G`.
struct RatioProblem<'a> {
    psi: &'a DualWeight,
    cumulative: &'a (dyn Fn(f64) -> f64 + Sync),
    /// `G(∞)`.
    total: f64,
    breaks: Vec<f64>,
    scale: f64,
}

impl RatioProblem<'_> {
    fn weight(&self) -> &PiecewisePowerWeight {
        &self.psi.weight
    }

    fn grid(&self, config: &OracleConfig) -> Vec<f64> {
        let b = self.weight().b();
        let lo = self.scale * 10f64.powf(-config.decades_below);
        let n = ((config.decades_below + config.decades_above) * config.points_per_decade as f64).round() as usize;
        let step = std::f64::consts::LN_10 / config.points_per_decade as f64;
        let mut grid: Vec<f64> = (0..=n).map(|k| lo * (step * k as f64).exp()).filter(|&s| s < b).collect();
        grid.extend(self.breaks.iter().copied().filter(|&s| s < b));
        if b.is_finite() {
            grid.push(b);
        }
        grid.sort_by(f64::total_cmp);
        // Merge points closer than a tiny relative gap.
        grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
        grid
    }

    fn char_ratio(&self, s: f64) -> Result<f64> {
        let phi = phi_bracket(self.weight(), self.psi.p, s)?;
        Ok((self.cumulative)(s) / phi.powf(1.0 / self.psi.p))
    }

    /// `L(f)` for a step function.
    fn pairing(&self, f: &StepFunction) -> f64 {
        f.pieces().map(|(lo, hi, v)| v * ((self.cumulative)(hi) - (self.cumulative)(lo))).sum()
    }

    fn step_ratio(&self, f: &StepFunction) -> Result<f64> {
        let n = gamma_norm_with(self.psi.p, self.weight(), f)?;
        if n == 0.0 {
            return Ok(0.0);
        }
        Ok(self.pairing(f) / n)
    }

    fn solve(&self, config: &OracleConfig) -> Result<OracleResult> {
        let grid = self.grid(config);
        let p = self.psi.p;

        // Characteristic functions, then golden-section refinement around the best.
        let ratios: Vec<f64> = grid.iter().map(|&s| self.char_ratio(s)).collect::<Result<_>>()?;
        let (mut kbest, mut char_best) = (0, f64::NEG_INFINITY);
        for (k, &r) in ratios.iter().enumerate() {
            if r > char_best {
                kbest = k;
                char_best = r;
            }
        }
        let mut char_arg = grid[kbest];
        let lo = if kbest > 0 { grid[kbest - 1] } else { grid[0] * 0.5 };
        let hi = if kbest + 1 < grid.len() { grid[kbest + 1] } else { grid[kbest] };
        let (s, r) = golden_max(|u| self.char_ratio(u.exp()).unwrap_or(f64::NEG_INFINITY), lo.ln(), hi.ln(), 60);
        if r > char_best {
            char_best = r;
            char_arg = s.exp();
        }

        // Discretized extremal f = Q h0 with h0 = (G(t)/t)^{p'-1} ψ.
        let extremal_f = self.extremal_candidate(&grid);
        let extremal = match &extremal_f {
            Some(f) => self.step_ratio(f)?,
            None => 0.0,
        };

        let mass = self.weight().total_mass();
        let constant = mass.is_finite().then(|| self.total / mass.powf(1.0 / p));

        // Coordinate ascent over the cone of decreasing steps on the grid.
        let mut start = vec![0.0; grid.len()];
        let mut ascent_from_char = true;
        if let Some(f) = &extremal_f {
            if extremal > ratios[kbest] {
                ascent_from_char = false;
                let vals: Vec<f64> = f.values().to_vec();
                for k in 0..grid.len() {
                    start[k] = (vals[k] - vals.get(k + 1).copied().unwrap_or(0.0)).max(0.0);
                }
            }
        }
        if ascent_from_char {
            start[kbest] = 1.0;
        }
        let mut cone = ConeAscent::new(self, &grid, start)?;
        let sweeps = cone.run(config.budget, config.sweep_tol);
        let ascent = self.step_ratio(&cone.step_function())?;

        let mut best = (char_best, OracleFamily::Characteristic);
        for (v, fam) in [
            (extremal, OracleFamily::Extremal),
            (constant.unwrap_or(f64::NEG_INFINITY), OracleFamily::Constant),
            (ascent, OracleFamily::CoordinateAscent),
        ] {
            if v > best.0 {
                best = (v, fam);
            }
        }
        Ok(OracleResult {
            value: best.0,
            family: best.1,
            characteristic: char_best,
            characteristic_argmax: char_arg,
            extremal,
            constant,
            ascent,
            sweeps,
            grid_points: grid.len(),
        })
    }

    /// Values of `Q h0` at geometric midpoints, as a decreasing step on the grid.
    fn extremal_candidate(&self, grid: &[f64]) -> Option<StepFunction> {
        let pp = self.psi.pprime;
        let k = grid.len();
        let mids: Vec<f64> = grid.windows(2).map(|w| (w[0] * w[1]).sqrt()).collect();
        let h: Vec<f64> = mids
            .iter()
            .map(|&m| ((self.cumulative)(m) / m).powf(pp - 1.0) * self.psi.value(m))
            .collect();
        // tail[j] = Q(h0_step)(grid[j])
        let mut tail = vec![0.0; k];
        for j in (0..k - 1).rev() {
            tail[j] = tail[j + 1] + h[j] * (grid[j + 1] / grid[j]).ln();
        }
        let mut values = Vec::with_capacity(k);
        values.push(tail[0]);
        for j in 0..k - 1 {
            values.push(tail[j + 1] + h[j] * (grid[j + 1] / mids[j]).ln());
        }
        if !values.iter().all(|v| v.is_finite()) || values[0] <= 0.0 {
            return None;
        }
        let mut breaks = vec![0.0];
        breaks.extend_from_slice(grid);
        StepFunction::new(breaks, values).ok()
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Coordinate ascent for `L(c) / N(c)` with `f = Σ c_k χ_(0,s_k)`, `c ≥ 0`.
///
/// `N^p` is approximated by two Gauss nodes per grid interval in `ln t`
/// plus the exact head and tail; the final ratio is always recomputed with
/// the accurate norm.
struct ConeAscent<'a> {
    grid: &'a [f64],
    p: f64,
    g: Vec<f64>,
    c: Vec<f64>,
    /// Node positions (head at index 0, tail last), weights, values.
    nodes: Vec<f64>,
    omega: Vec<f64>,
    v: Vec<f64>,
    /// Interval index of each node, so that `m_k(n) = 1` iff `iv[n] < k`.
    iv: Vec<usize>,
    l: f64,
}

impl<'a> ConeAscent<'a> {
    fn new(problem: &RatioProblem<'_>, grid: &'a [f64], c: Vec<f64>) -> Result<Self> {
        let w = problem.weight();
        let p = problem.psi.p;
        let k = grid.len();
        let gl = GaussLegendre::new(2);
        let mut nodes = vec![f64::NAN];
        let mut omega = vec![w.moment(0.0, grid[0], 0.0)?];
        let mut iv = vec![0usize];
        for j in 0..k - 1 {
            let (a, b) = (grid[j].ln(), grid[j + 1].ln());
            let half = 0.5 * (b - a);
            for (x, wt) in gl.nodes().iter().zip(gl.weights()) {
                let t = (a + b) * 0.5 + half * x;
                let t = t.exp();
                nodes.push(t);
                omega.push(wt * half * t * w.eval(t));
                iv.push(j + 1);
            }
        }
        let b = w.b();
        let last = grid[k - 1];
        nodes.push(f64::INFINITY);
        omega.push(if last < b { w.moment(last, b, -p)? } else { 0.0 });
        iv.push(k);
        let g: Vec<f64> = grid.iter().map(|&s| (problem.cumulative)(s)).collect();
        let l = c.iter().zip(&g).map(|(a, b)| a * b).sum();
        let mut me = Self { grid, p, g, c, nodes, omega, v: Vec::new(), iv, l };
        me.v = me.values();
        Ok(me)
    }

    fn multiplier(&self, n: usize, k: usize) -> f64 {
        if self.nodes[n].is_infinite() {
            self.grid[k]
        } else if self.iv[n] <= k {
            1.0
        } else {
            self.grid[k] / self.nodes[n]
        }
    }

    fn values(&self) -> Vec<f64> {
        let k = self.grid.len();
        let mut suffix = vec![0.0; k + 1];
        for j in (0..k).rev() {
            suffix[j] = suffix[j + 1] + self.c[j];
        }
        let mut prefix = vec![0.0; k + 1];
        for j in 0..k {
            prefix[j + 1] = prefix[j] + self.c[j] * self.grid[j];
        }
        (0..self.nodes.len())
            .map(|n| {
                let j = self.iv[n];
                let t = self.nodes[n];
                if n == 0 {
                    suffix[0]
                } else if t.is_infinite() {
                    prefix[k]
                } else {
                    suffix[j] + prefix[j] / t
                }
            })
            .collect()
    }

    fn norm_p(&self) -> f64 {
        self.v.iter().zip(&self.omega).map(|(v, w)| w * v.powf(self.p)).sum()
    }

    fn ratio(&self) -> f64 {
        let n = self.norm_p();
        if n <= 0.0 {
            0.0
        } else {
            self.l / n.powf(1.0 / self.p)
        }
    }

    /// `(S, S', S'')` along direction `m` at offset `delta`.
    fn line(&self, m: &[f64], delta: f64) -> (f64, f64, f64) {
        let p = self.p;
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for n in 0..self.v.len() {
            if self.omega[n] == 0.0 {
                continue;
            }
            let u = (self.v[n] + delta * m[n]).max(0.0);
            if u == 0.0 {
                continue;
            }
            let up1 = u.powf(p - 1.0);
            let w = self.omega[n];
            s0 += w * up1 * u;
            s1 += w * up1 * m[n];
            s2 += w * up1 / u * m[n] * m[n];
        }
        (s0, p * s1, p * (p - 1.0) * s2)
    }

    fn objective(&self, gk: f64, s0: f64, delta: f64) -> f64 {
        let l = self.l + delta * gk;
        if l <= 0.0 || s0 <= 0.0 {
            return f64::NEG_INFINITY;
        }
        l.ln() - s0.ln() / self.p
    }

    fn slope(&self, gk: f64, delta: f64, s: (f64, f64, f64)) -> (f64, f64) {
        let l = self.l + delta * gk;
        let d1 = gk / l - s.1 / (self.p * s.0);
        let d2 = -(gk / l).powi(2) - (s.2 / s.0 - (s.1 / s.0).powi(2)) / self.p;
        (d1, d2)
    }

    fn update(&mut self, k: usize, scale: f64) {
        let m: Vec<f64> = (0..self.nodes.len()).map(|n| self.multiplier(n, k)).collect();
        let gk = self.g[k];
        let s_at0 = self.line(&m, 0.0);
        let h0 = self.objective(gk, s_at0.0, 0.0);
        let (d0, _) = self.slope(gk, 0.0, s_at0);
        if !d0.is_finite() || d0 == 0.0 {
            return;
        }
        let (mut lo, mut hi);
        if d0 > 0.0 {
            lo = 0.0;
            hi = self.c[k].max(1e-3 * scale).max(f64::MIN_POSITIVE);
            let mut expanded = 0;
            loop {
                let s = self.line(&m, hi);
                let (d, _) = self.slope(gk, hi, s);
                if !(d > 0.0) || expanded > 200 {
                    break;
                }
                lo = hi;
                hi *= 2.0;
                expanded += 1;
            }
        } else {
            if self.c[k] == 0.0 {
                return;
            }
            lo = -self.c[k];
            hi = 0.0;
            let s = self.line(&m, lo);
            let (d, _) = self.slope(gk, lo, s);
            if d <= 0.0 && self.objective(gk, s.0, lo) > h0 {
                self.apply(k, lo, &m);
                return;
            }
        }
        let mut delta = 0.5 * (lo + hi);
        for _ in 0..60 {
            let s = self.line(&m, delta);
            let (d1, d2) = self.slope(gk, delta, s);
            if !d1.is_finite() {
                hi = delta;
            } else if d1 > 0.0 {
                lo = delta;
            } else {
                hi = delta;
            }
            if hi - lo <= 1e-13 * (hi.abs() + lo.abs() + scale) || d1 == 0.0 {
                break;
            }
            let newton = delta - d1 / d2;
            delta = if d2 < 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        }
        let s = self.line(&m, delta);
        if self.objective(gk, s.0, delta) > h0 {
            self.apply(k, delta, &m);
        }
    }

    fn apply(&mut self, k: usize, delta: f64, m: &[f64]) {
        self.c[k] = (self.c[k] + delta).max(0.0);
        self.l += delta * self.g[k];
        for (v, mn) in self.v.iter_mut().zip(m) {
            *v = (*v + delta * mn).max(0.0);
        }
    }

    /// Runs at most `budget` sweeps; returns the number performed.
    fn run(&mut self, budget: usize, tol: f64) -> usize {
        let mut r = self.ratio();
        for sweep in 0..budget {
            let scale = self.c.iter().cloned().fold(0.0, f64::max);
            for k in 0..self.grid.len() {
                self.update(k, scale);
            }
            // Resynchronize against drift in the incremental node values.
            self.v = self.values();
            self.l = self.c.iter().zip(&self.g).map(|(a, b)| a * b).sum();
            let next = self.ratio();
            if next <= r * (1.0 + tol) {
                return sweep + 1;
            }
            r = next;
        }
        budget
    }

    fn step_function(&self) -> StepFunction {
        let k = self.grid.len();
        let mut values = vec![0.0; k];
        let mut acc = 0.0;
        for j in (0..k).rev() {
            acc += self.c[j];
            values[j] = acc;
        }
        let mut breaks = vec![0.0];
        breaks.extend_from_slice(self.grid);
        StepFunction::new(breaks, values).expect("cone coefficients are nonnegative")
    }
}

/// `t^{-p'}[∫_0^t ψ + t^{p'} ∫_t^∞ ψ s^{-p'}] / Φ_p(t)^{1-p'}`.
pub fn phps_ratio(p: f64, w: &PiecewisePowerWeight, t: f64) -> Result<f64> {
    phps_ratio_with(&DualWeight::new(p, w)?, t)
}

pub fn phps_ratio_with(psi: &DualWeight, t: f64) -> Result<f64> {
    if psi.upper().is_finite() {
        return Err(GammaError::Unsupported("the fundamental-function identity is stated for b = inf".into()));
    }
    let pp = psi.pprime;
    let head = psi.moment(0.0, t, 0.0)?;
    let tail = psi.moment(t, f64::INFINITY, -pp)?;
    let num = t.powf(-pp) * (head + t.powf(pp) * tail);
    let den = phi_bracket(&psi.weight, psi.p, t)?.powf(1.0 - pp);
    Ok(num / den)
}

/// Which inequality of the key lemma to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaSide {
    /// `f` nonincreasing.
    I,
    /// `f` nondecreasing.
    Ii,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.constant * self.rhs * (1.0 + 1e-12)
    }
}

/// Envelope constant `10 (p+1)^2` for the key lemma.
pub fn lemma_constant(p: f64) -> f64 {
    10.0 * (p + 1.0).powi(2)
}

/// Both sides of the key lemma's inequality (i) or (ii), with `ψ` in its
/// operator form `(Pφ)(Q_pφ)/[(PQ_p)(φ)]^{p'+1} = p ψ`.
pub fn lemma41_check(
    p: f64,
    w: &PiecewisePowerWeight,
    f: &StepFunction,
    g: &StepFunction,
    side: LemmaSide,
) -> Result<LemmaCheck> {
    let psi = DualWeight::new(p, w)?;
    let constant = lemma_constant(p);
    let b = w.b();
    let f = f.restrict(b);
    let g = g.restrict(b);
    match side {
        LemmaSide::I if !f.is_nonincreasing() => {
            return Err(GammaError::Precondition("inequality (i) needs f nonincreasing".into()))
        }
        LemmaSide::Ii if !f.is_nondecreasing() => {
            return Err(GammaError::Precondition("inequality (ii) needs f nondecreasing".into()))
        }
        _ => {}
    }
    if f.is_zero() || g.is_zero() {
        return Ok(LemmaCheck { lhs: 0.0, rhs: 0.0, constant });
    }
    let pp = psi.pprime;
    let expo = 1.0 / pp + 1.0;
    let kernel = |t: f64| -> f64 {
        let x = w.moment(0.0, t, 0.0).unwrap_or(f64::NAN);
        let y = t.powf(p) * w.moment(t, b, -p).unwrap_or(f64::NAN);
        let num = match side {
            LemmaSide::I => x,
            LemmaSide::Ii => p * y,
        };
        (num / (x + y)).powf(expo)
    };
    let fg = |t: f64| f.eval(t) * g.eval(t) * kernel(t);
    let mut breaks: Vec<f64> = f.breaks()[1..].iter().chain(&g.breaks()[1..]).copied().collect();
    breaks.extend(w.breakpoints());
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let end = f.support_end().min(g.support_end());
    let inner: Vec<f64> = breaks.iter().copied().filter(|&x| x < end).collect();
    let quad = Quadrature::default();
    let lhs = quad.integrate_split(&fg, 0.0, end, &inner, Some(0.0), None)?;
    let rhs = match side {
        LemmaSide::I => {
            let fp: f64 = f.power_moment(p, |lo, hi| w.moment(lo, hi, 0.0))?;
            let pg = p * level_power_integral(&g.average(), pp, &psi)?;
            let mass = w.total_mass();
            let l1 = if mass.is_finite() { g.integral() / mass.powf(1.0 / p) } else { 0.0 };
            fp.powf(1.0 / p) * (pg.powf(1.0 / pp) + l1)
        }
        LemmaSide::Ii => {
            let fp: f64 = f.power_moment(p, |lo, hi| w.moment(lo, hi, -p))?;
            let tail = |t: f64| g.integral_from(t).powf(pp) * psi.value(t);
            let gend = g.support_end();
            let gbreaks: Vec<f64> =
                g.breaks()[1..].iter().chain(&w.breakpoints()).copied().filter(|&x| x < gend).collect();
            let mut gbreaks = gbreaks;
            gbreaks.sort_by(f64::total_cmp);
            gbreaks.dedup();
            let gi = p * quad.integrate_split(&tail, 0.0, gend, &gbreaks, Some(psi.asym0), None)?;
            fp.powf(1.0 / p) * gi.powf(1.0 / pp)
        }
    };
    Ok(LemmaCheck { lhs, rhs, constant })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaRatio {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub family: OracleFamily,
}

/// Ratio of `sup_{f ∈ Ω} ∫fg / (∫f^pφ)^{1/p}` (over `f = h**`) to
/// `(∫ (Sg)^{p'} ψ)^{1/p'}`; defined as 1 when `g = 0`.
pub fn omega_duality_ratio(p: f64, w: &PiecewisePowerWeight, g: &StepFunction) -> Result<f64> {
    Ok(omega_duality_with(&DualWeight::new(p, w)?, g, &OracleConfig::default())?.ratio)
}

pub fn omega_duality_with(psi: &DualWeight, g: &StepFunction, config: &OracleConfig) -> Result<OmegaRatio> {
    let w = &psi.weight;
    if w.b().is_finite() {
        return Err(GammaError::Unsupported("the Omega duality is stated on (0, inf)".into()));
    }
    if w.total_mass().is_finite() {
        return Err(GammaError::Hypothesis("requires int_0^inf phi = inf".into()));
    }
    if g.is_zero() {
        return Ok(OmegaRatio { lhs: 0.0, rhs: 0.0, ratio: 1.0, family: OracleFamily::Zero });
    }
    // ∫ h** g = ∫ h* Qg, and G(s) = ∫_0^s Qg = ∫_0^s g + s (Qg)(s).
    let qg = hardy_q(g, f64::INFINITY);
    let gc = g.clone();
    let cumulative = move |s: f64| if s <= 0.0 { 0.0 } else { gc.integral_up_to(s) + s * qg.value(s) };
    let problem = RatioProblem {
        psi,
        cumulative: &cumulative,
        total: g.integral(),
        breaks: g.breaks()[1..].to_vec(),
        scale: g.support_end(),
    };
    let sup = problem.solve(config)?;
    let pp = psi.pprime;
    let sg = |t: f64| stieltjes(g, t).powf(pp) * psi.value(t);
    let inner: Vec<f64> = g.breaks()[1..].iter().chain(&w.breakpoints()).copied().collect();
    let mut inner = inner;
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    let quad = psi.quad;
    let rhs = quad
        .integrate_split(&sg, 0.0, f64::INFINITY, &inner, Some(psi.asym0), psi.asym_inf.map(|e| e - pp))?
        .powf(1.0 / pp);
    Ok(OmegaRatio { lhs: sup.value, rhs, ratio: sup.value / rhs, family: sup.family })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AppendixBalance {
    /// Left side of the balance equation minus one.
    pub m2_residual: f64,
    /// `φ̂(t)^{1-p'} = t^{p'} φ(t) / Φ_p(t)^{p'}`.
    pub phihat_value: f64,
    pub domination_ok: bool,
    /// `ψ̄(t)^{1-p'} = (Pφ)(Q_pφ) / [(Pφ) + (Q_pφ)]^{p'+1}`.
    pub psibar_value: f64,
    /// The two sides of the tail domination at `s = t`.
    pub domination_lhs: f64,
    pub domination_rhs: f64,
}

/// `(Pφ)(Q_pφ) / [(Pφ) + (Q_pφ)]^{p'+1}`.
pub fn psibar(w: &PiecewisePowerWeight, p: f64, t: f64) -> f64 {
    let b = w.b();
    let pp = conjugate(p);
    let x = w.moment(0.0, t, 0.0).unwrap_or(f64::NAN) / t;
    let q = p * t.powf(p - 1.0) * w.moment(t, b, -p).unwrap_or(f64::NAN);
    x * q / (x + q).powf(pp + 1.0)
}

/// Balance equation residual, `φ̂` and the tail domination at `t`.
pub fn appendix_balance(p: f64, w: &PiecewisePowerWeight, t: f64) -> Result<AppendixBalance> {
    appendix_balance_with(&DualWeight::new(p, w)?, t)
}

pub fn appendix_balance_with(psi: &DualWeight, t: f64) -> Result<AppendixBalance> {
    let w = &psi.weight;
    let (p, pp) = (psi.p, psi.pprime);
    if w.b().is_finite() {
        return Err(GammaError::Unsupported("the balance equation is stated on (0, inf)".into()));
    }
    if !(t > 0.0) {
        return Err(GammaError::Domain(format!("point {t} must be positive")));
    }
    let quad = psi.quad;
    let raw = w.raw();
    let mut breaks = w.breakpoints();
    breaks.push(t);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let a0 = raw.exponent_at_zero();
    let ainf = raw.exponent_at_infinity();

    let first = |s: f64| w.eval(s) / (s + t).powf(p);
    let i1 = quad.integrate_split(&first, 0.0, f64::INFINITY, &breaks, Some(a0), ainf.map(|e| e - p))?;
    let second = |s: f64| (t / (s + t)).powf(pp) * psibar(w, p, s);
    let i2 = quad.integrate_split(&second, 0.0, f64::INFINITY, &breaks, Some(psi.asym0), psi.asym_inf.map(|e| e - pp))?;
    let m2 = i1.powf(1.0 / p) * i2.powf(1.0 / pp);

    let bracket = |s: f64| phi_bracket(w, p, s).unwrap_or(f64::NAN);
    let phihat = |s: f64| s.powf(pp) * w.eval(s) / bracket(s).powf(pp);
    // Tail domination with ψ in operator form, p ψ.
    let lhs_f = |y: f64| p * psi.value(y) * y.powf(-pp);
    let rhs_f = |y: f64| phihat(y) * y.powf(-pp);
    let tail_breaks: Vec<f64> = breaks.iter().copied().filter(|&x| x > t).collect();
    let lhs = quad.integrate_split(&lhs_f, t, f64::INFINITY, &tail_breaks, None, psi.asym_inf.map(|e| e - pp))?;
    let rhs = quad.integrate_split(&rhs_f, t, f64::INFINITY, &tail_breaks, None, ainf.map(|e| e * (1.0 - pp) - pp))?
        / pp;
    Ok(AppendixBalance {
        m2_residual: m2 - 1.0,
        phihat_value: phihat(t),
        domination_ok: w.total_mass().is_infinite() && lhs >= rhs,
        psibar_value: psibar(w, p, t),
        domination_lhs: lhs,
        domination_rhs: rhs,
    })
}
