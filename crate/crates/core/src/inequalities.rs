//! Constants of the weighted Hardy and Stieltjes inequalities and norms of
//! embeddings between Gamma spaces.
//!
//! Hardy weights `u, v` act as multipliers (`u · Pf` inside the power);
//! Stieltjes weights act as measures (`(Sf)^q u`). Weights are raw
//! [`PiecewisePower`] functions since `v` may have any exponent.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptote::{Asymptote, Endpoint};
use crate::duality::DualWeight;
use crate::error::{GammaError, Result};
use crate::functions::StepFunction;
use crate::grid::{try_sup_with_limits, LogGrid, SupResult};
use crate::norms::{check_index, gamma_norm_with, level_power_integral, weighted_lp_norm};
use crate::operators::{stieltjes, HardyQ};
use crate::quadrature::Quadrature;
use crate::sampling::StepSampler;
use crate::weights::{bracket_asymptote, conjugate, phi_bracket, validate_nontrivial, PiecewisePower, PiecewisePowerWeight};

/// Grid and integrator settings shared by the constant searches.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    pub grid: LogGrid,
    pub quad: Quadrature,
}

/// How a constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantForm {
    /// A supremum over `t`.
    Supremum,
    /// An integral raised to `1/q - 1/p`.
    Integral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    #[serde(with = "crate::serde_ext")]
    pub value: f64,
    pub form: ConstantForm,
    pub sup: Option<SupResult>,
    /// Supremum of the `max(s, t)` surrogate kernel, when one was used.
    pub surrogate: Option<SupResult>,
}

impl ConstantReport {
    fn from_sup(sup: SupResult) -> Self {
        Self { value: sup.value, form: ConstantForm::Supremum, sup: Some(sup), surrogate: None }
    }

    fn integral(value: f64) -> Self {
        Self { value, form: ConstantForm::Integral, sup: None, surrogate: None }
    }
}

/// Both sides of a sampled inequality `lhs ≤ C · rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sides {
    #[serde(with = "crate::serde_ext")]
    pub lhs: f64,
    #[serde(with = "crate::serde_ext")]
    pub rhs: f64,
}

impl Sides {
    pub fn ratio(&self) -> f64 {
        if self.lhs == 0.0 {
            0.0
        } else {
            self.lhs / self.rhs
        }
    }
}

fn check_pq(p: f64, q: f64) -> Result<()> {
    check_index(p)?;
    check_index(q)?;
    if p > q {
        return Err(GammaError::Unsupported(format!(
            "this form of the Hardy condition needs p <= q, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// `a^{1/q} c^{1/p'}` with `0 · ∞ = 0`.
fn product(a: f64, ea: f64, c: f64, ec: f64) -> f64 {
    if a == 0.0 || c == 0.0 {
        0.0
    } else {
        a.powf(ea) * c.powf(ec)
    }
}

fn restricted(u: &PiecewisePower, v: &PiecewisePower, b: f64) -> Result<(PiecewisePower, PiecewisePower)> {
    if !(b > 0.0) || b > u.b || b > v.b {
        return Err(GammaError::Domain(format!(
            "b = {b} must be positive and at most the weights' endpoints ({}, {})",
            u.b, v.b
        )));
    }
    Ok((u.restrict(b)?, v.restrict(b)?))
}

fn hardy_sup(
    b: f64,
    a: PiecewisePower,
    a_upper: bool,
    c: PiecewisePower,
    ea: f64,
    ec: f64,
    opts: &SearchOptions,
) -> Result<SupResult> {
    // One factor integrates over (r, b), the other over (0, r).
    let (up, low) = if a_upper { (&a, &c) } else { (&c, &a) };
    let (e_up, e_low) = if a_upper { (ea, ec) } else { (ec, ea) };
    let f = |r: f64| -> Result<f64> { Ok(product(up.moment(r, b, 0.0)?, e_up, low.moment(0.0, r, 0.0)?, e_low)) };
    let limit = |end: Endpoint| {
        up.upper_moment_asymptote(0.0, end)
            .powf(e_up)
            .mul(low.lower_moment_asymptote(0.0, end).powf(e_low))
            .limit(end)
    };
    // At a finite b the (r, b) factor vanishes as r → b.
    let lim_inf = if b.is_finite() { 0.0 } else { limit(Endpoint::Infinity) };
    try_sup_with_limits(f, &opts.grid.points_below(b), limit(Endpoint::Zero), lim_inf)
}

/// Least constant of `(∫_0^b (u Pf)^q)^{1/q} ≤ C (∫_0^b (v f)^p)^{1/p}`, up to
/// equivalence: `sup_r (∫_r^b (u/t)^q)^{1/q} (∫_0^r v^{-p'})^{1/p'}`.
pub fn hardy_p_constant(p: f64, q: f64, u: &PiecewisePower, v: &PiecewisePower, b: f64) -> Result<f64> {
    Ok(hardy_p_constant_with(p, q, u, v, b, &SearchOptions::default())?.value)
}

pub fn hardy_p_constant_with(
    p: f64,
    q: f64,
    u: &PiecewisePower,
    v: &PiecewisePower,
    b: f64,
    opts: &SearchOptions,
) -> Result<ConstantReport> {
    check_pq(p, q)?;
    let (u, v) = restricted(u, v, b)?;
    let pp = conjugate(p);
    let a = u.powf(q).times_power(-q);
    let c = v.powf(-pp);
    Ok(ConstantReport::from_sup(hardy_sup(b, a, true, c, 1.0 / q, 1.0 / pp, opts)?))
}

/// Least constant for the dual operator `Q`, up to equivalence:
/// `sup_r (∫_0^r u^q)^{1/q} (∫_r^b (t v)^{-p'})^{1/p'}`.
pub fn hardy_q_constant(p: f64, q: f64, u: &PiecewisePower, v: &PiecewisePower, b: f64) -> Result<f64> {
    Ok(hardy_q_constant_with(p, q, u, v, b, &SearchOptions::default())?.value)
}

pub fn hardy_q_constant_with(
    p: f64,
    q: f64,
    u: &PiecewisePower,
    v: &PiecewisePower,
    b: f64,
    opts: &SearchOptions,
) -> Result<ConstantReport> {
    check_pq(p, q)?;
    let (u, v) = restricted(u, v, b)?;
    let pp = conjugate(p);
    let a = u.powf(q);
    let c = v.powf(-pp).times_power(-pp);
    Ok(ConstantReport::from_sup(hardy_sup(b, a, false, c, 1.0 / q, 1.0 / pp, opts)?))
}

/// `((∫ (u · Pf)^q)^{1/q}, (∫ (v f)^p)^{1/p})` on `(0, b)`.
pub fn hardy_p_sides(
    p: f64,
    q: f64,
    u: &PiecewisePower,
    v: &PiecewisePower,
    b: f64,
    f: &StepFunction,
) -> Result<Sides> {
    let (u, v) = restricted(u, v, b)?;
    let f = f.restrict(b);
    let lhs = level_power_integral(&f.average(), q, &u.powf(q))?.powf(1.0 / q);
    Ok(Sides { lhs, rhs: weighted_lp_norm(p, &v.powf(p), &f)? })
}

/// `((∫ (u · Qf)^q)^{1/q}, (∫ (v f)^p)^{1/p})` on `(0, b)`.
pub fn hardy_q_sides(
    p: f64,
    q: f64,
    u: &PiecewisePower,
    v: &PiecewisePower,
    b: f64,
    f: &StepFunction,
) -> Result<Sides> {
    let (u, v) = restricted(u, v, b)?;
    let f = f.restrict(b);
    let qf = HardyQ::new(&f, b);
    let g = |t: f64| (u.eval(t) * qf.value(t)).powf(q);
    let mut breaks = u.breakpoints();
    breaks.extend_from_slice(f.breaks());
    let lhs = Quadrature::default()
        .integrate_split(&g, 0.0, f.support_end(), &breaks, Some(q * u.exponent_at_zero()), None)?
        .powf(1.0 / q);
    Ok(Sides { lhs, rhs: weighted_lp_norm(p, &v.powf(p), &f)? })
}

/// `((∫ (Sf)^q u)^{1/q}, (∫ f^p v)^{1/p})` on `(0, ∞)`.
pub fn stieltjes_sides(p: f64, q: f64, u: &PiecewisePower, v: &PiecewisePower, f: &StepFunction) -> Result<Sides> {
    check_infinite(u)?;
    check_infinite(v)?;
    let g = |t: f64| stieltjes(f, t).powf(q) * u.eval(t);
    let mut breaks = u.breakpoints();
    breaks.extend_from_slice(f.breaks());
    let a_inf = u.exponent_at_infinity().expect("b is infinite");
    let lhs = Quadrature::default()
        .integrate_split(&g, 0.0, f64::INFINITY, &breaks, Some(u.exponent_at_zero()), Some(a_inf - q))?
        .powf(1.0 / q);
    Ok(Sides { lhs, rhs: weighted_lp_norm(p, v, f)? })
}

fn check_infinite(w: &PiecewisePower) -> Result<()> {
    if w.b.is_finite() {
        return Err(GammaError::Unsupported(format!("needs a weight on (0, inf), got b = {}", w.b)));
    }
    Ok(())
}

/// Inner integrals of the Stieltjes condition at scale `t`.
struct StieltjesKernel<'a> {
    p: f64,
    q: f64,
    pp: f64,
    u: &'a PiecewisePower,
    /// `v^{1-p'}`.
    vm: PiecewisePower,
    quad: Quadrature,
}

impl StieltjesKernel<'_> {
    /// `(∫ (t/max(s,t))^q u, ∫ v^{1-p'} max(s,t)^{-p'})`, exact.
    fn surrogate(&self, t: f64) -> Result<(f64, f64)> {
        let (q, pp) = (self.q, self.pp);
        let i1 = self.u.moment(0.0, t, 0.0)? + t.powf(q) * self.u.moment(t, f64::INFINITY, -q)?;
        let i2 = t.powf(-pp) * self.vm.moment(0.0, t, 0.0)? + self.vm.moment(t, f64::INFINITY, -pp)?;
        Ok((i1, i2))
    }

    fn surrogate_asymptote(&self, end: Endpoint) -> (Asymptote, Asymptote) {
        let (q, pp) = (self.q, self.pp);
        let i1 = self.u.lower_moment_asymptote(0.0, end).add(self.u.upper_moment_asymptote(-q, end).shift(q), end);
        let i2 = self
            .vm
            .lower_moment_asymptote(0.0, end)
            .shift(-pp)
            .add(self.vm.upper_moment_asymptote(-pp, end), end);
        (i1, i2)
    }

    /// `(∫ (t/(s+t))^q u, ∫ v^{1-p'} (s+t)^{-p'})` by quadrature.
    fn exact(&self, t: f64) -> Result<(f64, f64)> {
        let (q, pp) = (self.q, self.pp);
        let mut bu = self.u.breakpoints();
        bu.push(t);
        let f1 = |s: f64| (t / (s + t)).powf(q) * self.u.eval(s);
        let a_inf = self.u.exponent_at_infinity().expect("b is infinite");
        let i1 = self.quad.integrate_split(
            &f1,
            0.0,
            f64::INFINITY,
            &bu,
            Some(self.u.exponent_at_zero()),
            Some(a_inf - q),
        )?;
        let mut bv = self.vm.breakpoints();
        bv.push(t);
        let f2 = |s: f64| self.vm.eval(s) * (s + t).powf(-pp);
        let c_inf = self.vm.exponent_at_infinity().expect("b is infinite");
        let i2 = self.quad.integrate_split(
            &f2,
            0.0,
            f64::INFINITY,
            &bv,
            Some(self.vm.exponent_at_zero()),
            Some(c_inf - pp),
        )?;
        Ok((i1, i2))
    }

    /// A scale far beyond every breakpoint towards `end`.
    fn far(&self, end: Endpoint) -> f64 {
        let mut br = self.u.breakpoints();
        br.extend(self.vm.breakpoints());
        br.push(1.0);
        match end {
            Endpoint::Zero => br.iter().copied().fold(f64::INFINITY, f64::min) * 1e-30,
            Endpoint::Infinity => br.iter().copied().fold(0.0, f64::max) * 1e30,
        }
    }
}

/// Constant of `(∫ (Sf)^q u)^{1/q} ≤ K (∫ f^p v)^{1/p}` up to equivalence.
pub fn stieltjes_constant(p: f64, q: f64, u: &PiecewisePower, v: &PiecewisePower) -> Result<f64> {
    Ok(stieltjes_constant_with(p, q, u, v, &SearchOptions::default())?.value)
}

pub fn stieltjes_constant_with(
    p: f64,
    q: f64,
    u: &PiecewisePower,
    v: &PiecewisePower,
    opts: &SearchOptions,
) -> Result<ConstantReport> {
    check_index(p)?;
    check_index(q)?;
    check_infinite(u)?;
    check_infinite(v)?;
    let pp = conjugate(p);
    let k = StieltjesKernel { p, q, pp, u, vm: v.powf(1.0 - pp), quad: opts.quad };
    if p <= q {
        stieltjes_sup(&k, opts)
    } else {
        stieltjes_integral(&k).map(ConstantReport::integral)
    }
}

fn stieltjes_sup(k: &StieltjesKernel<'_>, opts: &SearchOptions) -> Result<ConstantReport> {
    let (eq, ep) = (1.0 / k.q, 1.0 / k.pp);
    let grid = opts.grid.points();
    let surrogate_limit = |end: Endpoint| {
        let (a, c) = k.surrogate_asymptote(end);
        a.powf(eq).mul(c.powf(ep)).limit(end)
    };
    let (s0, s_inf) = (surrogate_limit(Endpoint::Zero), surrogate_limit(Endpoint::Infinity));
    let surrogate = try_sup_with_limits(
        |t| {
            let (a, c) = k.surrogate(t)?;
            Ok(product(a, eq, c, ep))
        },
        &grid,
        s0,
        s_inf,
    )?;
    // The exact kernel lies within [1/4, 1] of the surrogate, so a zero or
    // infinite surrogate limit carries over; a finite one is re-evaluated.
    let exact_limit = |lim: f64, end: Endpoint| -> Result<f64> {
        if lim == 0.0 || lim.is_infinite() {
            return Ok(lim);
        }
        let (a, c) = k.exact(k.far(end))?;
        Ok(product(a, eq, c, ep))
    };
    let exact = try_sup_with_limits(
        |t| {
            let (a, c) = k.exact(t)?;
            Ok(product(a, eq, c, ep))
        },
        &grid,
        exact_limit(s0, Endpoint::Zero)?,
        exact_limit(s_inf, Endpoint::Infinity)?,
    )?;
    Ok(ConstantReport { value: exact.value, form: ConstantForm::Supremum, sup: Some(exact), surrogate: Some(surrogate) })
}

fn stieltjes_integral(k: &StieltjesKernel<'_>) -> Result<f64> {
    let (p, q, pp) = (k.p, k.q, k.pp);
    let r = p * q / (p - q);
    let (ea, ec) = (1.0 / p, 1.0 / pp);
    let exponent = |end: Endpoint, u_exp: f64| {
        let (a, c) = k.surrogate_asymptote(end);
        a.powf(ea).mul(c.powf(ec)).power * r + u_exp
    };
    let e0 = exponent(Endpoint::Zero, k.u.exponent_at_zero());
    let e_inf = exponent(Endpoint::Infinity, k.u.exponent_at_infinity().expect("b is infinite"));
    let failure = std::cell::RefCell::new(None);
    let g = |t: f64| match k.exact(t) {
        Ok((a, c)) => product(a, ea, c, ec).powf(r) * k.u.eval(t),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let total = k.quad.integrate_split(&g, 0.0, f64::INFINITY, &k.u.breakpoints(), Some(e0), Some(e_inf))?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(total.powf(1.0 / q - 1.0 / p))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    #[serde(flatten)]
    pub constant: ConstantReport,
    /// Whether `∫ φ₁ = ∞`, the standing hypothesis on the source space.
    pub source_mass_infinite: bool,
    pub warnings: Vec<String>,
}

fn check_space(p: f64, w: &PiecewisePowerWeight) -> Result<()> {
    check_index(p)?;
    if w.b().is_finite() {
        return Err(GammaError::Unsupported(format!("embeddings need b = inf, got b = {}", w.b())));
    }
    if let Some(reason) = validate_nontrivial(w, p).reason {
        return Err(GammaError::TrivialWeight(reason));
    }
    Ok(())
}

/// Norm of `Γ_{p,φ₁} ↪ Γ_{q,φ₂}` up to equivalence; may be `+∞`.
pub fn embedding_norm(p: f64, w1: &PiecewisePowerWeight, q: f64, w2: &PiecewisePowerWeight) -> Result<f64> {
    Ok(embedding_norm_with(p, w1, q, w2, &SearchOptions::default())?.constant.value)
}

pub fn embedding_norm_with(
    p: f64,
    w1: &PiecewisePowerWeight,
    q: f64,
    w2: &PiecewisePowerWeight,
    opts: &SearchOptions,
) -> Result<EmbeddingReport> {
    check_space(p, w1)?;
    check_space(q, w2)?;
    let source_mass_infinite = w1.total_mass().is_infinite();
    let mut warnings = Vec::new();
    if !source_mass_infinite {
        warnings.push("int phi1 is finite: the embedding characterization assumes it diverges".to_string());
    }
    let ratio_asym = |end: Endpoint| {
        bracket_asymptote(w2, q, end)
            .powf(1.0 / q)
            .div(bracket_asymptote(w1, p, end).powf(1.0 / p))
    };
    let constant = if p <= q {
        let f = |t: f64| -> Result<f64> { Ok(phi_bracket(w2, q, t)?.powf(1.0 / q) / phi_bracket(w1, p, t)?.powf(1.0 / p)) };
        let sup = try_sup_with_limits(
            f,
            &opts.grid.points(),
            ratio_asym(Endpoint::Zero).limit(Endpoint::Zero),
            ratio_asym(Endpoint::Infinity).limit(Endpoint::Infinity),
        )?;
        ConstantReport::from_sup(sup)
    } else {
        let r = q / (p - q);
        let exponent = |end: Endpoint, a: f64| {
            let br = bracket_asymptote(w2, q, end).div(bracket_asymptote(w1, p, end));
            br.power * r + a
        };
        let raw = w2.raw();
        let e0 = exponent(Endpoint::Zero, raw.exponent_at_zero());
        let e_inf = exponent(Endpoint::Infinity, raw.exponent_at_infinity().expect("b is infinite"));
        let g = |t: f64| {
            let a = phi_bracket(w2, q, t).unwrap_or(f64::NAN);
            let c = phi_bracket(w1, p, t).unwrap_or(f64::NAN);
            (a / c).powf(r) * w2.eval(t)
        };
        let mut breaks = w1.breakpoints();
        breaks.extend(w2.breakpoints());
        let total = opts.quad.integrate_split(&g, 0.0, f64::INFINITY, &breaks, Some(e0), Some(e_inf))?;
        if total.is_nan() {
            return Err(GammaError::Domain("embedding integrand is undefined".into()));
        }
        ConstantReport::integral(total.powf(1.0 / q - 1.0 / p))
    };
    Ok(EmbeddingReport { constant, source_mass_infinite, warnings })
}

/// Largest sampled ratios for an embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCheck {
    pub samples: usize,
    /// `max ρ_{q,φ₂}(f) / ρ_{p,φ₁}(f)` over the sampled `f`.
    #[serde(with = "crate::serde_ext")]
    pub max_ratio: f64,
    /// Support end of the maximizing sample.
    pub argmax_support: f64,
    /// `max (∫(Sh)^q φ₂)^{1/q} / (∫ h^p ψ₁^{1-p})^{1/p}`, when `∫ φ₁ = ∞`.
    #[serde(with = "crate::serde_ext::option")]
    pub dual_form_max_ratio: Option<f64>,
}

/// Number of samples used for the dual form, which needs quadrature.
const DUAL_FORM_SAMPLES: usize = 100;

/// Samples random step functions, half of them indicators with supports
/// spread over 36 decades, and records the largest norm ratio.
pub fn embedding_empirical_check(
    p: f64,
    w1: &PiecewisePowerWeight,
    q: f64,
    w2: &PiecewisePowerWeight,
    samples: usize,
    seed: u64,
) -> Result<EmpiricalCheck> {
    check_space(p, w1)?;
    check_space(q, w2)?;
    let mut sampler = StepSampler::new(seed);
    let fs: Vec<StepFunction> =
        (0..samples).map(|k| if k % 2 == 0 { sampler.step() } else { sampler.indicator(-18.0, 18.0) }).collect();
    let ratios = fs
        .par_iter()
        .map(|f| {
            let den = gamma_norm_with(p, w1, f)?;
            Ok(if den == 0.0 { 0.0 } else { gamma_norm_with(q, w2, f)? / den })
        })
        .collect::<Result<Vec<f64>>>()?;
    let (mut max_ratio, mut argmax_support) = (0.0, 0.0);
    for (f, &r) in fs.iter().zip(&ratios) {
        if r > max_ratio {
            max_ratio = r;
            argmax_support = f.support_end();
        }
    }
    let dual_form_max_ratio = if w1.total_mass().is_infinite() {
        let psi = DualWeight::new(p, w1)?;
        let hs: Vec<StepFunction> = (0..samples.min(DUAL_FORM_SAMPLES)).map(|_| sampler.step()).collect();
        let r = hs
            .par_iter()
            .map(|h| Ok(dual_form_sides(&psi, q, w2, h)?.ratio()))
            .collect::<Result<Vec<f64>>>()?;
        Some(r.into_iter().fold(0.0, f64::max))
    } else {
        None
    };
    Ok(EmpiricalCheck { samples, max_ratio, argmax_support, dual_form_max_ratio })
}

/// `((∫ (Sh)^q φ₂)^{1/q}, (∫ h^p ψ₁^{1-p})^{1/p})` with `ψ₁` in operator form.
pub fn dual_form_sides(psi: &DualWeight, q: f64, w2: &PiecewisePowerWeight, h: &StepFunction) -> Result<Sides> {
    let p = psi.p;
    let quad = Quadrature::default();
    let raw = w2.raw();
    let a_inf = raw.exponent_at_infinity().expect("b is infinite");
    let g = |t: f64| stieltjes(h, t).powf(q) * w2.eval(t);
    let mut breaks = w2.breakpoints();
    breaks.extend_from_slice(h.breaks());
    let lhs = quad
        .integrate_split(&g, 0.0, f64::INFINITY, &breaks, Some(raw.exponent_at_zero()), Some(a_inf - q))?
        .powf(1.0 / q);
    let beta0 = psi.asymptote(Endpoint::Zero).power;
    let r = |t: f64| h.eval(t).powf(p) * (p * psi.value(t)).powf(1.0 - p);
    let mut br = psi.source().breakpoints();
    br.extend_from_slice(h.breaks());
    let rhs = quad
        .integrate_split(&r, 0.0, h.support_end(), &br, Some((1.0 - p) * beta0), None)?
        .powf(1.0 / p);
    Ok(Sides { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const INF: f64 = f64::INFINITY;

    fn one() -> PiecewisePower {
        PiecewisePower::power(INF, 1.0, 0.0).unwrap()
    }

    #[test]
    fn hardy_goldens() {
        assert_relative_eq!(hardy_p_constant(2.0, 2.0, &one(), &one(), INF).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(hardy_q_constant(2.0, 2.0, &one(), &one(), INF).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(hardy_p_constant(2.0, 2.0, &one(), &one(), 1.0).unwrap(), 1.0, max_relative = 1e-9);
        assert_relative_eq!(hardy_q_constant(2.0, 2.0, &one(), &one(), 1.0).unwrap(), 1.0, max_relative = 1e-9);
        let v = PiecewisePower::power(INF, 1.0, -1.0).unwrap();
        assert!(hardy_p_constant(2.0, 2.0, &one(), &v, INF).unwrap().is_infinite());
        assert!(matches!(hardy_p_constant(3.0, 2.0, &one(), &one(), INF), Err(GammaError::Unsupported(_))));
    }

    #[test]
    fn hardy_q_monotone_in_u() {
        let u = PiecewisePower::from_breaks(1.0, &[0.5], &[(1.0, 0.0), (2.0, 0.3)]).unwrap();
        let a = hardy_q_constant(2.0, 2.0, &u, &one(), 1.0).unwrap();
        let b = hardy_q_constant(2.0, 2.0, &u.scaled(2.0), &one(), 1.0).unwrap();
        assert!(a.is_finite() && b > a);
    }

    #[test]
    fn stieltjes_golden() {
        let k = stieltjes_constant(2.0, 2.0, &one(), &one()).unwrap();
        assert_relative_eq!(k, 1.0, max_relative = 1e-6);
    }

    #[test]
    fn embedding_goldens() {
        let unit = PiecewisePowerWeight::unit();
        assert_eq!(embedding_norm(2.0, &unit, 2.0, &unit).unwrap(), 1.0);
        let sqrt = PiecewisePowerWeight::power(INF, 1.0, 0.5).unwrap();
        let want = (4.0f64 / 3.0).cbrt() / 2f64.sqrt();
        assert_relative_eq!(embedding_norm(2.0, &unit, 3.0, &sqrt).unwrap(), want, max_relative = 1e-9);
        assert!(embedding_norm(2.0, &unit, 3.0, &unit).unwrap().is_infinite());
    }

    #[test]
    fn sampled_sides_respect_constants() {
        let mut s = StepSampler::new(3);
        for _ in 0..20 {
            let f = s.step();
            let hp = hardy_p_sides(2.0, 2.0, &one(), &one(), INF, &f).unwrap();
            let hq = hardy_q_sides(2.0, 2.0, &one(), &one(), INF, &f).unwrap();
            let st = stieltjes_sides(2.0, 2.0, &one(), &one(), &f).unwrap();
            // sharp L2 constants: 2, 2 and π
            assert!(hp.lhs <= 2.0 * hp.rhs * (1.0 + 1e-9));
            assert!(hq.lhs <= 2.0 * hq.rhs * (1.0 + 1e-9));
            assert!(st.lhs <= std::f64::consts::PI * st.rhs * (1.0 + 1e-9));
        }
    }
}
