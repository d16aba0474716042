//! The Gamma norm `ρ_{p,φ}(f) = (∫_0^b f**(t)^p φ(t) dt)^{1/p}` and weighted
//! Lebesgue norms.

use crate::error::{GammaError, Result};
use crate::functions::{LevelFunction, StepFunction};
use crate::weights::{validate_nontrivial, PiecewisePowerWeight, Weight};

/// `∫_0^b L(t)^p w(t) dt` for a level function `L`.
///
/// A constant head is integrated exactly through the weight's moments, the
/// `a + b/t` pieces by log-space quadrature, and the `m/t` tail exactly.
pub fn level_power_integral<W: Weight + ?Sized>(level: &LevelFunction, p: f64, w: &W) -> Result<f64> {
    let b = w.upper();
    let quad = w.quadrature();
    let breaks = w.breakpoints();
    let mut total = 0.0;
    for pc in &level.pieces {
        let hi = pc.hi.min(b);
        if pc.lo >= hi {
            break;
        }
        if pc.a == 0.0 && pc.b == 0.0 {
            continue;
        }
        if pc.b == 0.0 {
            total += pc.a.powf(p) * w.moment(pc.lo, hi, 0.0)?;
        } else if pc.a == 0.0 {
            total += pc.b.powf(p) * w.moment(pc.lo, hi, -p)?;
        } else {
            let inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > pc.lo && x < hi).collect();
            let f = |t: f64| (pc.a + pc.b / t).powf(p) * w.eval(t);
            total += quad.integrate_split(&f, pc.lo, hi, &inner, None, None)?;
        }
    }
    if level.end < b && level.tail_mass > 0.0 {
        total += level.tail_mass.powf(p) * w.moment(level.end, b, -p)?;
    }
    Ok(total)
}

/// `ρ_{p,w}(f)` with no validation of `(p, w)`.
pub fn gamma_norm_with<W: Weight + ?Sized>(p: f64, w: &W, f: &StepFunction) -> Result<f64> {
    let fstar = f.restrict(w.upper()).rearrange();
    if fstar.is_zero() {
        return Ok(0.0);
    }
    Ok(level_power_integral(&fstar.level(), p, w)?.powf(1.0 / p))
}

/// `ρ_{p,φ}(f) = (∫_0^b f**(t)^p φ(t) dt)^{1/p}`.
pub fn gamma_norm(p: f64, w: &PiecewisePowerWeight, f: &StepFunction) -> Result<f64> {
    check_index(p)?;
    let flags = validate_nontrivial(w, p);
    if let Some(reason) = flags.reason {
        return Err(GammaError::TrivialWeight(reason));
    }
    gamma_norm_with(p, w, f)
}

/// `(∫ f^p w)^{1/p}` for a step `f`; exact when `w` has exact moments.
/// Divergence gives `+∞`.
pub fn weighted_lp_norm<W: Weight + ?Sized>(p: f64, w: &W, f: &StepFunction) -> Result<f64> {
    check_index(p)?;
    let g = f.restrict(w.upper());
    Ok(g.power_moment(p, |lo, hi| w.moment(lo, hi, 0.0))?.powf(1.0 / p))
}

/// `(∫_a^b |f|^p w)^{1/p}` for an evaluable `f` by quadrature, with optional
/// endpoint exponents of the integrand `|f|^p w`.
pub fn weighted_lp_norm_fn<F, W>(
    p: f64,
    w: &W,
    f: F,
    breaks: &[f64],
    exp0: Option<f64>,
    exp_inf: Option<f64>,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    W: Weight + ?Sized,
{
    check_index(p)?;
    let mut all = w.breakpoints();
    all.extend_from_slice(breaks);
    all.sort_by(f64::total_cmp);
    all.dedup();
    let g = |t: f64| f(t).abs().powf(p) * w.eval(t);
    let v = w.quadrature().integrate_split(&g, 0.0, w.upper(), &all, exp0, exp_inf)?;
    Ok(v.powf(1.0 / p))
}

pub(crate) fn check_index(p: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(GammaError::Invalid(format!("index must lie in (1, inf), got {p}")));
    }
    Ok(())
}
