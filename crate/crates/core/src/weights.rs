//! Piecewise-power weights on `(0, b)` and their closed-form moments.
//!
//! A weight is stored as finitely many pieces `coeff · t^exp` tiling
//! `(0, b)`. Every integral of the form `∫ φ(t) t^r dt` is then an exact
//! sum of power (or logarithm) antiderivatives, and divergence is decided
//! by exponent comparison.

use serde::{Deserialize, Serialize};

use crate::asymptote::{Asymptote, Endpoint};
use crate::error::{GammaError, Result};
use crate::quadrature::Quadrature;

/// Width of the band around `exp + r = -1` handled by the logarithmic branch.
pub const LOG_BRANCH_EPS: f64 = 1e-13;

/// One piece `coeff · t^exp` on `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerPiece {
    pub lo: f64,
    #[serde(with = "crate::serde_ext")]
    pub hi: f64,
    pub coeff: f64,
    pub exp: f64,
}

/// `∫_{x0}^{x1} c t^e dt`, `+∞` when divergent.
pub(crate) fn power_integral(c: f64, e: f64, x0: f64, x1: f64) -> f64 {
    if x1 <= x0 {
        return 0.0;
    }
    let d = e + 1.0;
    if x0 == 0.0 {
        if d <= LOG_BRANCH_EPS || x1.is_infinite() {
            return f64::INFINITY;
        }
        return c * x1.powf(d) / d;
    }
    if x1.is_infinite() {
        if d >= -LOG_BRANCH_EPS {
            return f64::INFINITY;
        }
        return -c * x0.powf(d) / d;
    }
    let l = x1.ln() - x0.ln();
    if d.abs() < LOG_BRANCH_EPS {
        // (x1^d - x0^d)/d = x0^d · l · (1 + d l / 2 + ...)
        return c * x0.powf(d) * l * (1.0 + 0.5 * d * l);
    }
    if (d * l).abs() > 50.0 {
        return c * (x1.powf(d) - x0.powf(d)) / d;
    }
    c * x0.powf(d) * (d * l).exp_m1() / d
}

/// Piecewise power function on `(0, b)` without integrability requirements.
///
/// Used directly for derived functions such as `u^q` or `v^{-p'}` whose
/// integrals may legitimately diverge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PiecewisePowerRepr")]
pub struct PiecewisePower {
    #[serde(with = "crate::serde_ext")]
    pub b: f64,
    pub pieces: Vec<PowerPiece>,
}

#[derive(Deserialize)]
struct PiecewisePowerRepr {
    #[serde(with = "crate::serde_ext")]
    b: f64,
    pieces: Vec<PowerPiece>,
}

impl TryFrom<PiecewisePowerRepr> for PiecewisePower {
    type Error = GammaError;
    fn try_from(r: PiecewisePowerRepr) -> Result<Self> {
        PiecewisePower::new(r.b, r.pieces)
    }
}

impl PiecewisePower {
    pub fn new(b: f64, pieces: Vec<PowerPiece>) -> Result<Self> {
        let pw = Self { b, pieces };
        pw.check()?;
        Ok(pw)
    }

    /// `coeff · t^exp` on the whole of `(0, b)`.
    pub fn power(b: f64, coeff: f64, exp: f64) -> Result<Self> {
        Self::new(b, vec![PowerPiece { lo: 0.0, hi: b, coeff, exp }])
    }

    /// Builds pieces from interior breakpoints and one `(coeff, exp)` per piece.
    pub fn from_breaks(b: f64, breaks: &[f64], parts: &[(f64, f64)]) -> Result<Self> {
        if parts.len() != breaks.len() + 1 {
            return Err(GammaError::Invalid(format!(
                "{} interior breaks need {} pieces, got {}",
                breaks.len(),
                breaks.len() + 1,
                parts.len()
            )));
        }
        let mut edges = vec![0.0];
        edges.extend_from_slice(breaks);
        edges.push(b);
        let pieces = edges
            .windows(2)
            .zip(parts)
            .map(|(w, &(coeff, exp))| PowerPiece { lo: w[0], hi: w[1], coeff, exp })
            .collect();
        Self::new(b, pieces)
    }

    fn check(&self) -> Result<()> {
        if !(self.b > 0.0) || self.b.is_nan() {
            return Err(GammaError::Invalid(format!("upper endpoint b must be positive, got {}", self.b)));
        }
        let first = self.pieces.first().ok_or_else(|| GammaError::Invalid("weight has no pieces".into()))?;
        if first.lo != 0.0 {
            return Err(GammaError::Invalid(format!("first piece must start at 0, starts at {}", first.lo)));
        }
        for (i, pc) in self.pieces.iter().enumerate() {
            if !(pc.hi > pc.lo) {
                return Err(GammaError::Invalid(format!("piece {i} is empty or reversed: ({}, {})", pc.lo, pc.hi)));
            }
            if !(pc.coeff > 0.0 && pc.coeff.is_finite()) {
                return Err(GammaError::Invalid(format!("piece {i} coefficient must be positive and finite")));
            }
            if !pc.exp.is_finite() {
                return Err(GammaError::Invalid(format!("piece {i} exponent must be finite")));
            }
            if let Some(next) = self.pieces.get(i + 1) {
                if next.lo != pc.hi {
                    return Err(GammaError::Invalid(format!(
                        "pieces must tile (0, b): piece {i} ends at {} but piece {} starts at {}",
                        pc.hi,
                        i + 1,
                        next.lo
                    )));
                }
            }
        }
        let last = self.pieces.last().expect("non-empty");
        if last.hi != self.b {
            return Err(GammaError::Invalid(format!("last piece ends at {} but b = {}", last.hi, self.b)));
        }
        Ok(())
    }

    fn piece_at(&self, t: f64) -> Option<&PowerPiece> {
        if !(t > 0.0 && t < self.b) {
            return None;
        }
        let idx = self.pieces.partition_point(|pc| pc.hi <= t);
        self.pieces.get(idx)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.piece_at(t).map_or(0.0, |pc| pc.coeff * t.powf(pc.exp))
    }

    /// Interior breakpoints (excluding `0` and `b`).
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces[..self.pieces.len() - 1].iter().map(|pc| pc.hi).collect()
    }

    pub fn exponent_at_zero(&self) -> f64 {
        self.pieces[0].exp
    }

    pub fn exponent_at_infinity(&self) -> Option<f64> {
        self.b.is_infinite().then(|| self.pieces.last().expect("non-empty").exp)
    }

    /// `∫_{a0}^{a1} φ(t) t^r dt`, exact; `+∞` when divergent.
    pub fn moment(&self, a0: f64, a1: f64, r: f64) -> Result<f64> {
        if !(a0 >= 0.0 && a1 <= self.b && a0 <= a1) {
            return Err(GammaError::Domain(format!(
                "moment interval [{a0}, {a1}] is not inside (0, {})",
                self.b
            )));
        }
        if a0 == a1 {
            return Ok(0.0);
        }
        let mut total = 0.0;
        for pc in &self.pieces {
            let x0 = pc.lo.max(a0);
            let x1 = pc.hi.min(a1);
            if x1 > x0 {
                total += power_integral(pc.coeff, pc.exp + r, x0, x1);
                if total.is_infinite() {
                    return Ok(f64::INFINITY);
                }
            }
        }
        Ok(total)
    }

    /// Pointwise power `φ^e`.
    pub fn powf(&self, e: f64) -> Self {
        Self {
            b: self.b,
            pieces: self
                .pieces
                .iter()
                .map(|pc| PowerPiece { coeff: pc.coeff.powf(e), exp: pc.exp * e, ..*pc })
                .collect(),
        }
    }

    /// `t^k · φ(t)`.
    pub fn times_power(&self, k: f64) -> Self {
        Self {
            b: self.b,
            pieces: self.pieces.iter().map(|pc| PowerPiece { exp: pc.exp + k, ..*pc }).collect(),
        }
    }

    /// `c · φ(t)`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            b: self.b,
            pieces: self.pieces.iter().map(|pc| PowerPiece { coeff: pc.coeff * c, ..*pc }).collect(),
        }
    }

    /// The same weight on `(0, min(b, c))`.
    pub fn restrict(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(GammaError::Invalid(format!("restriction endpoint must be positive, got {c}")));
        }
        if c >= self.b {
            return Ok(self.clone());
        }
        let pieces = self
            .pieces
            .iter()
            .filter(|pc| pc.lo < c)
            .map(|pc| PowerPiece { hi: pc.hi.min(c), ..*pc })
            .collect();
        Self::new(c, pieces)
    }

    /// `t ↦ φ(λ t)` on `(0, b/λ)`.
    pub fn dilate(&self, lambda: f64) -> Self {
        Self {
            b: self.b / lambda,
            pieces: self
                .pieces
                .iter()
                .map(|pc| PowerPiece {
                    lo: pc.lo / lambda,
                    hi: pc.hi / lambda,
                    coeff: pc.coeff * lambda.powf(pc.exp),
                    exp: pc.exp,
                })
                .collect(),
        }
    }

    /// Leading behaviour of `∫_0^x φ t^r` as `x` tends to `end`.
    pub fn lower_moment_asymptote(&self, r: f64, end: Endpoint) -> Asymptote {
        match end {
            Endpoint::Zero => {
                let pc = &self.pieces[0];
                let d = pc.exp + r + 1.0;
                if d > LOG_BRANCH_EPS {
                    Asymptote::power_law(pc.coeff / d, d)
                } else {
                    Asymptote::infinite()
                }
            }
            Endpoint::Infinity => {
                let pc = self.pieces.last().expect("non-empty");
                let d = pc.exp + r + 1.0;
                if d > LOG_BRANCH_EPS {
                    Asymptote::power_law(pc.coeff / d, d)
                } else if d.abs() <= LOG_BRANCH_EPS {
                    Asymptote { coef: pc.coeff, power: 0.0, log_power: 1.0 }
                } else {
                    Asymptote::constant(self.moment(0.0, self.b, r).unwrap_or(f64::INFINITY))
                }
            }
        }
    }

    /// Leading behaviour of `∫_x^b φ t^r` as `x` tends to `end`.
    pub fn upper_moment_asymptote(&self, r: f64, end: Endpoint) -> Asymptote {
        match end {
            Endpoint::Zero => {
                let pc = &self.pieces[0];
                let d = pc.exp + r + 1.0;
                if d < -LOG_BRANCH_EPS {
                    Asymptote::power_law(pc.coeff / -d, d)
                } else if d.abs() <= LOG_BRANCH_EPS {
                    Asymptote { coef: pc.coeff, power: 0.0, log_power: 1.0 }
                } else {
                    Asymptote::constant(self.moment(0.0, self.b, r).unwrap_or(f64::INFINITY))
                }
            }
            Endpoint::Infinity => {
                let pc = self.pieces.last().expect("non-empty");
                let d = pc.exp + r + 1.0;
                if d < -LOG_BRANCH_EPS {
                    Asymptote::power_law(pc.coeff / -d, d)
                } else {
                    Asymptote::infinite()
                }
            }
        }
    }
}

/// A positive weight, evaluable pointwise, with moments on `(0, b)`.
///
/// The default `moment` integrates numerically, using the power exponents
/// at the endpoints to control the tails.
pub trait Weight: Sync {
    fn upper(&self) -> f64;
    fn eval(&self, t: f64) -> f64;

    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    fn exponent_at_zero(&self) -> Option<f64> {
        None
    }

    fn exponent_at_infinity(&self) -> Option<f64> {
        None
    }

    fn quadrature(&self) -> Quadrature {
        Quadrature::default()
    }

    /// `∫_{a0}^{a1} w(t) t^r dt`.
    fn moment(&self, a0: f64, a1: f64, r: f64) -> Result<f64> {
        let b = self.upper();
        if !(a0 >= 0.0 && a1 <= b && a0 <= a1) {
            return Err(GammaError::Domain(format!("moment interval [{a0}, {a1}] is not inside (0, {b})")));
        }
        let f = |t: f64| self.eval(t) * t.powf(r);
        self.quadrature().integrate_split(
            &f,
            a0,
            a1,
            &self.breakpoints(),
            self.exponent_at_zero().map(|e| e + r),
            self.exponent_at_infinity().map(|e| e + r),
        )
    }
}

impl Weight for PiecewisePower {
    fn upper(&self) -> f64 {
        self.b
    }
    fn eval(&self, t: f64) -> f64 {
        PiecewisePower::eval(self, t)
    }
    fn breakpoints(&self) -> Vec<f64> {
        PiecewisePower::breakpoints(self)
    }
    fn exponent_at_zero(&self) -> Option<f64> {
        Some(PiecewisePower::exponent_at_zero(self))
    }
    fn exponent_at_infinity(&self) -> Option<f64> {
        PiecewisePower::exponent_at_infinity(self)
    }
    fn moment(&self, a0: f64, a1: f64, r: f64) -> Result<f64> {
        PiecewisePower::moment(self, a0, a1, r)
    }
}

/// A locally integrable piecewise-power weight `φ` on `(0, b)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PiecewisePowerWeight(PiecewisePower);

impl PiecewisePowerWeight {
    pub fn new(raw: PiecewisePower) -> Result<Self> {
        raw.check()?;
        if raw.pieces[0].exp <= -1.0 {
            return Err(GammaError::Invalid(format!(
                "weight is not integrable near 0: exponent {} <= -1",
                raw.pieces[0].exp
            )));
        }
        Ok(Self(raw))
    }

    /// `coeff · t^exp` on `(0, b)`.
    pub fn power(b: f64, coeff: f64, exp: f64) -> Result<Self> {
        Self::new(PiecewisePower::power(b, coeff, exp)?)
    }

    /// `φ ≡ 1` on `(0, ∞)`.
    pub fn unit() -> Self {
        Self::power(f64::INFINITY, 1.0, 0.0).expect("valid")
    }

    pub fn from_breaks(b: f64, breaks: &[f64], parts: &[(f64, f64)]) -> Result<Self> {
        Self::new(PiecewisePower::from_breaks(b, breaks, parts)?)
    }

    pub fn raw(&self) -> &PiecewisePower {
        &self.0
    }

    pub fn b(&self) -> f64 {
        self.0.b
    }

    pub fn pieces(&self) -> &[PowerPiece] {
        &self.0.pieces
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.eval(t)
    }

    pub fn moment(&self, a0: f64, a1: f64, r: f64) -> Result<f64> {
        self.0.moment(a0, a1, r)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.0.breakpoints()
    }

    /// `t ↦ φ(λ t)`.
    pub fn dilate(&self, lambda: f64) -> Self {
        Self(self.0.dilate(lambda))
    }

    /// `∫_0^b φ`.
    pub fn total_mass(&self) -> f64 {
        self.0.moment(0.0, self.0.b, 0.0).unwrap_or(f64::INFINITY)
    }
}

impl<'de> Deserialize<'de> for PiecewisePowerWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PiecewisePower::deserialize(d)?;
        PiecewisePowerWeight::new(raw).map_err(serde::de::Error::custom)
    }
}

impl Weight for PiecewisePowerWeight {
    fn upper(&self) -> f64 {
        self.0.b
    }
    fn eval(&self, t: f64) -> f64 {
        self.0.eval(t)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.0.breakpoints()
    }
    fn exponent_at_zero(&self) -> Option<f64> {
        Some(self.0.exponent_at_zero())
    }
    fn exponent_at_infinity(&self) -> Option<f64> {
        self.0.exponent_at_infinity()
    }
    fn moment(&self, a0: f64, a1: f64, r: f64) -> Result<f64> {
        self.0.moment(a0, a1, r)
    }
}

/// A weight given by a closure, with known breakpoints and endpoint exponents.
pub struct EvaluableWeight<F> {
    pub f: F,
    pub b: f64,
    pub breaks: Vec<f64>,
    pub exp0: Option<f64>,
    pub exp_inf: Option<f64>,
    pub quad: Quadrature,
}

impl<F: Fn(f64) -> f64 + Sync> Weight for EvaluableWeight<F> {
    fn upper(&self) -> f64 {
        self.b
    }
    fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }
    fn exponent_at_zero(&self) -> Option<f64> {
        self.exp0
    }
    fn exponent_at_infinity(&self) -> Option<f64> {
        self.exp_inf
    }
    fn quadrature(&self) -> Quadrature {
        self.quad
    }
}

/// Outcome of the non-triviality test for `(p, φ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceFlags {
    pub nontrivial: bool,
    pub phi_integral_finite: bool,
    pub cz_hypothesis: bool,
    /// Name of the failing condition when `nontrivial` is false.
    pub reason: Option<String>,
}

/// Checks that `Γ_{p,φ}` is neither `{0}` nor `L1`, and the CZ hypothesis.
pub fn validate_nontrivial(w: &PiecewisePowerWeight, p: f64) -> SpaceFlags {
    let b = w.b();
    let tail_ok = b.is_finite() || w.moment(1.0, b, -p).is_ok_and(f64::is_finite);
    let head_div = w.moment(0.0, b.min(1.0), -p).is_ok_and(f64::is_infinite);
    let reason = if !tail_ok {
        Some("tail integral divergent: int_1^inf phi(t) t^-p dt = inf, the space is {0}".to_string())
    } else if !head_div {
        Some("integral of phi(t) t^-p near 0 converges, the space coincides with L1".to_string())
    } else {
        None
    };
    let phi_integral_finite = w.total_mass().is_finite();
    let cz_hypothesis = b.is_infinite() && {
        let m = |a0: f64, a1: f64, r: f64| w.moment(a0, a1, r).unwrap_or(f64::INFINITY);
        let small = m(0.0, 1.0, 0.0) + m(1.0, b, -p);
        let large = m(0.0, 1.0, -p) + m(1.0, b, 0.0);
        small.is_finite() && large.is_infinite()
    };
    SpaceFlags {
        nontrivial: reason.is_none(),
        phi_integral_finite,
        cz_hypothesis,
        reason,
    }
}

/// `Φ_p(t) = ∫_0^t φ + t^p ∫_t^b φ(s) s^{-p} ds`, the `p`-th power of the
/// Gamma norm of `χ_(0,t)`.
pub fn phi_bracket(w: &PiecewisePowerWeight, p: f64, t: f64) -> Result<f64> {
    let b = w.b();
    if !(t > 0.0 && t <= b) {
        return Err(GammaError::Domain(format!("bracket point {t} outside (0, {b}]")));
    }
    let head = w.moment(0.0, t, 0.0)?;
    let tail = w.moment(t, b, -p)?;
    if tail.is_infinite() {
        return Err(GammaError::TrivialWeight(format!(
            "int_t^b phi(s) s^-{p} ds diverges at t = {t}"
        )));
    }
    Ok(head + t.powf(p) * tail)
}

/// Endpoint asymptote of `Φ_p`.
pub fn bracket_asymptote(w: &PiecewisePowerWeight, p: f64, end: Endpoint) -> Asymptote {
    let raw = w.raw();
    raw.lower_moment_asymptote(0.0, end)
        .add(raw.upper_moment_asymptote(-p, end).shift(p), end)
}

/// A Lorentz Gamma space `Γ_{p,φ}` with validated parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaSpace {
    pub p: f64,
    pub pprime: f64,
    pub weight: PiecewisePowerWeight,
    pub flags: SpaceFlags,
}

impl GammaSpace {
    /// Validates `p ∈ (1, ∞)` and non-triviality of the weight.
    pub fn new(p: f64, weight: PiecewisePowerWeight) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(GammaError::Invalid(format!("index p must lie in (1, inf), got {p}")));
        }
        let flags = validate_nontrivial(&weight, p);
        if let Some(reason) = &flags.reason {
            return Err(GammaError::TrivialWeight(reason.clone()));
        }
        Ok(Self { p, pprime: conjugate(p), weight, flags })
    }

    pub fn b(&self) -> f64 {
        self.weight.b()
    }

    /// `Φ_p(t)`.
    pub fn bracket(&self, t: f64) -> Result<f64> {
        phi_bracket(&self.weight, self.p, t)
    }

    /// Gamma norm of `χ_(0,t)`, i.e. `Φ_p(t)^{1/p}`.
    pub fn fundamental(&self, t: f64) -> Result<f64> {
        Ok(self.bracket(t)?.powf(1.0 / self.p))
    }

    pub fn bracket_asymptote(&self, end: Endpoint) -> Asymptote {
        bracket_asymptote(&self.weight, self.p, end)
    }
}

/// `p' = p/(p-1)`.
pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> PiecewisePowerWeight {
        PiecewisePowerWeight::unit()
    }

    #[test]
    fn moment_examples() {
        let w = unit();
        assert_eq!(w.moment(0.0, 1.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(w.moment(1.0, f64::INFINITY, -2.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(w.moment(1.0, std::f64::consts::E, -1.0).unwrap(), 1.0, max_relative = 1e-15);
        let h = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 0.5).unwrap();
        assert_relative_eq!(h.moment(0.0, 1.0, 0.0).unwrap(), 2.0 / 3.0, max_relative = 1e-15);
        assert_eq!(w.moment(2.0, 2.0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn moment_divergence_and_domain() {
        let w = unit();
        assert!(w.moment(0.0, 1.0, -1.0).unwrap().is_infinite());
        assert!(w.moment(1.0, f64::INFINITY, -1.0).unwrap().is_infinite());
        let short = PiecewisePowerWeight::power(2.0, 1.0, 0.0).unwrap();
        assert!(matches!(short.moment(0.0, 3.0, 0.0), Err(GammaError::Domain(_))));
    }

    #[test]
    fn log_branch_is_continuous() {
        let w = unit();
        let at = w.moment(2.0, 5.0, -1.0).unwrap();
        let near = w.moment(2.0, 5.0, -1.0 + 1e-10).unwrap();
        assert_relative_eq!(at, (2.5f64).ln(), max_relative = 1e-15);
        assert_relative_eq!(near, at, max_relative = 1e-9);
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(PiecewisePowerWeight::power(f64::INFINITY, 1.0, -1.0).is_err());
        assert!(PiecewisePowerWeight::power(f64::INFINITY, 0.0, 0.0).is_err());
        let gap = PiecewisePower::new(
            f64::INFINITY,
            vec![
                PowerPiece { lo: 0.0, hi: 1.0, coeff: 1.0, exp: 0.0 },
                PowerPiece { lo: 2.0, hi: f64::INFINITY, coeff: 1.0, exp: 0.0 },
            ],
        );
        assert!(gap.is_err());
    }

    #[test]
    fn nontriviality_examples() {
        let f = validate_nontrivial(&unit(), 2.0);
        assert!(f.nontrivial && !f.phi_integral_finite);
        let h = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 0.5).unwrap();
        let f = validate_nontrivial(&h, 2.0);
        assert!(f.nontrivial && f.cz_hypothesis);
        let lin = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 1.0).unwrap();
        let f = validate_nontrivial(&lin, 2.0);
        assert!(!f.nontrivial);
        assert!(f.reason.unwrap().contains("tail integral divergent"));
        // exponent above p-1 near zero: the space is L1
        let steep = PiecewisePowerWeight::from_breaks(f64::INFINITY, &[1.0], &[(1.0, 1.5), (1.0, 0.0)]).unwrap();
        assert!(!validate_nontrivial(&steep, 2.0).nontrivial);
    }

    #[test]
    fn bracket_examples() {
        let w = unit();
        assert_relative_eq!(phi_bracket(&w, 2.0, 3.0).unwrap(), 6.0, max_relative = 1e-15);
        let h = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 0.5).unwrap();
        assert_relative_eq!(phi_bracket(&h, 2.0, 1.0).unwrap(), 8.0 / 3.0, max_relative = 1e-15);
        assert!(phi_bracket(&w, 2.0, 1e-12).unwrap() < 1e-11);
    }

    #[test]
    fn bracket_power_closed_form() {
        for &(p, a) in &[(2.0, 0.5), (3.0, -0.5), (1.5, 0.2)] {
            let w = PiecewisePowerWeight::power(f64::INFINITY, 1.0, a).unwrap();
            for &t in &[1e-5f64, 0.3, 1.0, 42.0, 1e6] {
                let want = t.powf(a + 1.0) * (1.0 / (a + 1.0) + 1.0 / (p - a - 1.0));
                assert_relative_eq!(phi_bracket(&w, p, t).unwrap(), want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn bracket_asymptotes() {
        let h = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 0.5).unwrap();
        let a0 = bracket_asymptote(&h, 2.0, Endpoint::Zero);
        assert_relative_eq!(a0.power, 1.5);
        assert_relative_eq!(a0.coef, 8.0 / 3.0, max_relative = 1e-14);
        // finite mass: the bracket saturates at the total mass
        let light = PiecewisePowerWeight::from_breaks(f64::INFINITY, &[1.0], &[(1.0, 0.0), (1.0, -2.0)]).unwrap();
        let ai = bracket_asymptote(&light, 2.0, Endpoint::Infinity);
        assert_eq!(ai.power, 0.0);
        assert_relative_eq!(ai.coef, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn json_round_trip_with_infinity() {
        let w = PiecewisePowerWeight::from_breaks(f64::INFINITY, &[1.0], &[(1.0, 0.0), (2.0, 0.5)]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.contains("\"inf\""));
        let back: PiecewisePowerWeight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        let bad = r#"{"b":"inf","pieces":[{"lo":0,"hi":"inf","coeff":1,"exp":-1.5}]}"#;
        assert!(serde_json::from_str::<PiecewisePowerWeight>(bad).is_err());
    }
}
