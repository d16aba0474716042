//! Hardy averaging `P`, its dual `Q`, the weighted tail operator `Q_p` and
//! the Stieltjes transform, in closed form on step functions and
//! piecewise-power weights.

use crate::error::{GammaError, Result};
use crate::functions::{LevelFunction, StepFunction};
use crate::weights::{phi_bracket, PiecewisePowerWeight};

/// Something that can be evaluated pointwise on `(0, b)`.
pub trait Evaluable {
    fn eval(&self, t: f64) -> f64;
}

impl<F: Fn(f64) -> f64> Evaluable for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

impl Evaluable for LevelFunction {
    fn eval(&self, t: f64) -> f64 {
        LevelFunction::eval(self, t)
    }
}

impl Evaluable for StepFunction {
    fn eval(&self, t: f64) -> f64 {
        StepFunction::eval(self, t)
    }
}

/// `(Pf)(t) = t^{-1} ∫_0^t f`.
pub fn hardy_p(f: &StepFunction) -> LevelFunction {
    f.average()
}

/// `(Qf)(t) = ∫_t^b f(s) ds / s` for a step function.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyQ {
    f: StepFunction,
    b: f64,
}

impl HardyQ {
    pub fn new(f: &StepFunction, b: f64) -> Self {
        Self { f: f.clone(), b }
    }

    pub fn value(&self, t: f64) -> f64 {
        if !(t > 0.0) || t >= self.b {
            return 0.0;
        }
        self.f
            .pieces()
            .filter(|&(_, hi, v)| v > 0.0 && hi.min(self.b) > t)
            .map(|(lo, hi, v)| v * (hi.min(self.b) / lo.max(t)).ln())
            .sum()
    }

    /// `∫ g · Qf` against a step `g`, exact.
    pub fn inner(&self, g: &StepFunction) -> f64 {
        // Fubini: ∫ g Qf = ∫ f(s)/s ∫_0^s g = ∫ f · Pg.
        g.average().inner(&self.f.restrict(self.b))
    }
}

impl Evaluable for HardyQ {
    fn eval(&self, t: f64) -> f64 {
        self.value(t)
    }
}

pub fn hardy_q(f: &StepFunction, b: f64) -> HardyQ {
    HardyQ::new(f, b)
}

fn check_point(w: &PiecewisePowerWeight, t: f64) -> Result<()> {
    if !(t > 0.0 && t < w.b()) {
        return Err(GammaError::Domain(format!("point {t} outside (0, {})", w.b())));
    }
    Ok(())
}

/// `(Pφ)(t) = t^{-1} ∫_0^t φ`.
pub fn p_phi(w: &PiecewisePowerWeight, t: f64) -> Result<f64> {
    check_point(w, t)?;
    Ok(w.moment(0.0, t, 0.0)? / t)
}

/// `(Q_pφ)(t) = p t^{p-1} ∫_t^b φ(s) s^{-p} ds`.
pub fn q_sub_p(w: &PiecewisePowerWeight, p: f64, t: f64) -> Result<f64> {
    check_point(w, t)?;
    let tail = w.moment(t, w.b(), -p)?;
    if tail.is_infinite() {
        return Err(GammaError::TrivialWeight(format!(
            "int_t^b phi(s) s^-{p} ds diverges at t = {t}"
        )));
    }
    Ok(p * t.powf(p - 1.0) * tail)
}

/// `P(Q_pφ)(t)`, evaluated through `t · P(Q_pφ)(t) = Φ_p(t)`.
pub fn p_q_p_phi(w: &PiecewisePowerWeight, p: f64, t: f64) -> Result<f64> {
    check_point(w, t)?;
    Ok(phi_bracket(w, p, t)? / t)
}

/// `(Sf)(t) = ∫_0^∞ f(s) / (s + t) ds`.
pub fn stieltjes(f: &StepFunction, t: f64) -> f64 {
    f.pieces()
        .filter(|&(_, _, v)| v > 0.0)
        .map(|(lo, hi, v)| v * ((hi - lo) / (lo + t)).ln_1p())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hardy_p_examples() {
        let f = StepFunction::indicator(1.0);
        assert_eq!(hardy_p(&f).eval(2.0), 0.5);
        assert_eq!(hardy_p(&f).eval(0.25), 1.0);
        let g = StepFunction::new(vec![0.0, 1.0, 3.0], vec![2.0, 1.0]).unwrap();
        assert_relative_eq!(hardy_p(&g).eval(3.0), 4.0 / 3.0);
    }

    #[test]
    fn hardy_q_examples() {
        let q = hardy_q(&StepFunction::indicator(1.0), f64::INFINITY);
        assert_relative_eq!(q.eval(0.5), 2f64.ln());
        assert_eq!(q.eval(1.0), 0.0);
        assert_relative_eq!(q.eval((-1f64).exp()), 1.0, max_relative = 1e-15);
        let truncated = hardy_q(&StepFunction::indicator(1.0), 0.5);
        assert_relative_eq!(truncated.eval(0.25), 2f64.ln());
    }

    #[test]
    fn q_sub_p_examples() {
        let unit = PiecewisePowerWeight::unit();
        assert_relative_eq!(q_sub_p(&unit, 2.0, 5.0).unwrap(), 2.0, max_relative = 1e-14);
        let sqrt = PiecewisePowerWeight::power(f64::INFINITY, 1.0, 0.5).unwrap();
        assert_relative_eq!(q_sub_p(&sqrt, 2.0, 1.0).unwrap(), 4.0, max_relative = 1e-14);
        let finite = PiecewisePowerWeight::power(1.0, 1.0, 0.0).unwrap();
        assert!(q_sub_p(&finite, 2.0, 1.0 - 1e-9).unwrap() < 1e-8);
        assert!(q_sub_p(&unit, 2.0, 0.0).is_err());
    }

    #[test]
    fn stieltjes_examples() {
        let f = StepFunction::indicator(1.0);
        assert_relative_eq!(stieltjes(&f, 1.0), 2f64.ln());
        assert_eq!(stieltjes(&StepFunction::zero(), 3.0), 0.0);
        let v = stieltjes(&f, 1000.0);
        assert!((0.00099..=0.001).contains(&v));
    }

    #[test]
    fn restrict_cuts_support() {
        let f = StepFunction::new(vec![0.0, 1.0, 3.0], vec![2.0, 1.0]).unwrap();
        let r = f.restrict(2.0);
        assert_eq!(r.breaks(), &[0.0, 1.0, 2.0]);
        assert_eq!(r.values(), &[2.0, 1.0]);
        assert_eq!(f.restrict(1.0).breaks(), &[0.0, 1.0]);
    }

    #[test]
    fn q_is_adjoint_of_p() {
        let f = StepFunction::new(vec![0.0, 0.3, 1.2, 4.0], vec![1.0, 0.5, 2.0]).unwrap();
        let g = StepFunction::new(vec![0.0, 0.7, 2.5], vec![3.0, 0.25]).unwrap();
        let lhs = hardy_p(&f).inner(&g);
        let rhs = hardy_q(&g, f64::INFINITY).inner(&f);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }
}
