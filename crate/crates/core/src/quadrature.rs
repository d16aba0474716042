//! Adaptive Gauss–Legendre quadrature on logarithmically spaced panels.
//!
//! Every integrand in this crate lives on `(0, b)` and is power-like near
//! the endpoints, so integration is carried out in the variable `u = ln t`.
//! Finite intervals are refined by panel doubling; half-infinite intervals
//! are marched one decade at a time with a power-law remainder estimate.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{GammaError, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess for the i-th largest root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// The shared 15-point rule.
    pub fn fifteen() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(15))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single-panel integral of `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(&self, a: f64, b: f64, f: &F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Settings for the adaptive log-space integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    /// Relative change between successive refinements at which to stop.
    pub tol: f64,
    /// Maximum number of panel doublings.
    pub max_levels: u32,
    /// Initial panels per unit length of `ln t`.
    pub panels_per_unit: f64,
    /// Maximum number of decades marched towards `0` or `∞`.
    pub max_decades: u32,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_levels: 20,
            panels_per_unit: 1.0,
            max_decades: 400,
        }
    }
}

const LN10: f64 = std::f64::consts::LN_10;
const TINY: f64 = 1e-290;
const HUGE: f64 = 1e290;
// Local slopes this close to -1 are treated as divergent.
const SLOPE_MARGIN: f64 = 1e-6;

impl Quadrature {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    /// Same settings with twice the initial panel density.
    pub fn refined(&self) -> Self {
        Self {
            panels_per_unit: 2.0 * self.panels_per_unit,
            ..*self
        }
    }

    fn panels<F: Fn(f64) -> f64 + ?Sized>(&self, f: &F, lu: f64, hu: f64, n: usize) -> f64 {
        let rule = GaussLegendre::fifteen();
        let h = (hu - lu) / n as f64;
        let g = |u: f64| {
            let t = u.exp();
            f(t) * t
        };
        (0..n)
            .map(|k| {
                let a = lu + h * k as f64;
                let b = if k + 1 == n { hu } else { a + h };
                rule.integrate(a, b, &g)
            })
            .sum()
    }

    /// `∫_a^b f(t) dt` for `0 < a ≤ b < ∞`, refined in `ln t` until two
    /// successive panel doublings agree to `tol`.
    pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(&self, f: &F, a: f64, b: f64) -> Result<f64> {
        if !(a > 0.0 && b.is_finite()) {
            return Err(GammaError::Domain(format!(
                "log-space quadrature needs 0 < a <= b < inf, got [{a}, {b}]"
            )));
        }
        if b <= a {
            return Ok(0.0);
        }
        let (lu, hu) = (a.ln(), b.ln());
        let n0 = ((self.panels_per_unit * (hu - lu)).ceil() as usize).max(1);
        let mut prev = self.panels(f, lu, hu, n0);
        let mut change = f64::INFINITY;
        for level in 1..=self.max_levels {
            let cur = self.panels(f, lu, hu, n0 << level);
            if !cur.is_finite() {
                return Ok(cur);
            }
            change = (cur - prev).abs();
            if change <= self.tol * cur.abs() || change <= 1e-300 {
                return Ok(cur);
            }
            prev = cur;
        }
        Err(GammaError::Quadrature {
            achieved: change / prev.abs().max(1e-300),
        })
    }

    /// `∫_0^a f(t) dt`. `exponent` is the power of `f` at `0` when known;
    /// `f(t) ~ C t^e` with `e ≤ -1` means divergence and returns `+∞`.
    pub fn integrate_from_zero<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        a: f64,
        exponent: Option<f64>,
    ) -> Result<f64> {
        if let Some(e) = exponent {
            if e <= -1.0 + 1e-13 {
                return Ok(f64::INFINITY);
            }
        }
        self.march(f, a, exponent, Direction::Down)
    }

    /// `∫_a^∞ f(t) dt`; `f(t) ~ C t^e` with `e ≥ -1` means divergence.
    pub fn integrate_to_infinity<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        a: f64,
        exponent: Option<f64>,
    ) -> Result<f64> {
        if let Some(e) = exponent {
            if e >= -1.0 - 1e-13 {
                return Ok(f64::INFINITY);
            }
        }
        self.march(f, a, exponent, Direction::Up)
    }

    fn march<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        a: f64,
        exponent: Option<f64>,
        dir: Direction,
    ) -> Result<f64> {
        let step = match dir {
            Direction::Down => (-LN10).exp(),
            Direction::Up => LN10.exp(),
        };
        let probe = match dir {
            Direction::Down => (-0.5f64).exp(),
            Direction::Up => 0.5f64.exp(),
        };
        let mut sum = 0.0;
        let mut edge = a;
        let mut prev_slope = f64::NAN;
        let mut bad_slope_run = 0u32;
        let mut rem = f64::INFINITY;
        for _ in 0..self.max_decades {
            let next = edge * step;
            let piece = match dir {
                Direction::Down => self.integrate(f, next, edge)?,
                Direction::Up => self.integrate(f, edge, next)?,
            };
            sum += piece;
            edge = next;
            if !sum.is_finite() {
                return Ok(sum);
            }
            let fe = f(edge);
            if fe == 0.0 {
                return Ok(sum);
            }
            let fp = f(edge * probe);
            let slope = if fe > 0.0 && fp > 0.0 {
                (fp / fe).ln() / probe.ln()
            } else {
                f64::NAN
            };
            // Remainder of a pure power with the local slope.
            let beta = if slope.is_finite() { slope } else { exponent.unwrap_or(f64::NAN) };
            let convergent = match dir {
                Direction::Down => beta > -1.0 + SLOPE_MARGIN,
                Direction::Up => beta < -1.0 - SLOPE_MARGIN,
            };
            if convergent {
                bad_slope_run = 0;
                rem = (edge * fe / (beta + 1.0)).abs();
                let settled = (slope - prev_slope).abs() < 1e-9;
                if rem <= 0.1 * self.tol * sum.abs() || settled {
                    return Ok(sum + rem);
                }
            } else {
                bad_slope_run += 1;
                rem = f64::INFINITY;
                if exponent.is_none() && bad_slope_run >= 20 {
                    return Ok(f64::INFINITY);
                }
            }
            prev_slope = slope;
            if !(TINY..=HUGE).contains(&edge) {
                break;
            }
        }
        if rem.is_finite() && rem <= 1e-3 * sum.abs() {
            return Ok(sum + rem);
        }
        Err(GammaError::Quadrature {
            achieved: rem / sum.abs().max(1e-300),
        })
    }

    /// `∫_a^b f` for `0 ≤ a ≤ b ≤ ∞`, dispatching to the endpoint marchers.
    /// `exp0` and `exp_inf` are the power exponents of `f` at `0` and `∞`.
    pub fn integrate_range<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        exp0: Option<f64>,
        exp_inf: Option<f64>,
    ) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        match (a > 0.0, b.is_finite()) {
            (true, true) => self.integrate(f, a, b),
            (false, true) => self.integrate_from_zero(f, b, exp0),
            (true, false) => self.integrate_to_infinity(f, a, exp_inf),
            (false, false) => {
                let head = self.integrate_from_zero(f, 1.0, exp0)?;
                if head.is_infinite() {
                    return Ok(head);
                }
                Ok(head + self.integrate_to_infinity(f, 1.0, exp_inf)?)
            }
        }
    }

    /// Like [`Quadrature::integrate_range`] but splits at the given interior
    /// breakpoints so that each panel sees a smooth integrand.
    pub fn integrate_split<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        breaks: &[f64],
        exp0: Option<f64>,
        exp_inf: Option<f64>,
    ) -> Result<f64> {
        let mut cuts = vec![a];
        cuts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
        cuts.push(b);
        cuts.sort_by(|x, y| x.total_cmp(y));
        cuts.dedup();
        let mut total = 0.0;
        for w in cuts.windows(2) {
            total += self.integrate_range(f, w[0], w[1], exp0, exp_inf)?;
            if total.is_infinite() {
                break;
            }
        }
        Ok(total)
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Down,
    Up,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(15);
        let s: f64 = rule.weights().iter().sum();
        assert_relative_eq!(s, 2.0, epsilon = 1e-14);
        // degree 29 is the exactness limit
        let v = rule.integrate(0.0, 1.0, &|x: f64| x.powi(29));
        assert_relative_eq!(v, 1.0 / 30.0, epsilon = 1e-14);
    }

    #[test]
    fn finite_interval() {
        let q = Quadrature::default();
        let v = q.integrate(&|t: f64| 1.0 / t, 1.0, std::f64::consts::E).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-12);
        let v = q.integrate(&|t: f64| t.sin(), 0.5, 3.0).unwrap();
        assert_relative_eq!(v, 0.5f64.cos() - 3.0f64.cos(), max_relative = 1e-10);
    }

    #[test]
    fn tails_of_pure_powers() {
        let q = Quadrature::default();
        let v = q.integrate_from_zero(&|t: f64| t.powf(-0.9), 1.0, Some(-0.9)).unwrap();
        assert_relative_eq!(v, 10.0, max_relative = 1e-9);
        let v = q.integrate_to_infinity(&|t: f64| t.powf(-1.1), 1.0, Some(-1.1)).unwrap();
        assert_relative_eq!(v, 10.0, max_relative = 1e-9);
        let v = q.integrate_to_infinity(&|t: f64| (-t).exp(), 1.0, None).unwrap();
        assert_relative_eq!(v, (-1.0f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn divergence_is_infinite() {
        let q = Quadrature::default();
        assert!(q.integrate_from_zero(&|t: f64| 1.0 / t, 1.0, Some(-1.0)).unwrap().is_infinite());
        assert!(q.integrate_to_infinity(&|t: f64| 1.0 / t, 1.0, None).unwrap().is_infinite());
    }

    #[test]
    fn split_range_over_whole_line() {
        let q = Quadrature::default();
        let f = |t: f64| 1.0 / (1.0 + t).powi(2);
        let v = q.integrate_split(&f, 0.0, f64::INFINITY, &[0.3, 7.0], Some(0.0), Some(-2.0)).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-9);
    }
}
