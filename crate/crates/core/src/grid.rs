//! Log grids and suprema over `(0, b)` with symbolic endpoint limits.

use std::cell::RefCell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GammaError, Result};

/// `points_per_decade` points per decade on `[10^decades_lo, 10^decades_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LogGrid {
    pub decades_lo: f64,
    pub decades_hi: f64,
    pub points_per_decade: usize,
}

impl Default for LogGrid {
    fn default() -> Self {
        Self { decades_lo: -8.0, decades_hi: 8.0, points_per_decade: 16 }
    }
}

impl LogGrid {
    pub fn new(decades_lo: f64, decades_hi: f64, points_per_decade: usize) -> Result<Self> {
        let g = Self { decades_lo, decades_hi, points_per_decade };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.decades_lo < self.decades_hi) || !self.decades_lo.is_finite() || !self.decades_hi.is_finite() {
            return Err(GammaError::Invalid(format!(
                "grid decades must satisfy lo < hi, got [{}, {}]",
                self.decades_lo, self.decades_hi
            )));
        }
        if self.points_per_decade == 0 {
            return Err(GammaError::Invalid("points_per_decade must be positive".into()));
        }
        Ok(())
    }

    pub fn doubled(&self) -> Self {
        Self { points_per_decade: 2 * self.points_per_decade, ..*self }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.decades_hi - self.decades_lo) * self.points_per_decade as f64).round() as usize;
        let step = 1.0 / self.points_per_decade as f64;
        (0..=n).map(|k| 10f64.powf(self.decades_lo + step * k as f64)).collect()
    }

    /// Grid points strictly inside `(0, b)`, with extra points accumulating
    /// at `b` when it is finite.
    pub fn points_below(&self, b: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = self.points().into_iter().filter(|&t| t < b).collect();
        if b.is_finite() {
            pts.extend((1..=12).map(|k| b * (1.0 - 10f64.powi(-k))));
            pts.sort_by(f64::total_cmp);
            pts.dedup();
        }
        pts
    }
}

/// Where a supremum was attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attained {
    Interior,
    AtZero,
    AtInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupResult {
    #[serde(with = "crate::serde_ext")]
    pub value: f64,
    /// Location of the best interior point.
    pub argmax: f64,
    #[serde(with = "crate::serde_ext")]
    pub interior_max: f64,
    #[serde(with = "crate::serde_ext")]
    pub limit_zero: f64,
    #[serde(with = "crate::serde_ext")]
    pub limit_infinity: f64,
    pub attained: Attained,
}

/// `sup_t f(t)` over the grid, refined by golden-section search around the
/// best grid point, combined with the given endpoint limits.
pub fn sup_with_limits<F>(f: F, grid: &[f64], limit_zero: f64, limit_infinity: f64) -> Result<SupResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    try_sup_with_limits(|t| Ok(f(t)), grid, limit_zero, limit_infinity)
}

/// Fallible form of [`sup_with_limits`]; the first error is returned.
pub fn try_sup_with_limits<F>(f: F, grid: &[f64], limit_zero: f64, limit_infinity: f64) -> Result<SupResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if grid.is_empty() {
        return Err(GammaError::Invalid("empty grid".into()));
    }
    let values = grid.par_iter().map(|&t| f(t)).collect::<Result<Vec<f64>>>()?;
    if let Some(k) = values.iter().position(|v| v.is_nan()) {
        return Err(GammaError::Domain(format!("objective is NaN at t = {}", grid[k])));
    }
    let (mut k, mut best) = (0, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v > best {
            k = i;
            best = v;
        }
    }
    let mut argmax = grid[k];
    if best.is_finite() && grid.len() > 1 {
        let lo = grid[k.saturating_sub(1)];
        let hi = grid[(k + 1).min(grid.len() - 1)];
        let failure = RefCell::new(None);
        let g = |u: f64| match f(u.exp()) {
            Ok(v) if !v.is_nan() => v,
            Ok(_) => f64::NEG_INFINITY,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NEG_INFINITY
            }
        };
        let (u, v) = golden_max(g, lo.ln(), hi.ln(), 80);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        if v > best {
            best = v;
            argmax = u.exp();
        }
    }
    let mut value = best;
    let mut attained = Attained::Interior;
    if limit_zero > value {
        value = limit_zero;
        attained = Attained::AtZero;
    }
    if limit_infinity > value {
        value = limit_infinity;
        attained = Attained::AtInfinity;
    }
    Ok(SupResult { value, argmax, interior_max: best, limit_zero, limit_infinity, attained })
}

/// Golden-section maximization of `f` on `[a, b]`; returns `(argmax, max)`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if (b - a).abs() < 1e-13 {
            break;
        }
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
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
