//! Nonnegative step functions, their distribution functions, decreasing
//! rearrangements and level functions `f** = P(f*)`.

use serde::{Deserialize, Serialize};

use crate::error::{GammaError, Result};

/// A finitely supported nonnegative step function on `(0, ∞)`.
///
/// `values[i]` is taken on `(breaks[i], breaks[i+1])`; the function
/// vanishes past the last break. The zero function is `breaks = [0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepRepr")]
pub struct StepFunction {
    breaks: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct StepRepr {
    breaks: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<StepRepr> for StepFunction {
    type Error = GammaError;
    fn try_from(r: StepRepr) -> Result<Self> {
        StepFunction::new(r.breaks, r.values)
    }
}

impl StepFunction {
    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breaks.first() != Some(&0.0) {
            return Err(GammaError::Invalid("step function breaks must start at 0".into()));
        }
        if values.len() + 1 != breaks.len() {
            return Err(GammaError::Invalid(format!(
                "{} breaks need {} values, got {}",
                breaks.len(),
                breaks.len() - 1,
                values.len()
            )));
        }
        if breaks.windows(2).any(|w| !(w[1] > w[0])) || !breaks.last().is_some_and(|x| x.is_finite()) {
            return Err(GammaError::Invalid("breaks must be finite and strictly increasing".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(GammaError::Invalid("step values must be finite and nonnegative".into()));
        }
        Ok(Self { breaks, values })
    }

    pub fn zero() -> Self {
        Self { breaks: vec![0.0], values: vec![] }
    }

    /// `χ_(0,a)`.
    pub fn indicator(a: f64) -> Self {
        Self::new(vec![0.0, a], vec![1.0]).expect("positive length")
    }

    /// `c · χ_(lo,hi)`.
    pub fn boxcar(lo: f64, hi: f64, c: f64) -> Result<Self> {
        if lo == 0.0 {
            Self::new(vec![0.0, hi], vec![c])
        } else {
            Self::new(vec![0.0, lo, hi], vec![0.0, c])
        }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(lo, hi, value)` triples.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breaks.windows(2).zip(&self.values).map(|(w, &v)| (w[0], w[1], v))
    }

    pub fn support_end(&self) -> f64 {
        *self.breaks.last().expect("non-empty")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        if !(t > 0.0 && t < self.support_end()) {
            return 0.0;
        }
        let idx = self.breaks.partition_point(|&b| b <= t) - 1;
        self.values[idx]
    }

    /// `∫_0^∞ f`.
    pub fn integral(&self) -> f64 {
        self.pieces().map(|(lo, hi, v)| v * (hi - lo)).sum()
    }

    /// `∫_0^t f`.
    pub fn integral_up_to(&self, t: f64) -> f64 {
        self.pieces()
            .take_while(|&(lo, _, _)| lo < t)
            .map(|(lo, hi, v)| v * (hi.min(t) - lo))
            .sum()
    }

    /// `∫_t^∞ f`.
    pub fn integral_from(&self, t: f64) -> f64 {
        self.pieces()
            .filter(|&(_, hi, _)| hi > t)
            .map(|(lo, hi, v)| v * (hi - lo.max(t)))
            .sum()
    }

    /// Distribution function `μ_f(λ) = |{t : f(t) > λ}|`.
    pub fn distribution(&self, lam: f64) -> f64 {
        self.pieces().filter(|&(_, _, v)| v > lam).map(|(lo, hi, _)| hi - lo).sum()
    }

    /// Decreasing rearrangement `f*`: pieces sorted by value, equal values
    /// merged and zero pieces dropped.
    pub fn rearrange(&self) -> DecreasingStep {
        let mut parts: Vec<(f64, f64)> = self
            .pieces()
            .filter(|&(_, _, v)| v > 0.0)
            .map(|(lo, hi, v)| (v, hi - lo))
            .collect();
        parts.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(parts.len());
        for (v, len) in parts {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += len,
                _ => merged.push((v, len)),
            }
        }
        let mut breaks = Vec::with_capacity(merged.len() + 1);
        breaks.push(0.0);
        let mut edge = 0.0;
        for &(_, len) in &merged {
            edge += len;
            breaks.push(edge);
        }
        let values = merged.into_iter().map(|(v, _)| v).collect();
        DecreasingStep(StepFunction { breaks, values })
    }

    /// The averaging `Pf(t) = t^{-1} ∫_0^t f` as a piecewise `a + b/t` function.
    pub fn average(&self) -> LevelFunction {
        let mut cumulative = 0.0;
        let mut pieces = Vec::with_capacity(self.values.len());
        for (lo, hi, v) in self.pieces() {
            pieces.push(HyperbolicPiece { lo, hi, a: v, b: cumulative - v * lo });
            cumulative += v * (hi - lo);
        }
        LevelFunction { pieces, tail_mass: cumulative, end: self.support_end() }
    }

    /// `f**(t) = t^{-1} ∫_0^t f*(s) ds`.
    pub fn double_star(&self, t: f64) -> f64 {
        self.rearrange().level().eval(t)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &StepFunction) -> StepFunction {
        let mut breaks: Vec<f64> = self.breaks.iter().chain(&other.breaks).copied().collect();
        breaks.sort_by(|a, b| a.total_cmp(b));
        breaks.dedup();
        let values = breaks
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                self.eval(mid) + other.eval(mid)
            })
            .collect();
        StepFunction { breaks, values }
    }

    /// `f · χ_(0,b)`.
    pub fn restrict(&self, b: f64) -> StepFunction {
        if b >= self.support_end() {
            return self.clone();
        }
        let mut breaks = vec![0.0];
        let mut values = Vec::new();
        for (_, hi, v) in self.pieces().take_while(|&(lo, _, _)| lo < b) {
            breaks.push(hi.min(b));
            values.push(v);
        }
        StepFunction { breaks, values }
    }

    pub fn scale(&self, c: f64) -> StepFunction {
        assert!(c >= 0.0, "scale factor must be nonnegative");
        StepFunction { breaks: self.breaks.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// `t ↦ f(t/s)`, i.e. the dilation `E_{1/s} f`.
    pub fn dilate(&self, s: f64) -> StepFunction {
        StepFunction { breaks: self.breaks.iter().map(|b| b * s).collect(), values: self.values.clone() }
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// `∫ f g` for two step functions.
    pub fn inner(&self, other: &StepFunction) -> f64 {
        let mut total = 0.0;
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.breaks, &other.breaks);
        while i + 1 < a.len() && j + 1 < b.len() {
            let lo = a[i].max(b[j]);
            let hi = a[i + 1].min(b[j + 1]);
            if hi > lo {
                total += self.values[i] * other.values[j] * (hi - lo);
            }
            if a[i + 1] < b[j + 1] {
                i += 1;
            } else {
                j += 1;
            }
        }
        total
    }

    /// `∫ f^p w` where `w` is given by its moment function `∫_{lo}^{hi} w`.
    pub fn power_moment<M>(&self, p: f64, moment: M) -> Result<f64>
    where
        M: Fn(f64, f64) -> Result<f64>,
    {
        let mut total = 0.0;
        for (lo, hi, v) in self.pieces() {
            if v > 0.0 {
                total += v.powf(p) * moment(lo, hi)?;
            }
        }
        Ok(total)
    }
}

/// `[f**(t) + g**(t)] − (f+g)**(t)`, nonnegative by subadditivity of
/// `f ↦ ∫_0^t f*`.
pub fn subadditivity_gap(f: &StepFunction, g: &StepFunction, t: f64) -> f64 {
    f.double_star(t) + g.double_star(t) - f.add(g).double_star(t)
}

/// A step function with nonincreasing values, as produced by [`StepFunction::rearrange`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DecreasingStep(StepFunction);

impl DecreasingStep {
    /// Wraps `f` if its values are nonincreasing.
    pub fn new(f: StepFunction) -> Result<Self> {
        if !f.is_nonincreasing() {
            return Err(GammaError::Precondition("values are not nonincreasing".into()));
        }
        Ok(Self(f))
    }

    pub fn as_step(&self) -> &StepFunction {
        &self.0
    }

    pub fn into_step(self) -> StepFunction {
        self.0
    }

    /// Level function `f** = P(f*)`.
    pub fn level(&self) -> LevelFunction {
        self.0.average()
    }
}

impl std::ops::Deref for DecreasingStep {
    type Target = StepFunction;
    fn deref(&self) -> &StepFunction {
        &self.0
    }
}

/// `a + b/t` on `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicPiece {
    pub lo: f64,
    pub hi: f64,
    pub a: f64,
    pub b: f64,
}

/// A running average of a step function: piecewise `a + b/t` up to `end`,
/// then `tail_mass / t`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelFunction {
    pub pieces: Vec<HyperbolicPiece>,
    pub tail_mass: f64,
    pub end: f64,
}

impl LevelFunction {
    pub fn eval(&self, t: f64) -> f64 {
        if t >= self.end {
            return self.tail_mass / t;
        }
        let idx = self.pieces.partition_point(|pc| pc.hi <= t);
        let pc = &self.pieces[idx];
        pc.a + pc.b / t
    }

    /// `∫ level · g` against a step function, exact.
    pub fn inner(&self, g: &StepFunction) -> f64 {
        let mut total = 0.0;
        for (glo, ghi, v) in g.pieces() {
            if v == 0.0 {
                continue;
            }
            for pc in &self.pieces {
                let lo = pc.lo.max(glo);
                let hi = pc.hi.min(ghi);
                if hi > lo {
                    let log_part = if pc.b == 0.0 { 0.0 } else { pc.b * (hi / lo).ln() };
                    total += v * (pc.a * (hi - lo) + log_part);
                }
            }
            let lo = self.end.max(glo);
            if ghi > lo && self.tail_mass > 0.0 {
                total += v * self.tail_mass * (ghi / lo).ln();
            }
        }
        total
    }
}
