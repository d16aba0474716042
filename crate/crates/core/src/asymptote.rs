//! Leading-order endpoint behaviour `coef · x^power · |ln x|^log_power`.
//!
//! Suprema over `(0, ∞)` are taken on a finite log grid; the limits at the
//! two ends are supplied by these symbolic asymptotes, built from the
//! boundary exponents of piecewise-power weights.

/// Which end of `(0, ∞)` an asymptote describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Zero,
    Infinity,
}

const POWER_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptote {
    pub coef: f64,
    pub power: f64,
    pub log_power: f64,
}

impl Asymptote {
    pub fn power_law(coef: f64, power: f64) -> Self {
        Self {
            coef,
            power,
            log_power: 0.0,
        }
    }

    pub fn constant(coef: f64) -> Self {
        Self::power_law(coef, 0.0)
    }

    pub fn infinite() -> Self {
        Self::power_law(f64::INFINITY, 0.0)
    }

    pub fn is_infinite(&self) -> bool {
        self.coef.is_infinite()
    }

    pub fn mul(self, other: Self) -> Self {
        Self {
            coef: self.coef * other.coef,
            power: self.power + other.power,
            log_power: self.log_power + other.log_power,
        }
    }

    pub fn div(self, other: Self) -> Self {
        Self {
            coef: self.coef / other.coef,
            power: self.power - other.power,
            log_power: self.log_power - other.log_power,
        }
    }

    pub fn powf(self, e: f64) -> Self {
        Self {
            coef: self.coef.powf(e),
            power: self.power * e,
            log_power: self.log_power * e,
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(self, k: f64) -> Self {
        Self {
            power: self.power + k,
            ..self
        }
    }

    pub fn scale(self, c: f64) -> Self {
        Self {
            coef: self.coef * c,
            ..self
        }
    }

    /// Asymptote of a sum: the dominant term wins; equal orders add.
    pub fn add(self, other: Self, end: Endpoint) -> Self {
        if self.is_infinite() || other.coef == 0.0 {
            return self;
        }
        if other.is_infinite() || self.coef == 0.0 {
            return other;
        }
        let dp = self.power - other.power;
        if dp.abs() <= POWER_EPS {
            let dl = self.log_power - other.log_power;
            if dl.abs() <= POWER_EPS {
                return Self {
                    coef: self.coef + other.coef,
                    ..self
                };
            }
            return if dl > 0.0 { self } else { other };
        }
        // Near 0 the smaller power dominates; near ∞ the larger.
        let self_dominates = match end {
            Endpoint::Zero => dp < 0.0,
            Endpoint::Infinity => dp > 0.0,
        };
        if self_dominates {
            self
        } else {
            other
        }
    }

    /// Limit of the described quantity at the endpoint (`0`, `coef` or `∞`).
    pub fn limit(&self, end: Endpoint) -> f64 {
        if self.coef == 0.0 {
            return 0.0;
        }
        if self.is_infinite() {
            return f64::INFINITY;
        }
        // Effective growth exponent as the endpoint is approached.
        let growth = match end {
            Endpoint::Zero => -self.power,
            Endpoint::Infinity => self.power,
        };
        if growth.abs() <= POWER_EPS {
            if self.log_power.abs() <= POWER_EPS {
                self.coef
            } else if self.log_power > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        } else if growth > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}
