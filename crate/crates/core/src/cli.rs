//! Batch front end: JSON run configurations, command dispatch, reports and
//! CSV export.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::duality::{
    associate_norm_oracle_with, dual_norm_parts, omega_duality_with, DualWeight, OracleConfig,
};
use crate::error::{GammaError, Result};
use crate::functions::StepFunction;
use crate::grid::{LogGrid, SupResult};
use crate::indices::{boyd_indices_with, cz_admissible_with};
use crate::inequalities::{
    embedding_empirical_check, embedding_norm_with, hardy_p_constant_with, hardy_p_sides, hardy_q_constant_with,
    hardy_q_sides, stieltjes_constant_with, stieltjes_sides, ConstantReport, SearchOptions, Sides,
};
use crate::norms::{check_index, gamma_norm_with};
use crate::quadrature::Quadrature;
use crate::sampling::StepSampler;
use crate::weights::{validate_nontrivial, GammaSpace, PiecewisePower, PiecewisePowerWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    DualWeight,
    Norm,
    DualCheck,
    Embed,
    Hardy,
    Stieltjes,
    Indices,
    CzCheck,
    ReportAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::DualWeight => "dual-weight",
            Command::Norm => "norm",
            Command::DualCheck => "dual-check",
            Command::Embed => "embed",
            Command::Hardy => "hardy",
            Command::Stieltjes => "stieltjes",
            Command::Indices => "indices",
            Command::CzCheck => "cz-check",
            Command::ReportAll => "report-all",
        }
    }
}

fn default_tol() -> f64 {
    1e-9
}
fn default_budget() -> usize {
    50
}
fn default_samples() -> usize {
    500
}

/// One run of the toolkit. `weight` is `φ` (or `φ₁`), `weight2` is `φ₂`;
/// `u`, `v` are the weights of the Hardy and Stieltjes inequalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub weight: Option<PiecewisePowerWeight>,
    #[serde(default)]
    pub weight2: Option<PiecewisePowerWeight>,
    #[serde(default)]
    pub u: Option<PiecewisePower>,
    #[serde(default)]
    pub v: Option<PiecewisePower>,
    /// Upper endpoint for the Hardy inequalities; defaults to `∞`.
    #[serde(default, with = "crate::serde_ext::option")]
    pub b: Option<f64>,
    #[serde(default)]
    pub function: Option<StepFunction>,
    #[serde(default)]
    pub functions: Vec<StepFunction>,
    #[serde(default)]
    pub grid: LogGrid,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Random samples for empirical checks.
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            p: None,
            q: None,
            weight: None,
            weight2: None,
            u: None,
            v: None,
            b: None,
            function: None,
            functions: Vec::new(),
            grid: LogGrid::default(),
            tol: default_tol(),
            seed: 0,
            budget: default_budget(),
            samples: default_samples(),
        }
    }
}

fn config_error(path: &str, message: impl Into<String>) -> GammaError {
    GammaError::Config { path: path.into(), message: message.into() }
}

impl RunConfig {
    /// Parses JSON, reporting the path of the offending field on failure.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config_error(&path, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| GammaError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks every field that is present, before any dispatch.
    pub fn validate(&self) -> Result<()> {
        if self.command.is_none() {
            return Err(config_error("command", "no command given"));
        }
        for (name, x) in [("p", self.p), ("q", self.q)] {
            if let Some(x) = x {
                check_index(x).map_err(|e| config_error(name, e.to_string()))?;
            }
        }
        self.grid.validate().map_err(|e| config_error("grid", e.to_string()))?;
        if !(self.tol > 0.0 && self.tol <= 1e-2) {
            return Err(config_error("tol", format!("tolerance must lie in (0, 0.01], got {}", self.tol)));
        }
        if self.budget == 0 {
            return Err(config_error("budget", "budget must be positive"));
        }
        if self.samples == 0 {
            return Err(config_error("samples", "samples must be positive"));
        }
        if let Some(b) = self.b {
            if !(b > 0.0) {
                return Err(config_error("b", format!("b must be positive, got {b}")));
            }
        }
        Ok(())
    }

    fn all_functions(&self) -> Vec<StepFunction> {
        self.function.iter().chain(&self.functions).cloned().collect()
    }

    fn need_p(&self) -> Result<f64> {
        self.p.ok_or_else(|| config_error("p", "required by this command"))
    }

    fn need_q(&self) -> Result<f64> {
        self.q.ok_or_else(|| config_error("q", "required by this command"))
    }

    fn need_weight(&self) -> Result<&PiecewisePowerWeight> {
        self.weight.as_ref().ok_or_else(|| config_error("weight", "required by this command"))
    }

    fn need_weight2(&self) -> Result<&PiecewisePowerWeight> {
        self.weight2.as_ref().ok_or_else(|| config_error("weight2", "required by this command"))
    }

    fn need_uv(&self) -> Result<(&PiecewisePower, &PiecewisePower)> {
        let u = self.u.as_ref().ok_or_else(|| config_error("u", "required by this command"))?;
        let v = self.v.as_ref().ok_or_else(|| config_error("v", "required by this command"))?;
        Ok((u, v))
    }

    fn search(&self) -> SearchOptions {
        SearchOptions { grid: self.grid, quad: Quadrature::with_tol(self.tol) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Located {
    pub label: String,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub label: String,
    #[serde(with = "crate::serde_ext")]
    pub zero: f64,
    #[serde(with = "crate::serde_ext")]
    pub infinity: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub argmax: Vec<Located>,
    pub endpoint_limits: Vec<Limits>,
    /// Relative tolerance requested from every adaptive quadrature.
    pub quadrature_tol: f64,
    pub warnings: Vec<String>,
}

impl Diagnostics {
    fn record_sup(&mut self, label: &str, sup: &SupResult) {
        self.argmax.push(Located { label: label.into(), t: sup.argmax });
        self.endpoint_limits.push(Limits { label: label.into(), zero: sup.limit_zero, infinity: sup.limit_infinity });
    }

    fn record_constant(&mut self, label: &str, c: &ConstantReport) {
        if let Some(s) = &c.surrogate {
            self.record_sup(&format!("{label}/surrogate"), s);
        }
        if let Some(s) = &c.sup {
            self.record_sup(label, s);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub config: RunConfig,
    pub results: Value,
    pub diagnostics: Diagnostics,
    pub version: String,
    pub timing_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON with the timing field zeroed, for reproducibility comparisons.
    pub fn to_json_untimed(&self) -> String {
        Report { timing_ms: 0.0, ..self.clone() }.to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| config_error("report", e.to_string()))
    }
}

/// Runs the configured command.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let command = config.command.expect("validated");
    let start = Instant::now();
    let mut diag = Diagnostics { quadrature_tol: config.tol, ..Diagnostics::default() };
    let results = dispatch(command, config, &mut diag)?;
    Ok(Report {
        command,
        config: config.clone(),
        results,
        diagnostics: diag,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn dispatch(command: Command, cfg: &RunConfig, diag: &mut Diagnostics) -> Result<Value> {
    match command {
        Command::Validate => validate(cfg),
        Command::DualWeight => dual_weight(cfg),
        Command::Norm => norm(cfg),
        Command::DualCheck => dual_check(cfg, diag),
        Command::Embed => embed(cfg, diag),
        Command::Hardy => hardy(cfg, diag),
        Command::Stieltjes => stieltjes_cmd(cfg, diag),
        Command::Indices => indices(cfg, diag),
        Command::CzCheck => cz_check(cfg),
        Command::ReportAll => report_all(cfg, diag),
    }
}

fn space(cfg: &RunConfig) -> Result<GammaSpace> {
    GammaSpace::new(cfg.need_p()?, cfg.need_weight()?.clone())
}

fn psi_of(cfg: &RunConfig) -> Result<DualWeight> {
    Ok(DualWeight::from_space(&space(cfg)?).with_quadrature(Quadrature::with_tol(cfg.tol)))
}

fn validate(cfg: &RunConfig) -> Result<Value> {
    let p = cfg.need_p()?;
    let flags = validate_nontrivial(cfg.need_weight()?, p);
    if let Some(reason) = &flags.reason {
        return Err(GammaError::TrivialWeight(reason.clone()));
    }
    Ok(json!({ "p": p, "flags": to_value(&flags) }))
}

fn dual_weight(cfg: &RunConfig) -> Result<Value> {
    let psi = psi_of(cfg)?;
    let pts = cfg.grid.points_below(psi.source().b());
    Ok(json!({
        "p": psi.p,
        "pprime": psi.pprime,
        "exponent_at_zero": psi.asym0,
        "exponent_at_infinity": psi.asym_inf,
        "psi_samples": to_value(&psi.sample(&pts)),
    }))
}

fn norm(cfg: &RunConfig) -> Result<Value> {
    let sp = space(cfg)?;
    let psi = psi_of(cfg)?;
    let values = cfg
        .all_functions()
        .iter()
        .map(|f| {
            Ok(json!({
                "gamma_norm": crate::serde_ext::value(gamma_norm_with(sp.p, &sp.weight, f)?),
                "dual_norm": to_value(&dual_norm_parts(&psi, f)?),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "p": sp.p, "values": values }))
}

fn dual_check(cfg: &RunConfig, diag: &mut Diagnostics) -> Result<Value> {
    let psi = psi_of(cfg)?;
    let oracle_cfg = OracleConfig { budget: cfg.budget, ..OracleConfig::default() };
    let omega_ok = psi.source().b().is_infinite() && psi.source().total_mass().is_infinite();
    let mut checks = Vec::new();
    for (k, g) in cfg.all_functions().iter().enumerate() {
        let g = g.rearrange().into_step();
        let dn = dual_norm_parts(&psi, &g)?;
        let oracle = associate_norm_oracle_with(&psi, &g, &oracle_cfg)?;
        diag.argmax.push(Located { label: format!("oracle[{k}]/characteristic"), t: oracle.characteristic_argmax });
        let omega = if omega_ok { Some(to_value(&omega_duality_with(&psi, &g, &oracle_cfg)?)) } else { None };
        let ratio = if dn.value == 0.0 { 1.0 } else { oracle.value / dn.value };
        checks.push(json!({
            "dual_norm": to_value(&dn),
            "oracle": to_value(&oracle),
            "ratio": ratio,
            "omega": omega,
        }));
    }
    if !omega_ok {
        diag.warnings.push("omega duality skipped: needs b = inf and int phi = inf".into());
    }
    Ok(json!({ "p": psi.p, "checks": checks }))
}

fn embed(cfg: &RunConfig, diag: &mut Diagnostics) -> Result<Value> {
    let (p, q) = (cfg.need_p()?, cfg.need_q()?);
    let (w1, w2) = (cfg.need_weight()?, cfg.need_weight2()?);
    let rep = embedding_norm_with(p, w1, q, w2, &cfg.search())?;
    diag.record_constant("embedding", &rep.constant);
    diag.warnings.extend(rep.warnings.iter().cloned());
    let empirical = embedding_empirical_check(p, w1, q, w2, cfg.samples, cfg.seed)?;
    Ok(json!({ "p": p, "q": q, "embedding": to_value(&rep), "empirical": to_value(&empirical) }))
}

/// Largest `lhs/rhs` over `n` seeded random step functions.
fn sampled_max<F: Fn(&StepFunction) -> Result<Sides>>(n: usize, seed: u64, sides: F) -> Result<f64> {
    let mut s = StepSampler::new(seed);
    let mut best: f64 = 0.0;
    for _ in 0..n {
        best = best.max(sides(&s.step())?.ratio());
    }
    Ok(best)
}

fn hardy(cfg: &RunConfig, diag: &mut Diagnostics) -> Result<Value> {
    let (p, q) = (cfg.need_p()?, cfg.need_q()?);
    let (u, v) = cfg.need_uv()?;
    let b = cfg.b.unwrap_or(f64::INFINITY);
    let opts = cfg.search();
    let cp = hardy_p_constant_with(p, q, u, v, b, &opts)?;
    let cq = hardy_q_constant_with(p, q, u, v, b, &opts)?;
    diag.record_constant("hardy_p", &cp);
    diag.record_constant("hardy_q", &cq);
    let mp = sampled_max(cfg.samples, cfg.seed, |f| hardy_p_sides(p, q, u, v, b, f))?;
    let mq = sampled_max(cfg.samples, cfg.seed, |f| hardy_q_sides(p, q, u, v, b, f))?;
    Ok(json!({
        "p": p, "q": q, "b": crate::serde_ext::value(b),
        "hardy_p": to_value(&cp),
        "hardy_q": to_value(&cq),
        "sampled": { "samples": cfg.samples, "hardy_p_max_ratio": mp, "hardy_q_max_ratio": mq },
    }))
}

fn stieltjes_cmd(cfg: &RunConfig, diag: &mut Diagnostics) -> Result<Value> {
    let (p, q) = (cfg.need_p()?, cfg.need_q()?);
    let (u, v) = cfg.need_uv()?;
    let c = stieltjes_constant_with(p, q, u, v, &cfg.search())?;
    diag.record_constant("stieltjes", &c);
    let m = sampled_max(cfg.samples, cfg.seed, |f| stieltjes_sides(p, q, u, v, f))?;
    Ok(json!({
        "p": p, "q": q,
        "stieltjes": to_value(&c),
        "sampled": { "samples": cfg.samples, "max_ratio": m },
    }))
}

fn indices(cfg: &RunConfig, diag: &mut Diagnostics) -> Result<Value> {
    let r = boyd_indices_with(cfg.need_p()?, cfg.need_weight()?, &cfg.grid)?;
    diag.warnings.extend(r.warnings.iter().cloned());
    Ok(to_value(&r))
}

fn cz_check(cfg: &RunConfig) -> Result<Value> {
    let (p, w) = (cfg.need_p()?, cfg.need_weight()?);
    let r = cz_admissible_with(p, w, &cfg.grid)?;
    Ok(json!({ "p": p, "cz": to_value(&r) }))
}

fn report_all(cfg: &RunConfig, diag: &mut Diagnostics) -> Result<Value> {
    let mut out = serde_json::Map::new();
    out.insert("validate".into(), validate(cfg)?);
    out.insert("dual_weight".into(), dual_weight(cfg)?);
    if cfg.need_weight()?.b().is_infinite() {
        out.insert("indices".into(), indices(cfg, diag)?);
    } else {
        diag.warnings.push("indices skipped: needs b = inf".into());
    }
    if !cfg.all_functions().is_empty() {
        out.insert("norm".into(), norm(cfg)?);
        out.insert("dual_check".into(), dual_check(cfg, diag)?);
    }
    if cfg.q.is_some() && cfg.weight2.is_some() {
        out.insert("embed".into(), embed(cfg, diag)?);
    }
    if cfg.u.is_some() && cfg.v.is_some() && cfg.q.is_some() {
        out.insert("hardy".into(), hardy(cfg, diag)?);
    }
    Ok(Value::Object(out))
}

/// The sampled series of a report: header and rows.
fn series(report: &Report) -> Result<(Vec<&'static str>, Vec<Vec<String>>)> {
    let find = |key: &str, nested: &str| {
        report.results.get(key).or_else(|| report.results.get(nested).and_then(|n| n.get(key)))
    };
    let (header, arr) = if let Some(a) = find("psi_samples", "dual_weight") {
        (vec!["t", "psi", "local_slope"], a)
    } else if let Some(a) = find("h_samples", "indices") {
        (vec!["t", "h"], a)
    } else {
        return Err(GammaError::Precondition(format!(
            "report for `{}` has no sampled series",
            report.command.name()
        )));
    };
    let cell = |v: Option<&Value>| match v {
        Some(Value::String(s)) => s.clone(),
        Some(v) if !v.is_null() => v.to_string(),
        _ => String::new(),
    };
    let rows = arr
        .as_array()
        .map(|xs| xs.iter().map(|x| header.iter().map(|h| cell(x.get(*h))).collect()).collect())
        .unwrap_or_default();
    Ok((header, rows))
}

/// Writes the report's sampled series as CSV with a header row.
pub fn export_csv(report: &Report, path: &Path) -> Result<()> {
    let (header, rows) = series(report)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| GammaError::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| GammaError::Io(e.to_string()))?;
    write_atomic(path, &bytes)
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| GammaError::Io(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, bytes).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}
