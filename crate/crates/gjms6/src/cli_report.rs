//! Suite runner behind the `gjms6` binary: run configuration, per-check
//! records, the JSON report and CSV plot data.
//!
//! Every suite draws its randomness from a ChaCha stream derived from the
//! seed and the suite, so a suite produces the same records whether it runs
//! alone or inside `all`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::rc::Rc;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary_ops::{apply_all, BallPoly, FieldRep, Warped};
use crate::conformal::{critical_t_shift, ConfRing, finite_covariance_residual, infinitesimal_covariance_residual, VariationProbe};
use crate::energy_form::{dirichlet_eigen_lower, energy, fi_fb_decompose, q6_form, q6_halfspace_mode, symmetry_residual, trace_lower_bound_check};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{MultiPoly, Series, T_VAR, Y_VAR};
use crate::fractional::{critical_multiplier, dtn_multiplier, dtn_symbolic_halfspace, dtn_verify, multiplier, Boundary};
use crate::gjms6::apply_l6;
use crate::mode_solver::{BoundaryTriple, ModeIndex};
use crate::model_geometry::{ModelGeometry, ModelKind};
use crate::rational::{fmt_f64, fmt_q, q, q0, qi, rising, Num, Q};
use crate::trace_ineq::{
    random_zonal_field, sharp_constant, slot_gamma, slot_weight, sphere_sobolev_check, ExtremalSpec, InequalityReport, SlotField,
    TraceConfig, TraceEvaluator,
};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Relative gap allowed on extremal data of the subcritical inequality.
pub const EQUALITY_TOL: f64 = 1e-6;
/// Absolute gap allowed on extremal data of the logarithmic inequality.
pub const CRITICAL_TOL: f64 = 1e-5;
/// Both sides must vanish to this level for constant critical data.
pub const CONSTANT_CASE_TOL: f64 = 1e-12;

pub const COVARIANCE_PROBES: usize = 50;
pub const SYMMETRY_PAIRS: usize = 20;
pub const RANDOM_TRACE_INPUTS: usize = 20;
pub const LOWER_BOUND_SAMPLES: usize = 100;
pub const GAP_EPSILONS: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Covariance,
    Symmetry,
    Dtn,
    Trace,
    Critical,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Covariance, Suite::Symmetry, Suite::Dtn, Suite::Trace, Suite::Critical, Suite::All];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Covariance => "covariance",
            Suite::Symmetry => "symmetry",
            Suite::Dtn => "dtn",
            Suite::Trace => "trace",
            Suite::Critical => "critical",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub suite: Suite,
    pub geometry: ModelKind,
    pub n: i64,
    pub lmax: u32,
    /// Quadrature nodes for zonal integrals; also caps the Galerkin basis size.
    pub grid: usize,
    /// Tolerance for numeric residuals that are not inequality gaps.
    pub tol: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub timings: bool,
}

impl RunConfig {
    /// Defaults: half-space, n = 7 (5 for the critical suite), ℓ ≤ 32,
    /// 256 nodes, tolerance 1e-8, seed 0.
    pub fn new(suite: Suite) -> Self {
        RunConfig {
            suite,
            geometry: ModelKind::UpperHalfSpace,
            n: if suite == Suite::Critical { 5 } else { 7 },
            lmax: crate::mode_solver::DEFAULT_LMAX,
            grid: crate::trace_ineq::QUAD_NODES,
            tol: 1e-8,
            seed: 0,
            out: None,
            csv: None,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Gjms6Error::Config(m));
        if self.n < 5 {
            return err(format!("n = {} but the boundary dimension must be at least 5", self.n));
        }
        if self.n > 16 {
            return err(format!("n = {} exceeds the supported maximum of 16", self.n));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return err(format!("tolerance must be positive, got {}", self.tol));
        }
        if !(4..=64).contains(&self.lmax) {
            return err(format!("lmax = {} outside 4..=64", self.lmax));
        }
        if !(16..=4096).contains(&self.grid) {
            return err(format!("grid = {} outside 16..=4096", self.grid));
        }
        match self.suite {
            Suite::Critical if self.n != 5 => return err(format!("the critical suite needs n = 5, got {}", self.n)),
            Suite::Trace if self.n == 5 => return err("the trace suite needs n >= 6; use the critical suite for n = 5".into()),
            _ => {}
        }
        let uses_trace = matches!(self.suite, Suite::Trace | Suite::Critical | Suite::All);
        if uses_trace && self.geometry == ModelKind::HyperbolicGeodesic {
            return err(format!("the {} suite has no trace inequality on the geodesic model", self.suite.name()));
        }
        Ok(())
    }

    fn trace_config(&self) -> TraceConfig {
        TraceConfig { lmax: self.lmax, nodes: self.grid }
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(suite.stream());
        r
    }
}

/// The configuration as echoed in the report. Output paths are left out so
/// the report does not depend on where it is written.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub suite: Suite,
    pub geometry: String,
    pub n: i64,
    pub lmax: u32,
    pub grid: usize,
    pub tol: String,
    pub seed: u64,
    pub timings: bool,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        ConfigEcho {
            suite: c.suite,
            geometry: c.geometry.name().into(),
            n: c.n,
            lmax: c.lmax,
            grid: c.grid,
            tol: fmt_f64(c.tol),
            seed: c.seed,
            timings: c.timings,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Which identity or inequality the check exercises.
    pub tag: String,
    pub status: Status,
    pub residual: String,
    pub tolerance: String,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A CSV table kept alongside the report.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvSeries {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvSeries {
    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub version: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip)]
    pub series: Vec<CsvSeries>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn series(&self, what: CsvKind) -> Option<&CsvSeries> {
        self.series.iter().find(|s| s.name == what.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsvKind {
    GapVsEpsilon,
    MultiplierTable,
}

impl CsvKind {
    pub const ALL: [CsvKind; 2] = [CsvKind::GapVsEpsilon, CsvKind::MultiplierTable];

    pub fn name(self) -> &'static str {
        match self {
            CsvKind::GapVsEpsilon => "gap_vs_epsilon",
            CsvKind::MultiplierTable => "multiplier_table",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        CsvKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

pub fn render_json(report: &CheckReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Write `<dir>/<name>.csv` for one series of the report.
pub fn emit_csv(report: &CheckReport, what: CsvKind, dir: &Path) -> Result<PathBuf> {
    let series = report.series(what).ok_or_else(|| Gjms6Error::MissingSeries(what.name().into()))?;
    if series.rows.is_empty() {
        return Err(Gjms6Error::MissingSeries(format!("{} has no rows", what.name())));
    }
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.csv", what.name()));
    fs::write(&path, series.render())?;
    Ok(path)
}

// ------------------------------------------------------------------ runner

enum Measure {
    /// Exact residual; passes iff zero.
    Exact(Q),
    /// Number of failing samples; passes iff zero.
    Count { bad: usize, exact: bool },
    Float { value: f64, tol: f64 },
}

struct Runner {
    timings: bool,
    checks: Vec<CheckRecord>,
    series: Vec<CsvSeries>,
}

impl Runner {
    fn check(&mut self, id: &str, tag: &str, f: impl FnOnce(&mut Vec<CsvSeries>) -> Result<Measure>) {
        let start = Instant::now();
        let m = f(&mut self.series);
        let ms = start.elapsed().as_millis() as u64;
        let (pass, residual, tolerance, exact, detail) = match m {
            Ok(Measure::Exact(x)) => (x.is_zero(), fmt_q(&x.abs()), "0".to_string(), true, None),
            Ok(Measure::Count { bad, exact }) => (bad == 0, bad.to_string(), "0".to_string(), exact, None),
            Ok(Measure::Float { value, tol }) => (value.is_finite() && value <= tol, fmt_f64(value), fmt_f64(tol), false, None),
            Err(e) => (false, "nan".to_string(), "n/a".to_string(), false, Some(e.to_string())),
        };
        self.checks.push(CheckRecord {
            id: id.into(),
            tag: tag.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual,
            tolerance,
            exact,
            detail,
            runtime_ms: self.timings.then_some(ms),
        });
    }
}

/// Run the configured suite, write the JSON report to `out` and the CSV
/// series to `csv` when those are set.
pub fn run_suite(cfg: &RunConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let mut r = Runner { timings: cfg.timings, checks: Vec::new(), series: Vec::new() };
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => {
            let mut v = vec![Suite::Covariance, Suite::Symmetry, Suite::Dtn];
            if cfg.n >= 6 {
                v.push(Suite::Trace);
            }
            v.push(Suite::Critical);
            v
        }
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::Covariance => covariance_suite(cfg, &mut r),
            Suite::Symmetry => symmetry_suite(cfg, &mut r),
            Suite::Dtn => dtn_suite(cfg, &mut r),
            Suite::Trace => trace_suite(cfg, &mut r),
            Suite::Critical => critical_suite(cfg, &mut r),
            Suite::All => unreachable!(),
        }
    }
    let passed = r.checks.iter().filter(|c| c.status == Status::Pass).count();
    let summary = Summary { total: r.checks.len(), passed, failed: r.checks.len() - passed };
    let report = CheckReport {
        version: REPORT_VERSION.into(),
        config: cfg.into(),
        checks: r.checks,
        summary,
        series: r.series,
    };
    if let Some(path) = &cfg.out {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, render_json(&report))?;
    }
    if let Some(dir) = &cfg.csv {
        for kind in CsvKind::ALL {
            if report.series(kind).is_some() {
                emit_csv(&report, kind, dir)?;
            }
        }
    }
    Ok(report)
}

fn halfspace(n: i64) -> Result<ModelGeometry> {
    ModelGeometry::new(ModelKind::UpperHalfSpace, n)
}

fn max_abs(acc: Q, x: &Q) -> Q {
    let a = x.abs();
    if a > acc {
        a
    } else {
        acc
    }
}

/// Q₆ of the round S^d as the product (d/2 − 2)(d/2 − 1)…(d/2 + 2).
pub fn sphere_q6(d: i64) -> Q {
    rising(&q(d - 4, 2), 5)
}

/// Γ(ℓ + n/2 + 5/2)/Γ(ℓ + n/2 − 5/2), the P₅ multiplier on degree ℓ.
pub fn p5_multiplier_oracle(n: i64, ell: u32) -> Q {
    rising(&q(2 * ell as i64 + n - 5, 2), 5)
}

// -------------------------------------------------------------- covariance

fn covariance_suite(cfg: &RunConfig, r: &mut Runner) {
    let tag = "conformal-covariance";
    let dims: Vec<i64> = if cfg.n == 5 { vec![5] } else { vec![5, cfg.n] };
    let mut rng = cfg.rng(Suite::Covariance);
    let probes: Vec<(i64, MultiPoly, MultiPoly)> = (0..COVARIANCE_PROBES)
        .map(|i| {
            let s = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 3);
            let u = MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 3);
            (dims[i % dims.len()], s, u)
        })
        .collect();
    r.check("covariance.infinitesimal", tag, |_| {
        let mut bad = 0;
        for (n, s, u) in &probes {
            let g = halfspace(*n)?;
            let probe = VariationProbe { w: q(5 - n, 2), sigma: s.clone(), order: 6 };
            for j in 0..6 {
                bad += usize::from(!infinitesimal_covariance_residual(j, &probe, u, &g)?.is_zero());
            }
        }
        Ok(Measure::Count { bad, exact: true })
    });
    r.check("covariance.finite", tag, |_| {
        let mut bad = 0;
        for (n, s, u) in &probes {
            let g = halfspace(*n)?;
            for j in 0..6 {
                bad += usize::from(!finite_covariance_residual(j, s, u, &g)?.is_zero());
            }
        }
        Ok(Measure::Count { bad, exact: true })
    });
    r.check("einstein.hemisphere_constant", "einstein-factorization", |_| {
        let mut worst = q0();
        let mut dims: Vec<i64> = (6..=12).collect();
        if !dims.contains(&cfg.n) {
            dims.push(cfg.n);
        }
        for n in dims {
            let g = ModelGeometry::new(ModelKind::RoundHemisphere, n)?;
            let one = FieldRep::Mode { lambda: q0(), profile: Series::constant(qi(1), Warped::LEN) };
            let FieldRep::Mode { profile, .. } = apply_l6(&g, &one)? else {
                return Err(Gjms6Error::Unsupported("L6 returned a non-mode field".into()));
            };
            let want = q(n - 5, 2) * sphere_q6(n + 1);
            worst = max_abs(worst, &(profile.coeff(0) - want));
        }
        Ok(Measure::Exact(worst))
    });
}

// ---------------------------------------------------------------- symmetry

fn symmetry_suite(cfg: &RunConfig, r: &mut Runner) {
    let tag = "energy-symmetry";
    let n = cfg.n;
    let d = n as usize + 1;
    let mut rng = cfg.rng(Suite::Symmetry);
    let ball = ModelGeometry::new(ModelKind::EuclideanBall, n);
    let pairs: Vec<(MultiPoly, MultiPoly)> = (0..SYMMETRY_PAIRS)
        .map(|_| (MultiPoly::random(&mut rng, d, &[0, 1, 2], 5, 4), MultiPoly::random(&mut rng, d, &[0, 1, 2], 5, 4)))
        .collect();
    r.check("symmetry.random_pairs", tag, |_| {
        let g = ball.clone()?;
        let mut worst = q0();
        for (u, v) in &pairs {
            worst = max_abs(worst, &symmetry_residual(&g, &FieldRep::Poly(u.clone()), &FieldRep::Poly(v.clone()))?);
        }
        Ok(Measure::Exact(worst))
    });
    r.check("symmetry.polarization", tag, |_| {
        let g = ball.clone()?;
        let exact = |rep: Result<crate::energy_form::EnergyReport>| -> Result<Q> {
            rep?.total_q().cloned().ok_or_else(|| Gjms6Error::Unsupported("inexact ball energy".into()))
        };
        let mut worst = q0();
        for (u, v) in pairs.iter().take(5) {
            let plus = exact(energy(&g, &FieldRep::Poly(u + v)))?;
            let minus = exact(energy(&g, &FieldRep::Poly(u - v)))?;
            let form = exact(q6_form(&g, &FieldRep::Poly(u.clone()), &FieldRep::Poly(v.clone())))?;
            worst = max_abs(worst, &((plus - minus) / qi(4) - form));
        }
        Ok(Measure::Exact(worst))
    });
    r.check("energy.cross_route", "energy-cross-route", |_| {
        let g = ball.clone()?;
        let x1 = MultiPoly::var(d, 0);
        let direct = energy(&g, &FieldRep::Poly(x1.clone()))?
            .total_q()
            .cloned()
            .ok_or_else(|| Gjms6Error::Unsupported("inexact ball energy".into()))?;
        // B_j(x₁) = c_j x₁ on the sphere; read c_j off at e₁.
        let b = apply_all(&BallPoly::new(n)?, &x1);
        let mut e1 = vec![q0(); d];
        e1[0] = qi(1);
        let data: Vec<Q> = b.iter().take(3).map(|p| p.eval(&e1)).collect();
        let mode = ModeIndex::Degree(1);
        let mut route = q0();
        for (k, j) in [5usize, 3, 1].into_iter().enumerate() {
            route += dtn_multiplier(Boundary::Round, n, j, &mode)? * &data[k] * &data[k];
        }
        // ∮ x₁² = Vol(Sⁿ)/(n + 1).
        Ok(Measure::Exact(direct - route / qi(n + 1)))
    });
    r.check("energy.halfspace_decomposition", tag, |_| {
        let g = halfspace(n)?;
        let t = q(3, 2);
        let y = MultiPoly::var(2, Y_VAR);
        let tv = MultiPoly::var(2, T_VAR);
        let profiles = [
            &MultiPoly::one(2) + &(&tv * &y),
            &y.pow(3) - &y.scale(&qi(2)),
            &(&y.pow(2) * &tv) + &MultiPoly::constant(2, qi(5)),
        ];
        let mode = ModeIndex::Frequency(t.clone());
        let mut worst = q0();
        for p in &profiles {
            for pq in &profiles {
                let dcmp = fi_fb_decompose(&g, &mode, &FieldRep::ExpMode(p.clone()), &FieldRep::ExpMode(pq.clone()))?;
                let e = q6_halfspace_mode(n, &t, p, pq)?;
                let total = e.total_q().cloned().ok_or_else(|| Gjms6Error::Unsupported("inexact mode energy".into()))?;
                worst = max_abs(worst, &(&dcmp.fi + &dcmp.fb - total));
            }
        }
        Ok(Measure::Exact(worst))
    });
    r.check("energy.dirichlet_positive", "energy-lower-bound", |_| {
        let est = dirichlet_eigen_lower(&ball.clone()?, cfg.lmax.min(8), cfg.grid)?;
        let bad = est.modes_checked.iter().filter(|m| !(m.1 > 0.0)).count();
        Ok(Measure::Count { bad, exact: false })
    });
}

// --------------------------------------------------------------------- dtn

fn random_triple(rng: &mut ChaCha8Rng) -> BoundaryTriple {
    let mut c = || q(rng.gen_range(-9..=9), rng.gen_range(1..=7));
    BoundaryTriple::new(c(), c(), c())
}

fn dtn_suite(cfg: &RunConfig, r: &mut Runner) {
    let tag = "dtn-identity";
    let n = cfg.n;
    let mut rng = cfg.rng(Suite::Dtn);
    let data: Vec<BoundaryTriple> = std::iter::once(BoundaryTriple::new(q(2, 3), qi(-1), q(5, 4)))
        .chain((0..2).map(|_| random_triple(&mut rng)))
        .collect();
    r.check("dtn.symbolic_halfspace", tag, |_| {
        let bad = dtn_symbolic_halfspace(n)?.iter().filter(|p| !p.is_zero()).count();
        Ok(Measure::Count { bad, exact: true })
    });
    r.check("dtn.modes", tag, |_| {
        let g = ModelGeometry::new(cfg.geometry, n)?;
        let modes: Vec<ModeIndex> = match Boundary::of(&g) {
            Boundary::Round => (0..=cfg.lmax.min(8)).map(ModeIndex::Degree).collect(),
            Boundary::Flat => [q(1, 2), qi(1), q(3, 2), qi(2), qi(3)].into_iter().map(ModeIndex::Frequency).collect(),
        };
        let mut exact = true;
        let mut worst_q = q0();
        let mut worst_f = 0.0f64;
        for m in &modes {
            for dt in &data {
                let res = dtn_verify(&g, m, dt)?;
                exact &= res.exact;
                for x in &res.residuals {
                    match x {
                        Num::Exact(v) => worst_q = max_abs(worst_q, v),
                        Num::Float(v) => worst_f = worst_f.max(v.abs()),
                    }
                }
            }
        }
        Ok(if exact { Measure::Exact(worst_q) } else { Measure::Float { value: worst_f.max(crate::rational::to_f64(&worst_q)), tol: cfg.tol } })
    });
    r.check("dtn.multiplier_table", tag, |series| {
        let gamma = q(5, 2);
        let mut rows = Vec::new();
        let mut worst = q0();
        for ell in 0..=cfg.lmax {
            let m = if n == 5 { critical_multiplier(ell) } else { multiplier(Boundary::Round, n, &gamma, &ModeIndex::Degree(ell))? };
            worst = max_abs(worst, &(&m - p5_multiplier_oracle(n, ell)));
            rows.push(vec![ell.to_string(), fmt_q(&m)]);
        }
        series.push(CsvSeries { name: CsvKind::MultiplierTable.name().into(), header: vec!["ell".into(), "multiplier".into()], rows });
        Ok(Measure::Exact(worst))
    });
}

// ------------------------------------------------------------------- trace

fn random_flat_field(n: i64, slot: usize, rng: &mut ChaCha8Rng) -> SlotField {
    let w = slot_weight(n, slot);
    let a: f64 = rng.gen_range(0.1..0.5);
    let b: f64 = rng.gen_range(0.5..2.0);
    SlotField::flat_radial(n, w, Rc::new(move |r: f64| (1.0 + r * r).powf(-w) * (1.0 + a * (-b * r * r).exp())))
}

fn random_center(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let r = radius * rng.gen_range(0.0..1.0f64);
    v.iter().map(|x| x * r / norm).collect()
}

/// Flat bubbles of scale ε at the origin, carried to the geometry.
fn epsilon_fields(kind: ModelKind, n: i64, eps: f64) -> Result<[SlotField; 3]> {
    let spec = ExtremalSpec::flat_power(vec![0.0; n as usize], eps, 1.0);
    let flat = [
        spec.field(ModelKind::UpperHalfSpace, n, 0)?,
        spec.field(ModelKind::UpperHalfSpace, n, 1)?,
        spec.field(ModelKind::UpperHalfSpace, n, 2)?,
    ];
    Ok(match kind {
        ModelKind::UpperHalfSpace => flat,
        _ => flat.map(|f| SlotField::zonal(f.axis, f.profile)),
    })
}

fn worst_relative(reports: &[InequalityReport]) -> f64 {
    reports.iter().map(|r| r.relative_gap.abs()).fold(0.0, f64::max)
}

fn trace_suite(cfg: &RunConfig, r: &mut Runner) {
    let tag = "sharp-trace";
    let n = cfg.n;
    let kind = cfg.geometry;
    let mut rng = cfg.rng(Suite::Trace);
    r.check("trace.sharp_constants", tag, |_| {
        let mut bad = 0;
        for k in 0..3 {
            let (l, rr) = sharp_constant(n, &slot_gamma(k))?.constant_case();
            bad += usize::from(l != rr);
        }
        Ok(Measure::Count { bad, exact: true })
    });
    let ev = match TraceEvaluator::new(kind, n, &cfg.trace_config()) {
        Ok(ev) => ev,
        Err(e) => {
            r.check("trace.setup", tag, |_| Err(e));
            return;
        }
    };
    r.check("trace.sphere_sobolev", tag, |_| {
        let mut reports = Vec::new();
        for k in 0..3 {
            let w = slot_weight(n, k);
            let one = SlotField::zonal(crate::trace_ineq::unit_axis(n, 0), Rc::new(|_| 1.0));
            let bubble = SlotField::zonal(crate::trace_ineq::unit_axis(n, 1), Rc::new(move |s: f64| (1.0 - 0.4 * s).powf(-w)));
            reports.push(sphere_sobolev_check(n, &slot_gamma(k), &one, ev.basis())?);
            reports.push(sphere_sobolev_check(n, &slot_gamma(k), &bubble, ev.basis())?);
        }
        Ok(Measure::Float { value: worst_relative(&reports), tol: EQUALITY_TOL })
    });
    let d = n as usize + 1;
    let centered: [ExtremalSpec; 3] = match kind {
        ModelKind::UpperHalfSpace => [1.0, -2.0, 0.5].map(|a| ExtremalSpec::flat_power(vec![0.0; n as usize], 1.0, a)),
        _ => [1.0, -2.0, 0.5].map(|a| ExtremalSpec::centered(n, a)),
    };
    r.check("trace.centered_equality", tag, |_| {
        let rep = ev.corollary(&ev.fields(&centered)?)?;
        Ok(Measure::Float { value: rep.relative_gap.abs(), tol: EQUALITY_TOL })
    });
    let off: Vec<[ExtremalSpec; 3]> = (0..3)
        .map(|_| {
            std::array::from_fn(|_| {
                let amp = rng.gen_range(0.5..2.0);
                match kind {
                    ModelKind::UpperHalfSpace => {
                        let eps = rng.gen_range(0.5..2.0);
                        ExtremalSpec::flat_power(random_center(&mut rng, n as usize, 0.5), eps, amp)
                    }
                    _ => ExtremalSpec::power(random_center(&mut rng, d, 0.5), amp),
                }
            })
        })
        .collect();
    r.check("trace.off_center_equality", tag, |_| {
        let mut reports = Vec::new();
        for specs in &off {
            reports.push(ev.corollary(&ev.fields(specs)?)?);
        }
        Ok(Measure::Float { value: worst_relative(&reports), tol: EQUALITY_TOL })
    });
    let random: Vec<[SlotField; 3]> = (0..RANDOM_TRACE_INPUTS)
        .map(|_| match kind {
            ModelKind::UpperHalfSpace => std::array::from_fn(|k| random_flat_field(n, k, &mut rng)),
            _ => std::array::from_fn(|_| random_zonal_field(n, &mut rng)),
        })
        .collect();
    r.check("trace.random_positive_gap", tag, |_| {
        let mut bad = 0;
        for f in &random {
            bad += usize::from(!(ev.corollary(f)?.gap > 0.0));
        }
        Ok(Measure::Count { bad, exact: false })
    });
    r.check("trace.zero_data", tag, |_| {
        let zero = [SlotField::zero(n), SlotField::zero(n), SlotField::zero(n)];
        let zero = match kind {
            ModelKind::UpperHalfSpace => {
                let z = |k| SlotField::flat_radial(n, slot_weight(n, k), Rc::new(|_| 0.0));
                [z(0), z(1), z(2)]
            }
            _ => zero,
        };
        let rep = ev.corollary(&zero)?;
        Ok(Measure::Count { bad: usize::from(rep.lhs != 0.0 || rep.rhs != 0.0), exact: false })
    });
    r.check("trace.gap_vs_epsilon", tag, |series| {
        let mut rows = Vec::new();
        let mut reports = Vec::new();
        for eps in GAP_EPSILONS {
            let rep = ev.corollary(&epsilon_fields(kind, n, eps)?)?;
            rows.push(vec![format!("{eps}"), fmt_f64(rep.lhs), fmt_f64(rep.rhs), fmt_f64(rep.relative_gap)]);
            reports.push(rep);
        }
        series.push(CsvSeries {
            name: CsvKind::GapVsEpsilon.name().into(),
            header: ["epsilon", "lhs", "rhs", "relative_gap"].map(String::from).to_vec(),
            rows,
        });
        Ok(Measure::Float { value: worst_relative(&reports), tol: EQUALITY_TOL })
    });
    let lb_seed = rng.gen::<u64>();
    let lower = trace_lower_bound_check(n, 1, &BoundaryTriple::new(qi(1), q(1, 2), qi(-3)), LOWER_BOUND_SAMPLES, lb_seed);
    let lower = lower.as_ref();
    r.check("energy.lower_bound_gaps", "energy-lower-bound", |_| {
        let rep = lower.map_err(Clone::clone)?;
        let bad = rep.gaps.iter().filter(|g| !(**g > q0())).count() + usize::from(!rep.cross_max.is_zero());
        Ok(Measure::Count { bad, exact: true })
    });
    r.check("energy.lower_bound_identity", "energy-lower-bound", |_| {
        let rep = lower.map_err(Clone::clone)?;
        Ok(Measure::Exact(&rep.e0 - &rep.predicted))
    });
}

// ---------------------------------------------------------------- critical

fn critical_suite(cfg: &RunConfig, r: &mut Runner) {
    let mut rng = cfg.rng(Suite::Critical);
    let sigmas: Vec<MultiPoly> = (0..20).map(|_| MultiPoly::random(&mut rng, 3, &[0, 1, 2], 3, 4)).collect();
    r.check("critical.t_shift", "critical-t-shift", |_| {
        let g = halfspace(5)?;
        let mut bad = 0;
        for (i, s) in sigmas.iter().enumerate() {
            bad += usize::from(!critical_t_shift(i % 5 + 1, s, &g)?.is_zero());
        }
        Ok(Measure::Count { bad, exact: true })
    });
    let tag = "critical-trace";
    let kind = cfg.geometry;
    let tcfg = cfg.trace_config();
    let ev = match TraceEvaluator::new(kind, 5, &tcfg) {
        Ok(ev) => ev,
        Err(e) => {
            r.check("critical.setup", tag, |_| Err(e));
            return;
        }
    };
    let triples: Vec<[ExtremalSpec; 3]> = (0..3)
        .map(|_| {
            let a = [rng.gen_range(0.2..1.0), rng.gen_range(0.5..2.0), rng.gen_range(-2.0..-0.5)];
            match kind {
                ModelKind::UpperHalfSpace => [
                    ExtremalSpec::flat_log(random_center(&mut rng, 5, 0.5), rng.gen_range(0.5..2.0), a[0]),
                    ExtremalSpec::flat_power(random_center(&mut rng, 5, 0.5), rng.gen_range(0.5..2.0), a[1]),
                    ExtremalSpec::flat_power(random_center(&mut rng, 5, 0.5), rng.gen_range(0.5..2.0), a[2]),
                ],
                _ => [
                    ExtremalSpec::log(random_center(&mut rng, 6, 0.5), a[0]),
                    ExtremalSpec::power(random_center(&mut rng, 6, 0.5), a[1]),
                    ExtremalSpec::power(random_center(&mut rng, 6, 0.5), a[2]),
                ],
            }
        })
        .collect();
    r.check("critical.equality", tag, |_| {
        let mut worst = 0.0f64;
        for t in &triples {
            worst = worst.max(ev.critical(&ev.fields(t)?)?.gap.abs());
        }
        Ok(Measure::Float { value: worst, tol: CRITICAL_TOL })
    });
    r.check("critical.hemisphere_equation", tag, |_| {
        let residual = if kind == ModelKind::RoundHemisphere {
            ev.equation_residual()
        } else {
            TraceEvaluator::new(ModelKind::RoundHemisphere, 5, &tcfg)?.equation_residual()
        };
        Ok(Measure::Float { value: residual, tol: cfg.tol })
    });
    r.check("critical.constant_data", tag, |_| {
        let f = match kind {
            ModelKind::UpperHalfSpace => SlotField::flat_radial(5, 0.0, Rc::new(|_| 2.0)),
            _ => SlotField::zonal(crate::trace_ineq::unit_axis(5, 0), Rc::new(|_| 2.0)),
        };
        let zero = |k| match kind {
            ModelKind::UpperHalfSpace => SlotField::flat_radial(5, slot_weight(5, k), Rc::new(|_| 0.0)),
            _ => SlotField::zero(5),
        };
        let rep = ev.critical(&[f, zero(1), zero(2)])?;
        Ok(Measure::Float { value: rep.lhs.abs().max(rep.rhs.abs()), tol: CONSTANT_CASE_TOL })
    });
}

/// One line per check, for terminal output.
pub fn render_text(report: &CheckReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let _ = write!(s, "{status}  {:<34} residual {} (tol {})", c.id, c.residual, c.tolerance);
        if let Some(d) = &c.detail {
            let _ = write!(s, "  [{d}]");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{} checks, {} passed, {} failed", report.summary.total, report.summary.passed, report.summary.failed);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors() {
        let mut c = RunConfig::new(Suite::All);
        c.n = 4;
        assert!(matches!(run_suite(&c), Err(Gjms6Error::Config(_))));
        let mut c = RunConfig::new(Suite::Critical);
        c.n = 7;
        assert!(matches!(run_suite(&c), Err(Gjms6Error::Config(_))));
        let mut c = RunConfig::new(Suite::Trace);
        c.geometry = ModelKind::HyperbolicGeodesic;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Suite::Dtn);
        c.tol = 0.0;
        assert!(c.validate().is_err());
        assert!(RunConfig::new(Suite::Critical).validate().is_ok());
    }

    #[test]
    fn oracles_match_documented_values() {
        assert_eq!(sphere_q6(6), qi(120));
        assert_eq!(sphere_q6(8), qi(720));
        let m: Vec<Q> = (0..3).map(|l| p5_multiplier_oracle(7, l)).collect();
        assert_eq!(m, vec![qi(120), qi(720), qi(2520)]);
        assert_eq!(p5_multiplier_oracle(5, 1), qi(120));
    }

    #[test]
    fn dtn_suite_is_exact_and_deterministic() {
        let mut c = RunConfig::new(Suite::Dtn);
        c.lmax = 5;
        let a = run_suite(&c).unwrap();
        assert!(a.passed(), "{}", render_text(&a));
        assert!(a.checks.iter().all(|r| r.exact));
        let t = a.series(CsvKind::MultiplierTable).unwrap();
        let firsts: Vec<&str> = t.rows.iter().take(3).map(|r| r[1].as_str()).collect();
        assert_eq!(firsts, ["120", "720", "2520"]);
        assert_eq!(t.rows.len(), 6);
        let b = run_suite(&c).unwrap();
        assert_eq!(render_json(&a), render_json(&b));
        assert!(matches!(emit_csv(&a, CsvKind::GapVsEpsilon, Path::new(".")), Err(Gjms6Error::MissingSeries(_))));
    }

    #[test]
    fn csv_rendering() {
        let s = CsvSeries { name: "x".into(), header: vec!["a".into(), "b".into()], rows: vec![vec!["1".into(), "2".into()]] };
        assert_eq!(s.render(), "a,b\n1,2\n");
        let empty = CheckReport {
            version: REPORT_VERSION.into(),
            config: (&RunConfig::new(Suite::Dtn)).into(),
            checks: vec![],
            summary: Summary::default(),
            series: vec![CsvSeries { name: "multiplier_table".into(), header: vec![], rows: vec![] }],
        };
        assert!(emit_csv(&empty, CsvKind::MultiplierTable, Path::new(".")).is_err());
    }
}
