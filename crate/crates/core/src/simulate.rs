//! Orbit iteration of periodic systems in double precision.
//!
//! Verdicts are taken stroboscopically: the distance to the origin is
//! checked after every full period, i.e. under the composition map.
//! Numerical verdicts corroborate the analytic ones and never replace
//! them.

use std::sync::atomic::{AtomicBool, Ordering};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jet::{rational_to_f64, Jet1D};
use crate::periodic::{
    BaseSystem, LiftedSystem, PeriodicSystem1D, PeriodicSystem2D, StabilityClass,
};
use crate::planar::PlanarPolyMap;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Maximum number of full periods.
    pub max_iters: u64,
    pub escape_radius: f64,
    pub converge_radius: f64,
    pub initial_radius: f64,
    pub n_samples: usize,
    /// Record every `n`-th step in the trace; `None` records nothing.
    pub trace_every: Option<u64>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            max_iters: 1_000_000,
            escape_radius: 0.5,
            converge_radius: 1e-10,
            initial_radius: 1e-2,
            n_samples: 16,
            trace_every: None,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = 0.0 < self.converge_radius
            && self.converge_radius < self.initial_radius
            && self.initial_radius < self.escape_radius
            && self.escape_radius.is_finite();
        if !ok {
            return Err(Error::InvalidSimConfig(format!(
                "need 0 < converge_radius ({}) < initial_radius ({}) < escape_radius ({})",
                self.converge_radius, self.initial_radius, self.escape_radius
            )));
        }
        if self.n_samples == 0 {
            return Err(Error::InvalidSimConfig("n_samples must be positive".into()));
        }
        if self.trace_every == Some(0) {
            return Err(Error::InvalidSimConfig(
                "trace_every must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A periodic system with coefficients converted to `f64` once.
#[derive(Debug, Clone, PartialEq)]
pub enum NumericSystem {
    /// Coefficient vectors `[a_1, ..., a_N]` applied in order.
    OneD(Vec<Vec<f64>>),
    Planar(Vec<PlanarPolyMap>),
    Product {
        base: Box<NumericSystem>,
        copies: usize,
    },
}

impl NumericSystem {
    pub fn from_jet(f: &Jet1D) -> Self {
        NumericSystem::OneD(vec![f.coeffs().iter().map(rational_to_f64).collect()])
    }

    pub fn from_1d(sys: &PeriodicSystem1D) -> Self {
        NumericSystem::OneD(
            sys.maps()
                .iter()
                .map(|f| f.coeffs().iter().map(rational_to_f64).collect())
                .collect(),
        )
    }

    pub fn from_2d(sys: &PeriodicSystem2D) -> Self {
        NumericSystem::Planar(sys.maps().to_vec())
    }

    pub fn from_lift(lift: &LiftedSystem) -> Self {
        let base = match &lift.base {
            BaseSystem::OneD(s) => Self::from_1d(s),
            BaseSystem::Planar(s) => Self::from_2d(s),
        };
        if lift.copies == 1 {
            return base;
        }
        NumericSystem::Product {
            base: Box::new(base),
            copies: lift.copies,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            NumericSystem::OneD(_) => 1,
            NumericSystem::Planar(_) => 2,
            NumericSystem::Product { base, copies } => base.dim() * copies,
        }
    }

    pub fn period(&self) -> usize {
        match self {
            NumericSystem::OneD(m) => m.len(),
            NumericSystem::Planar(m) => m.len(),
            NumericSystem::Product { base, .. } => base.period(),
        }
    }

    /// Applies the `index`-th map of the periodic set in place.
    pub fn apply(&self, index: usize, state: &mut [f64]) {
        match self {
            NumericSystem::OneD(maps) => {
                let c = &maps[index];
                let x = state[0];
                state[0] = c.iter().rev().fold(0.0, |acc, a| (acc + a) * x);
            }
            NumericSystem::Planar(maps) => {
                let (x, y) = maps[index].eval(state[0], state[1]);
                state[0] = x;
                state[1] = y;
            }
            NumericSystem::Product { base, .. } => {
                for block in state.chunks_mut(base.dim()) {
                    base.apply(index, block);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitStatus {
    Converged { iter: u64 },
    Escaped { iter: u64, non_finite: bool },
    MaxedOut,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub step: u64,
    /// 1-based index into the periodic set; 0 for the initial point.
    pub map_index: usize,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResult {
    pub status: OrbitStatus,
    pub final_point: Vec<f64>,
    pub trace: Option<Vec<TraceRow>>,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Iterates `x_{n+1} = f_{n+1}(x_n)`, cycling through the periodic set.
pub fn iterate_orbit(system: &NumericSystem, x0: &[f64], cfg: &SimConfig) -> Result<OrbitResult> {
    cfg.validate()?;
    if x0.len() != system.dim() {
        return Err(Error::InvalidSimConfig(format!(
            "initial point has dimension {}, system has {}",
            x0.len(),
            system.dim()
        )));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidSimConfig(
            "initial point is not finite".into(),
        ));
    }
    let mut x = x0.to_vec();
    let mut trace = cfg.trace_every.map(|_| {
        vec![TraceRow {
            step: 0,
            map_index: 0,
            point: x.clone(),
        }]
    });
    let done = |status, x: Vec<f64>, trace| {
        Ok(OrbitResult {
            status,
            final_point: x,
            trace,
        })
    };
    if norm(&x) <= cfg.converge_radius {
        return done(OrbitStatus::Converged { iter: 0 }, x, trace);
    }
    let k = system.period();
    let mut step = 0u64;
    for iter in 1..=cfg.max_iters {
        for index in 0..k {
            system.apply(index, &mut x);
            step += 1;
            if let (Some(rows), Some(every)) = (trace.as_mut(), cfg.trace_every) {
                if step.is_multiple_of(every) {
                    rows.push(TraceRow {
                        step,
                        map_index: index + 1,
                        point: x.clone(),
                    });
                }
            }
            if x.iter().any(|v| !v.is_finite()) {
                return done(
                    OrbitStatus::Escaped {
                        iter,
                        non_finite: true,
                    },
                    x,
                    trace,
                );
            }
        }
        let r = norm(&x);
        if r >= cfg.escape_radius {
            return done(
                OrbitStatus::Escaped {
                    iter,
                    non_finite: false,
                },
                x,
                trace,
            );
        }
        if r <= cfg.converge_radius {
            return done(OrbitStatus::Converged { iter }, x, trace);
        }
    }
    done(OrbitStatus::MaxedOut, x, trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmpiricalVerdict {
    AttractingAll,
    RepellingAll,
    Mixed,
    Inconclusive,
}

impl EmpiricalVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            EmpiricalVerdict::AttractingAll => "AttractingAll",
            EmpiricalVerdict::RepellingAll => "RepellingAll",
            EmpiricalVerdict::Mixed => "Mixed",
            EmpiricalVerdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Initial points at distance `radius`: alternating signs in 1-D, equally
/// spaced angles in the plane, seeded random directions otherwise.
pub fn sample_points(dim: usize, n: usize, radius: f64) -> Vec<Vec<f64>> {
    match dim {
        1 => (0..n)
            .map(|i| vec![if i % 2 == 0 { radius } else { -radius }])
            .collect(),
        2 => (0..n)
            .map(|i| {
                let theta = std::f64::consts::TAU * (i as f64 + 0.5) / n as f64;
                let z = Complex64::from_polar(radius, theta);
                vec![z.re, z.im]
            })
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..n)
                .map(|_| loop {
                    let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let r = norm(&v);
                    if r > 1e-3 {
                        break v.into_iter().map(|c| c * radius / r).collect();
                    }
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalReport {
    pub verdict: EmpiricalVerdict,
    pub orbits: Vec<(Vec<f64>, OrbitStatus)>,
}

pub fn empirical_report(system: &NumericSystem, cfg: &SimConfig) -> Result<EmpiricalReport> {
    cfg.validate()?;
    let cfg = SimConfig {
        trace_every: None,
        ..cfg.clone()
    };
    let starts = sample_points(system.dim(), cfg.n_samples, cfg.initial_radius);
    let orbits = starts
        .into_par_iter()
        .map(|x0| iterate_orbit(system, &x0, &cfg).map(|r| (x0, r.status)))
        .collect::<Result<Vec<_>>>()?;
    let statuses: Vec<_> = orbits.iter().map(|(_, s)| *s).collect();
    let verdict = aggregate(&statuses);
    Ok(EmpiricalReport { verdict, orbits })
}

/// Same verdict as [`empirical_report`], but stops launching orbits once
/// one of them maxes out, since that already fixes the answer.
pub fn empirical_verdict(system: &NumericSystem, cfg: &SimConfig) -> Result<EmpiricalVerdict> {
    cfg.validate()?;
    let cfg = SimConfig {
        trace_every: None,
        ..cfg.clone()
    };
    let maxed = AtomicBool::new(false);
    let statuses = sample_points(system.dim(), cfg.n_samples, cfg.initial_radius)
        .into_par_iter()
        .map(|x0| {
            if maxed.load(Ordering::Relaxed) {
                return Ok(None);
            }
            let status = iterate_orbit(system, &x0, &cfg)?.status;
            if status == OrbitStatus::MaxedOut {
                maxed.store(true, Ordering::Relaxed);
            }
            Ok(Some(status))
        })
        .collect::<Result<Vec<_>>>()?;
    if maxed.into_inner() {
        return Ok(EmpiricalVerdict::Inconclusive);
    }
    let statuses: Vec<_> = statuses.into_iter().flatten().collect();
    Ok(aggregate(&statuses))
}

fn aggregate(statuses: &[OrbitStatus]) -> EmpiricalVerdict {
    if statuses.iter().any(|s| matches!(s, OrbitStatus::MaxedOut)) {
        EmpiricalVerdict::Inconclusive
    } else if statuses
        .iter()
        .all(|s| matches!(s, OrbitStatus::Converged { .. }))
    {
        EmpiricalVerdict::AttractingAll
    } else if statuses
        .iter()
        .all(|s| matches!(s, OrbitStatus::Escaped { .. }))
    {
        EmpiricalVerdict::RepellingAll
    } else {
        EmpiricalVerdict::Mixed
    }
}

/// The empirical verdict an analytic class should produce, if any.
pub fn expected_empirical(class: StabilityClass) -> Option<EmpiricalVerdict> {
    match class {
        StabilityClass::Attracting => Some(EmpiricalVerdict::AttractingAll),
        StabilityClass::Repelling => Some(EmpiricalVerdict::RepellingAll),
        StabilityClass::SemiStable => Some(EmpiricalVerdict::Mixed),
        StabilityClass::Undetermined => None,
    }
}

/// `g_a(x) = a(exp(-x/a) - 1)`.
pub fn g_a(a: f64, x: f64) -> f64 {
    a * ((-x / a).exp() - 1.0)
}

/// `h_n(x) = ((-1)^n / 3)((2n + 3)x + n)`.
pub fn h_n(n: u64, x: f64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / 3.0 * ((2 * n + 3) as f64 * x + n as f64)
}

pub fn h_n_inv(n: u64, y: f64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    (3.0 * sign * y - n as f64) / (2 * n + 3) as f64
}

/// Root of `g_a(1) = -2` on `(-1, -1/2)`: bisection down to `1e-12`, then
/// secant steps for the last bits.
pub fn solve_a0() -> Result<f64> {
    let h = |a: f64| g_a(a, 1.0) + 2.0;
    let (mut lo, mut hi) = (-1.0_f64, -0.5_f64);
    let (mut flo, fhi) = (h(lo), h(hi));
    if flo.signum() == fhi.signum() {
        return Err(Error::RootNotBracketed { lo, hi });
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let fm = h(mid);
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..4 {
        let (fa, fb) = (h(a), h(b));
        if fb == fa {
            break;
        }
        let c = b - fb * (b - a) / (fb - fa);
        if !(lo - 1e-9..=hi + 1e-9).contains(&c) {
            break;
        }
        a = b;
        b = c;
    }
    Ok(b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnboundedRow {
    pub n: u64,
    pub y_n: f64,
    pub f_n_of_y_n: f64,
    pub y_next: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnboundedReport {
    pub a0: f64,
    pub f0_at_1: f64,
    pub rows: Vec<UnboundedRow>,
}

impl UnboundedReport {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// `y_n = (-1)^n (n + 1)`.
pub fn y_n(n: u64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * (n + 1) as f64
}

/// Checks `f_n(y_n) = y_{n+1}` for `f_0 = g_{a_0}` and
/// `f_n = h_n ∘ f_0 ∘ h_n^{-1}`, `n = 0..=n_max`.
pub fn unbounded_demo(n_max: u64) -> Result<UnboundedReport> {
    if n_max < 1 {
        return Err(Error::InvalidSimConfig("n_max must be at least 1".into()));
    }
    let a0 = solve_a0()?;
    let f_n = |n: u64, x: f64| h_n(n, g_a(a0, h_n_inv(n, x)));
    let rows = (0..=n_max)
        .map(|n| {
            let y = y_n(n);
            let fy = f_n(n, y);
            let next = y_n(n + 1);
            UnboundedRow {
                n,
                y_n: y,
                f_n_of_y_n: fy,
                y_next: next,
                residual: (fy - next).abs(),
            }
        })
        .collect();
    Ok(UnboundedReport {
        a0,
        f0_at_1: g_a(a0, 1.0),
        rows,
    })
}
