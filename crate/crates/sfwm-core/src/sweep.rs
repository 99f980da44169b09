//! Driving-parameter maps: entanglement, brightness and transparency
//! over a two-axis grid of drive and medium parameters.
//!
//! The interesting physics lives in maps like NPT(Ω_p, Ω_c) or
//! T_as(Ω_c, ρ₁₁⁰): ridges of high entanglement trace out two-photon
//! resonances, and transparency windows decide whether the entangled
//! photons actually leave the cold cloud. This module provides a
//! deterministic grid sweep (parallelised with stable ordering, so a
//! sweep is bitwise reproducible at any thread count), region
//! extraction by predicate, and a coarse-to-fine maximiser for merits
//! such as the lossy NPT under transparency constraints.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herald::{self, heralded_stokes_frequency, pure_npt};
use crate::loss::{apply_loss, lossy_npt, TwoModeDensityMatrix};
use crate::medium::{transmission, DriveFields, MediumParams, Mode};
use num_complex::Complex64 as C64;

/// Which scalar parameter an axis varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisParam {
    /// Pump Rabi frequency Ω_p (rad/s).
    RabiP,
    /// Coupling Rabi frequency Ω_c (rad/s).
    RabiC,
    /// Pump detuning Δ_p (rad/s).
    DetP,
    /// Coupling detuning Δ_c (rad/s).
    DetC,
    /// Ground population ρ₁₁⁰; the complement goes to ρ₂₂⁰.
    Pop11,
}

impl AxisParam {
    /// Install value `v` into the medium/drive pair.
    pub fn apply(&self, medium: &mut MediumParams, drives: &mut DriveFields, v: f64) {
        match self {
            AxisParam::RabiP => drives.rabi_p = v,
            AxisParam::RabiC => drives.rabi_c = v,
            AxisParam::DetP => drives.det_p = v,
            AxisParam::DetC => drives.det_c = v,
            AxisParam::Pop11 => {
                medium.pop_11 = v;
                medium.pop_22 = 1.0 - v;
            }
        }
    }
}

/// Spacing rule for an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisScale {
    /// Evenly spaced values.
    Linear,
    /// Geometrically spaced values; requires positive endpoints.
    Log,
}

/// One sweep axis: which parameter, its range, and its sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub param: AxisParam,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub scale: AxisScale,
}

impl AxisSpec {
    /// Check the range and sampling are usable.
    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidParameter(
                "axis endpoints must be finite".into(),
            ));
        }
        if self.min >= self.max {
            return Err(Error::InvalidParameter(format!(
                "axis needs min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidParameter(format!(
                "axis needs at least 2 points, got {}",
                self.points
            )));
        }
        if self.scale == AxisScale::Log && self.min <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "log axis needs min > 0, got {}",
                self.min
            )));
        }
        Ok(())
    }

    /// The sampled values. Endpoints are returned exactly as given.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.min
                } else if i == n - 1 {
                    self.max
                } else {
                    let f = i as f64 / (n - 1) as f64;
                    match self.scale {
                        AxisScale::Linear => self.min + (self.max - self.min) * f,
                        AxisScale::Log => {
                            (self.min.ln() + (self.max.ln() - self.min.ln()) * f).exp()
                        }
                    }
                }
            })
            .collect()
    }
}

/// How the heralding Stokes frequency is chosen at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum HeraldPolicy {
    /// Follow the two-photon resonance of the pump, ω_s = ω_p − ω₂₁.
    TwoPhotonResonant,
    /// Detect at a fixed Stokes frequency (rad/s).
    Fixed(f64),
}

/// A full two-axis sweep definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub medium: MediumParams,
    pub drives: DriveFields,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub herald: HeraldPolicy,
}

/// All merits of one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointMerit {
    /// Bin amplitude α (zero when dark).
    pub alpha: C64,
    /// Bin amplitude β (zero when dark).
    pub beta: C64,
    /// NPT of the lossless heralded state.
    pub npt_pure: f64,
    /// NPT after each bin is absorbed at its own frequency.
    pub npt_lossy: f64,
    /// Generation probability of the heralded state.
    pub gen_prob: f64,
    /// Transmission of the `as` bin.
    pub t_as: f64,
    /// Transmission of the `as′` bin.
    pub t_as_prime: f64,
    /// Heralded anti-Stokes frequency ω_as (rad/s).
    pub omega_as: f64,
    /// Heralded anti-Stokes frequency ω_as′ (rad/s).
    pub omega_as_prime: f64,
    /// True when no photon pair is generated at this point (both bin
    /// amplitudes vanish), so the entanglement merits are zero by
    /// convention rather than measured.
    pub dark: bool,
}

/// Evaluate every merit at a single operating point.
///
/// A point where both bin amplitudes vanish (e.g. zero pump power or an
/// empty ground state) is reported as `dark` with zero entanglement and
/// brightness instead of an error; the transparencies are still
/// physical and are computed.
pub fn evaluate_point(
    medium: &MediumParams,
    drives: &DriveFields,
    policy: HeraldPolicy,
) -> Result<PointMerit> {
    let omega_s = match policy {
        HeraldPolicy::TwoPhotonResonant => heralded_stokes_frequency(medium, drives),
        HeraldPolicy::Fixed(w) => w,
    };
    // Bin frequencies follow from energy conservation alone, so they
    // exist (and transparency is well defined) even for a dark point.
    let quad_as =
        crate::amplitudes::conserved_quad(medium, drives, crate::medium::Process::A, omega_s)?;
    let quad_asp =
        crate::amplitudes::conserved_quad(medium, drives, crate::medium::Process::B, omega_s)?;
    let t_as = transmission(medium, drives, Mode::AntiStokes, quad_as.omega_anti)?;
    let t_asp = transmission(medium, drives, Mode::AntiStokesPrime, quad_asp.omega_anti)?;
    match herald::herald(medium, drives, omega_s) {
        Ok(state) => {
            let rho = TwoModeDensityMatrix::from_heralded(&state);
            let lossy = apply_loss(&rho, t_as, t_asp)?;
            Ok(PointMerit {
                alpha: state.alpha,
                beta: state.beta,
                npt_pure: pure_npt(&state),
                npt_lossy: lossy_npt(&lossy)?,
                gen_prob: state.gen_prob,
                t_as,
                t_as_prime: t_asp,
                omega_as: state.omega_as,
                omega_as_prime: state.omega_as_prime,
                dark: false,
            })
        }
        Err(Error::NoHerald) => Ok(PointMerit {
            alpha: C64::new(0.0, 0.0),
            beta: C64::new(0.0, 0.0),
            npt_pure: 0.0,
            npt_lossy: 0.0,
            gen_prob: 0.0,
            t_as,
            t_as_prime: t_asp,
            omega_as: quad_as.omega_anti,
            omega_as_prime: quad_asp.omega_anti,
            dark: true,
        }),
        Err(e) => Err(e),
    }
}

/// The result of a grid sweep: merits in row-major order over
/// (axis1, axis2), i.e. index = i1 · n2 + i2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeritMap {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub values1: Vec<f64>,
    pub values2: Vec<f64>,
    pub points: Vec<PointMerit>,
}

impl MeritMap {
    /// Grid dimensions (n1, n2).
    pub fn dims(&self) -> (usize, usize) {
        (self.values1.len(), self.values2.len())
    }

    /// Merit at grid cell (i1, i2).
    pub fn get(&self, i1: usize, i2: usize) -> &PointMerit {
        &self.points[i1 * self.values2.len() + i2]
    }

    /// Indices (i1, i2) of the cell maximising `metric`. Ties resolve
    /// to the first cell in row-major order, deterministically.
    pub fn argmax(&self, metric: Metric) -> (usize, usize) {
        let mut best = (0usize, 0usize);
        let mut best_v = f64::NEG_INFINITY;
        let n2 = self.values2.len();
        for (idx, p) in self.points.iter().enumerate() {
            let v = metric.read(p);
            if v > best_v {
                best_v = v;
                best = (idx / n2, idx % n2);
            }
        }
        best
    }

    /// Check every stored merit is finite and within physical bounds.
    pub fn validate(&self) -> Result<()> {
        if self.points.len() != self.values1.len() * self.values2.len() {
            return Err(Error::InvalidParameter("merit map shape mismatch".into()));
        }
        for (i, p) in self.points.iter().enumerate() {
            let fields = [
                p.npt_pure,
                p.npt_lossy,
                p.gen_prob,
                p.t_as,
                p.t_as_prime,
                p.omega_as,
                p.omega_as_prime,
            ];
            if fields.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain(format!("non-finite merit at index {i}")));
            }
            for npt in [p.npt_pure, p.npt_lossy] {
                if !(0.0..=1.0 + 1e-9).contains(&npt) {
                    return Err(Error::Domain(format!("NPT {npt} out of range at {i}")));
                }
            }
            for t in [p.t_as, p.t_as_prime] {
                if !(0.0..=1.0).contains(&t) {
                    return Err(Error::Domain(format!("transmission {t} out of range at {i}")));
                }
            }
        }
        Ok(())
    }
}

/// Sweep the two axes of `spec` over their full grids.
///
/// Points are evaluated in parallel but collected in index order, so
/// the result is identical for any number of worker threads.
pub fn grid_sweep(spec: &SweepSpec) -> Result<MeritMap> {
    spec.medium.validate()?;
    spec.drives.validate()?;
    spec.axis1.validate()?;
    spec.axis2.validate()?;
    let values1 = spec.axis1.values();
    let values2 = spec.axis2.values();
    let n2 = values2.len();
    let points: Vec<PointMerit> = (0..values1.len() * n2)
        .into_par_iter()
        .map(|idx| {
            let (i1, i2) = (idx / n2, idx % n2);
            let mut medium = spec.medium.clone();
            let mut drives = spec.drives;
            spec.axis1.param.apply(&mut medium, &mut drives, values1[i1]);
            spec.axis2.param.apply(&mut medium, &mut drives, values2[i2]);
            evaluate_point(&medium, &drives, spec.herald)
        })
        .collect::<Result<_>>()?;
    Ok(MeritMap {
        axis1: spec.axis1,
        axis2: spec.axis2,
        values1,
        values2,
        points,
    })
}

/// A scalar merit read out of a [`PointMerit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    NptPure,
    NptLossy,
    GenProb,
    TAs,
    TAsPrime,
}

impl Metric {
    /// Read this metric from a merit record.
    pub fn read(&self, p: &PointMerit) -> f64 {
        match self {
            Metric::NptPure => p.npt_pure,
            Metric::NptLossy => p.npt_lossy,
            Metric::GenProb => p.gen_prob,
            Metric::TAs => p.t_as,
            Metric::TAsPrime => p.t_as_prime,
        }
    }
}

/// An inequality a point must satisfy to count as feasible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub metric: Metric,
    pub relation: Relation,
    pub bound: f64,
}

/// Direction of a constraint inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// metric ≥ bound
    Ge,
    /// metric ≤ bound
    Le,
}

impl Constraint {
    /// Whether `p` satisfies the inequality.
    pub fn satisfied(&self, p: &PointMerit) -> bool {
        let v = self.metric.read(p);
        match self.relation {
            Relation::Ge => v >= self.bound,
            Relation::Le => v <= self.bound,
        }
    }
}

/// A boolean mask over a merit map, e.g. the region where the state
/// stays strongly entangled and both bins are transparent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMask {
    pub mask: Vec<bool>,
    pub n1: usize,
    pub n2: usize,
    pub descriptor: String,
}

impl RegionMask {
    /// Number of grid cells inside the region.
    pub fn area(&self) -> usize {
        self.mask.iter().filter(|b| **b).count()
    }

    /// Whether cell (i1, i2) is inside.
    pub fn contains(&self, i1: usize, i2: usize) -> bool {
        self.mask[i1 * self.n2 + i2]
    }
}

/// Extract the sub-region of `map` where `predicate` holds.
pub fn extract_region(
    map: &MeritMap,
    predicate: impl Fn(&PointMerit) -> bool,
    descriptor: &str,
) -> RegionMask {
    let (n1, n2) = map.dims();
    RegionMask {
        mask: map.points.iter().map(predicate).collect(),
        n1,
        n2,
        descriptor: descriptor.to_string(),
    }
}

/// What [`optimize`] should maximise and under which constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSpec {
    pub objective: Metric,
    pub constraints: Vec<Constraint>,
    /// Number of local grid-halving refinement rounds after the
    /// coarse sweep.
    pub refine_iters: usize,
}

/// One entry of the optimizer's search trace: the incumbent after the
/// coarse sweep (round 0) and after each refinement round.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub round: usize,
    pub value1: f64,
    pub value2: f64,
    pub objective_value: f64,
    pub feasible: bool,
}

/// Result of a constrained maximisation over the sweep plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeReport {
    /// Merits at the best point found.
    pub best: PointMerit,
    /// Axis-1 parameter value at the best point.
    pub value1: f64,
    /// Axis-2 parameter value at the best point.
    pub value2: f64,
    /// Objective value at the best point.
    pub objective_value: f64,
    /// True when the best point satisfies every constraint. When no
    /// evaluated point is feasible this is false and the report holds
    /// the unconstrained maximum instead.
    pub feasible: bool,
    /// Total number of point evaluations spent.
    pub evaluations: usize,
    /// Incumbent after the coarse sweep and after each refinement
    /// round.
    pub trace: Vec<TraceStep>,
}

/// Axis coordinate mapped into the space the refinement steps in:
/// raw values for linear axes, logarithms for log axes.
fn to_scale(axis: &AxisSpec, v: f64) -> f64 {
    match axis.scale {
        AxisScale::Linear => v,
        AxisScale::Log => v.ln(),
    }
}

fn from_scale(axis: &AxisSpec, s: f64) -> f64 {
    match axis.scale {
        AxisScale::Linear => s,
        AxisScale::Log => s.exp(),
    }
}

/// Maximise `opt.objective` over the sweep plane: a full coarse grid
/// sweep followed by `refine_iters` rounds of 3×3 local refinement with
/// halving step around the incumbent, stepping in linear or log space
/// according to each axis scale and clamped to the axis ranges.
///
/// Deterministic: ties resolve in row-major order and the refinement
/// path depends only on the inputs. Feasible points (all constraints
/// satisfied) always dominate infeasible ones; among points of the same
/// feasibility the objective decides.
pub fn optimize(sweep: &SweepSpec, opt: &OptimizeSpec) -> Result<OptimizeReport> {
    let map = grid_sweep(sweep)?;
    let mut evaluations = map.points.len();
    let feasible_p = |p: &PointMerit| opt.constraints.iter().all(|c| c.satisfied(p));

    // (feasible, objective) lexicographic ordering
    let better = |p: &PointMerit, cur: &(bool, f64)| -> bool {
        let key = (feasible_p(p), opt.objective.read(p));
        key.0 && !cur.0 || (key.0 == cur.0 && key.1 > cur.1)
    };

    let (n1, n2) = map.dims();
    let mut best = *map.get(0, 0);
    let mut best_v = (map.values1[0], map.values2[0]);
    let mut best_key = (feasible_p(&best), opt.objective.read(&best));
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let p = map.get(i1, i2);
            if better(p, &best_key) {
                best = *p;
                best_v = (map.values1[i1], map.values2[i2]);
                best_key = (feasible_p(p), opt.objective.read(p));
            }
        }
    }

    let mut trace = vec![TraceStep {
        round: 0,
        value1: best_v.0,
        value2: best_v.1,
        objective_value: opt.objective.read(&best),
        feasible: best_key.0,
    }];

    // Local refinement: step sizes start at the coarse grid spacing.
    let span1 = to_scale(&sweep.axis1, sweep.axis1.max) - to_scale(&sweep.axis1, sweep.axis1.min);
    let span2 = to_scale(&sweep.axis2, sweep.axis2.max) - to_scale(&sweep.axis2, sweep.axis2.min);
    let mut step1 = span1 / (sweep.axis1.points - 1) as f64;
    let mut step2 = span2 / (sweep.axis2.points - 1) as f64;
    for round in 0..opt.refine_iters {
        step1 *= 0.5;
        step2 *= 0.5;
        let c1 = to_scale(&sweep.axis1, best_v.0);
        let c2 = to_scale(&sweep.axis2, best_v.1);
        for d1 in [-1.0, 0.0, 1.0] {
            for d2 in [-1.0, 0.0, 1.0] {
                if d1 == 0.0 && d2 == 0.0 {
                    continue;
                }
                let v1 = from_scale(&sweep.axis1, c1 + d1 * step1)
                    .clamp(sweep.axis1.min, sweep.axis1.max);
                let v2 = from_scale(&sweep.axis2, c2 + d2 * step2)
                    .clamp(sweep.axis2.min, sweep.axis2.max);
                let mut medium = sweep.medium.clone();
                let mut drives = sweep.drives;
                sweep.axis1.param.apply(&mut medium, &mut drives, v1);
                sweep.axis2.param.apply(&mut medium, &mut drives, v2);
                let p = evaluate_point(&medium, &drives, sweep.herald)?;
                evaluations += 1;
                if better(&p, &best_key) {
                    best = p;
                    best_v = (v1, v2);
                    best_key = (feasible_p(&p), opt.objective.read(&p));
                }
            }
        }
        trace.push(TraceStep {
            round: round + 1,
            value1: best_v.0,
            value2: best_v.1,
            objective_value: opt.objective.read(&best),
            feasible: best_key.0,
        });
    }

    Ok(OptimizeReport {
        best,
        value1: best_v.0,
        value2: best_v.1,
        objective_value: opt.objective.read(&best),
        feasible: best_key.0,
        evaluations,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> (MediumParams, DriveFields) {
        let m = MediumParams::default();
        let d = DriveFields {
            rabi_p: 6.0 * m.gamma_e,
            rabi_c: 6.0 * m.gamma_e,
            det_p: -m.gamma_e,
            det_c: m.gamma_e,
        };
        (m, d)
    }

    fn small_spec() -> SweepSpec {
        let (m, d) = base();
        SweepSpec {
            axis1: AxisSpec {
                param: AxisParam::RabiP,
                min: 2.0 * m.gamma_e,
                max: 8.0 * m.gamma_e,
                points: 4,
                scale: AxisScale::Linear,
            },
            axis2: AxisSpec {
                param: AxisParam::RabiC,
                min: 2.0 * m.gamma_e,
                max: 8.0 * m.gamma_e,
                points: 3,
                scale: AxisScale::Linear,
            },
            medium: m,
            drives: d,
            herald: HeraldPolicy::TwoPhotonResonant,
        }
    }

    #[test]
    fn axis_endpoints_are_exact_and_log_spacing_is_geometric() {
        let axis = AxisSpec {
            param: AxisParam::RabiC,
            min: 0.125,
            max: 8.0,
            points: 7,
            scale: AxisScale::Log,
        };
        let v = axis.values();
        assert_eq!(v[0], 0.125);
        assert_eq!(v[6], 8.0);
        let ratio = v[1] / v[0];
        for w in v.windows(2) {
            assert!((w[1] / w[0] - ratio).abs() < 1e-12 * ratio);
        }
    }

    #[test]
    fn bad_axes_are_rejected() {
        let mut axis = AxisSpec {
            param: AxisParam::DetP,
            min: 0.0,
            max: 1.0,
            points: 5,
            scale: AxisScale::Linear,
        };
        axis.validate().unwrap();
        axis.points = 1;
        assert!(axis.validate().is_err());
        axis.points = 5;
        axis.max = -1.0;
        assert!(axis.validate().is_err());
        axis.max = 1.0;
        axis.scale = AxisScale::Log;
        assert!(axis.validate().is_err(), "log axis must reject min = 0");
    }

    #[test]
    fn grid_matches_individual_point_evaluations() {
        let spec = small_spec();
        let map = grid_sweep(&spec).unwrap();
        assert_eq!(map.dims(), (4, 3));
        map.validate().unwrap();
        for (i1, v1) in map.values1.iter().enumerate() {
            for (i2, v2) in map.values2.iter().enumerate() {
                let mut medium = spec.medium.clone();
                let mut drives = spec.drives;
                spec.axis1.param.apply(&mut medium, &mut drives, *v1);
                spec.axis2.param.apply(&mut medium, &mut drives, *v2);
                let solo = evaluate_point(&medium, &drives, spec.herald).unwrap();
                assert_eq!(&solo, map.get(i1, i2));
            }
        }
    }

    #[test]
    fn sweeps_are_identical_across_thread_counts() {
        let spec = small_spec();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| grid_sweep(&spec).unwrap())
        };
        let a = run(1);
        let b = run(8);
        assert_eq!(a, b);
    }

    #[test]
    fn dark_points_are_recorded_not_raised() {
        let (mut m, d) = base();
        m.pop_11 = 0.0;
        m.pop_22 = 1.0;
        let p = evaluate_point(&m, &d, HeraldPolicy::TwoPhotonResonant).unwrap();
        assert!(p.dark);
        assert_eq!(p.npt_pure, 0.0);
        assert_eq!(p.gen_prob, 0.0);
        assert!(p.t_as > 0.0, "transparency is still physical when dark");
    }

    #[test]
    fn population_axis_keeps_the_populations_normalised() {
        let (mut m, mut d) = base();
        AxisParam::Pop11.apply(&mut m, &mut d, 0.3);
        m.validate().unwrap();
        assert_eq!(m.pop_11, 0.3);
        assert!((m.pop_11 + m.pop_22 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn region_extraction_counts_matching_cells() {
        let map = grid_sweep(&small_spec()).unwrap();
        let all = extract_region(&map, |_| true, "everything");
        assert_eq!(all.area(), 12);
        let none = extract_region(&map, |p| p.npt_lossy > 2.0, "impossible");
        assert_eq!(none.area(), 0);
        let some = extract_region(&map, |p| p.npt_lossy > 0.5, "entangled");
        for i1 in 0..4 {
            for i2 in 0..3 {
                assert_eq!(some.contains(i1, i2), map.get(i1, i2).npt_lossy > 0.5);
            }
        }
    }

    #[test]
    fn optimizer_beats_its_own_coarse_grid() {
        let spec = small_spec();
        let map = grid_sweep(&spec).unwrap();
        let (i1, i2) = map.argmax(Metric::NptLossy);
        let coarse_best = map.get(i1, i2).npt_lossy;
        let report = optimize(
            &spec,
            &OptimizeSpec {
                objective: Metric::NptLossy,
                constraints: vec![],
                refine_iters: 4,
            },
        )
        .unwrap();
        assert!(report.feasible);
        assert!(report.objective_value >= coarse_best);
        assert_eq!(report.evaluations, 12 + 4 * 8);
        // the trace records the coarse incumbent plus one entry per
        // round, ending at the reported best
        assert_eq!(report.trace.len(), 5);
        let last = report.trace.last().unwrap();
        assert_eq!(last.objective_value, report.objective_value);
        assert_eq!((last.value1, last.value2), (report.value1, report.value2));
    }

    #[test]
    fn infeasible_constraints_are_reported_not_hidden() {
        let report = optimize(
            &small_spec(),
            &OptimizeSpec {
                objective: Metric::GenProb,
                constraints: vec![Constraint {
                    metric: Metric::NptLossy,
                    relation: Relation::Ge,
                    bound: 2.0, // NPT never exceeds 1
                }],
                refine_iters: 2,
            },
        )
        .unwrap();
        assert!(!report.feasible);
        assert!(report.objective_value > 0.0);
    }

    #[test]
    fn constraints_steer_the_optimum() {
        // Without constraints the brightest point wins; demanding high
        // transparency must move the optimum to a cell that satisfies
        // it (or the same cell if it already does).
        let spec = small_spec();
        let unconstrained = optimize(
            &spec,
            &OptimizeSpec {
                objective: Metric::GenProb,
                constraints: vec![],
                refine_iters: 0,
            },
        )
        .unwrap();
        let constrained = optimize(
            &spec,
            &OptimizeSpec {
                objective: Metric::GenProb,
                constraints: vec![Constraint {
                    metric: Metric::TAs,
                    relation: Relation::Ge,
                    bound: 0.9,
                }],
                refine_iters: 0,
            },
        )
        .unwrap();
        if constrained.feasible {
            assert!(constrained.best.t_as >= 0.9);
            assert!(constrained.objective_value <= unconstrained.objective_value + 1e-12);
        }
    }
}
