//! Serialization of computation results.
//!
//! CSV output is written with `{:e}` float formatting: locale
//! independent, shortest round-trip representation, bitwise stable
//! across runs and thread counts. Header comments (`#`-prefixed)
//! document the fixed parameters and the column layout but never carry
//! volatile data such as timestamps, precisely so repeated runs can be
//! compared byte for byte.
//!
//! Angular frequencies (Rabi frequencies, detunings, mode frequencies)
//! are emitted in units of Γ by default, matching the axes the merit
//! maps are usually plotted against; `--si` switches every output to
//! rad/s. Either way the chosen unit is recorded in the output itself,
//! and the medium block always stays in SI because Γ is defined there.

use std::fmt::Write as _;

use serde::Serialize;
use sfwm_core::herald::ChannelDiagnostics;
use sfwm_core::medium::{DriveFields, MediumParams, SusceptibilitySample};
use sfwm_core::sweep::{
    extract_region, AxisParam, AxisSpec, HeraldPolicy, MeritMap, Metric, OptimizeReport,
    PointMerit, TraceStep,
};

/// Unit convention for angular frequencies in output documents.
#[derive(Debug, Clone, Copy)]
pub struct FrequencyUnit {
    /// Divisor applied to every angular frequency on the way out.
    scale: f64,
    /// Unit name recorded in headers and JSON fields.
    name: &'static str,
}

impl FrequencyUnit {
    /// Frequencies in units of the excited-state linewidth Γ.
    pub fn gamma(medium: &MediumParams) -> Self {
        FrequencyUnit {
            scale: medium.gamma_e,
            name: "Gamma",
        }
    }

    /// Frequencies in rad/s.
    pub fn si() -> Self {
        FrequencyUnit {
            scale: 1.0,
            name: "rad_s",
        }
    }

    /// Unit name for headers and JSON.
    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Convert one angular frequency to this unit.
    pub fn convert(&self, omega: f64) -> f64 {
        omega / self.scale
    }

    /// Convert an axis value: frequency-valued parameters are scaled,
    /// dimensionless ones (populations) pass through.
    pub fn convert_axis(&self, param: AxisParam, v: f64) -> f64 {
        if is_frequency(param) {
            self.convert(v)
        } else {
            v
        }
    }
}

/// Whether an axis parameter carries units of angular frequency.
fn is_frequency(param: AxisParam) -> bool {
    !matches!(param, AxisParam::Pop11)
}

/// Unit tag for one axis column.
fn axis_unit(param: AxisParam, unit: FrequencyUnit) -> &'static str {
    if is_frequency(param) {
        unit.name()
    } else {
        "1"
    }
}

/// Copy of a merit record with its mode frequencies converted for
/// output; every other field is dimensionless.
fn convert_merit(p: &PointMerit, unit: FrequencyUnit) -> PointMerit {
    let mut q = *p;
    q.omega_as = unit.convert(p.omega_as);
    q.omega_as_prime = unit.convert(p.omega_as_prime);
    q
}

/// Everything `point` reports for one operating point.
#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    /// Unit of every frequency field in this document.
    pub frequency_unit: &'static str,
    /// Heralding Stokes frequency.
    pub omega_s: f64,
    pub merit: PointMerit,
    /// Squared amplitudes and Stokes frequency of the two excluded
    /// channels, for judging how cleanly they separate spectrally.
    pub diagnostics: ChannelDiagnostics,
}

/// Assemble the `point` report in the requested unit.
pub fn point_report(
    omega_s: f64,
    merit: &PointMerit,
    diagnostics: &ChannelDiagnostics,
    unit: FrequencyUnit,
) -> PointReport {
    let mut diag = *diagnostics;
    diag.omega_stokes_prime = unit.convert(diag.omega_stokes_prime);
    PointReport {
        frequency_unit: unit.name(),
        omega_s: unit.convert(omega_s),
        merit: convert_merit(merit, unit),
        diagnostics: diag,
    }
}

/// JSON summary attached to a sweep: the maxima and where they sit,
/// plus the areas (cell counts) of standard high-merit regions.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    /// Unit of the axis values below (populations stay dimensionless).
    pub frequency_unit: &'static str,
    pub grid: (usize, usize),
    pub max_npt_pure: Max,
    pub max_npt_lossy: Max,
    pub max_gen_prob: Max,
    pub area_npt_lossy_ge_0_95: usize,
    pub area_npt_lossy_ge_0_99: usize,
    /// Cells satisfying the configured `require` constraints, if any.
    pub area_feasible: Option<usize>,
}

/// A maximum with its location on the grid.
#[derive(Debug, Clone, Serialize)]
pub struct Max {
    pub value: f64,
    pub cell: (usize, usize),
    pub axis1_value: f64,
    pub axis2_value: f64,
}

fn locate(map: &MeritMap, metric: Metric, unit: FrequencyUnit) -> Max {
    let (i1, i2) = map.argmax(metric);
    Max {
        value: metric.read(map.get(i1, i2)),
        cell: (i1, i2),
        axis1_value: unit.convert_axis(map.axis1.param, map.values1[i1]),
        axis2_value: unit.convert_axis(map.axis2.param, map.values2[i2]),
    }
}

/// Build the JSON summary of a sweep.
pub fn sweep_summary(
    map: &MeritMap,
    constraints: &[sfwm_core::sweep::Constraint],
    unit: FrequencyUnit,
) -> SweepSummary {
    SweepSummary {
        frequency_unit: unit.name(),
        grid: map.dims(),
        max_npt_pure: locate(map, Metric::NptPure, unit),
        max_npt_lossy: locate(map, Metric::NptLossy, unit),
        max_gen_prob: locate(map, Metric::GenProb, unit),
        area_npt_lossy_ge_0_95: extract_region(map, |p| p.npt_lossy >= 0.95, "npt_lossy >= 0.95")
            .area(),
        area_npt_lossy_ge_0_99: extract_region(map, |p| p.npt_lossy >= 0.99, "npt_lossy >= 0.99")
            .area(),
        area_feasible: if constraints.is_empty() {
            None
        } else {
            Some(
                extract_region(
                    map,
                    |p| constraints.iter().all(|c| c.satisfied(p)),
                    "configured constraints",
                )
                .area(),
            )
        },
    }
}

fn write_medium_header(
    s: &mut String,
    medium: &MediumParams,
    drives: &DriveFields,
    unit: FrequencyUnit,
) {
    // The medium block defines Γ itself, so it always stays in SI;
    // everything downstream of this line is in the declared unit.
    writeln!(s, "# frequency_unit: {}", unit.name()).unwrap();
    writeln!(
        s,
        "# medium (SI): Gamma={:e} gamma={:e} omega_21={:e} lambda_31={:e} density={:e} \
         length={:e} cross_section={:e} pop_11={:e} pop_22={:e}",
        medium.gamma_e,
        medium.gamma_g,
        medium.omega_21,
        medium.lambda_31,
        medium.density,
        medium.length,
        medium.cross_section,
        medium.pop_11,
        medium.pop_22
    )
    .unwrap();
    writeln!(
        s,
        "# drives ({}): Omega_p={:e} Omega_c={:e} Delta_p={:e} Delta_c={:e}",
        unit.name(),
        unit.convert(drives.rabi_p),
        unit.convert(drives.rabi_c),
        unit.convert(drives.det_p),
        unit.convert(drives.det_c)
    )
    .unwrap();
}

/// Render a merit map as CSV: `#` metadata lines, one header row, one
/// data row per grid cell in row-major order.
pub fn sweep_csv(
    map: &MeritMap,
    medium: &MediumParams,
    drives: &DriveFields,
    herald: HeraldPolicy,
    unit: FrequencyUnit,
) -> String {
    let mut s = String::new();
    writeln!(s, "# two-axis parameter sweep, row-major over (axis1, axis2)").unwrap();
    for (name, axis) in [("axis1", &map.axis1), ("axis2", &map.axis2)] {
        writeln!(
            s,
            "# {name}: {:?} {:?} {} points in [{:e}, {:e}] unit={}",
            axis.param,
            axis.scale,
            axis.points,
            unit.convert_axis(axis.param, axis.min),
            unit.convert_axis(axis.param, axis.max),
            axis_unit(axis.param, unit)
        )
        .unwrap();
    }
    write_medium_header(&mut s, medium, drives, unit);
    match herald {
        HeraldPolicy::TwoPhotonResonant => writeln!(s, "# herald: two-photon resonant").unwrap(),
        HeraldPolicy::Fixed(w) => {
            writeln!(s, "# herald: fixed omega_s={:e}", unit.convert(w)).unwrap()
        }
    }
    writeln!(
        s,
        "axis1,axis2,npt_pure,npt_lossy,gen_prob,t_as,t_as_prime,alpha_re,alpha_im,\
         beta_re,beta_im,omega_as,omega_as_prime,dark"
    )
    .unwrap();
    for (i1, v1) in map.values1.iter().enumerate() {
        for (i2, v2) in map.values2.iter().enumerate() {
            let p = convert_merit(map.get(i1, i2), unit);
            writeln!(
                s,
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}",
                unit.convert_axis(map.axis1.param, *v1),
                unit.convert_axis(map.axis2.param, *v2),
                p.npt_pure,
                p.npt_lossy,
                p.gen_prob,
                p.t_as,
                p.t_as_prime,
                p.alpha.re,
                p.alpha.im,
                p.beta.re,
                p.beta.im,
                p.omega_as,
                p.omega_as_prime,
                u8::from(p.dark)
            )
            .unwrap();
        }
    }
    s
}

/// One spectrum row: probe frequency, both linear susceptibilities and
/// both transmissions.
pub struct SpectrumRow {
    pub omega: f64,
    pub chi_as: SusceptibilitySample,
    pub chi_as_prime: SusceptibilitySample,
    pub t_as: f64,
    pub t_as_prime: f64,
}

/// Render the spectrum table as CSV.
pub fn spectrum_csv(
    rows: &[SpectrumRow],
    medium: &MediumParams,
    drives: &DriveFields,
    unit: FrequencyUnit,
) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "# linear response and transmission of both anti-Stokes modes vs probe frequency"
    )
    .unwrap();
    write_medium_header(&mut s, medium, drives, unit);
    writeln!(
        s,
        "omega,delta_e,chi_as_re,chi_as_im,t_as,chi_as_prime_re,chi_as_prime_im,t_as_prime"
    )
    .unwrap();
    for row in rows {
        writeln!(
            s,
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            unit.convert(row.omega),
            unit.convert(row.omega - medium.omega_31()),
            row.chi_as.value.re,
            row.chi_as.value.im,
            row.t_as,
            row.chi_as_prime.value.re,
            row.chi_as_prime.value.im,
            row.t_as_prime
        )
        .unwrap();
    }
    s
}

/// `optimize` output: the core report with every angular frequency
/// converted to the requested unit.
#[derive(Debug, Clone, Serialize)]
pub struct OptimizeOutput {
    /// Unit of the frequency-valued fields below.
    pub frequency_unit: &'static str,
    /// Merits at the best point found, mode frequencies converted.
    pub best: PointMerit,
    /// Axis-1 parameter value at the best point.
    pub value1: f64,
    /// Axis-2 parameter value at the best point.
    pub value2: f64,
    pub objective_value: f64,
    pub feasible: bool,
    pub evaluations: usize,
    /// Incumbent after the coarse sweep and after each refinement round.
    pub trace: Vec<TraceStep>,
}

/// Convert an optimizer report for output.
pub fn optimize_output(
    report: &OptimizeReport,
    axis1: &AxisSpec,
    axis2: &AxisSpec,
    unit: FrequencyUnit,
) -> OptimizeOutput {
    OptimizeOutput {
        frequency_unit: unit.name(),
        best: convert_merit(&report.best, unit),
        value1: unit.convert_axis(axis1.param, report.value1),
        value2: unit.convert_axis(axis2.param, report.value2),
        objective_value: report.objective_value,
        feasible: report.feasible,
        evaluations: report.evaluations,
        trace: report
            .trace
            .iter()
            .map(|t| TraceStep {
                round: t.round,
                value1: unit.convert_axis(axis1.param, t.value1),
                value2: unit.convert_axis(axis2.param, t.value2),
                objective_value: t.objective_value,
                feasible: t.feasible,
            })
            .collect(),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
