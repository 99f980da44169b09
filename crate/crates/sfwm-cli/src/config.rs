//! Run configuration: a flat `key = value` file with explicit units.
//!
//! Every dimensioned value carries a unit token so no 2π or SI-prefix
//! convention is ever implied silently:
//!
//! ```text
//! # medium (defaults: cold-atom D1-line values)
//! Gamma    = 5.75 MHz_2pi      # optical linewidth, the *_2pi units mean 2π × value
//! gamma    = 10 kHz_2pi        # ground-coherence decay
//! omega_21 = 3 GHz_2pi         # hyperfine splitting
//! lambda_31 = 795 nm
//! density  = 5e12 cm^-3
//! length   = 100 um
//! pop_11   = 1.0
//! pop_22   = 0.0
//!
//! # drives; `Gamma` as a unit means multiples of the linewidth
//! Omega_p = 6 Gamma
//! Omega_c = 6 Gamma
//! Delta_p = -1 Gamma
//! Delta_c = 1 Gamma
//! ```
//!
//! Unknown keys, duplicate keys, missing units on dimensioned values
//! and violated physical constraints are all hard errors that name the
//! offending line and key. An empty (or absent) file yields the
//! default configuration: the default medium with the strong
//! near-resonance drive point above.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use sfwm_core::medium::{DriveFields, MediumParams};
use sfwm_core::sweep::{
    AxisParam, AxisScale, AxisSpec, Constraint, HeraldPolicy, Metric, Relation,
};
use thiserror::Error;

/// Configuration or validation failure, carrying file position context.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}, key `{key}`: {message}")]
    Entry {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("key `{key}`: {message}")]
    Key { key: String, message: String },
    #[error("{0}")]
    Other(String),
}

/// Spectrum command settings: probe offsets from the bare 1–3
/// resonance and the number of samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSpec {
    pub min_offset: f64,
    pub max_offset: f64,
    pub points: usize,
}

/// Fully resolved and validated run configuration (all values SI,
/// angular frequencies in rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub medium: MediumParams,
    pub drives: DriveFields,
    pub herald: HeraldPolicy,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub objective: Metric,
    pub constraints: Vec<Constraint>,
    pub refine_iters: usize,
    pub spectrum: SpectrumSpec,
}

/// The five parameters an axis may sweep, by config name.
const AXIS_PARAMS: [(&str, AxisParam); 5] = [
    ("Omega_p", AxisParam::RabiP),
    ("Omega_c", AxisParam::RabiC),
    ("Delta_p", AxisParam::DetP),
    ("Delta_c", AxisParam::DetC),
    ("pop_11", AxisParam::Pop11),
];

const METRICS: [(&str, Metric); 5] = [
    ("npt_pure", Metric::NptPure),
    ("npt_lossy", Metric::NptLossy),
    ("gen_prob", Metric::GenProb),
    ("t_as", Metric::TAs),
    ("t_as_prime", Metric::TAsPrime),
];

/// Every key the file format accepts.
const KNOWN_KEYS: [&str; 28] = [
    "Gamma",
    "gamma",
    "omega_21",
    "lambda_31",
    "density",
    "length",
    "cross_section",
    "pop_11",
    "pop_22",
    "Omega_p",
    "Omega_c",
    "Delta_p",
    "Delta_c",
    "herald_policy",
    "herald_omega_s",
    "axis1_param",
    "axis1_min",
    "axis1_max",
    "axis1_points",
    "axis1_scale",
    "axis2_param",
    "axis2_min",
    "axis2_max",
    "axis2_points",
    "axis2_scale",
    "objective",
    "require",
    "refine_iters",
];

/// A raw `key = value` entry with its source line.
struct RawEntry {
    line: usize,
    value: String,
}

struct RawConfig {
    entries: std::collections::BTreeMap<String, RawEntry>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = std::collections::BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let without_comment = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let trimmed = without_comment.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| ConfigError::Line {
                line,
                message: "expected `key = value`".into(),
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str())
                && !key.starts_with("spectrum_")
            {
                return Err(ConfigError::Entry {
                    line,
                    key,
                    message: "unknown key".into(),
                });
            }
            if key.starts_with("spectrum_")
                && !["spectrum_min", "spectrum_max", "spectrum_points"].contains(&key.as_str())
            {
                return Err(ConfigError::Entry {
                    line,
                    key,
                    message: "unknown key".into(),
                });
            }
            if value.is_empty() {
                return Err(ConfigError::Entry {
                    line,
                    key,
                    message: "empty value".into(),
                });
            }
            if let Some(prev) = entries.insert(key.clone(), RawEntry { line, value }) {
                return Err(ConfigError::Entry {
                    line,
                    key,
                    message: format!("duplicate key (first set on line {})", prev.line),
                });
            }
        }
        Ok(RawConfig { entries })
    }

    fn get(&self, key: &str) -> Option<&RawEntry> {
        self.entries.get(key)
    }
}

/// Split a value into its number and optional unit token.
fn split_value(value: &str) -> (&str, Option<&str>) {
    match value.split_once(char::is_whitespace) {
        Some((num, unit)) => (num.trim(), Some(unit.trim())),
        None => (value, None),
    }
}

fn parse_number(entry: &RawEntry, key: &str, text: &str) -> Result<f64, ConfigError> {
    text.parse::<f64>().map_err(|_| ConfigError::Entry {
        line: entry.line,
        key: key.into(),
        message: format!("`{text}` is not a number"),
    })
}

/// Angular-frequency value. `gamma_scale` enables the `Gamma` unit
/// (multiples of the optical linewidth); pass `None` where a relative
/// unit makes no sense (e.g. for the linewidth itself).
fn parse_frequency(
    entry: &RawEntry,
    key: &str,
    gamma_scale: Option<f64>,
) -> Result<f64, ConfigError> {
    let (num, unit) = split_value(&entry.value);
    let value = parse_number(entry, key, num)?;
    let unit = unit.ok_or_else(|| ConfigError::Entry {
        line: entry.line,
        key: key.into(),
        message: "frequency needs a unit: rad_s, Hz_2pi, kHz_2pi, MHz_2pi, GHz_2pi, THz_2pi \
                  or Gamma"
            .into(),
    })?;
    let scale = match unit {
        "rad_s" => 1.0,
        "Hz_2pi" => TAU,
        "kHz_2pi" => TAU * 1e3,
        "MHz_2pi" => TAU * 1e6,
        "GHz_2pi" => TAU * 1e9,
        "THz_2pi" => TAU * 1e12,
        "Gamma" => gamma_scale.ok_or_else(|| ConfigError::Entry {
            line: entry.line,
            key: key.into(),
            message: "the `Gamma` unit is not allowed for this key".into(),
        })?,
        other => {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: key.into(),
                message: format!("unknown frequency unit `{other}`"),
            })
        }
    };
    Ok(value * scale)
}

fn parse_length(entry: &RawEntry, key: &str) -> Result<f64, ConfigError> {
    let (num, unit) = split_value(&entry.value);
    let value = parse_number(entry, key, num)?;
    let scale = match unit {
        Some("m") => 1.0,
        Some("mm") => 1e-3,
        Some("um") => 1e-6,
        Some("nm") => 1e-9,
        Some(other) => {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: key.into(),
                message: format!("unknown length unit `{other}`"),
            })
        }
        None => {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: key.into(),
                message: "length needs a unit: m, mm, um or nm".into(),
            })
        }
    };
    Ok(value * scale)
}

fn parse_density(entry: &RawEntry, key: &str) -> Result<f64, ConfigError> {
    let (num, unit) = split_value(&entry.value);
    let value = parse_number(entry, key, num)?;
    let scale = match unit {
        Some("m^-3") => 1.0,
        Some("cm^-3") => 1e6,
        Some(other) => {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: key.into(),
                message: format!("unknown density unit `{other}`"),
            })
        }
        None => {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: key.into(),
                message: "density needs a unit: m^-3 or cm^-3".into(),
            })
        }
    };
    Ok(value * scale)
}

fn parse_area(entry: &RawEntry, key: &str) -> Result<f64, ConfigError> {
    let (num, unit) = split_value(&entry.value);
    let value = parse_number(entry, key, num)?;
    let scale = match unit {
        Some("m^2") => 1.0,
        Some("cm^2") => 1e-4,
        Some("mm^2") => 1e-6,
        Some("um^2") => 1e-12,
        Some(other) => {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: key.into(),
                message: format!("unknown area unit `{other}`"),
            })
        }
        None => {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: key.into(),
                message: "area needs a unit: m^2, cm^2, mm^2 or um^2".into(),
            })
        }
    };
    Ok(value * scale)
}

fn parse_bare(entry: &RawEntry, key: &str) -> Result<f64, ConfigError> {
    let (num, unit) = split_value(&entry.value);
    if let Some(unit) = unit {
        return Err(ConfigError::Entry {
            line: entry.line,
            key: key.into(),
            message: format!("`{key}` is dimensionless; remove the unit `{unit}`"),
        });
    }
    parse_number(entry, key, num)
}

fn parse_count(entry: &RawEntry, key: &str) -> Result<usize, ConfigError> {
    entry.value.parse::<usize>().map_err(|_| ConfigError::Entry {
        line: entry.line,
        key: key.into(),
        message: format!("`{}` is not a non-negative integer", entry.value),
    })
}

/// Parse one axis from its five optional keys, with defaults chosen by
/// the swept parameter: Rabi-frequency axes default to a logarithmic
/// 0.1Γ–10Γ range, detunings to linear ±10Γ, populations to linear
/// 0–1.
fn parse_axis(
    raw: &RawConfig,
    which: &str,
    default_param: AxisParam,
    gamma: f64,
) -> Result<AxisSpec, ConfigError> {
    let param_key = format!("{which}_param");
    let param = match raw.get(&param_key) {
        Some(entry) => AXIS_PARAMS
            .iter()
            .find(|(name, _)| *name == entry.value)
            .map(|(_, p)| *p)
            .ok_or_else(|| ConfigError::Entry {
                line: entry.line,
                key: param_key.clone(),
                message: format!(
                    "unknown axis parameter `{}`; expected one of {}",
                    entry.value,
                    AXIS_PARAMS.map(|(n, _)| n).join(", ")
                ),
            })?,
        None => default_param,
    };
    let (def_min, def_max, def_scale) = match param {
        AxisParam::RabiP | AxisParam::RabiC => (0.1 * gamma, 10.0 * gamma, AxisScale::Log),
        AxisParam::DetP | AxisParam::DetC => (-10.0 * gamma, 10.0 * gamma, AxisScale::Linear),
        AxisParam::Pop11 => (0.0, 1.0, AxisScale::Linear),
    };
    let parse_endpoint = |suffix: &str, default: f64| -> Result<f64, ConfigError> {
        let key = format!("{which}_{suffix}");
        match raw.get(&key) {
            Some(entry) => match param {
                AxisParam::Pop11 => parse_bare(entry, &key),
                _ => parse_frequency(entry, &key, Some(gamma)),
            },
            None => Ok(default),
        }
    };
    let min = parse_endpoint("min", def_min)?;
    let max = parse_endpoint("max", def_max)?;
    let points_key = format!("{which}_points");
    let points = match raw.get(&points_key) {
        Some(entry) => parse_count(entry, &points_key)?,
        None => 50,
    };
    let scale_key = format!("{which}_scale");
    let scale = match raw.get(&scale_key) {
        Some(entry) => match entry.value.as_str() {
            "lin" | "linear" => AxisScale::Linear,
            "log" => AxisScale::Log,
            other => {
                return Err(ConfigError::Entry {
                    line: entry.line,
                    key: scale_key,
                    message: format!("unknown scale `{other}`; expected lin or log"),
                })
            }
        },
        None => def_scale,
    };
    let axis = AxisSpec {
        param,
        min,
        max,
        points,
        scale,
    };
    axis.validate().map_err(|e| ConfigError::Key {
        key: which.to_string(),
        message: e.to_string(),
    })?;
    Ok(axis)
}

/// Parse the comma-separated constraint list, e.g.
/// `require = npt_lossy >= 0.99, t_as >= 0.95`.
fn parse_constraints(entry: &RawEntry) -> Result<Vec<Constraint>, ConfigError> {
    let mut out = Vec::new();
    for clause in entry.value.split(',') {
        let clause = clause.trim();
        let (relation, parts) = if let Some(p) = clause.split_once(">=") {
            (Relation::Ge, p)
        } else if let Some(p) = clause.split_once("<=") {
            (Relation::Le, p)
        } else {
            return Err(ConfigError::Entry {
                line: entry.line,
                key: "require".into(),
                message: format!("`{clause}` is not of the form `metric >= value` or `metric <= value`"),
            });
        };
        let metric_name = parts.0.trim();
        let metric = METRICS
            .iter()
            .find(|(name, _)| *name == metric_name)
            .map(|(_, m)| *m)
            .ok_or_else(|| ConfigError::Entry {
                line: entry.line,
                key: "require".into(),
                message: format!(
                    "unknown metric `{metric_name}`; expected one of {}",
                    METRICS.map(|(n, _)| n).join(", ")
                ),
            })?;
        let bound = parts.1.trim().parse::<f64>().map_err(|_| ConfigError::Entry {
            line: entry.line,
            key: "require".into(),
            message: format!("`{}` is not a number", parts.1.trim()),
        })?;
        out.push(Constraint {
            metric,
            relation,
            bound,
        });
    }
    Ok(out)
}

/// Parse and fully validate a configuration text.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw = RawConfig::parse(text)?;
    let defaults = MediumParams::default();

    // The linewidth first: other values may be given in units of it.
    let gamma_e = match raw.get("Gamma") {
        Some(entry) => parse_frequency(entry, "Gamma", None)?,
        None => defaults.gamma_e,
    };

    let freq = |key: &str, default: f64| -> Result<f64, ConfigError> {
        match raw.get(key) {
            Some(entry) => parse_frequency(entry, key, Some(gamma_e)),
            None => Ok(default),
        }
    };
    let medium = MediumParams {
        gamma_e,
        gamma_g: freq("gamma", defaults.gamma_g)?,
        omega_21: freq("omega_21", defaults.omega_21)?,
        lambda_31: match raw.get("lambda_31") {
            Some(entry) => parse_length(entry, "lambda_31")?,
            None => defaults.lambda_31,
        },
        density: match raw.get("density") {
            Some(entry) => parse_density(entry, "density")?,
            None => defaults.density,
        },
        length: match raw.get("length") {
            Some(entry) => parse_length(entry, "length")?,
            None => defaults.length,
        },
        cross_section: match raw.get("cross_section") {
            Some(entry) => parse_area(entry, "cross_section")?,
            None => defaults.cross_section,
        },
        pop_11: match raw.get("pop_11") {
            Some(entry) => parse_bare(entry, "pop_11")?,
            None => defaults.pop_11,
        },
        pop_22: match raw.get("pop_22") {
            Some(entry) => parse_bare(entry, "pop_22")?,
            None => defaults.pop_22,
        },
    };
    medium.validate().map_err(|e| ConfigError::Other(e.to_string()))?;

    let drives = DriveFields {
        rabi_p: freq("Omega_p", 6.0 * gamma_e)?,
        rabi_c: freq("Omega_c", 6.0 * gamma_e)?,
        det_p: freq("Delta_p", -gamma_e)?,
        det_c: freq("Delta_c", gamma_e)?,
    };
    drives.validate().map_err(|e| ConfigError::Other(e.to_string()))?;

    let herald = match raw.get("herald_policy") {
        None => {
            if let Some(entry) = raw.get("herald_omega_s") {
                return Err(ConfigError::Entry {
                    line: entry.line,
                    key: "herald_omega_s".into(),
                    message: "requires `herald_policy = fixed`".into(),
                });
            }
            HeraldPolicy::TwoPhotonResonant
        }
        Some(entry) => match entry.value.as_str() {
            "resonant" => {
                if let Some(ws_entry) = raw.get("herald_omega_s") {
                    return Err(ConfigError::Entry {
                        line: ws_entry.line,
                        key: "herald_omega_s".into(),
                        message: "requires `herald_policy = fixed`".into(),
                    });
                }
                HeraldPolicy::TwoPhotonResonant
            }
            "fixed" => {
                let ws_entry = raw.get("herald_omega_s").ok_or_else(|| ConfigError::Key {
                    key: "herald_omega_s".into(),
                    message: "required when `herald_policy = fixed`".into(),
                })?;
                HeraldPolicy::Fixed(parse_frequency(ws_entry, "herald_omega_s", None)?)
            }
            other => {
                return Err(ConfigError::Entry {
                    line: entry.line,
                    key: "herald_policy".into(),
                    message: format!("unknown policy `{other}`; expected resonant or fixed"),
                })
            }
        },
    };

    let axis1 = parse_axis(&raw, "axis1", AxisParam::RabiP, gamma_e)?;
    let axis2 = parse_axis(&raw, "axis2", AxisParam::RabiC, gamma_e)?;

    let objective = match raw.get("objective") {
        Some(entry) => METRICS
            .iter()
            .find(|(name, _)| *name == entry.value)
            .map(|(_, m)| *m)
            .ok_or_else(|| ConfigError::Entry {
                line: entry.line,
                key: "objective".into(),
                message: format!(
                    "unknown metric `{}`; expected one of {}",
                    entry.value,
                    METRICS.map(|(n, _)| n).join(", ")
                ),
            })?,
        None => Metric::NptLossy,
    };
    let constraints = match raw.get("require") {
        Some(entry) => parse_constraints(entry)?,
        None => Vec::new(),
    };
    let refine_iters = match raw.get("refine_iters") {
        Some(entry) => parse_count(entry, "refine_iters")?,
        None => 8,
    };

    let spectrum = {
        let min_offset = match raw.get("spectrum_min") {
            Some(entry) => parse_frequency(entry, "spectrum_min", Some(gamma_e))?,
            None => -40.0 * gamma_e,
        };
        let max_offset = match raw.get("spectrum_max") {
            Some(entry) => parse_frequency(entry, "spectrum_max", Some(gamma_e))?,
            None => 40.0 * gamma_e,
        };
        let points = match raw.get("spectrum_points") {
            Some(entry) => parse_count(entry, "spectrum_points")?,
            None => 801,
        };
        if min_offset >= max_offset {
            return Err(ConfigError::Key {
                key: "spectrum_min".into(),
                message: format!("needs min < max, got [{min_offset}, {max_offset}] rad/s"),
            });
        }
        if points < 2 {
            return Err(ConfigError::Key {
                key: "spectrum_points".into(),
                message: "needs at least 2 points".into(),
            });
        }
        SpectrumSpec {
            min_offset,
            max_offset,
            points,
        }
    };

    Ok(RunConfig {
        medium,
        drives,
        herald,
        axis1,
        axis2,
        objective,
        constraints,
        refine_iters,
        spectrum,
    })
}

/// Load a configuration file; a missing path yields the defaults.
pub fn load_config(path: Option<&Path>) -> Result<RunConfig, ConfigError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                ConfigError::Other(format!("cannot read config `{}`: {e}", p.display()))
            })?;
            parse_config(&text)
        }
        None => parse_config(""),
    }
}

#[allow(dead_code)] // part of the config API; exercised by the round-trip tests
fn metric_name(metric: Metric) -> &'static str {
    METRICS.iter().find(|(_, m)| *m == metric).unwrap().0
}

#[allow(dead_code)] // part of the config API; exercised by the round-trip tests
fn axis_param_name(param: AxisParam) -> &'static str {
    AXIS_PARAMS.iter().find(|(_, p)| *p == param).unwrap().0
}

/// Serialize a configuration back to the file format, in SI units.
/// `parse_config(&cfg.to_config_string())` reproduces `cfg` exactly:
/// floats are printed in round-trip scientific notation.
impl RunConfig {
    #[allow(dead_code)] // part of the config API; exercised by the round-trip tests
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let m = &self.medium;
        writeln!(s, "Gamma = {:e} rad_s", m.gamma_e).unwrap();
        writeln!(s, "gamma = {:e} rad_s", m.gamma_g).unwrap();
        writeln!(s, "omega_21 = {:e} rad_s", m.omega_21).unwrap();
        writeln!(s, "lambda_31 = {:e} m", m.lambda_31).unwrap();
        writeln!(s, "density = {:e} m^-3", m.density).unwrap();
        writeln!(s, "length = {:e} m", m.length).unwrap();
        writeln!(s, "cross_section = {:e} m^2", m.cross_section).unwrap();
        writeln!(s, "pop_11 = {:e}", m.pop_11).unwrap();
        writeln!(s, "pop_22 = {:e}", m.pop_22).unwrap();
        let d = &self.drives;
        writeln!(s, "Omega_p = {:e} rad_s", d.rabi_p).unwrap();
        writeln!(s, "Omega_c = {:e} rad_s", d.rabi_c).unwrap();
        writeln!(s, "Delta_p = {:e} rad_s", d.det_p).unwrap();
        writeln!(s, "Delta_c = {:e} rad_s", d.det_c).unwrap();
        match self.herald {
            HeraldPolicy::TwoPhotonResonant => {
                writeln!(s, "herald_policy = resonant").unwrap();
            }
            HeraldPolicy::Fixed(w) => {
                writeln!(s, "herald_policy = fixed").unwrap();
                writeln!(s, "herald_omega_s = {w:e} rad_s").unwrap();
            }
        }
        for (which, axis) in [("axis1", &self.axis1), ("axis2", &self.axis2)] {
            writeln!(s, "{which}_param = {}", axis_param_name(axis.param)).unwrap();
            if axis.param == AxisParam::Pop11 {
                writeln!(s, "{which}_min = {:e}", axis.min).unwrap();
                writeln!(s, "{which}_max = {:e}", axis.max).unwrap();
            } else {
                writeln!(s, "{which}_min = {:e} rad_s", axis.min).unwrap();
                writeln!(s, "{which}_max = {:e} rad_s", axis.max).unwrap();
            }
            writeln!(s, "{which}_points = {}", axis.points).unwrap();
            let scale = match axis.scale {
                AxisScale::Linear => "lin",
                AxisScale::Log => "log",
            };
            writeln!(s, "{which}_scale = {scale}").unwrap();
        }
        writeln!(s, "objective = {}", metric_name(self.objective)).unwrap();
        if !self.constraints.is_empty() {
            let clauses: Vec<String> = self
                .constraints
                .iter()
                .map(|c| {
                    let rel = match c.relation {
                        Relation::Ge => ">=",
                        Relation::Le => "<=",
                    };
                    format!("{} {rel} {:e}", metric_name(c.metric), c.bound)
                })
                .collect();
            writeln!(s, "require = {}", clauses.join(", ")).unwrap();
        }
        writeln!(s, "refine_iters = {}", self.refine_iters).unwrap();
        writeln!(s, "spectrum_min = {:e} rad_s", self.spectrum.min_offset).unwrap();
        writeln!(s, "spectrum_max = {:e} rad_s", self.spectrum.max_offset).unwrap();
        writeln!(s, "spectrum_points = {}", self.spectrum.points).unwrap();
        s
    }
}
