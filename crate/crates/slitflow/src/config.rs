//! Line-oriented `key = value` run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use slitflow_core::{CPoint, VorticityPreset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ProbeMap,
    Field,
    Advect,
    SweepEps,
    Check,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::ProbeMap,
        Mode::Field,
        Mode::Advect,
        Mode::SweepEps,
        Mode::Check,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ProbeMap => "probe-map",
            Mode::Field => "field",
            Mode::Advect => "advect",
            Mode::SweepEps => "sweep-eps",
            Mode::Check => "check",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                format!("expected one of probe-map, field, advect, sweep-eps, check, got `{s}`")
            })
    }
}

/// Which velocity law drives `field` and `advect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Exterior,
    Limit,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Exterior => "exterior",
            ModelKind::Limit => "limit",
        }
    }
}

fn preset_name(p: VorticityPreset) -> &'static str {
    match p {
        VorticityPreset::Gaussian => "gaussian",
        VorticityPreset::Dipole => "dipole",
        VorticityPreset::Zero => "zero",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub origin: CPoint,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub epsilon: f64,
    pub gamma: f64,
    pub eta: f64,
    pub vorticity_preset: VorticityPreset,
    pub model: ModelKind,
    pub grid: GridSpec,
    pub dt: f64,
    pub t_final: f64,
    /// `None` selects twice the median mapped-plane particle spacing.
    pub blob_delta: Option<f64>,
    /// Lattice spacing used to sample the preset.
    pub particle_h: f64,
    /// Passive tracers added to the sampled particles.
    pub tracers: Vec<CPoint>,
    /// Write a snapshot every this many steps; 0 keeps only the first and last.
    pub snapshot_every: usize,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn with_mode(mode: Mode) -> Self {
        RunConfig {
            mode,
            epsilon: 0.1,
            gamma: 0.0,
            eta: 0.0,
            vorticity_preset: VorticityPreset::Gaussian,
            model: ModelKind::Exterior,
            grid: GridSpec {
                origin: CPoint::new(-2.0, -2.0),
                h: 4.0 / 63.0,
                nx: 64,
                ny: 64,
            },
            dt: 2e-3,
            t_final: 1.0,
            blob_delta: None,
            particle_h: 0.1,
            tracers: Vec::new(),
            snapshot_every: 0,
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
}

/// Keys accepted by [`parse_config`], with their defaults, for `--help`.
pub const KEYS: &[(&str, &str)] = &[
    (
        "mode",
        "required: probe-map | field | advect | sweep-eps | check",
    ),
    ("epsilon", "0.1 (slit half-length, > 0)"),
    ("gamma", "0 (circulation around the slit)"),
    ("eta", "0 (thickening used by probe-map, >= 0)"),
    ("vorticity_preset", "gaussian | dipole | zero"),
    ("model", "exterior | limit"),
    ("grid_origin", "-2, -2"),
    ("grid_h", "0.0634920634920635 (4/63)"),
    ("grid_nx", "64"),
    ("grid_ny", "64"),
    ("dt", "0.002"),
    ("t_final", "1"),
    ("blob_delta", "auto | value >= 0 (mapped plane)"),
    ("particle_h", "0.1"),
    ("tracers", "none | x, y; x, y; ..."),
    ("snapshot_every", "0 (first and last only)"),
    ("output_dir", "out"),
    ("seed", "0"),
];

fn float(v: &str) -> Result<f64, String> {
    let x: f64 = v
        .parse()
        .map_err(|_| format!("expected a number, got `{v}`"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("expected a finite number, got `{v}`"))
    }
}

fn positive(key: &str, v: &str) -> Result<f64, String> {
    let x = float(v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("`{key}` must be positive (got {v})"))
    }
}

fn nonnegative(key: &str, v: &str) -> Result<f64, String> {
    let x = float(v)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("`{key}` must be non-negative (got {v})"))
    }
}

fn count(key: &str, v: &str) -> Result<usize, String> {
    let n: usize = v
        .parse()
        .map_err(|_| format!("`{key}` expects a non-negative integer, got `{v}`"))?;
    Ok(n)
}

fn point(v: &str) -> Result<CPoint, String> {
    let mut parts = v.split(',').map(str::trim);
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok(CPoint::new(float(a)?, float(b)?)),
        _ => Err(format!("expected a point `x, y`, got `{v}`")),
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::with_mode(Mode::Check);
    let mut mode = None;
    let mut seen: Vec<&str> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ConfigError::Line { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
        let key = key.trim();
        let value = value.trim();
        if seen.contains(&key) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        let r: Result<(), String> = match key {
            "mode" => value.parse().map(|m| mode = Some(m)),
            "epsilon" => positive(key, value).map(|x| cfg.epsilon = x),
            "gamma" => float(value).map(|x| cfg.gamma = x),
            "eta" => nonnegative(key, value).map(|x| cfg.eta = x),
            "vorticity_preset" => match value {
                "gaussian" => Ok(cfg.vorticity_preset = VorticityPreset::Gaussian),
                "dipole" => Ok(cfg.vorticity_preset = VorticityPreset::Dipole),
                "zero" => Ok(cfg.vorticity_preset = VorticityPreset::Zero),
                _ => Err(format!("expected gaussian, dipole or zero, got `{value}`")),
            },
            "model" => match value {
                "exterior" => Ok(cfg.model = ModelKind::Exterior),
                "limit" => Ok(cfg.model = ModelKind::Limit),
                _ => Err(format!("expected exterior or limit, got `{value}`")),
            },
            "grid_origin" => point(value).map(|p| cfg.grid.origin = p),
            "grid_h" => positive(key, value).map(|x| cfg.grid.h = x),
            "grid_nx" => count(key, value).map(|n| cfg.grid.nx = n),
            "grid_ny" => count(key, value).map(|n| cfg.grid.ny = n),
            "dt" => positive(key, value).map(|x| cfg.dt = x),
            "t_final" => positive(key, value).map(|x| cfg.t_final = x),
            "blob_delta" => {
                if value == "auto" {
                    Ok(cfg.blob_delta = None)
                } else {
                    nonnegative(key, value).map(|x| cfg.blob_delta = Some(x))
                }
            }
            "particle_h" => positive(key, value).map(|x| cfg.particle_h = x),
            "tracers" => {
                if value == "none" || value.is_empty() {
                    Ok(cfg.tracers.clear())
                } else {
                    value
                        .split(';')
                        .map(point)
                        .collect::<Result<Vec<_>, _>>()
                        .map(|t| cfg.tracers = t)
                }
            }
            "snapshot_every" => count(key, value).map(|n| cfg.snapshot_every = n),
            "output_dir" => {
                if value.is_empty() {
                    Err("`output_dir` must not be empty".to_string())
                } else {
                    Ok(cfg.output_dir = PathBuf::from(value))
                }
            }
            "seed" => value
                .parse()
                .map(|s| cfg.seed = s)
                .map_err(|_| format!("`seed` expects a non-negative integer, got `{value}`")),
            _ => Err(format!("unknown key `{key}`")),
        };
        r.map_err(err)?;
        seen.push(key);
        if (key == "grid_nx" || key == "grid_ny") && (cfg.grid.nx == 0 || cfg.grid.ny == 0) {
            return Err(err(format!("`{key}` must be positive")));
        }
    }
    cfg.mode = mode.ok_or(ConfigError::Missing("mode"))?;
    Ok(cfg)
}

impl fmt::Display for RunConfig {
    /// The effective configuration in the format read by [`parse_config`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode = {}", self.mode.as_str())?;
        writeln!(f, "epsilon = {:?}", self.epsilon)?;
        writeln!(f, "gamma = {:?}", self.gamma)?;
        writeln!(f, "eta = {:?}", self.eta)?;
        writeln!(
            f,
            "vorticity_preset = {}",
            preset_name(self.vorticity_preset)
        )?;
        writeln!(f, "model = {}", self.model.as_str())?;
        writeln!(
            f,
            "grid_origin = {:?}, {:?}",
            self.grid.origin.re, self.grid.origin.im
        )?;
        writeln!(f, "grid_h = {:?}", self.grid.h)?;
        writeln!(f, "grid_nx = {}", self.grid.nx)?;
        writeln!(f, "grid_ny = {}", self.grid.ny)?;
        writeln!(f, "dt = {:?}", self.dt)?;
        writeln!(f, "t_final = {:?}", self.t_final)?;
        match self.blob_delta {
            Some(d) => writeln!(f, "blob_delta = {d:?}")?,
            None => writeln!(f, "blob_delta = auto")?,
        }
        writeln!(f, "particle_h = {:?}", self.particle_h)?;
        if self.tracers.is_empty() {
            writeln!(f, "tracers = none")?;
        } else {
            let list: Vec<String> = self
                .tracers
                .iter()
                .map(|p| format!("{:?}, {:?}", p.re, p.im))
                .collect();
            writeln!(f, "tracers = {}", list.join("; "))?;
        }
        writeln!(f, "snapshot_every = {}", self.snapshot_every)?;
        writeln!(f, "output_dir = {}", self.output_dir.display())?;
        writeln!(f, "seed = {}", self.seed)
    }
}
