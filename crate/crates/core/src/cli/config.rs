//! Flat `key = value` sweep configuration.
//!
//! Lines starting with `#` and blank lines are ignored. Vectors are written
//! as comma triples (`e0 = 1e5,0,0`). Command-line flags override file
//! values key by key.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ho::HOModel;
use crate::hydrogen::HydrogenModel;
use crate::units::{derive_pair, ParticlePair, StaticFieldConfig, CODATA, PROTON_MASS};

pub const KEYS: [&str; 17] = [
    "model",
    "omega_min",
    "omega_max",
    "points",
    "spacing",
    "e0",
    "b0",
    "omega0",
    "gamma",
    "n_max",
    "out",
    "svg",
    "axis",
    "volume_factor",
    "m1",
    "m2",
    "exact_masses",
];

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Ho,
    Hydrogen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

/// Unit of the frequency column. The tensor is always computed from the
/// angular frequency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    RadS,
    Hz,
}

macro_rules! keyword_enum {
    ($t:ty, $what:literal, $($s:literal => $v:expr),+) => {
        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.trim() {
                    $($s => Ok($v),)+
                    other => config_err(format!("unknown {} '{}'", $what, other)),
                }
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s = match self { $(x if *x == $v => $s,)+ _ => unreachable!() };
                f.write_str(s)
            }
        }
    };
}

keyword_enum!(ModelKind, "model", "ho" => ModelKind::Ho, "hydrogen" => ModelKind::Hydrogen);
keyword_enum!(Spacing, "spacing", "log" => Spacing::Log, "linear" => Spacing::Linear);
keyword_enum!(Axis, "axis", "rad_s" => Axis::RadS, "hz" => Axis::Hz);

impl Axis {
    pub fn convert(self, omega: f64) -> f64 {
        match self {
            Axis::RadS => omega,
            Axis::Hz => omega / (2.0 * std::f64::consts::PI),
        }
    }
}

/// Raw key/value pairs, later layers overriding earlier ones.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigMap(BTreeMap<String, String>);

impl ConfigMap {
    pub fn new() -> Self {
        ConfigMap::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = ConfigMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return config_err(format!("line {}: expected 'key = value', got '{}'", lineno + 1, line));
            };
            map.set(k.trim(), v.trim())
                .map_err(|e| Error::Config(format!("line {}: {}", lineno + 1, strip(e))))?;
        }
        Ok(map)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        ConfigMap::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return config_err(format!("unknown key '{key}'"));
        }
        self.0.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn overlay(&mut self, other: &ConfigMap) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::Config(format!("invalid value for {key}: '{v}'"))),
        }
    }

    fn vector(&self, key: &str) -> Result<Option<[f64; 3]>> {
        self.get(key).map(|v| parse_vector(v).map_err(|e| Error::Config(format!("{key}: {}", strip(e))))).transpose()
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Config(s) | Error::Domain(s) => s,
        other => other.to_string(),
    }
}

/// `"x,y,z"` to a 3-vector.
pub fn parse_vector(s: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return config_err(format!("expected three comma-separated numbers, got '{s}'"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| Error::Config(format!("not a number: '{p}'")))?;
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub model: ModelKind,
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub fields: StaticFieldConfig,
    /// trap frequency, HO only
    pub omega0: f64,
    /// line width, hydrogen only
    pub gamma: f64,
    pub n_max: u32,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub axis: Axis,
    /// multiplies the HO volume `e^2/(4 pi eps0 m omega0^2)`
    pub volume_factor: f64,
    pub pair: ParticlePair,
    /// keep both masses in the hydrogen sums instead of `m_delta/M -> 1`
    pub exact_masses: bool,
}

impl Default for SweepConfig {
    /// Hydrogen with E0 = (1e5, 0, 0) V/m, B0 = (0, 10, 0) T, Γ = 1e8,
    /// n_max = 20 over [1e12, 1e20] rad/s.
    fn default() -> Self {
        SweepConfig {
            model: ModelKind::Hydrogen,
            omega_min: 1.0e12,
            omega_max: 1.0e20,
            points: 320,
            spacing: Spacing::Log,
            fields: StaticFieldConfig::reference(),
            omega0: 1.0e16,
            gamma: 1.0e8,
            n_max: 20,
            out: None,
            svg: None,
            axis: Axis::RadS,
            volume_factor: 1.0,
            pair: ParticlePair::hydrogen(),
            exact_masses: false,
        }
    }
}

impl SweepConfig {
    pub fn from_map(map: &ConfigMap) -> Result<Self> {
        let d = SweepConfig::default();
        let e0 = map.vector("e0")?.unwrap_or(d.fields.e0);
        let b0 = map.vector("b0")?.unwrap_or(d.fields.b0);
        let fields = StaticFieldConfig::new(e0, b0).map_err(|e| Error::Config(strip(e)))?;
        let m1 = map.parsed("m1")?.unwrap_or(CODATA.m_electron);
        let m2 = map.parsed("m2")?.unwrap_or(PROTON_MASS);
        let pair = derive_pair(m1, m2, CODATA.e_charge).map_err(|e| Error::Config(strip(e)))?;
        let cfg = SweepConfig {
            model: map.parsed("model")?.unwrap_or(d.model),
            omega_min: map.parsed("omega_min")?.unwrap_or(d.omega_min),
            omega_max: map.parsed("omega_max")?.unwrap_or(d.omega_max),
            points: map.parsed("points")?.unwrap_or(d.points),
            spacing: map.parsed("spacing")?.unwrap_or(d.spacing),
            fields,
            omega0: map.parsed("omega0")?.unwrap_or(d.omega0),
            gamma: map.parsed("gamma")?.unwrap_or(d.gamma),
            n_max: map.parsed("n_max")?.unwrap_or(d.n_max),
            out: map.get("out").map(PathBuf::from),
            svg: map.get("svg").map(PathBuf::from),
            axis: map.parsed("axis")?.unwrap_or(d.axis),
            volume_factor: map.parsed("volume_factor")?.unwrap_or(d.volume_factor),
            pair,
            exact_masses: map.parsed("exact_masses")?.unwrap_or(d.exact_masses),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_min.is_finite() && self.omega_max.is_finite() && self.omega_min < self.omega_max) {
            return config_err(format!(
                "need omega_min < omega_max, got {} and {}",
                self.omega_min, self.omega_max
            ));
        }
        if self.points < 2 {
            return config_err(format!("points must be >= 2, got {}", self.points));
        }
        if self.spacing == Spacing::Log && self.omega_min <= 0.0 {
            return config_err("log spacing needs omega_min > 0");
        }
        if !(self.volume_factor.is_finite() && self.volume_factor > 0.0) {
            return config_err(format!("volume_factor must be positive, got {}", self.volume_factor));
        }
        match self.model {
            ModelKind::Ho => {
                self.ho_model()?;
            }
            ModelKind::Hydrogen => {
                self.hydrogen_model()?;
            }
        }
        Ok(())
    }

    pub fn ho_model(&self) -> Result<HOModel> {
        HOModel::new(self.pair, self.omega0, self.fields).map_err(|e| Error::Config(strip(e)))
    }

    pub fn hydrogen_model(&self) -> Result<HydrogenModel> {
        let mut m = HydrogenModel::new(self.fields, self.gamma, self.n_max).map_err(|e| Error::Config(strip(e)))?;
        if self.exact_masses {
            m = m.with_pair(self.pair);
        }
        Ok(m)
    }

    /// The sweep frequencies in rad/s, strictly increasing.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let last = (n - 1) as f64;
        let mut g: Vec<f64> = (0..n)
            .map(|k| {
                let t = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.omega_min + t * (self.omega_max - self.omega_min),
                    Spacing::Log => {
                        let (a, b) = (self.omega_min.log10(), self.omega_max.log10());
                        10f64.powf(a + t * (b - a))
                    }
                }
            })
            .collect();
        g[0] = self.omega_min;
        g[n - 1] = self.omega_max;
        g
    }
}
