//! TOML network configuration.
//!
//! ```toml
//! [network]
//! sites = 3
//! energy_unit = "rad_per_ps"       # or "inverse_cm"; applies to omega and hoppings
//! omega = [0.0, 0.0, 0.0]
//! hoppings = [[1, 2, 1.0], [2, 3, 1.0], [1, 3, 1.0]]   # (j, l, v_jl), 1-based
//! dephasing = [0.0, 50.0, 0.0]     # ps^-1, default all zero
//! dissipation = [0.0, 0.0, 0.0]    # ps^-1, default all zero
//! input = 1                        # default 1
//! output = 3                       # site index or "sink"; default N
//!
//! [network.sink]                   # optional
//! site = 3
//! rate = 1.0                       # ps^-1
//!
//! [integrator]                     # optional
//! dt = 0.001                       # default 0.002 / max rate
//! richardson_tolerance = 1e-8      # default off
//!
//! [sweep]                          # optional
//! t_max = 20.0
//! t_steps = 401
//! dephasing_scale = 1.0
//! ```

use serde::{Deserialize, Serialize};

use crate::dynamics::{IntegratorConfig, NetworkSpec, Output, Sink};
use crate::{Error, Result};

/// Angular frequency in rad/ps corresponding to one wavenumber (`2 pi c`).
pub const WAVENUMBER_TO_RAD_PER_PS: f64 = 0.1883651567;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyUnit {
    #[default]
    RadPerPs,
    InverseCm,
}

impl EnergyUnit {
    fn factor(self) -> f64 {
        match self {
            EnergyUnit::RadPerPs => 1.0,
            EnergyUnit::InverseCm => WAVENUMBER_TO_RAD_PER_PS,
        }
    }
}

/// Time grid and noise scaling for trajectory runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    #[serde(default = "Sweep::default_t_max")]
    pub t_max: f64,
    #[serde(default = "Sweep::default_t_steps")]
    pub t_steps: usize,
    #[serde(default = "Sweep::default_scale")]
    pub dephasing_scale: f64,
}

impl Sweep {
    fn default_t_max() -> f64 {
        20.0
    }
    fn default_t_steps() -> usize {
        201
    }
    fn default_scale() -> f64 {
        1.0
    }

    /// `t_steps` equally spaced times from 0 to `t_max` inclusive.
    pub fn grid(&self) -> Vec<f64> {
        match self.t_steps {
            0 => vec![],
            1 => vec![0.0],
            n => (0..n).map(|i| self.t_max * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

impl Default for Sweep {
    fn default() -> Self {
        Self {
            t_max: Self::default_t_max(),
            t_steps: Self::default_t_steps(),
            dephasing_scale: Self::default_scale(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub spec: NetworkSpec,
    pub integrator: IntegratorConfig,
    pub sweep: Sweep,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    network: NetworkSection,
    #[serde(default, skip_serializing_if = "IntegratorSection::is_empty")]
    integrator: IntegratorSection,
    #[serde(default)]
    sweep: Sweep,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkSection {
    sites: usize,
    #[serde(default)]
    energy_unit: EnergyUnit,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<Vec<f64>>,
    #[serde(default)]
    hoppings: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dephasing: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dissipation: Option<Vec<f64>>,
    #[serde(default = "default_input")]
    input: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output: Option<OutputField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sink: Option<SinkSection>,
}

fn default_input() -> usize {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum OutputField {
    Site(usize),
    Named(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SinkSection {
    site: usize,
    rate: f64,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntegratorSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    richardson_tolerance: Option<f64>,
}

impl IntegratorSection {
    fn is_empty(&self) -> bool {
        self.dt.is_none() && self.richardson_tolerance.is_none()
    }
}

fn semantic(key: &str, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("{key}: {msg}"))
}

fn per_site(key: &str, values: Option<Vec<f64>>, n: usize, rates: bool) -> Result<Vec<f64>> {
    let values = values.unwrap_or_else(|| vec![0.0; n]);
    if values.len() != n {
        return Err(semantic(key, format!("expected {n} entries, found {}", values.len())));
    }
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(semantic(&format!("{key}[{}]", i + 1), "must be finite"));
        }
        if rates && *v < 0.0 {
            return Err(semantic(&format!("{key}[{}]", i + 1), format!("rate {v} must be nonnegative")));
        }
    }
    Ok(values)
}

/// Parses and validates a configuration document. Syntax errors carry the
/// line and column; semantic errors name the offending key.
pub fn parse_config(doc: &str) -> Result<ParsedConfig> {
    let document: Document = toml::from_str(doc).map_err(|e| Error::Config(format!("config syntax error: {e}")))?;
    let net = document.network;
    let n = net.sites;
    if n == 0 {
        return Err(semantic("network.sites", "must be at least 1"));
    }
    let unit = net.energy_unit.factor();
    let omega: Vec<f64> = per_site("network.omega", net.omega, n, false)?
        .into_iter()
        .map(|w| w * unit)
        .collect();
    let dephasing = per_site("network.dephasing", net.dephasing, n, true)?;
    let dissipation = per_site("network.dissipation", net.dissipation, n, true)?;

    let mut hopping = vec![vec![0.0; n]; n];
    let mut seen = vec![vec![false; n]; n];
    for (k, &(j, l, v)) in net.hoppings.iter().enumerate() {
        let key = format!("network.hoppings[{}]", k + 1);
        if !(1..=n).contains(&j) || !(1..=n).contains(&l) {
            return Err(semantic(&key, format!("site pair ({j}, {l}) outside 1..={n}")));
        }
        if j == l {
            return Err(semantic(&key, "self-coupling is not allowed"));
        }
        if !v.is_finite() {
            return Err(semantic(&key, "coupling must be finite"));
        }
        if seen[j - 1][l - 1] {
            return Err(semantic(&key, format!("duplicate coupling ({j}, {l})")));
        }
        seen[j - 1][l - 1] = true;
        seen[l - 1][j - 1] = true;
        hopping[j - 1][l - 1] = v * unit;
        hopping[l - 1][j - 1] = v * unit;
    }

    let sink = match net.sink {
        None => None,
        Some(SinkSection { site, rate }) => {
            if !(1..=n).contains(&site) {
                return Err(semantic("network.sink.site", format!("{site} outside 1..={n}")));
            }
            if !(rate.is_finite() && rate >= 0.0) {
                return Err(semantic("network.sink.rate", format!("rate {rate} must be nonnegative")));
            }
            Some(Sink { site, rate })
        }
    };
    if !(1..=n).contains(&net.input) {
        return Err(semantic("network.input", format!("{} outside 1..={n}", net.input)));
    }
    let output = match net.output {
        None => Output::Site(n),
        Some(OutputField::Site(j)) if (1..=n).contains(&j) => Output::Site(j),
        Some(OutputField::Site(j)) => return Err(semantic("network.output", format!("{j} outside 1..={n}"))),
        Some(OutputField::Named(name)) if name == "sink" => {
            if sink.is_none() {
                return Err(semantic("network.output", "\"sink\" requires a [network.sink] section"));
            }
            Output::Sink
        }
        Some(OutputField::Named(name)) => {
            return Err(semantic("network.output", format!("expected a site index or \"sink\", found \"{name}\"")))
        }
    };

    let spec = NetworkSpec {
        omega,
        hopping,
        dephasing,
        dissipation,
        sink,
        input_site: net.input,
        output,
    };
    spec.validate()?;

    let sweep = document.sweep;
    if !(sweep.t_max.is_finite() && sweep.t_max >= 0.0) {
        return Err(semantic("sweep.t_max", "must be nonnegative"));
    }
    if sweep.t_steps == 0 {
        return Err(semantic("sweep.t_steps", "must be at least 1"));
    }
    if !(sweep.dephasing_scale.is_finite() && sweep.dephasing_scale >= 0.0) {
        return Err(semantic("sweep.dephasing_scale", "must be nonnegative"));
    }

    let mut integrator = IntegratorConfig::for_spec(&spec, sweep.t_max);
    if let Some(dt) = document.integrator.dt {
        integrator.dt = dt;
    }
    integrator.richardson_tolerance = document.integrator.richardson_tolerance;
    integrator
        .validate(&spec)
        .map_err(|e| semantic("integrator.dt", e))?;
    if let Some(tol) = integrator.richardson_tolerance {
        if tol.is_nan() || tol <= 0.0 {
            return Err(semantic("integrator.richardson_tolerance", "must be positive"));
        }
    }

    Ok(ParsedConfig { spec, integrator, sweep })
}

/// Writes a configuration document (rates and energies in rad/ps) that
/// [`parse_config`] maps back to identical values.
pub fn serialize_config(config: &ParsedConfig) -> Result<String> {
    let spec = &config.spec;
    spec.validate()?;
    let n = spec.n_sites();
    let hoppings = (0..n)
        .flat_map(|j| (j + 1..n).map(move |l| (j, l)))
        .filter(|&(j, l)| spec.hopping[j][l] != 0.0)
        .map(|(j, l)| (j + 1, l + 1, spec.hopping[j][l]))
        .collect();
    let document = Document {
        network: NetworkSection {
            sites: n,
            energy_unit: EnergyUnit::RadPerPs,
            omega: Some(spec.omega.clone()),
            hoppings,
            dephasing: Some(spec.dephasing.clone()),
            dissipation: Some(spec.dissipation.clone()),
            input: spec.input_site,
            output: Some(match spec.output {
                Output::Site(j) => OutputField::Site(j),
                Output::Sink => OutputField::Named("sink".into()),
            }),
            sink: spec.sink.map(|s| SinkSection { site: s.site, rate: s.rate }),
        },
        integrator: IntegratorSection {
            dt: Some(config.integrator.dt),
            richardson_tolerance: config.integrator.richardson_tolerance,
        },
        sweep: config.sweep,
    };
    toml::to_string(&document).map_err(|e| Error::Config(format!("cannot serialize config: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[network]\nsites = 2\nhoppings = [[1, 2, 1.0]]\n";

    #[test]
    fn defaults_fill_in() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.spec.omega, vec![0.0, 0.0]);
        assert_eq!(cfg.spec.output, Output::Site(2));
        assert_eq!(cfg.spec.input_site, 1);
        assert_eq!(cfg.sweep, Sweep::default());
        assert!((cfg.integrator.dt - 0.002).abs() < 1e-15);
    }

    #[test]
    fn negative_rate_names_key() {
        let doc = "[network]\nsites = 2\ndephasing = [0.0, -1.0]\n";
        let err = parse_config(doc).unwrap_err().to_string();
        assert!(err.contains("network.dephasing[2]"), "{err}");
    }

    #[test]
    fn unknown_key_has_location() {
        let doc = "[network]\nsites = 2\ncolour = 3\n";
        let err = parse_config(doc).unwrap_err().to_string();
        assert!(err.contains("colour") && err.contains("line 3"), "{err}");
    }

    #[test]
    fn syntax_error_has_location() {
        let err = parse_config("[network\nsites = 2\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn semantic_errors() {
        for (doc, key) in [
            ("[network]\nsites = 2\nhoppings = [[1, 3, 1.0]]\n", "network.hoppings[1]"),
            ("[network]\nsites = 2\nhoppings = [[1, 1, 1.0]]\n", "network.hoppings[1]"),
            ("[network]\nsites = 2\nhoppings = [[1, 2, 1.0], [2, 1, 1.0]]\n", "network.hoppings[2]"),
            ("[network]\nsites = 2\nomega = [1.0]\n", "network.omega"),
            ("[network]\nsites = 2\noutput = \"sink\"\n", "network.output"),
            ("[network]\nsites = 2\noutput = \"bob\"\n", "network.output"),
            ("[network]\nsites = 2\ninput = 0\n", "network.input"),
            ("[network]\nsites = 0\n", "network.sites"),
            ("[network]\nsites = 2\n[network.sink]\nsite = 2\nrate = -1.0\n", "network.sink.rate"),
            ("[network]\nsites = 2\nhoppings = [[1, 2, 100.0]]\n[integrator]\ndt = 0.1\n", "integrator.dt"),
            ("[network]\nsites = 2\n[sweep]\nt_steps = 0\n", "sweep.t_steps"),
        ] {
            let err = parse_config(doc).unwrap_err().to_string();
            assert!(err.contains(key), "expected {key} in: {err}");
        }
    }

    #[test]
    fn wavenumber_conversion() {
        let doc = "[network]\nsites = 2\nenergy_unit = \"inverse_cm\"\nomega = [100.0, 0.0]\nhoppings = [[1, 2, 10.0]]\n";
        let spec = parse_config(doc).unwrap().spec;
        assert!((spec.omega[0] - 18.83651567).abs() < 1e-9);
        assert!((spec.hopping[1][0] - 1.883651567).abs() < 1e-12);
    }

    #[test]
    fn sweep_grid_endpoints() {
        let sweep = Sweep { t_max: 2.0, t_steps: 5, dephasing_scale: 1.0 };
        assert_eq!(sweep.grid(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }
}
