//! Run configuration: JSON file (flat schema, unknown keys rejected) plus
//! command-line overrides. The environment variable `BOUNCER_CONFIG` names
//! a default config file used when `--config` is absent.

use bouncer_core::continuum::PhysicalContext;
use serde::Deserialize;

pub const CONFIG_ENV_VAR: &str = "BOUNCER_CONFIG";

/// On-disk schema. Every field is optional; all values must be positive.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub mass_kg: Option<f64>,
    pub gravity_m_s2: Option<f64>,
    pub hbar_j_s: Option<f64>,
    pub planck_mass_kg: Option<f64>,
    pub speed_of_light_m_s: Option<f64>,
    pub s_values: Option<Vec<f64>>,
    pub n_max: Option<u32>,
    pub s_a_m2_hz3: Option<f64>,
    pub t_n_s: Option<f64>,
    pub delta_t_exp_s: Option<f64>,
    pub delta_e_exp_pev: Option<f64>,
    pub g_factor: Option<f64>,
    pub truncation_l: Option<u32>,
    pub format: Option<String>,
    pub out: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format '{other}' (expected csv, json or table)")),
        }
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mass_kg: f64,
    pub gravity_m_s2: f64,
    pub hbar_j_s: f64,
    pub planck_mass_kg: f64,
    pub speed_of_light_m_s: f64,
    pub s_values: Vec<f64>,
    pub n_max: u32,
    pub s_a_m2_hz3: f64,
    pub t_n_s: f64,
    pub delta_t_exp_s: f64,
    /// Energy precision override for the level-1 bound; level 2 keeps its
    /// published value.
    pub delta_e_exp_pev: f64,
    pub g_factor: f64,
    pub truncation_l: u32,
    pub format: Format,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mass_kg: 1.674927e-27,
            gravity_m_s2: 9.806,
            hbar_j_s: 1.054571817e-34,
            planck_mass_kg: 2.176434e-8,
            speed_of_light_m_s: 2.99792458e8,
            s_values: (1..=10).map(f64::from).collect(),
            n_max: 10,
            s_a_m2_hz3: 1e-10,
            t_n_s: 1e5,
            delta_t_exp_s: 1.0,
            delta_e_exp_pev: 0.102,
            g_factor: 1e7,
            truncation_l: 30,
            format: Format::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn apply_file(&mut self, file: ConfigFile) -> Result<(), String> {
        macro_rules! take {
            ($field:ident) => {
                if let Some(v) = file.$field {
                    self.$field = v;
                }
            };
        }
        take!(mass_kg);
        take!(gravity_m_s2);
        take!(hbar_j_s);
        take!(planck_mass_kg);
        take!(speed_of_light_m_s);
        take!(s_values);
        take!(n_max);
        take!(s_a_m2_hz3);
        take!(t_n_s);
        take!(delta_t_exp_s);
        take!(delta_e_exp_pev);
        take!(g_factor);
        take!(truncation_l);
        if let Some(f) = file.format {
            self.format = Format::parse(&f)?;
        }
        if file.out.is_some() {
            self.out = file.out;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), String> {
        let positives = [
            ("mass_kg", self.mass_kg),
            ("gravity_m_s2", self.gravity_m_s2),
            ("hbar_j_s", self.hbar_j_s),
            ("planck_mass_kg", self.planck_mass_kg),
            ("speed_of_light_m_s", self.speed_of_light_m_s),
            ("t_n_s", self.t_n_s),
            ("delta_t_exp_s", self.delta_t_exp_s),
            ("delta_e_exp_pev", self.delta_e_exp_pev),
            ("g_factor", self.g_factor),
        ];
        for (name, v) in positives {
            if !v.is_finite() || v <= 0.0 {
                return Err(format!("config field {name} must be positive, got {v}"));
            }
        }
        if !self.s_a_m2_hz3.is_finite() || self.s_a_m2_hz3 < 0.0 {
            return Err(format!(
                "config field s_a_m2_hz3 must be nonnegative, got {}",
                self.s_a_m2_hz3
            ));
        }
        if self.s_values.is_empty() {
            return Err("config field s_values must not be empty".into());
        }
        for &s in &self.s_values {
            if !s.is_finite() || s < 1.0 {
                return Err(format!("s values must satisfy s >= 1, got {s}"));
            }
        }
        if self.n_max < 1 {
            return Err("n_max must be at least 1".into());
        }
        Ok(())
    }

    pub fn context(&self) -> Result<PhysicalContext, String> {
        PhysicalContext::new(
            self.mass_kg,
            self.gravity_m_s2,
            self.hbar_j_s,
            self.planck_mass_kg,
            self.speed_of_light_m_s,
        )
        .map_err(|e| e.to_string())
    }
}

pub fn parse_s_list(raw: &str) -> Result<Vec<f64>, String> {
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse s value '{tok}'"))
        })
        .collect()
}
