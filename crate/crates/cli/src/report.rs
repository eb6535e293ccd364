//! Serializable report structures and their CSV / JSON / table renderings.
//! CSV is comma-separated with a header row, '.' decimals and LF line
//! endings; numbers print in Rust's shortest round-trip form, so repeated
//! runs are byte-identical.

use serde::Serialize;

use crate::config::Format;

/// One method-tagged value of a spectrum cell.
#[derive(Debug, Serialize)]
pub struct MethodValue {
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub s: f64,
    pub n: u32,
    pub values: Vec<MethodValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route_agreement: Option<f64>,
    pub flags: Vec<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub rows: Vec<SpectrumRow>,
}

#[derive(Debug, Serialize)]
pub struct ProfileRow {
    pub z_m: f64,
    pub density_lattice_per_m: f64,
    pub density_continuum_per_m: f64,
}

#[derive(Debug, Serialize)]
pub struct ProfileReport {
    pub s: f64,
    pub n: u32,
    pub lambda_m: f64,
    pub rows: Vec<ProfileRow>,
}

#[derive(Debug, Serialize)]
pub struct HeightRow {
    pub level: u32,
    pub theory_m: f64,
    pub measured_m: f64,
    pub bar_published_m: f64,
    pub inside_published: bool,
    pub bar_quadrature_m: f64,
    pub inside_quadrature: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundRow {
    pub level: u32,
    pub delta_e_exp_pev: f64,
    pub g_factor: f64,
    pub effective_l0_m: f64,
    pub lambda_max_m: f64,
}

#[derive(Debug, Serialize)]
pub struct BoundReport {
    pub heights: Vec<HeightRow>,
    pub bounds: Vec<BoundRow>,
}

#[derive(Debug, Serialize)]
pub struct LifetimeReport {
    pub t_n_s: f64,
    pub s_a_m2_hz3: f64,
    pub omega_1_hz: f64,
    pub omega_truncation_estimate_hz: f64,
    pub sum_levels: u32,
    pub delta_t_exp_s: f64,
    pub lambda_max_m: f64,
}

#[derive(Debug, Serialize)]
pub struct RateRatioRow {
    pub s: f64,
    pub ratio: f64,
}

#[derive(Debug, Serialize)]
pub struct RateReport {
    pub from: u32,
    pub to: u32,
    pub rate_qm_per_s: f64,
    pub truncation_l: u32,
    pub ratios: Vec<RateRatioRow>,
    pub fitted_coefficient: f64,
}

pub trait Render {
    fn to_csv(&self) -> String;
    fn to_table(&self) -> String;
    fn to_json(&self) -> String
    where
        Self: Serialize,
    {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    fn render(&self, format: Format) -> String
    where
        Self: Serialize,
    {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Table => self.to_table(),
        }
    }
}

impl Render for SpectrumReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("s,n,method,value,status,flags\n");
        for row in &self.rows {
            for mv in &row.values {
                let (value, status) = match (&mv.value, &mv.error) {
                    (Some(v), _) => (fmt_f64(*v), "ok".to_string()),
                    (None, Some(e)) => (String::new(), format!("error: {e}")),
                    (None, None) => (String::new(), "missing".to_string()),
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt_f64(row.s),
                    row.n,
                    mv.method,
                    value,
                    csv_quote(&status),
                    row.flags.join("|")
                ));
            }
        }
        out
    }

    fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>6} {:>3} {:>14} {:>14} {:>14} {:>11} flags\n",
            "s", "n", "lattice", "bessel", "perturbative", "|gap|"
        ));
        for row in &self.rows {
            let get = |tag: &str| {
                row.values
                    .iter()
                    .find(|mv| mv.method == tag)
                    .and_then(|mv| mv.value)
                    .map(|v| format!("{v:.10}"))
                    .unwrap_or_else(|| "-".into())
            };
            out.push_str(&format!(
                "{:>6} {:>3} {:>14} {:>14} {:>14} {:>11} {}\n",
                row.s,
                row.n,
                get("lattice"),
                get("bessel"),
                get("perturbative"),
                row.route_agreement
                    .map(|g| format!("{g:.1e}"))
                    .unwrap_or_else(|| "-".into()),
                row.flags.join("|")
            ));
        }
        out
    }
}

impl Render for ProfileReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("z_m,density_lattice_per_m,density_continuum_per_m\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_f64(row.z_m),
                fmt_f64(row.density_lattice_per_m),
                fmt_f64(row.density_continuum_per_m)
            ));
        }
        out
    }

    fn to_table(&self) -> String {
        let mut out = format!(
            "density profile: s = {}, level = {}, lambda = {:.4e} m\n{:>13} {:>16} {:>16}\n",
            self.s, self.n, self.lambda_m, "z (m)", "lattice (1/m)", "continuum (1/m)"
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{:>13.6e} {:>16.8e} {:>16.8e}\n",
                row.z_m, row.density_lattice_per_m, row.density_continuum_per_m
            ));
        }
        out
    }
}

impl Render for BoundReport {
    fn to_csv(&self) -> String {
        let mut out = String::from(
            "kind,level,delta_e_exp_pev,g_factor,effective_l0_m,lambda_max_m,theory_m,measured_m,bar_published_m,inside_published\n",
        );
        for h in &self.heights {
            out.push_str(&format!(
                "height,{},,,,,{},{},{},{}\n",
                h.level,
                fmt_f64(h.theory_m),
                fmt_f64(h.measured_m),
                fmt_f64(h.bar_published_m),
                h.inside_published
            ));
        }
        for b in &self.bounds {
            out.push_str(&format!(
                "bound,{},{},{},{},{},,,,\n",
                b.level,
                fmt_f64(b.delta_e_exp_pev),
                fmt_f64(b.g_factor),
                fmt_f64(b.effective_l0_m),
                fmt_f64(b.lambda_max_m)
            ));
        }
        out
    }

    fn to_table(&self) -> String {
        let mut out = String::from("critical heights (theory vs measured):\n");
        for h in &self.heights {
            out.push_str(&format!(
                "  level {}: {:.2} um vs {:.1} +- {:.1} um ({})\n",
                h.level,
                h.theory_m * 1e6,
                h.measured_m * 1e6,
                h.bar_published_m * 1e6,
                if h.inside_published { "inside" } else { "outside" }
            ));
        }
        out.push_str("spacing bounds lambda < lambda_max:\n");
        for b in &self.bounds {
            out.push_str(&format!(
                "  level {}, dE_exp = {} peV, g x {:.0e}: lambda_max = {:.3e} m\n",
                b.level, b.delta_e_exp_pev, b.g_factor, b.lambda_max_m
            ));
        }
        out
    }
}

impl Render for LifetimeReport {
    fn to_csv(&self) -> String {
        format!(
            "t_n_s,s_a_m2_hz3,omega_1_hz,omega_truncation_estimate_hz,sum_levels,delta_t_exp_s,lambda_max_m\n{},{},{},{},{},{},{}\n",
            fmt_f64(self.t_n_s),
            fmt_f64(self.s_a_m2_hz3),
            fmt_f64(self.omega_1_hz),
            fmt_f64(self.omega_truncation_estimate_hz),
            self.sum_levels,
            fmt_f64(self.delta_t_exp_s),
            fmt_f64(self.lambda_max_m)
        )
    }

    fn to_table(&self) -> String {
        format!(
            "lifetime bound (level 1):\n  vibration spectrum S_a = {:e} m^2 Hz^3\n  Omega_1 = {:.4e} Hz (truncation estimate {:.1e}, {} levels)\n  t_1 = {} s, dt_exp = {} s\n  lambda_max = {:.4e} m\n",
            self.s_a_m2_hz3,
            self.omega_1_hz,
            self.omega_truncation_estimate_hz,
            self.sum_levels,
            self.t_n_s,
            self.delta_t_exp_s,
            self.lambda_max_m
        )
    }
}

impl Render for RateReport {
    fn to_csv(&self) -> String {
        let mut out = String::from("record,s,value\n");
        out.push_str(&format!("rate_qm_per_s,,{}\n", fmt_f64(self.rate_qm_per_s)));
        for r in &self.ratios {
            out.push_str(&format!("ratio,{},{}\n", fmt_f64(r.s), fmt_f64(r.ratio)));
        }
        out.push_str(&format!(
            "fitted_coefficient,,{}\n",
            fmt_f64(self.fitted_coefficient)
        ));
        out
    }

    fn to_table(&self) -> String {
        let mut out = format!(
            "quadrupole rate {} -> {}: {:.4e} per s (continuum)\nlattice ratios (mixing sum truncated at {}):\n",
            self.from, self.to, self.rate_qm_per_s, self.truncation_l
        );
        for r in &self.ratios {
            out.push_str(&format!("  s = {:>5}: ratio = {:.10}\n", r.s, r.ratio));
        }
        out.push_str(&format!(
            "fitted 1/s^2 coefficient: {:.4}\n",
            self.fitted_coefficient
        ));
        out
    }
}

/// Shortest round-trip rendering; scientific notation outside a readable
/// magnitude window. Deterministic, so outputs stay byte-stable.
fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e-4 && v.abs() < 1e7 {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
