//! Mirror-vibration-induced transitions between lattice bouncer levels:
//! translation-operator matrix elements by two independent routes, the
//! small-spacing momentum element, transition rates under an acceleration
//! power spectrum, level lifetimes, and the lifetime-based bound on the
//! lattice spacing.

use crate::continuum::PhysicalContext;
use crate::lattice::DimensionlessParams;
use crate::specfun::airy_zero;
use crate::spectrum::{self, PolymerState};
use crate::{Error, Result};

/// Matrix element of the antisymmetric translation U(+1) - U(-1) between
/// two lattice states, plus the transition frequency.
#[derive(Debug, Clone, Copy)]
pub struct TransitionResult {
    pub from: u32,
    pub to: u32,
    /// Dimensionless T_nm = sum_mu psi_mu^(n) (psi_(mu+1)^(m) - psi_(mu-1)^(m)).
    pub t_nm: f64,
    /// |P_nm| = (hbar / (2 lambda)) |T_nm| in kg m/s.
    pub p_magnitude: f64,
    /// Transition angular frequency (E_n - E_m)/hbar in rad/s, from the
    /// lattice energies.
    pub omega: f64,
}

/// Acceleration power spectrum S_a(omega) of the mirror, m^2 Hz^3.
#[derive(Debug, Clone)]
pub enum VibrationSpectrumModel {
    /// One average value applied to every transition frequency.
    ConstantAverage(f64),
    /// Piecewise-linear interpolation of (omega, S_a) samples; clamped at
    /// the ends.
    Tabulated(Vec<(f64, f64)>),
}

impl VibrationSpectrumModel {
    pub fn validated(self) -> Result<Self> {
        let ok = match &self {
            VibrationSpectrumModel::ConstantAverage(s) => *s >= 0.0 && s.is_finite(),
            VibrationSpectrumModel::Tabulated(pts) => {
                !pts.is_empty() && pts.iter().all(|(w, s)| w.is_finite() && *s >= 0.0)
            }
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Domain("acceleration power spectrum must be nonnegative".into()))
        }
    }

    pub fn s_a(&self, omega: f64) -> f64 {
        match self {
            VibrationSpectrumModel::ConstantAverage(s) => *s,
            VibrationSpectrumModel::Tabulated(pts) => {
                let w = omega.abs();
                if w <= pts[0].0 {
                    return pts[0].1;
                }
                for pair in pts.windows(2) {
                    let (w0, s0) = pair[0];
                    let (w1, s1) = pair[1];
                    if w <= w1 {
                        return s0 + (s1 - s0) * (w - w0) / (w1 - w0);
                    }
                }
                pts.last().unwrap().1
            }
        }
    }
}

/// Direct summation of T_nm; the oracle for the closed form below. The
/// two states must share a truncation.
pub fn matrix_t_direct(state_n: &PolymerState, state_m: &PolymerState) -> Result<f64> {
    if state_n.samples.len() != state_m.samples.len() {
        return Err(Error::Domain("matrix_t_direct requires a common truncation".into()));
    }
    let len = state_n.samples.len();
    let mut sum = 0.0;
    for mu in 0..len {
        let up = if mu + 1 < len { state_m.samples[mu + 1] } else { 0.0 };
        let down = if mu > 0 { state_m.samples[mu - 1] } else { 0.0 };
        sum += state_n.samples[mu] * (up - down);
    }
    Ok(sum)
}

/// Closed form: 2 (eps_n - eps_m) T_nm = 2 psi_1^(n) psi_1^(m)
///                                        - ups^-2 sum_mu mu psi^(n) psi^(m).
///
/// The boundary coefficient 2 is the lattice-exact value; the direct-sum
/// oracle reproduces it to 1e-12.
pub fn matrix_t_closed(state_n: &PolymerState, state_m: &PolymerState) -> Result<f64> {
    if state_n.samples.len() != state_m.samples.len() {
        return Err(Error::Domain("matrix_t_closed requires a common truncation".into()));
    }
    let de = state_n.energy - state_m.energy;
    if de.abs() < 1e-13 {
        return Err(Error::Numerical(
            "degenerate pair: |eps_n - eps_m| < 1e-13 in matrix_t_closed".into(),
        ));
    }
    let ups = state_n.params.upsilon();
    let mu_sum: f64 = state_n
        .samples
        .iter()
        .zip(&state_m.samples)
        .enumerate()
        .map(|(mu, (a, b))| mu as f64 * a * b)
        .sum();
    let boundary = 2.0 * state_n.samples[1] * state_m.samples[1];
    Ok((boundary - mu_sum / (ups * ups)) / (2.0 * de))
}

/// Both states of a pair at a common truncation, plus the assembled
/// transition record (closed-form T, physical momentum element, lattice
/// transition frequency).
pub fn transition_result(
    params: DimensionlessParams,
    n: u32,
    m: u32,
    ctx: &PhysicalContext,
) -> Result<TransitionResult> {
    let (state_n, state_m) = state_pair(params, n, m)?;
    let t_nm = matrix_t_closed(&state_n, &state_m)?;
    let lambda = ctx.l0() / params.s();
    // eps = m lambda^2 E / hbar^2, so E = eps hbar^2 / (m lambda^2).
    let omega = (state_n.energy - state_m.energy) * ctx.hbar / (ctx.mass * lambda * lambda);
    Ok(TransitionResult {
        from: n,
        to: m,
        t_nm,
        p_magnitude: ctx.hbar / (2.0 * lambda) * t_nm.abs(),
        omega,
    })
}

/// Two lattice states on a common truncation.
pub fn state_pair(
    params: DimensionlessParams,
    n: u32,
    m: u32,
) -> Result<(PolymerState, PolymerState)> {
    let len = crate::lattice::truncation_size(params, n.max(m))? + 1;
    Ok((
        spectrum::polymer_wavefunction_with_len(params, n, len)?,
        spectrum::polymer_wavefunction_with_len(params, m, len)?,
    ))
}

/// Small-spacing momentum element magnitude
/// |P_nm| = (m g / omega_nm) [1 + (-1)^(n-m) g / (2 l0 omega^2) (lambda/l0)^3]
/// with the continuum transition frequency. Returns (magnitude in kg m/s,
/// dimensionless correction factor inside the bracket).
pub fn matrix_p_quantum(
    n: u32,
    m: u32,
    params: DimensionlessParams,
    ctx: &PhysicalContext,
) -> Result<(f64, f64)> {
    let omega = omega_qm(n, m, ctx)?.abs();
    let parity = if (n as i64 - m as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let l0 = ctx.l0();
    let s3 = params.s().powi(3);
    let correction = parity * ctx.gravity / (2.0 * l0 * omega * omega) / s3;
    Ok((ctx.mass * ctx.gravity / omega * (1.0 + correction), correction))
}

/// Continuum transition angular frequency (E_n - E_m)/hbar.
pub fn omega_qm(n: u32, m: u32, ctx: &PhysicalContext) -> Result<f64> {
    let (a_n, a_m) = (airy_zero(n)?, airy_zero(m)?);
    Ok(ctx.mass * ctx.gravity * ctx.l0() * (a_m - a_n) / ctx.hbar)
}

/// Transition probability per unit time under the acceleration spectrum:
/// p = (m g / hbar)^2 omega^-4 [1 + (-1)^(n-m) g/(l0 omega^2) (lambda/l0)^3] S_a.
/// The bracket is clamped at zero (with a flag) where the correction
/// exceeds unit size, outside the small-spacing validity.
pub fn transition_rate(
    n: u32,
    m: u32,
    model: &VibrationSpectrumModel,
    params: DimensionlessParams,
    ctx: &PhysicalContext,
) -> Result<RateResult> {
    let omega = omega_qm(n, m, ctx)?;
    if omega == 0.0 {
        return Err(Error::Domain("transition_rate requires omega_nm != 0".into()));
    }
    let w = omega.abs();
    let parity = if (n as i64 - m as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let correction =
        parity * ctx.gravity / (ctx.l0() * w * w) / params.s().powi(3);
    let mut bracket = 1.0 + correction;
    let clamped = bracket < 0.0;
    if clamped {
        bracket = 0.0;
    }
    let mg_over_hbar = ctx.mass * ctx.gravity / ctx.hbar;
    let s_a = model.s_a(w);
    if s_a < 0.0 {
        return Err(Error::Domain("negative acceleration power spectrum".into()));
    }
    Ok(RateResult {
        rate: mg_over_hbar * mg_over_hbar / (w * w * w * w) * bracket * s_a,
        polymer_correction: correction,
        clamped,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct RateResult {
    /// Transitions per second.
    pub rate: f64,
    /// Dimensionless polymer correction inside the bracket.
    pub polymer_correction: f64,
    /// True when the bracket was clamped at zero (correction outside its
    /// validity range).
    pub clamped: bool,
}

/// Alternating lifetime-shift sum
/// Omega_n = (m g / hbar)^2 (g / l0) sum_(m != n) (-1)^(n-m) S_a(omega_nm) / omega_nm^6,
/// truncated at n_max, with the last-term magnitude as the truncation
/// estimate.
pub fn omega_n_factor(
    n: u32,
    model: &VibrationSpectrumModel,
    ctx: &PhysicalContext,
    n_max: u32,
) -> Result<OmegaFactor> {
    if n_max < n + 1 {
        return Err(Error::Domain("omega_n_factor requires n_max >= n + 1".into()));
    }
    let mg_over_hbar = ctx.mass * ctx.gravity / ctx.hbar;
    let prefactor = mg_over_hbar * mg_over_hbar * ctx.gravity / ctx.l0();
    let mut sum = 0.0;
    let mut last_term = 0.0;
    for m in 1..=n_max {
        if m == n {
            continue;
        }
        let w = omega_qm(n, m, ctx)?.abs();
        let parity = if (n as i64 - m as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let term = parity * model.s_a(w) / w.powi(6);
        sum += term;
        last_term = term;
    }
    Ok(OmegaFactor {
        value: prefactor * sum,
        truncation_estimate: (prefactor * last_term).abs(),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct OmegaFactor {
    /// Omega_n in 1/s (sign carries the net parity of the sum).
    pub value: f64,
    /// Magnitude of the last summed term, as a truncation error estimate.
    pub truncation_estimate: f64,
}

/// Lattice-corrected lifetime tau_n = t_n / (1 + t_n Omega_n ups^-3) and
/// the shift tau_n - t_n.
pub fn lifetime(
    t_n: f64,
    omega_n: f64,
    params: DimensionlessParams,
) -> Result<LifetimeResult> {
    if !(t_n > 0.0) {
        return Err(Error::Domain(format!("lifetime requires t_n > 0, got {t_n}")));
    }
    let ups3 = params.upsilon().powi(3);
    let tau = t_n / (1.0 + t_n * omega_n / ups3);
    Ok(LifetimeResult { tau, delta_t: tau - t_n })
}

#[derive(Debug, Clone, Copy)]
pub struct LifetimeResult {
    pub tau: f64,
    pub delta_t: f64,
}

/// Bound on the lattice spacing from lifetime precision:
/// lambda^3 < l0^3 Delta_t_exp / (t_n^2 |Omega_n|). A vanishing Omega_n
/// leaves the spacing unbounded, reported as an explicit error.
pub fn vibration_bound_lambda(
    delta_t_exp: f64,
    t_n: f64,
    omega_n: f64,
    ctx: &PhysicalContext,
) -> Result<f64> {
    if !(delta_t_exp > 0.0 && t_n > 0.0) {
        return Err(Error::Domain(
            "vibration_bound_lambda requires positive delta_t_exp and t_n".into(),
        ));
    }
    if omega_n == 0.0 {
        return Err(Error::Numerical(
            "Omega_n = 0: lifetime data places no bound on the lattice spacing".into(),
        ));
    }
    let l0 = ctx.l0();
    Ok((l0 * l0 * l0 * delta_t_exp / (t_n * t_n * omega_n.abs())).cbrt())
}
