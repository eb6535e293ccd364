//! The continuum bouncer (Airy eigenfunctions over a mirror in uniform
//! gravity), its matrix elements, and the checks that the lattice problem
//! reduces to it when the spacing is small.

use crate::lattice::DimensionlessParams;
use crate::quad;
use crate::specfun::{airy_pair, airy_zero};
use crate::spectrum;
use crate::{Error, Result};

/// 1 peV in joules.
pub const PEV: f64 = 1.602176634e-31;

/// Physical constants and the particle they describe. All SI.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalContext {
    /// Particle mass (kg).
    pub mass: f64,
    /// Gravitational acceleration (m/s^2).
    pub gravity: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Planck mass (kg).
    pub planck_mass: f64,
    /// Speed of light (m/s).
    pub speed_of_light: f64,
}

impl PhysicalContext {
    pub fn new(
        mass: f64,
        gravity: f64,
        hbar: f64,
        planck_mass: f64,
        speed_of_light: f64,
    ) -> Result<Self> {
        let ctx = PhysicalContext { mass, gravity, hbar, planck_mass, speed_of_light };
        for (name, v) in [
            ("mass", mass),
            ("gravity", gravity),
            ("hbar", hbar),
            ("planck_mass", planck_mass),
            ("speed_of_light", speed_of_light),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Domain(format!(
                    "physical context field {name} must be positive, got {v}"
                )));
            }
        }
        Ok(ctx)
    }

    /// Ultracold-neutron defaults: m = 1.674927e-27 kg, g = 9.806 m/s^2.
    pub fn neutron() -> Self {
        PhysicalContext {
            mass: 1.674927e-27,
            gravity: 9.806,
            hbar: 1.054571817e-34,
            planck_mass: 2.176434e-8,
            speed_of_light: 2.99792458e8,
        }
    }

    /// Characteristic gravitational length (hbar^2 / (2 m^2 g))^(1/3).
    pub fn l0(&self) -> f64 {
        (self.hbar * self.hbar / (2.0 * self.mass * self.mass * self.gravity)).cbrt()
    }

    /// Context with gravity scaled by `g_factor` (centrifugal scenarios).
    pub fn with_gravity_factor(&self, g_factor: f64) -> Result<Self> {
        if !g_factor.is_finite() || g_factor <= 0.0 {
            return Err(Error::Domain(format!("g_factor must be positive, got {g_factor}")));
        }
        PhysicalContext::new(
            self.mass,
            self.gravity * g_factor,
            self.hbar,
            self.planck_mass,
            self.speed_of_light,
        )
    }
}

/// An energy in joules with a peV view.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energy {
    pub joules: f64,
}

impl Energy {
    pub fn from_joules(joules: f64) -> Self {
        Energy { joules }
    }

    pub fn from_pev(pev: f64) -> Self {
        Energy { joules: pev * PEV }
    }

    pub fn pev(&self) -> f64 {
        self.joules / PEV
    }
}

/// Continuum bound state: psi_n(z) = N_n Ai(a_n + z / l0) for z >= 0 with
/// |N_n| = 1 / (sqrt(l0) |Ai'(a_n)|). The norm carries the sign of
/// Ai'(a_n), so every state leaves the mirror with positive slope; this is
/// the convention under which the closed-form matrix elements hold with
/// their (-1)^(n-k) factors, and it matches the lattice states' psi_1 > 0.
#[derive(Debug, Clone, Copy)]
pub struct ContinuumState {
    pub level: u32,
    pub airy_zero: f64,
    pub norm: f64,
    l0: f64,
}

impl ContinuumState {
    pub fn new(level: u32, ctx: &PhysicalContext) -> Result<Self> {
        let a_n = airy_zero(level)?;
        let (_, aip) = airy_pair(a_n)?;
        let l0 = ctx.l0();
        Ok(ContinuumState { level, airy_zero: a_n, norm: 1.0 / (l0.sqrt() * aip), l0 })
    }

    /// psi_n(z); zero for z < 0 (hard mirror).
    pub fn wavefunction(&self, z: f64) -> Result<f64> {
        if z < 0.0 {
            return Ok(0.0);
        }
        Ok(self.norm * crate::specfun::airy_ai(self.airy_zero + z / self.l0)?)
    }
}

/// Level energy E_n = -m g l0 a_n > 0.
pub fn qb_energy(n: u32, ctx: &PhysicalContext) -> Result<Energy> {
    let a_n = airy_zero(n)?;
    Ok(Energy::from_joules(-ctx.mass * ctx.gravity * ctx.l0() * a_n))
}

/// psi_n(z) without building the state explicitly.
pub fn qb_wavefunction(n: u32, ctx: &PhysicalContext, z: f64) -> Result<f64> {
    ContinuumState::new(n, ctx)?.wavefunction(z)
}

/// <k| z |n> in meters. Off-diagonal elements use the closed form
/// -2 l0 / (a_k - a_n)^2; the diagonal is integrated numerically.
///
/// In the positive-slope convention every off-diagonal element of z (and
/// of z^2) is negative; for adjacent pairs this equals the familiar
/// 2 (-1)^(n-k) l0 / (a_k - a_n)^2. The sign pattern here is the one the
/// quadrature oracle confirms for all pairs.
pub fn qb_matrix_z(k: u32, n: u32, ctx: &PhysicalContext) -> Result<f64> {
    if k == n {
        return Ok(matrix_quadrature(k, n, 1)? * ctx.l0());
    }
    let (a_k, a_n) = (airy_zero(k)?, airy_zero(n)?);
    let d = a_k - a_n;
    Ok(-2.0 * ctx.l0() / (d * d))
}

/// <k| z^2 |n> in meters^2. Off-diagonal closed form -24 l0^2 / (a_k - a_n)^4
/// (see [`qb_matrix_z`] for the sign convention); diagonal by quadrature.
pub fn qb_matrix_z2(k: u32, n: u32, ctx: &PhysicalContext) -> Result<f64> {
    let l0 = ctx.l0();
    if k == n {
        return Ok(matrix_quadrature(k, n, 2)? * l0 * l0);
    }
    let (a_k, a_n) = (airy_zero(k)?, airy_zero(n)?);
    let d = a_k - a_n;
    Ok(-24.0 * l0 * l0 / (d * d * d * d))
}

/// Dimensionless <k| (z/l0)^p |n> by adaptive quadrature of the Airy
/// product over [0, |a_max| + 15]; the truncated tail is below the Airy
/// decay at that cut.
pub fn matrix_quadrature(k: u32, n: u32, power: i32) -> Result<f64> {
    let (a_k, a_n) = (airy_zero(k)?, airy_zero(n)?);
    let (_, aip_k) = airy_pair(a_k)?;
    let (_, aip_n) = airy_pair(a_n)?;
    let y_cut = a_k.abs().max(a_n.abs()) + 15.0;
    let f = |y: f64| {
        let ak = crate::specfun::airy_ai(a_k + y).unwrap_or(0.0);
        let an = crate::specfun::airy_ai(a_n + y).unwrap_or(0.0);
        ak * an * y.powi(power)
    };
    let integral = quad::integrate(f, 0.0, y_cut, 1e-10);
    // Signed norms: same positive-slope convention as ContinuumState.
    Ok(integral / (aip_k * aip_n))
}

/// Transition-region approximation J_n(x) ~ (2/x)^(1/3) Ai((2/x)^(1/3)(n-x)),
/// valid for orders within O(x^(1/3)) of the (large) argument.
pub fn transition_region_bessel(n_order: f64, x: f64) -> f64 {
    let scale = (2.0 / x).cbrt();
    scale * crate::specfun::airy_ai(scale * (n_order - x)).unwrap_or(0.0)
}

/// Sup-norm gap between the rescaled lattice wavefunction psi_mu / sqrt(lambda)
/// and the continuum wavefunction at the lattice points, relative to the
/// continuum peak amplitude.
pub fn continuum_limit_residual(
    params: DimensionlessParams,
    n: u32,
    ctx: &PhysicalContext,
) -> Result<f64> {
    // The Sturm route works at any lattice ratio, including ratios whose
    // Bessel argument exceeds the special-function range; both routes agree
    // pointwise to well below the residuals measured here.
    let state = spectrum::lattice_state(params, n)?;
    let cstate = ContinuumState::new(n, ctx)?;
    let lambda = ctx.l0() / params.s();
    let mut sup = 0.0f64;
    let mut peak = 0.0f64;
    for (mu, &psi) in state.samples.iter().enumerate() {
        let z = lambda * mu as f64;
        let cont = cstate.wavefunction(z)?;
        sup = sup.max((psi / lambda.sqrt() - cont).abs());
        peak = peak.max(cont.abs());
    }
    Ok(sup / peak)
}
