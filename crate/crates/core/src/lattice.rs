//! Truncated tridiagonal lattice Hamiltonian and a Sturm-sequence
//! bisection eigensolver.
//!
//! Dividing the lattice Schroedinger equation by two and imposing the
//! mirror boundary psi_0 = 0 leaves a symmetric tridiagonal operator on
//! mu = 1..N with diagonal 1 + mu/(2 upsilon) and constant off-diagonal
//! -1/2. This solver touches no Bessel machinery at all, which is what
//! makes it an independent oracle for the quantization-condition route.

use crate::specfun::airy_zero;
use crate::{Error, Result};

/// Default cap on the truncated dimension.
pub const DIM_CAP_DEFAULT: usize = 50_000_000;

/// Lattice ratio s = l0 / lambda and upsilon = s^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    s: f64,
    upsilon: f64,
}

impl DimensionlessParams {
    /// s >= 1; the regime s < 1 is rejected.
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s < 1.0 {
            return Err(Error::Domain(format!(
                "lattice ratio must satisfy s >= 1, got {s}"
            )));
        }
        Ok(DimensionlessParams { s, upsilon: s * s * s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn upsilon(&self) -> f64 {
        self.upsilon
    }
}

/// Symmetric tridiagonal operator with diagonal d_mu = 1 + mu/(2 upsilon),
/// mu = 1..=N, and constant off-diagonal -1/2.
#[derive(Debug, Clone)]
pub struct TridiagonalOperator {
    diagonal: Vec<f64>,
    off_diagonal: f64,
}

impl TridiagonalOperator {
    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> f64 {
        self.off_diagonal
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.diagonal.len();
        (self.diagonal[0] - 1.0, self.diagonal[n - 1] + 1.0)
    }
}

/// Truncation dimension: classical turning point of the highest requested
/// level (estimated from the continuum energy plus the magnitude of the
/// perturbative shift) plus an Airy-width buffer.
pub fn truncation_size(params: DimensionlessParams, n_levels: u32) -> Result<usize> {
    if n_levels < 1 {
        return Err(Error::Domain("truncation_size requires n_levels >= 1".into()));
    }
    let a_n = airy_zero(n_levels)?;
    let s2 = params.s() * params.s();
    let eps_est = -a_n / (2.0 * s2) + a_n * a_n / (120.0 * s2 * s2);
    let two_upsilon = 2.0 * params.upsilon();
    Ok((two_upsilon * eps_est).ceil() as usize
        + (10.0 * two_upsilon.cbrt()).ceil() as usize
        + 50)
}

/// Build the truncated Hamiltonian able to hold the lowest `n_levels`
/// states including their classically forbidden tails.
pub fn build_hamiltonian(
    params: DimensionlessParams,
    n_levels: u32,
) -> Result<TridiagonalOperator> {
    build_hamiltonian_capped(params, n_levels, DIM_CAP_DEFAULT)
}

pub fn build_hamiltonian_capped(
    params: DimensionlessParams,
    n_levels: u32,
    dim_cap: usize,
) -> Result<TridiagonalOperator> {
    let n = truncation_size(params, n_levels)?;
    if n > dim_cap {
        return Err(Error::UnsupportedScale(format!(
            "lattice truncation {n} exceeds cap {dim_cap}"
        )));
    }
    Ok(hamiltonian_with_dimension(params, n))
}

/// Hamiltonian at an explicitly chosen truncation (used by the truncation
/// insensitivity checks).
pub fn hamiltonian_with_dimension(
    params: DimensionlessParams,
    n: usize,
) -> TridiagonalOperator {
    let two_upsilon = 2.0 * params.upsilon();
    let diagonal = (1..=n).map(|mu| 1.0 + mu as f64 / two_upsilon).collect();
    TridiagonalOperator { diagonal, off_diagonal: -0.5 }
}

/// Number of eigenvalues strictly below `shift` (Sturm sequence via the
/// LDL^T pivot signs).
pub fn sturm_count(h: &TridiagonalOperator, shift: f64) -> usize {
    let guard = 1e-300;
    let b2 = h.off_diagonal * h.off_diagonal;
    let mut count = 0;
    let mut q = h.diagonal[0] - shift;
    if q < 0.0 {
        count += 1;
    }
    for mu in 1..h.diagonal.len() {
        let q_safe = if q.abs() < guard {
            if q >= 0.0 { guard } else { -guard }
        } else {
            q
        };
        q = (h.diagonal[mu] - shift) - b2 / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The k lowest eigenvalues, each bracketed to absolute width 1e-12.
/// Strict ordering holds: a tridiagonal matrix with nonzero off-diagonals
/// has simple eigenvalues only.
pub fn eigenvalues_sturm(h: &TridiagonalOperator, k: usize) -> Result<Vec<f64>> {
    let n = h.dimension();
    if k < 1 || k > n {
        return Err(Error::Domain(format!("eigenvalue count k = {k} outside 1..={n}")));
    }
    let (lo, hi) = h.gershgorin_bounds();
    let mut out: Vec<f64> = Vec::with_capacity(k);
    for idx in 0..k {
        let mut a = if idx == 0 { lo } else { out[idx - 1] };
        let mut b = hi;
        while b - a > 1e-12 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break; // f64 resolution reached
            }
            if sturm_count(h, mid) <= idx {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Eigenvector by two steps of shifted inverse iteration from a fixed
/// pseudorandom positive seed. Returns samples psi_mu for mu = 0..=N with
/// psi_0 = 0, normalized to unit Euclidean norm and sign-fixed psi_1 > 0.
pub fn eigenvector_inverse_iteration(
    h: &TridiagonalOperator,
    epsilon: f64,
) -> Result<Vec<f64>> {
    let n = h.dimension();
    let mut v = seed_vector(n);
    let mut shift = epsilon;
    for _ in 0..2 {
        v = match solve_shifted(h, shift, &v) {
            Some(sol) => sol,
            None => {
                // Exactly singular pivot: nudge the shift and retry.
                shift += 1e-13;
                solve_shifted(h, shift, &v).ok_or_else(|| {
                    Error::Numerical("inverse iteration hit a singular shift twice".into())
                })?
            }
        };
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    if v[0] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    let b = h.off_diagonal;
    let mut res2 = 0.0;
    for i in 0..n {
        let mut r = (h.diagonal[i] - epsilon) * v[i];
        if i > 0 {
            r += b * v[i - 1];
        }
        if i + 1 < n {
            r += b * v[i + 1];
        }
        res2 += r * r;
    }
    if res2.sqrt() > 1e-8 {
        return Err(Error::Numerical(format!(
            "inverse iteration residual {:.2e} exceeds 1e-8 (shift {epsilon} not an eigenvalue?)",
            res2.sqrt()
        )));
    }
    let mut psi = Vec::with_capacity(n + 1);
    psi.push(0.0);
    psi.extend_from_slice(&v);
    Ok(psi)
}

/// Deterministic positive seed (xorshift64*), fixed for reproducible builds.
fn seed_vector(n: usize) -> Vec<f64> {
    let mut state: u64 = 0x9E3779B97F4A7C15;
    (0..n)
        .map(|_| {
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            let r = state.wrapping_mul(0x2545F4914F6CDD1D);
            0.5 + (r >> 11) as f64 / (1u64 << 53) as f64 // in [0.5, 1.5)
        })
        .collect()
}

/// Solve (H - shift) x = rhs: tridiagonal LU with partial pivoting
/// (LAPACK dgttrf/dgtts2 pattern; one fill-in superdiagonal).
/// Returns None on an exactly zero pivot.
fn solve_shifted(h: &TridiagonalOperator, shift: f64, rhs: &[f64]) -> Option<Vec<f64>> {
    let n = h.dimension();
    let off = h.off_diagonal;
    let mut d: Vec<f64> = h.diagonal.iter().map(|x| x - shift).collect();
    let mut dl = vec![off; n.saturating_sub(1)];
    let mut du = vec![off; n.saturating_sub(1)];
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut swapped = vec![false; n.saturating_sub(1)];

    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                return None;
            }
            let fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            du[i] = temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            swapped[i] = true;
        }
    }
    if d[n - 1] == 0.0 {
        return None;
    }

    let mut x: Vec<f64> = rhs.to_vec();
    for i in 0..n - 1 {
        if swapped[i] {
            let temp = x[i];
            x[i] = x[i + 1];
            x[i + 1] = temp - dl[i] * x[i];
        } else {
            x[i + 1] -= dl[i] * x[i];
        }
    }
    x[n - 1] /= d[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_invariants() {
        let p = DimensionlessParams::new(3.0).unwrap();
        assert_eq!(p.upsilon(), 27.0);
        assert!(DimensionlessParams::new(0.5).is_err());
        assert!(DimensionlessParams::new(f64::NAN).is_err());
    }

    #[test]
    fn hamiltonian_structure() {
        let p = DimensionlessParams::new(10.0).unwrap();
        let h = build_hamiltonian(p, 1).unwrap();
        // diagonal starts at 1 + 1/2000
        assert!((h.diagonal()[0] - 1.0005).abs() < 1e-15);
        assert_eq!(h.off_diagonal(), -0.5);
        // strictly increasing diagonal
        for w in h.diagonal().windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn truncation_size_small_lattice() {
        // s = 1, one level: turning point ~2.4 plus the Airy buffer plus 50.
        let p = DimensionlessParams::new(1.0).unwrap();
        let n = truncation_size(p, 1).unwrap();
        assert!(n >= 65 && n <= 70, "unexpected truncation {n}");
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let p = DimensionlessParams::new(10.0).unwrap();
        assert!(matches!(
            build_hamiltonian_capped(p, 1, 100),
            Err(Error::UnsupportedScale(_))
        ));
    }

    #[test]
    fn sturm_count_at_gershgorin_bounds() {
        let p = DimensionlessParams::new(2.0).unwrap();
        let h = build_hamiltonian(p, 5).unwrap();
        let (lo, hi) = h.gershgorin_bounds();
        assert_eq!(sturm_count(&h, lo), 0);
        assert_eq!(sturm_count(&h, hi), h.dimension());
    }

    #[test]
    fn lowest_eigenvalues_match_reference_grid() {
        // Reference values for the lattice ground state; the s = 10 and
        // s = 2 entries reproduce the published 6-digit table.
        let cases = [(10.0, 0.011686), (2.0, 0.289409)];
        for &(s, expect) in &cases {
            let p = DimensionlessParams::new(s).unwrap();
            let h = build_hamiltonian(p, 1).unwrap();
            let ev = eigenvalues_sturm(&h, 1).unwrap();
            assert!(
                (ev[0] - expect).abs() < 5e-6,
                "s = {s}: eigenvalue {} vs reference {expect}",
                ev[0]
            );
        }
    }

    #[test]
    fn eigenvalues_sorted_and_negative_shifted() {
        // Lattice levels sit strictly below the continuum levels -a_n/(2 s^2).
        for &s in &[2.0, 5.0, 10.0] {
            let p = DimensionlessParams::new(s).unwrap();
            let h = build_hamiltonian(p, 10).unwrap();
            let evs = eigenvalues_sturm(&h, 10).unwrap();
            for n in 1..=10usize {
                let continuum = -airy_zero(n as u32).unwrap() / (2.0 * s * s);
                assert!(
                    evs[n - 1] < continuum,
                    "no negative shift at s = {s}, n = {n}"
                );
                if n > 1 {
                    assert!(evs[n - 1] > evs[n - 2]);
                }
            }
        }
    }

    #[test]
    fn doubling_truncation_is_insensitive() {
        let p = DimensionlessParams::new(4.0).unwrap();
        let n0 = truncation_size(p, 6).unwrap();
        let h1 = hamiltonian_with_dimension(p, n0);
        let h2 = hamiltonian_with_dimension(p, 2 * n0);
        let e1 = eigenvalues_sturm(&h1, 6).unwrap();
        let e2 = eigenvalues_sturm(&h2, 6).unwrap();
        for i in 0..6 {
            assert!(
                (e1[i] - e2[i]).abs() < 1e-10,
                "truncation sensitivity {:.2e} at level {}",
                (e1[i] - e2[i]).abs(),
                i + 1
            );
        }
    }

    #[test]
    fn continuum_trend_of_ground_state() {
        // eps_1(s) * 2 s^2 approaches -a_1 from below as s grows.
        let a1 = airy_zero(1).unwrap();
        let mut prev_gap = f64::INFINITY;
        for &s in &[2.0, 5.0, 10.0, 20.0] {
            let p = DimensionlessParams::new(s).unwrap();
            let h = build_hamiltonian(p, 1).unwrap();
            let e1 = eigenvalues_sturm(&h, 1).unwrap()[0];
            let gap = (e1 * 2.0 * s * s / (-a1) - 1.0).abs();
            assert!(gap < prev_gap, "no convergence at s = {s}");
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-4);
    }

    #[test]
    fn inverse_iteration_basics() {
        let p = DimensionlessParams::new(5.0).unwrap();
        let h = build_hamiltonian(p, 4).unwrap();
        let evs = eigenvalues_sturm(&h, 4).unwrap();
        let mut vecs = Vec::new();
        for &e in &evs {
            let psi = eigenvector_inverse_iteration(&h, e).unwrap();
            assert_eq!(psi.len(), h.dimension() + 1);
            assert_eq!(psi[0], 0.0);
            assert!(psi[1] > 0.0);
            let norm: f64 = psi.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            // forbidden tail is captured by the truncation
            assert!(psi.last().unwrap().abs() < 1e-10);
            vecs.push(psi);
        }
        // orthogonality across levels
        for i in 0..vecs.len() {
            for j in 0..i {
                let dot: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-8, "overlap {dot:.2e} between {i} and {j}");
            }
        }
    }

    #[test]
    fn eigenvalue_count_domain() {
        let p = DimensionlessParams::new(2.0).unwrap();
        let h = build_hamiltonian(p, 1).unwrap();
        assert!(eigenvalues_sturm(&h, 0).is_err());
        assert!(eigenvalues_sturm(&h, h.dimension() + 1).is_err());
    }
}
