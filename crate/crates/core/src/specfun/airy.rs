//! Airy function of the first kind, its derivative, and its negative zeros.
//!
//! Evaluation strategy by region (seams validated in tests to cross-agree):
//!
//! * |x| small: Maclaurin series in the standard f/g basis (A&S 10.4.2-3).
//! * x >= 12: exponential asymptotic expansion in zeta = (2/3) x^(3/2).
//! * 4 < x < 12: Taylor-series ODE march of y'' = x y inward from x = 12,
//!   the direction in which Ai is the growing solution, so the decaying
//!   companion cannot contaminate the result.
//! * x <= -7.6: oscillatory asymptotic expansion (DLMF 9.7.9-10).

use crate::{Error, Result};

/// Ai(0) = 3^(-2/3) / Gamma(2/3)
const AI_ZERO: f64 = 0.3550280538878172392600631860041831763980;
/// -Ai'(0) = 3^(-1/3) / Gamma(1/3)
const AIP_ZERO: f64 = 0.2588194037928067984051835601892039634793;

const SQRT_PI: f64 = 1.7724538509055160272981674833411451827975;

/// Region seams. Below SEAM_NEG and above SEAM_POS_FAR the asymptotic
/// expansions are at least as accurate as the alternatives.
const SEAM_NEG: f64 = -7.6;
const SEAM_POS_SERIES: f64 = 4.0;
const SEAM_POS_FAR: f64 = 12.0;

/// Ai(x).
pub fn airy_ai(x: f64) -> Result<f64> {
    Ok(airy_pair(x)?.0)
}

/// Ai'(x).
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    Ok(airy_pair(x)?.1)
}

/// (Ai(x), Ai'(x)) evaluated together.
pub fn airy_pair(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("airy_ai requires finite x, got {x}")));
    }
    if x < SEAM_NEG {
        Ok(asym_neg(-x))
    } else if x <= SEAM_POS_SERIES {
        Ok(maclaurin(x))
    } else if x < SEAM_POS_FAR {
        Ok(march_down_from(SEAM_POS_FAR, x))
    } else {
        Ok(asym_pos(x))
    }
}

/// n-th negative zero a_n of Ai, by bisection; |Ai(a_n)| <= 1e-12.
pub fn airy_zero(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("airy_zero requires n >= 1".into()));
    }
    let approx = airy_zero_approx(n)?;
    // Half-width: 5% of |a_n|, capped well below the local zero spacing
    // (~ pi / sqrt(|a_n|)) so the bracket contains exactly one zero.
    let spacing = std::f64::consts::PI / approx.abs().sqrt();
    let mut half = (0.05 * approx.abs()).min(0.35 * spacing);
    let mut lo = approx - half;
    let mut hi = approx + half;
    let mut flo = airy_ai(lo)?;
    let mut fhi = airy_ai(hi)?;
    let mut widen = 0;
    while flo * fhi > 0.0 {
        widen += 1;
        if widen > 8 {
            return Err(Error::Numerical(format!(
                "airy_zero bracket failure at n = {n} (approx {approx})"
            )));
        }
        half *= 1.5;
        lo = approx - half;
        hi = approx + half;
        flo = airy_ai(lo)?;
        fhi = airy_ai(hi)?;
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        let fm = airy_ai(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Semiclassical approximation to the n-th zero: -(3 pi (n - 1/4) / 2)^(2/3).
pub fn airy_zero_approx(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("airy_zero_approx requires n >= 1".into()));
    }
    let t = 1.5 * std::f64::consts::PI * (n as f64 - 0.25);
    Ok(-t.powf(2.0 / 3.0))
}

/// Maclaurin series for Ai and Ai' (A&S 10.4.2-3). Accurate for |x| <= ~8
/// on the negative side but only to ~4 on the positive side, where the
/// exponentially large f and g pieces cancel.
fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f, g and their derivatives, term streams with rational ratios.
    let mut f = 1.0;
    let mut tf = 1.0;
    let mut g = x;
    let mut tg = x;
    let mut fp = 0.0;
    let mut tfp = 0.5 * x * x;
    fp += tfp;
    let mut gp = 1.0;
    let mut tgp = 1.0;
    for k in 0..60 {
        let kf = k as f64;
        tf *= x3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        f += tf;
        tg *= x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        g += tg;
        // f' stream starts at k = 1, g' stream at k = 1 relative to b_0 = 1.
        if k >= 1 {
            tfp *= x3 / ((3.0 * kf) * (3.0 * kf + 2.0));
            fp += tfp;
        }
        tgp *= x3 / ((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        gp += tgp;
        if tf.abs() < 1e-18 * f.abs() && tg.abs() < 1e-18 * g.abs().max(1e-30) {
            break;
        }
    }
    (AI_ZERO * f - AIP_ZERO * g, AI_ZERO * fp - AIP_ZERO * gp)
}

/// Asymptotic coefficients u_k (and v_k = u_k (6k+1)/(1-6k)) of DLMF 9.7.
fn asym_coeff(k: usize, u_prev: f64) -> f64 {
    let kf = k as f64;
    u_prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
        / (216.0 * kf * (2.0 * kf - 1.0))
}

/// Exponential expansion for x >= SEAM_POS_FAR.
fn asym_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let mut su = 1.0;
    let mut sv = 1.0;
    let mut u = 1.0;
    let mut term_prev = 1.0;
    let mut sign = 1.0;
    for k in 1..40 {
        u = asym_coeff(k, u);
        let v = u * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64);
        sign = -sign;
        let tu = sign * u / zeta.powi(k as i32);
        if tu.abs() > term_prev {
            break; // divergent tail reached
        }
        su += tu;
        sv += sign * v / zeta.powi(k as i32);
        term_prev = tu.abs();
        if term_prev < 1e-18 {
            break;
        }
    }
    let e = (-zeta).exp();
    let ai = e * su / (2.0 * SQRT_PI * x.powf(0.25));
    let aip = -x.powf(0.25) * e * sv / (2.0 * SQRT_PI);
    (ai, aip)
}

/// Oscillatory expansion for x <= SEAM_NEG, argument z = -x > 0.
fn asym_neg(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let phi = zeta - std::f64::consts::FRAC_PI_4;
    // Even/odd splits of the u and v tails with alternating signs:
    //   sum_{k} (-1)^k u_2k / zeta^(2k),  sum_k (-1)^k u_(2k+1) / zeta^(2k+1)
    let mut u_even = 1.0;
    let mut u_odd = 0.0;
    let mut v_even = 1.0;
    let mut v_odd = 0.0;
    let mut u = 1.0;
    let mut term_prev = f64::INFINITY;
    for k in 1..60 {
        u = asym_coeff(k, u);
        let v = u * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64);
        let t = u / zeta.powi(k as i32);
        if t.abs() > term_prev {
            break;
        }
        term_prev = t.abs();
        // (-1)^k split: k = 2j contributes (-1)^j to the even series,
        // k = 2j+1 contributes (-1)^j to the odd series.
        let j = k / 2;
        let s = if j % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            u_even += s * t;
            v_even += s * v / zeta.powi(k as i32);
        } else {
            u_odd += s * t;
            v_odd += s * v / zeta.powi(k as i32);
        }
        if t.abs() < 1e-18 {
            break;
        }
    }
    let ai = (phi.cos() * u_even + phi.sin() * u_odd) / (SQRT_PI * z.powf(0.25));
    let aip = z.powf(0.25) / SQRT_PI * (phi.sin() * v_even - phi.cos() * v_odd);
    (ai, aip)
}

/// Taylor-series march of y'' = t y from x0 down to x (x0 > x), seeded by
/// the asymptotic values at x0. Step local error is far below f64 rounding.
fn march_down_from(x0: f64, x: f64) -> (f64, f64) {
    const TERMS: usize = 26;
    let (mut y, mut yp) = asym_pos(x0);
    let n_steps = ((x0 - x) / 0.5).ceil() as usize;
    let h = (x - x0) / n_steps as f64;
    let mut t = x0;
    for _ in 0..n_steps {
        let mut c = [0.0; TERMS];
        c[0] = y;
        c[1] = yp;
        c[2] = t * c[0] / 2.0;
        for k in 1..TERMS - 2 {
            c[k + 2] = (t * c[k] + c[k - 1]) / (((k + 1) * (k + 2)) as f64);
        }
        let mut ynew = 0.0;
        let mut ypnew = 0.0;
        // Horner, highest power first.
        for k in (0..TERMS).rev() {
            ynew = ynew * h + c[k];
            if k >= 1 {
                ypnew = ypnew * h + k as f64 * c[k];
            }
        }
        y = ynew;
        yp = ypnew;
        t += h;
    }
    (y, yp)
}
