//! Theta functions with characteristics by truncated lattice summation.
//!
//! `theta_m(z, tau) = sum_n exp(pi i [v^T tau v + 2 v^T (z + delta/2)])`, `v = n + eps/2`.
//!
//! The sum runs over the box `|v_i| <= R + eps_i/2`, which is symmetric in `v`,
//! so odd constants cancel term by term. Every omitted `n` has `||n||_inf >= R + 1`.
//! The reported bound is the conservative shell sum
//!
//! ```text
//! T(R) = sum_{s >= R} N_s exp(-pi lambda r_s^2 + 2 pi r_s w),   r_s = max(s - 1/2, w / lambda)
//! ```
//!
//! with `N_s = (2s+1)^g - (2s-1)^g` points on the shell `||n||_inf = s`,
//! `lambda = lambda_min(Im tau)` and `w = |Im z|_2`. It is monotone in `R`.

use nalgebra::DVector;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::characteristic::{all_characteristics, Characteristic, ParityFilter};
use crate::error::{Error, Result};
use crate::siegel::SiegelPoint;

/// Hard cap on the truncation radius.
pub const RADIUS_CAP: usize = 64;
/// Cap on `|Im z|_2`.
pub const IM_Z_CAP: f64 = 10.0;

// Jacobi eigenvalues are accurate to ~1e-15 relative; shave a little off.
const LAMBDA_SAFETY: f64 = 1.0 - 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub value: Complex64,
    /// Guaranteed bound on the truncation error.
    pub tail_bound: f64,
    pub radius: usize,
}

fn shell_count(genus: usize, s: usize) -> f64 {
    if s == 0 {
        1.0
    } else {
        let g = genus as i32;
        (2.0 * s as f64 + 1.0).powi(g) - (2.0 * s as f64 - 1.0).powi(g)
    }
}

fn shell_term(genus: usize, lambda: f64, w: f64, s: usize) -> f64 {
    let rho = (s as f64 - 0.5).max(0.0);
    let r = rho.max(w / lambda);
    shell_count(genus, s) * (-PI * lambda * r * r + 2.0 * PI * r * w).exp()
}

/// The shell-sum tail bound `T(R)` for a box of radius `radius`.
pub fn tail_bound(genus: usize, lambda_min: f64, im_z_norm: f64, radius: usize) -> f64 {
    let lambda = lambda_min * LAMBDA_SAFETY;
    let w = im_z_norm;
    let mut sum = 0.0;
    let mut s = radius.max(1);
    loop {
        let t = shell_term(genus, lambda, w, s);
        sum += t;
        if t == 0.0 {
            break;
        }
        let rho = s as f64 - 0.5;
        if rho >= w / lambda {
            // past the peak the ratio of consecutive shells is non-increasing,
            // so the rest is bounded by a geometric series
            let q = shell_term(genus, lambda, w, s + 1) / t;
            if q < 0.5 {
                let rest = t * q / (1.0 - q);
                if rest <= 1e-6 * sum || rest == 0.0 {
                    sum += rest;
                    break;
                }
            }
        }
        s += 1;
        if s > radius + 100_000 {
            return f64::INFINITY;
        }
    }
    sum
}

fn check_target(target: f64) -> Result<()> {
    if !(target > 0.0 && target.is_finite()) {
        return Err(Error::InvalidTarget(target));
    }
    Ok(())
}

fn radius_for(genus: usize, lambda_min: f64, w: f64, target: f64) -> Result<usize> {
    check_target(target)?;
    (1..=RADIUS_CAP)
        .find(|&r| tail_bound(genus, lambda_min, w, r) < target)
        .ok_or(Error::RadiusCapExceeded { cap: RADIUS_CAP })
}

/// Smallest radius whose tail bound (at `z = 0`) is below `target`.
pub fn truncation_radius(tau: &SiegelPoint, target: f64) -> Result<usize> {
    radius_for(tau.genus(), tau.lambda_min(), 0.0, target)
}

/// Odometer over the box for a given `eps`; yields `n`.
struct BoxIter {
    lower: Vec<i64>,
    upper: Vec<i64>,
    current: Vec<i64>,
    done: bool,
}

impl BoxIter {
    fn new(genus: usize, eps: u16, radius: usize) -> Self {
        let r = radius as i64;
        let lower: Vec<i64> = (0..genus)
            .map(|i| if (eps >> (genus - 1 - i)) & 1 == 1 { -r - 1 } else { -r })
            .collect();
        BoxIter {
            upper: vec![r; genus],
            current: lower.clone(),
            lower,
            done: false,
        }
    }

    fn peek(&self) -> Option<&[i64]> {
        if self.done {
            return None;
        }
        Some(&self.current)
    }

    fn advance(&mut self) {
        for i in (0..self.current.len()).rev() {
            if self.current[i] < self.upper[i] {
                self.current[i] += 1;
                return;
            }
            self.current[i] = self.lower[i];
        }
        self.done = true;
    }
}

fn half_shift(genus: usize, eps: u16) -> Vec<f64> {
    (0..genus)
        .map(|i| 0.5 * ((eps >> (genus - 1 - i)) & 1) as f64)
        .collect()
}

/// `v^T tau v` for real `v`.
fn quadratic(tau: &SiegelPoint, v: &[f64]) -> Complex64 {
    let t = tau.tau();
    let g = v.len();
    let mut q = Complex64::new(0.0, 0.0);
    for i in 0..g {
        let mut row = t[(i, i)] * (0.5 * v[i]);
        for j in i + 1..g {
            row += t[(i, j)] * v[j];
        }
        q += row * (2.0 * v[i]);
    }
    q
}

/// Sum over the radius-`radius` box, without choosing the radius.
pub fn theta_sum_at_radius(
    m: &Characteristic,
    z: &DVector<Complex64>,
    tau: &SiegelPoint,
    radius: usize,
) -> Result<Complex64> {
    let g = tau.genus();
    if m.genus() != g {
        return Err(Error::GenusMismatch { left: g, right: m.genus() });
    }
    if z.len() != g {
        return Err(Error::GenusMismatch { left: g, right: z.len() });
    }
    let a = half_shift(g, m.eps());
    let b = half_shift(g, m.delta());
    let zb: Vec<Complex64> = (0..g).map(|i| z[i] + b[i]).collect();
    let pi_i = Complex64::new(0.0, PI);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut v = vec![0.0; g];
    let mut it = BoxIter::new(g, m.eps(), radius);
    while let Some(n) = it.peek() {
        for i in 0..g {
            v[i] = n[i] as f64 + a[i];
        }
        let mut lin = Complex64::new(0.0, 0.0);
        for i in 0..g {
            lin += zb[i] * v[i];
        }
        let e = pi_i * (quadratic(tau, &v) + lin * 2.0);
        if e.re > -745.0 {
            sum += e.exp();
        }
        it.advance();
    }
    Ok(sum)
}

/// `theta_m(z, tau)` with a certified truncation bound below `target`.
pub fn theta_function(
    m: &Characteristic,
    z: &DVector<Complex64>,
    tau: &SiegelPoint,
    target: f64,
) -> Result<ThetaValue> {
    let g = tau.genus();
    if m.genus() != g {
        return Err(Error::GenusMismatch { left: g, right: m.genus() });
    }
    let w = z.iter().map(|c| c.im * c.im).sum::<f64>().sqrt();
    if w > IM_Z_CAP {
        return Err(Error::ImaginaryShiftTooLarge { norm: w, cap: IM_Z_CAP });
    }
    let radius = radius_for(g, tau.lambda_min(), w, target)?;
    let value = theta_sum_at_radius(m, z, tau, radius)?;
    Ok(ThetaValue {
        value,
        tail_bound: tail_bound(g, tau.lambda_min(), w, radius),
        radius,
    })
}

/// The theta constant `theta_m(0, tau)`.
pub fn theta_constant(m: &Characteristic, tau: &SiegelPoint, target: f64) -> Result<ThetaValue> {
    theta_function(m, &DVector::zeros(tau.genus()), tau, target)
}

/// All even theta constants, in lexicographic order of the characteristic.
///
/// Shares one lattice pass per `eps`: `theta_[eps|delta](0) = i^{eps.delta}
/// sum_n (-1)^{n.delta} exp(pi i v^T tau v)`.
pub fn even_theta_constants(tau: &SiegelPoint, target: f64) -> Result<Vec<(Characteristic, ThetaValue)>> {
    let g = tau.genus();
    let radius = truncation_radius(tau, target)?;
    let bound = tail_bound(g, tau.lambda_min(), 0.0, radius);
    let evens = all_characteristics(g, ParityFilter::Even)?;
    let size = 1usize << g;
    let pi_i = Complex64::new(0.0, PI);
    let mut sums = vec![Complex64::new(0.0, 0.0); size * size];
    let mut v = vec![0.0; g];
    for eps in 0..size as u16 {
        let a = half_shift(g, eps);
        let acc = &mut sums[eps as usize * size..(eps as usize + 1) * size];
        let mut it = BoxIter::new(g, eps, radius);
        while let Some(n) = it.peek() {
            let mut nbits = 0u16;
            for i in 0..g {
                v[i] = n[i] as f64 + a[i];
                nbits = (nbits << 1) | (n[i].rem_euclid(2) as u16);
            }
            let e = pi_i * quadratic(tau, &v);
            if e.re > -745.0 {
                let w = e.exp();
                for (delta, slot) in acc.iter_mut().enumerate() {
                    if (nbits & delta as u16).count_ones() % 2 == 0 {
                        *slot += w;
                    } else {
                        *slot -= w;
                    }
                }
            }
            it.advance();
        }
    }
    let units = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    Ok(evens
        .into_iter()
        .map(|m| {
            let phase = units[((m.eps() & m.delta()).count_ones() % 4) as usize];
            let value = phase * sums[m.eps() as usize * size + m.delta() as usize];
            (
                m,
                ThetaValue {
                    value,
                    tail_bound: bound,
                    radius,
                },
            )
        })
        .collect())
}
