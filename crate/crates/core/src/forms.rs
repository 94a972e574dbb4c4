//! The three stratifying modular forms and the weight-4 transformation law of
//! eighth powers of theta constants.
//!
//! All three forms are polynomials in the even theta constants:
//!
//! * Schottky form `F_T = 2^g sum theta^16 - (sum theta^8)^2` (coefficient 16 at genus 4)
//! * `THETA_NULL = prod theta_m`
//! * `F_1 = sum_m prod_{n != m} theta_n^8`, the division-free form of `sum Theta_null^8 / theta_m^8`
//!
//! "Vanishing" is decided on `relative_magnitude = |value| / normalizer`, with a
//! per-form normalizer that stays positive on all of `H_g`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characteristic::Characteristic;
use crate::error::{Error, Result};
use crate::siegel::{automorphy_determinant, siegel_action, SiegelPoint};
use crate::symplectic::SymplecticInteger;
use crate::theta::{even_theta_constants, theta_constant};

/// Practical genus cap for form evaluation.
pub const FORM_MAX_GENUS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormId {
    #[serde(rename = "FT")]
    Schottky,
    #[serde(rename = "THETANULL")]
    ThetaNull,
    #[serde(rename = "F1")]
    F1,
}

impl FormId {
    pub const ALL: [FormId; 3] = [FormId::Schottky, FormId::ThetaNull, FormId::F1];

    /// Number of theta factors in every monomial of the form.
    pub fn theta_degree(self, genus: usize) -> usize {
        let n = even_count(genus);
        match self {
            FormId::Schottky => 16,
            FormId::ThetaNull => n,
            FormId::F1 => 8 * (n - 1),
        }
    }

    /// Weight, at one half per theta constant.
    pub fn weight(self, genus: usize) -> f64 {
        self.theta_degree(genus) as f64 / 2.0
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormId::Schottky => "FT",
            FormId::ThetaNull => "THETANULL",
            FormId::F1 => "F1",
        })
    }
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "FT" => Ok(FormId::Schottky),
            "THETANULL" => Ok(FormId::ThetaNull),
            "F1" => Ok(FormId::F1),
            _ => Err(Error::Invalid(format!("unknown form {s:?} (expected FT, THETANULL or F1)"))),
        }
    }
}

fn even_count(genus: usize) -> usize {
    (1usize << (genus - 1)) * ((1usize << genus) + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormValue {
    pub form_id: FormId,
    #[serde(with = "crate::complex_pair")]
    pub value: Complex64,
    /// `ln |value|`, finite even when `value` itself under- or overflows.
    pub log_abs_value: f64,
    pub normalizer: f64,
    pub relative_magnitude: f64,
}

fn check_form_genus(genus: usize) -> Result<()> {
    if genus == 0 || genus > FORM_MAX_GENUS {
        return Err(Error::GenusOutOfRange {
            genus,
            max: FORM_MAX_GENUS,
        });
    }
    Ok(())
}

/// Root-mean-square of `|theta_m|`; positive on `H_g`.
fn rms(thetas: &[Complex64]) -> f64 {
    (thetas.iter().map(|t| t.norm_sqr()).sum::<f64>() / thetas.len() as f64).sqrt()
}

/// Schottky form from the list of even theta constants of genus `genus`.
pub fn schottky_from_constants(genus: usize, thetas: &[Complex64]) -> FormValue {
    let mut s8 = Complex64::new(0.0, 0.0);
    let mut s16 = Complex64::new(0.0, 0.0);
    let mut a8 = 0.0;
    let mut a16 = 0.0;
    for t in thetas {
        let t8 = t.powu(8);
        s8 += t8;
        s16 += t8 * t8;
        a8 += t8.norm();
        a16 += t8.norm_sqr();
    }
    let value = s16 * (1u64 << genus) as f64 - s8 * s8;
    let normalizer = a16 + a8 * a8;
    FormValue {
        form_id: FormId::Schottky,
        value,
        log_abs_value: value.norm().ln(),
        normalizer,
        relative_magnitude: value.norm() / normalizer,
    }
}

/// Product of all even theta constants. Normalizer `s^N` with `s` the RMS of
/// `|theta_m|` and `N` the number of factors.
pub fn theta_null_from_constants(thetas: &[Complex64]) -> FormValue {
    let n = thetas.len() as f64;
    let s = rms(thetas);
    let value = thetas.iter().fold(Complex64::new(1.0, 0.0), |acc, t| acc * t);
    let log_abs_value: f64 = thetas.iter().map(|t| t.norm().ln()).sum();
    FormValue {
        form_id: FormId::ThetaNull,
        value,
        log_abs_value,
        normalizer: s.powf(n),
        relative_magnitude: (log_abs_value - n * s.ln()).exp(),
    }
}

/// `sum_m prod_{n != m} theta_n^8`, evaluated in units of the RMS scale `s`.
/// Normalizer `N s^{8(N-1)}`.
pub fn f1_from_constants(thetas: &[Complex64]) -> FormValue {
    let count = thetas.len();
    let s = rms(thetas);
    let scaled: Vec<Complex64> = thetas.iter().map(|t| (t / s).powu(8)).collect();
    let one = Complex64::new(1.0, 0.0);
    let mut prefix = vec![one; count + 1];
    for i in 0..count {
        prefix[i + 1] = prefix[i] * scaled[i];
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut suffix = one;
    for i in (0..count).rev() {
        total += prefix[i] * suffix;
        suffix *= scaled[i];
    }
    let exponent = 8.0 * (count as f64 - 1.0);
    let log_scale = exponent * s.ln();
    let log_abs_value = total.norm().ln() + log_scale;
    let value = if total.norm() == 0.0 {
        total
    } else {
        Complex64::from_polar(log_abs_value.exp(), total.arg())
    };
    FormValue {
        form_id: FormId::F1,
        value,
        log_abs_value,
        normalizer: count as f64 * log_scale.exp(),
        relative_magnitude: total.norm() / count as f64,
    }
}

/// The three forms at one point, sharing a single batch of theta constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormTriple {
    pub schottky: FormValue,
    pub theta_null: FormValue,
    pub f1: FormValue,
}

impl FormTriple {
    pub fn get(&self, id: FormId) -> &FormValue {
        match id {
            FormId::Schottky => &self.schottky,
            FormId::ThetaNull => &self.theta_null,
            FormId::F1 => &self.f1,
        }
    }
}

pub fn forms_from_constants(genus: usize, thetas: &[Complex64]) -> FormTriple {
    FormTriple {
        schottky: schottky_from_constants(genus, thetas),
        theta_null: theta_null_from_constants(thetas),
        f1: f1_from_constants(thetas),
    }
}

fn constants(tau: &SiegelPoint, target: f64) -> Result<Vec<Complex64>> {
    check_form_genus(tau.genus())?;
    Ok(even_theta_constants(tau, target)?
        .into_iter()
        .map(|(_, t)| t.value)
        .collect())
}

pub fn evaluate_forms(tau: &SiegelPoint, target: f64) -> Result<FormTriple> {
    Ok(forms_from_constants(tau.genus(), &constants(tau, target)?))
}

pub fn evaluate_form(id: FormId, tau: &SiegelPoint, target: f64) -> Result<FormValue> {
    let thetas = constants(tau, target)?;
    Ok(match id {
        FormId::Schottky => schottky_from_constants(tau.genus(), &thetas),
        FormId::ThetaNull => theta_null_from_constants(&thetas),
        FormId::F1 => f1_from_constants(&thetas),
    })
}

pub fn schottky_form(tau: &SiegelPoint, target: f64) -> Result<FormValue> {
    evaluate_form(FormId::Schottky, tau, target)
}

pub fn theta_null_product(tau: &SiegelPoint, target: f64) -> Result<FormValue> {
    evaluate_form(FormId::ThetaNull, tau, target)
}

pub fn f1_form(tau: &SiegelPoint, target: f64) -> Result<FormValue> {
    evaluate_form(FormId::F1, tau, target)
}

/// Denominator floor for [`transformation_residual`]: the eighth power of the
/// default theta vanishing threshold, so that two vanishing sides compare equal.
pub const RESIDUAL_FLOOR: f64 = 1e-48;

/// Relative defect of `theta_m(0, gamma.tau)^8 = det(C tau + D)^4 theta_{gamma*m}(0, tau)^8`.
pub fn transformation_residual(
    gamma: &SymplecticInteger,
    m: &Characteristic,
    tau: &SiegelPoint,
    target: f64,
) -> Result<f64> {
    let image = siegel_action(gamma, tau)?;
    let det = automorphy_determinant(gamma, tau)?;
    let moved = gamma.reduce_mod2().act(m)?;
    let lhs = theta_constant(m, &image, target)?.value.powu(8);
    let rhs = det.powu(4) * theta_constant(&moved, tau, target)?.value.powu(8);
    let floor = RESIDUAL_FLOOR * (1.0 + det.norm().powi(4));
    Ok((lhs - rhs).norm() / (lhs.norm() + rhs.norm() + floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siegel::block_diag;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn weights() {
        assert_eq!(FormId::Schottky.weight(4), 8.0);
        assert_eq!(FormId::ThetaNull.weight(4), 68.0);
        assert_eq!(FormId::F1.weight(4), 540.0);
        assert_eq!(even_count(4), 136);
    }

    #[test]
    fn form_ids_parse() {
        for id in FormId::ALL {
            assert_eq!(id.to_string().parse::<FormId>().unwrap(), id);
        }
        assert!("F2".parse::<FormId>().is_err());
        assert_eq!(serde_json::to_string(&FormId::ThetaNull).unwrap(), "\"THETANULL\"");
    }

    #[test]
    fn schottky_degenerates_below_genus_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in 1..=3 {
            let tau = SiegelPoint::random(g, &mut rng);
            assert!(schottky_form(&tau, 1e-12).unwrap().relative_magnitude < 1e-10);
        }
    }

    #[test]
    fn genus_two_split_point() {
        let ii = SiegelPoint::scaled_identity(2, 1.0).unwrap();
        let forms = evaluate_forms(&ii, 1e-12).unwrap();
        assert!(forms.theta_null.relative_magnitude < 1e-8);
        assert!(forms.f1.relative_magnitude > 1e-6);
    }

    #[test]
    fn genus_one_theta_null_nonzero() {
        let i = SiegelPoint::scaled_identity(1, 1.0).unwrap();
        let v = theta_null_product(&i, 1e-12).unwrap();
        assert!(v.value.norm() > 0.5 && v.relative_magnitude > 0.5);
    }

    #[test]
    fn f1_vanishes_on_elliptic_times_genus_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tau = block_diag(
            &SiegelPoint::scaled_identity(1, 1.0).unwrap(),
            &SiegelPoint::random(3, &mut rng),
        );
        let f = f1_form(&tau, 1e-12).unwrap();
        assert!(f.relative_magnitude < 1e-8);
    }

    #[test]
    fn genus_cap() {
        let tau = SiegelPoint::scaled_identity(7, 1.0).unwrap();
        assert!(matches!(schottky_form(&tau, 1e-6), Err(Error::GenusOutOfRange { .. })));
    }

    #[test]
    fn identity_residual_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let tau = SiegelPoint::random(2, &mut rng);
        let id = SymplecticInteger::identity(2);
        let m: Characteristic = "01|00".parse().unwrap();
        assert!(transformation_residual(&id, &m, &tau, 1e-12).unwrap() < 1e-14);
    }
}
