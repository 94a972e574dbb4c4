//! Points of the Siegel upper half space and the action of `Sp(2g, Z)` on them.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::eigen;
use crate::error::{Error, Result};
use crate::symplectic::SymplecticInteger;

/// Symmetry tolerance, relative to `max(1, max |tau_ij|)`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// `|det(C tau + D)|` below this is reported as near-singular.
pub const SINGULAR_DET: f64 = 1e-8;

/// A symmetric complex `g x g` matrix with positive definite imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    tau: DMatrix<Complex64>,
    lambda_min: f64,
}

impl SiegelPoint {
    /// Symmetrizes and certifies `tau`.
    pub fn new(tau: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = tau.shape();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { rows, cols });
        }
        if tau.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("non-finite entry in tau".into()));
        }
        let scale = tau.iter().fold(1.0f64, |acc, z| acc.max(z.norm()));
        let asymmetry = (0..rows)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| (tau[(i, j)] - tau[(j, i)]).norm())
            .fold(0.0f64, f64::max);
        if asymmetry > SYMMETRY_TOLERANCE * scale {
            return Err(Error::NotSymmetric { asymmetry });
        }
        let tau = (&tau + tau.transpose()).map(|z| z * 0.5);
        let im = tau.map(|z| z.im);
        let lambda_min = eigen::min_eigenvalue(&im);
        if lambda_min <= 0.0 || !lambda_min.is_finite() {
            return Err(Error::NotPositiveDefinite { lambda_min });
        }
        Ok(SiegelPoint { tau, lambda_min })
    }

    /// `s * i * 1_g`.
    pub fn scaled_identity(genus: usize, s: f64) -> Result<Self> {
        SiegelPoint::new(DMatrix::from_fn(genus, genus, |i, j| {
            if i == j {
                Complex64::new(0.0, s)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// Diagonal point with the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        let g = entries.len();
        SiegelPoint::new(DMatrix::from_fn(g, g, |i, j| {
            if i == j {
                entries[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// A test point with real part uniform in `[-1/2, 1/2]` and imaginary part
    /// `1_g + P` for a symmetric perturbation `P` with entries in `[-1/4, 1/4]`,
    /// resampled until `lambda_min(Im tau) >= 0.4`.
    pub fn random<R: Rng + ?Sized>(genus: usize, rng: &mut R) -> Self {
        loop {
            let mut tau = DMatrix::from_element(genus, genus, Complex64::new(0.0, 0.0));
            for i in 0..genus {
                for j in i..genus {
                    let re = rng.gen_range(-0.5..0.5);
                    let im = rng.gen_range(-0.25..0.25) + if i == j { 1.0 } else { 0.0 };
                    tau[(i, j)] = Complex64::new(re, im);
                    tau[(j, i)] = tau[(i, j)];
                }
            }
            if let Ok(p) = SiegelPoint::new(tau) {
                if p.lambda_min >= 0.4 {
                    return p;
                }
            }
        }
    }

    pub fn genus(&self) -> usize {
        self.tau.nrows()
    }

    pub fn tau(&self) -> &DMatrix<Complex64> {
        &self.tau
    }

    pub fn imaginary_part(&self) -> DMatrix<f64> {
        self.tau.map(|z| z.im)
    }

    /// Smallest eigenvalue of `Im tau`.
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    /// Principal submatrix on `indices`.
    pub fn submatrix(&self, indices: &[usize]) -> Result<SiegelPoint> {
        let n = indices.len();
        SiegelPoint::new(DMatrix::from_fn(n, n, |i, j| self.tau[(indices[i], indices[j])]))
    }
}

/// Free-function form of [`SiegelPoint::new`].
pub fn validate_siegel(matrix: DMatrix<Complex64>) -> Result<SiegelPoint> {
    SiegelPoint::new(matrix)
}

pub fn min_im_eigenvalue(tau: &SiegelPoint) -> f64 {
    tau.lambda_min()
}

/// Block-diagonal point `diag(first, second)`.
pub fn block_diag(first: &SiegelPoint, second: &SiegelPoint) -> SiegelPoint {
    let (g1, g2) = (first.genus(), second.genus());
    let mut tau = DMatrix::from_element(g1 + g2, g1 + g2, Complex64::new(0.0, 0.0));
    tau.view_mut((0, 0), (g1, g1)).copy_from(&first.tau);
    tau.view_mut((g1, g1), (g2, g2)).copy_from(&second.tau);
    SiegelPoint {
        tau,
        lambda_min: first.lambda_min.min(second.lambda_min),
    }
}

fn complexify(m: &DMatrix<i64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x as f64, 0.0))
}

fn check_genus(gamma: &SymplecticInteger, tau: &SiegelPoint) -> Result<()> {
    if gamma.genus() != tau.genus() {
        return Err(Error::GenusMismatch {
            left: gamma.genus(),
            right: tau.genus(),
        });
    }
    Ok(())
}

/// `det(C tau + D)`.
pub fn automorphy_determinant(gamma: &SymplecticInteger, tau: &SiegelPoint) -> Result<Complex64> {
    check_genus(gamma, tau)?;
    let m = complexify(gamma.c()) * &tau.tau + complexify(gamma.d());
    Ok(m.determinant())
}

/// `(A tau + B)(C tau + D)^{-1}`.
pub fn siegel_action(gamma: &SymplecticInteger, tau: &SiegelPoint) -> Result<SiegelPoint> {
    check_genus(gamma, tau)?;
    let denom = complexify(gamma.c()) * &tau.tau + complexify(gamma.d());
    let det_abs = denom.determinant().norm();
    if det_abs < SINGULAR_DET || !det_abs.is_finite() {
        return Err(Error::NearSingular { det_abs });
    }
    let inv = denom.try_inverse().ok_or(Error::NearSingular { det_abs })?;
    let numer = complexify(gamma.a()) * &tau.tau + complexify(gamma.b());
    let image = numer * inv;
    // symmetric in exact arithmetic; rounding leaves ~1e-15 relative asymmetry
    SiegelPoint::new((&image + image.transpose()).map(|z| z * 0.5))
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    genus: usize,
    tau: Vec<Vec<[f64; 2]>>,
}

impl Serialize for SiegelPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let g = self.genus();
        PointJson {
            genus: g,
            tau: (0..g)
                .map(|i| (0..g).map(|j| [self.tau[(i, j)].re, self.tau[(i, j)].im]).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SiegelPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PointJson::deserialize(deserializer)?;
        let g = raw.genus;
        if raw.tau.len() != g || raw.tau.iter().any(|r| r.len() != g) {
            return Err(D::Error::custom(format!("tau must be a {g}x{g} array")));
        }
        let tau = DMatrix::from_fn(g, g, |i, j| Complex64::new(raw.tau[i][j][0], raw.tau[i][j][1]));
        SiegelPoint::new(tau).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{random_symplectic, standard_generators};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn validation_examples() {
        assert_eq!(SiegelPoint::scaled_identity(4, 1.0).unwrap().lambda_min(), 1.0);
        assert_eq!(SiegelPoint::diagonal(&[c(0.0, 1.0), c(0.0, 2.0)]).unwrap().lambda_min(), 1.0);
        let p = SiegelPoint::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 2.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 2.0)],
        ))
        .unwrap();
        assert!((p.lambda_min() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn validation_errors() {
        let asym = DMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.1, 0.0), c(0.0, 0.0), c(0.0, 1.0)]);
        assert!(matches!(SiegelPoint::new(asym), Err(Error::NotSymmetric { .. })));
        let indefinite = DMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 2.0), c(0.0, 2.0), c(0.0, 1.0)]);
        match SiegelPoint::new(indefinite) {
            Err(Error::NotPositiveDefinite { lambda_min }) => assert!((lambda_min + 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let rect = DMatrix::from_element(2, 3, c(0.0, 1.0));
        assert!(matches!(SiegelPoint::new(rect), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn block_structure() {
        let i1 = SiegelPoint::scaled_identity(1, 1.0).unwrap();
        assert_eq!(block_diag(&i1, &i1), SiegelPoint::scaled_identity(2, 1.0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = SiegelPoint::random(2, &mut rng);
        let b = SiegelPoint::random(3, &mut rng);
        let ab = block_diag(&a, &b);
        assert_eq!(ab.genus(), 5);
        assert!((ab.lambda_min() - a.lambda_min().min(b.lambda_min())).abs() < 1e-15);
        let recertified = SiegelPoint::new(ab.tau().clone()).unwrap();
        assert!((recertified.lambda_min() - ab.lambda_min()).abs() < 1e-12);
    }

    #[test]
    fn action_examples() {
        let i = SiegelPoint::scaled_identity(1, 1.0).unwrap();
        let gens = standard_generators(1).unwrap();
        assert_eq!(siegel_action(&SymplecticInteger::identity(1), &i).unwrap(), i);
        let inv = siegel_action(&gens[0], &i).unwrap();
        assert!((inv.tau()[(0, 0)] - c(0.0, 1.0)).norm() < 1e-15);
        let shifted = siegel_action(&gens[1], &i).unwrap();
        assert!((shifted.tau()[(0, 0)] - c(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn action_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..10 {
            let tau = SiegelPoint::random(3, &mut rng);
            let g1 = random_symplectic(3, 3, seed).unwrap();
            let g2 = random_symplectic(3, 3, seed + 50).unwrap();
            let lhs = siegel_action(&g1.mul(&g2).unwrap(), &tau).unwrap();
            let rhs = siegel_action(&g1, &siegel_action(&g2, &tau).unwrap()).unwrap();
            let diff = (lhs.tau() - rhs.tau()).iter().fold(0.0f64, |a, z| a.max(z.norm()));
            assert!(diff < 1e-10, "{diff}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let p = SiegelPoint::diagonal(&[c(0.5, 1.0), c(0.0, 2.0)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"genus":2,"tau":[[[0.5,1.0],[0.0,0.0]],[[0.0,0.0],[0.0,2.0]]]}"#);
        assert_eq!(serde_json::from_str::<SiegelPoint>(&s).unwrap(), p);
        assert!(serde_json::from_str::<SiegelPoint>(r#"{"genus":1,"tau":[[[0.0,-1.0]]]}"#).is_err());
    }
}
