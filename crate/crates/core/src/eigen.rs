//! Smallest eigenvalue of a small real symmetric matrix by cyclic Jacobi sweeps.

use nalgebra::DMatrix;

const MAX_SWEEPS: usize = 64;

/// Gershgorin lower bound on the spectrum.
pub fn gershgorin_lower_bound(m: &DMatrix<f64>) -> f64 {
    (0..m.nrows())
        .map(|i| {
            let radius: f64 = (0..m.ncols()).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
            m[(i, i)] - radius
        })
        .fold(f64::INFINITY, f64::min)
}

/// All eigenvalues, ascending. The input is assumed symmetric; only the
/// upper triangle is read.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a = DMatrix::from_fn(n, n, |i, j| if i <= j { m[(i, j)] } else { m[(j, i)] });
    let scale = a.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return vec![0.0; n];
    }
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    eig
}

pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    symmetric_eigenvalues(m)[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(min_eigenvalue(&DMatrix::identity(4, 4)), 1.0);
        assert_eq!(min_eigenvalue(&DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0])), 1.0);
        let e = symmetric_eigenvalues(&DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]));
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_nalgebra() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for n in 1..=8 {
            for _ in 0..20 {
                let raw = DMatrix::from_fn(n, n, |_, _| next());
                let sym = &raw + raw.transpose();
                let ours = symmetric_eigenvalues(&sym);
                let mut theirs: Vec<f64> = sym.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
                theirs.sort_by(|x, y| x.total_cmp(y));
                for (a, b) in ours.iter().zip(&theirs) {
                    assert!((a - b).abs() < 1e-12, "{a} vs {b}");
                }
                assert!(gershgorin_lower_bound(&sym) <= ours[0] + 1e-12);
            }
        }
    }
}
