use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use theta_strata::characteristic::{all_characteristics, Characteristic, ParityFilter};
use theta_strata::forms::*;
use theta_strata::siegel::{automorphy_determinant, block_diag, siegel_action, SiegelPoint};
use theta_strata::symplectic::{random_symplectic, standard_generators, SymplecticInteger, SymplecticModTwo};
use theta_strata::theta::{even_theta_constants, theta_constant};

const TARGET: f64 = 1e-12;

fn residual_for(moved: &Characteristic, gamma: &SymplecticInteger, m: &Characteristic, tau: &SiegelPoint) -> f64 {
    let image = siegel_action(gamma, tau).unwrap();
    let det = automorphy_determinant(gamma, tau).unwrap();
    let lhs = theta_constant(m, &image, TARGET).unwrap().value.powu(8);
    let rhs = det.powu(4) * theta_constant(moved, tau, TARGET).unwrap().value.powu(8);
    (lhs - rhs).norm() / (lhs.norm() + rhs.norm() + RESIDUAL_FLOOR * (1.0 + det.norm().powi(4)))
}

/// `[[D, C], [B, A]] m + shift`, with the shift given as (upper, lower).
fn block_swap_action(gamma: &SymplecticModTwo, m: &Characteristic, ab_on_top: bool) -> Characteristic {
    let (a, b, c, d) = gamma.blocks();
    let ab = a.diag_mul_transpose(b);
    let cd = c.diag_mul_transpose(d);
    let (upper, lower) = if ab_on_top { (ab, cd) } else { (cd, ab) };
    Characteristic::new(
        m.genus(),
        d.mul_vec(m.eps()) ^ c.mul_vec(m.delta()) ^ upper,
        b.mul_vec(m.eps()) ^ a.mul_vec(m.delta()) ^ lower,
    )
    .unwrap()
}

#[test]
fn generators_satisfy_the_eighth_power_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for g in 1..=2 {
        let mut points = vec![SiegelPoint::scaled_identity(g, 1.0).unwrap()];
        points.extend((0..5).map(|_| SiegelPoint::random(g, &mut rng)));
        for tau in &points {
            for gamma in standard_generators(g).unwrap() {
                for m in all_characteristics(g, ParityFilter::Even).unwrap() {
                    let r = transformation_residual(&gamma, &m, tau, TARGET).unwrap();
                    assert!(r < 1e-8, "g={g} m={m} residual {r}");
                }
            }
        }
    }
}

#[test]
fn random_words_satisfy_the_eighth_power_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for g in 2..=3 {
        let evens = all_characteristics(g, ParityFilter::Even).unwrap();
        for seed in 0..20u64 {
            let gamma = random_symplectic(g, 6, seed).unwrap();
            let tau = SiegelPoint::random(g, &mut rng);
            let m = evens[seed as usize % evens.len()];
            let r = transformation_residual(&gamma, &m, &tau, TARGET).unwrap();
            assert!(r < 1e-8, "g={g} seed={seed} residual {r}");
        }
    }
}

#[test]
fn calibration_rejects_left_action_conventions() {
    // Both block-swapped conventions agree with ours on every generator, so
    // only longer words can tell them apart.
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let g = 2;
    let evens = all_characteristics(g, ParityFilter::Even).unwrap();
    for gamma in standard_generators(g).unwrap() {
        let gm = gamma.reduce_mod2();
        for m in &evens {
            assert_eq!(block_swap_action(&gm, m, false), gm.act(m).unwrap());
        }
    }
    let mut worst = [0.0f64; 2];
    for seed in 0..20u64 {
        let gamma = random_symplectic(g, 6, seed).unwrap();
        let gm = gamma.reduce_mod2();
        let tau = SiegelPoint::random(g, &mut rng);
        for m in &evens {
            assert!(residual_for(&gm.act(m).unwrap(), &gamma, m, &tau) < 1e-8);
            worst[0] = worst[0].max(residual_for(&block_swap_action(&gm, m, false), &gamma, m, &tau));
            worst[1] = worst[1].max(residual_for(&block_swap_action(&gm, m, true), &gamma, m, &tau));
        }
    }
    assert!(worst[0] > 0.5 && worst[1] > 0.5, "{worst:?}");
}

#[test]
fn genus_one_translation_residual() {
    let t = &standard_generators(1).unwrap()[1];
    let i = SiegelPoint::scaled_identity(1, 1.0).unwrap();
    let r = transformation_residual(t, &"0|0".parse().unwrap(), &i, TARGET).unwrap();
    assert!(r < 1e-9);
}

#[test]
fn schottky_across_genera() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for g in 1..=3 {
        for _ in 0..20 {
            let tau = SiegelPoint::random(g, &mut rng);
            let v = schottky_form(&tau, TARGET).unwrap();
            assert!(v.relative_magnitude < 1e-10, "g={g}: {}", v.relative_magnitude);
        }
    }
    // Generic points sit at widely varying distances from the divisor; about
    // one in five falls below 1e-4, so this only separates them from the
    // rounding-level values on the divisor.
    for _ in 0..20 {
        let tau = SiegelPoint::random(4, &mut rng);
        assert!(schottky_form(&tau, TARGET).unwrap().relative_magnitude > 1e-8);
    }
    let ii = SiegelPoint::scaled_identity(4, 1.0).unwrap();
    assert!(schottky_form(&ii, TARGET).unwrap().relative_magnitude < 1e-8);
}

#[test]
fn theta_null_vanishes_on_every_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for g in 2..=4 {
        for k in 1..g {
            let tau = block_diag(&SiegelPoint::random(k, &mut rng), &SiegelPoint::random(g - k, &mut rng));
            let v = theta_null_product(&tau, TARGET).unwrap();
            assert!(v.relative_magnitude < 1e-8, "g={g} k={k}: {}", v.relative_magnitude);
        }
    }
    // Off the splits no factor vanishes, though the product of 136 factors is
    // far below the RMS-power normalizer.
    let tau = SiegelPoint::random(4, &mut rng);
    let v = theta_null_product(&tau, TARGET).unwrap();
    assert!(v.value.norm() > 0.0 && v.log_abs_value.is_finite());
    let thetas = even_theta_constants(&tau, TARGET).unwrap();
    let top = thetas.iter().map(|(_, t)| t.value.norm()).fold(0.0, f64::max);
    assert!(thetas.iter().all(|(_, t)| t.value.norm() > 1e-6 * top));
}

#[test]
fn f1_matches_the_quotient_formula_off_the_theta_null_divisor() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let mut checked = 0;
    for g in 1..=4 {
        for _ in 0..5 {
            let tau = SiegelPoint::random(g, &mut rng);
            let thetas: Vec<Complex64> = even_theta_constants(&tau, TARGET)
                .unwrap()
                .into_iter()
                .map(|(_, t)| t.value)
                .collect();
            if thetas.iter().any(|t| t.norm() <= 1e-3) {
                continue;
            }
            // 136 eighth powers overflow the quotient at genus 4; compare at unit scale
            let s = (thetas.iter().map(|t| t.norm_sqr()).sum::<f64>() / thetas.len() as f64).sqrt();
            let thetas: Vec<Complex64> = thetas.iter().map(|t| t / s).collect();
            let null8 = thetas.iter().fold(Complex64::new(1.0, 0.0), |a, t| a * t.powu(8));
            let quotient: Complex64 = thetas.iter().map(|t| null8 / t.powu(8)).sum();
            let f1 = f1_from_constants(&thetas).value;
            assert!((f1 - quotient).norm() < 1e-8 * quotient.norm(), "g={g}");
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn f1_terms_are_nonzero_when_no_constant_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let tau = SiegelPoint::random(3, &mut rng);
    let thetas: Vec<Complex64> = even_theta_constants(&tau, TARGET)
        .unwrap()
        .into_iter()
        .map(|(_, t)| t.value)
        .collect();
    for skip in 0..thetas.len() {
        let term: f64 = thetas
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, t)| t.norm().ln())
            .sum();
        assert!(term.is_finite());
    }
}

#[test]
fn weights_follow_from_theta_degrees() {
    // 16 constants per F_T term, 136 in Theta_null, 135 eighth powers per F_1 term
    assert_eq!(FormId::Schottky.theta_degree(4), 16);
    assert_eq!(FormId::ThetaNull.theta_degree(4), 136);
    assert_eq!(FormId::F1.theta_degree(4), 135 * 8);
    for id in FormId::ALL {
        assert_eq!(id.weight(4), id.theta_degree(4) as f64 / 2.0);
    }
}

#[test]
fn absolute_values_transform_with_the_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    let mut nontrivial = 0;
    for seed in 0..6u64 {
        let gamma = random_symplectic(4, 4, seed).unwrap();
        let tau = SiegelPoint::random(4, &mut rng);
        let image = siegel_action(&gamma, &tau).unwrap();
        let log_det = automorphy_determinant(&gamma, &tau).unwrap().norm().ln();
        if log_det.abs() > 1e-3 {
            nontrivial += 1;
        }
        let before = evaluate_forms(&tau, TARGET).unwrap();
        let after = evaluate_forms(&image, TARGET).unwrap();
        for id in FormId::ALL {
            let expected = before.get(id).log_abs_value + id.weight(4) * log_det;
            let got = after.get(id).log_abs_value;
            // relative 1e-7 in magnitude is ~1e-7 in log
            assert!((got - expected).abs() < 1e-7, "{id} seed={seed}: {got} vs {expected}");
        }
    }
    assert!(nontrivial >= 1);
}
