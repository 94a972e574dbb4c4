//! Self-checks shared by the command line and the test suites.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characteristic::{all_characteristics, CharTuple, ParityFilter};
use crate::error::Result;
use crate::forms::{schottky_form, transformation_residual};
use crate::orbit::{orbit_bfs, tuples_equivalent};
use crate::siegel::SiegelPoint;
use crate::symplectic::random_symplectic;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSummary {
    pub genus: usize,
    pub tuple_length: usize,
    pub comparisons: usize,
    pub disagreements: usize,
}

/// Compares [`tuples_equivalent`] with BFS orbit membership on all ordered
/// `length`-tuples of even characteristics.
pub fn orbit_oracle(genus: usize, length: usize) -> Result<OracleSummary> {
    let evens = all_characteristics(genus, ParityFilter::Even)?;
    let mut tuples: Vec<CharTuple> = vec![CharTuple::new(genus, vec![])?];
    for _ in 0..length {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                evens.iter().map(move |m| {
                    let mut e = t.entries().to_vec();
                    e.push(*m);
                    e
                })
            })
            .map(|e| CharTuple::new(genus, e))
            .collect::<Result<_>>()?;
    }
    let mut summary = OracleSummary {
        genus,
        tuple_length: length,
        comparisons: 0,
        disagreements: 0,
    };
    for first in &tuples {
        let orbit: HashSet<CharTuple> = orbit_bfs(first)?.into_iter().collect();
        for second in &tuples {
            summary.comparisons += 1;
            if tuples_equivalent(first, second)? != orbit.contains(second) {
                summary.disagreements += 1;
            }
        }
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformationSummary {
    pub genus: usize,
    pub seed: u64,
    pub count: usize,
    pub word_length: usize,
    pub max_residual: f64,
}

/// Residuals of the eighth-power law for `count` seeded random
/// `(gamma, m, tau)` triples.
pub fn transformation_check(genus: usize, seed: u64, count: usize, word_length: usize, target: f64) -> Result<TransformationSummary> {
    let evens = all_characteristics(genus, ParityFilter::Even)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    for i in 0..count {
        let gamma = random_symplectic(genus, word_length, seed.wrapping_mul(1_000_003).wrapping_add(i as u64))?;
        let tau = SiegelPoint::random(genus, &mut rng);
        let m = evens[rand::Rng::gen_range(&mut rng, 0..evens.len())];
        max_residual = max_residual.max(transformation_residual(&gamma, &m, &tau, target)?);
    }
    Ok(TransformationSummary {
        genus,
        seed,
        count,
        word_length,
        max_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchottkySummary {
    pub genus: usize,
    pub seed: u64,
    pub count: usize,
    pub min_relative: f64,
    pub max_relative: f64,
}

/// Relative Schottky magnitudes at `count` seeded random points.
pub fn schottky_degeneration(genus: usize, seed: u64, count: usize, target: f64) -> Result<SchottkySummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_relative = f64::INFINITY;
    let mut max_relative: f64 = 0.0;
    for _ in 0..count {
        let v = schottky_form(&SiegelPoint::random(genus, &mut rng), target)?.relative_magnitude;
        min_relative = min_relative.min(v);
        max_relative = max_relative.max(v);
    }
    Ok(SchottkySummary {
        genus,
        seed,
        count,
        min_relative,
        max_relative,
    })
}
