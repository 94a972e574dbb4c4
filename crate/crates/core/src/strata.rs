//! Classification of genus-4 period matrices into the strata `X0`..`X6`.
//!
//! The decision chain is
//!
//! 1. `F_T` does not vanish: `X0`
//! 2. no even theta constant vanishes: `X1`
//! 3. exactly one even theta constant vanishes: `X2`
//! 4. otherwise the point is hyperelliptic or decomposable, and the split
//!    structure of the vanishing set picks one of `X3`..`X6`.
//!
//! Because `THETA_NULL` is the product of all even constants and `F_1`
//! reduces to a single nonzero monomial exactly when one constant vanishes,
//! the flags for those two forms are read off the vanishing set. Their raw
//! relative magnitudes are reported as evidence.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characteristic::{product_split_tuple, CharTuple, Characteristic};
use crate::error::{Error, Result};
use crate::forms::{forms_from_constants, FormId};
use crate::orbit::tuples_equivalent;
use crate::siegel::SiegelPoint;
use crate::theta::even_theta_constants;

pub const DEFAULT_THRESHOLD: f64 = 1e-6;
/// Required ratio between the smallest surviving and largest vanishing constant.
pub const REQUIRED_MARGIN: f64 = 10.0;
pub const SPLIT_NODE_BUDGET: u64 = 10_000_000;
/// Absolute accuracy of the theta constants behind a classification.
pub const CLASSIFY_TARGET: f64 = 1e-12;

/// Number of even characteristics by genus.
const EVENS: [usize; 4] = [1, 3, 10, 36];
const HYPERELLIPTIC_4_COUNT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    X0,
    X1,
    X2,
    X3,
    X4,
    X5,
    X6,
    #[serde(rename = "UNRESOLVED")]
    Unresolved,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::X0 => "X0",
            Label::X1 => "X1",
            Label::X2 => "X2",
            Label::X3 => "X3",
            Label::X4 => "X4",
            Label::X5 => "X5",
            Label::X6 => "X6",
            Label::Unresolved => "UNRESOLVED",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingSet {
    pub entries: Vec<Characteristic>,
    /// `max |theta_m|` over the even characteristics.
    pub scale: f64,
    /// Smallest surviving ratio over largest vanishing ratio; the threshold
    /// stands in for an empty side.
    pub margin: f64,
    pub threshold: f64,
}

impl VanishingSet {
    pub fn well_separated(&self) -> bool {
        self.margin >= REQUIRED_MARGIN
    }
}

pub fn vanishing_set_from_constants(constants: &[(Characteristic, Complex64)], rel_threshold: f64) -> VanishingSet {
    let scale = constants.iter().map(|(_, t)| t.norm()).fold(0.0, f64::max);
    let mut entries = Vec::new();
    let mut largest_vanishing: f64 = 0.0;
    let mut smallest_surviving = f64::INFINITY;
    for (m, t) in constants {
        let r = t.norm() / scale;
        if r < rel_threshold {
            entries.push(*m);
            largest_vanishing = largest_vanishing.max(r);
        } else {
            smallest_surviving = smallest_surviving.min(r);
        }
    }
    let low = if entries.is_empty() { rel_threshold } else { largest_vanishing };
    let high = if smallest_surviving.is_finite() { smallest_surviving } else { rel_threshold };
    VanishingSet {
        entries,
        scale,
        margin: high / low,
        threshold: rel_threshold,
    }
}

pub fn vanishing_set(tau: &SiegelPoint, rel_threshold: f64) -> Result<VanishingSet> {
    check_threshold(rel_threshold)?;
    let constants: Vec<_> = even_theta_constants(tau, CLASSIFY_TARGET)?
        .into_iter()
        .map(|(m, t)| (m, t.value))
        .collect();
    Ok(vanishing_set_from_constants(&constants, rel_threshold))
}

fn check_threshold(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Invalid(format!("threshold must lie in (0, 1), got {t}")));
    }
    Ok(())
}

fn parity_of(packed: u32, genus: usize) -> u8 {
    let mask = (1u32 << genus) - 1;
    (((packed >> genus) & packed & mask).count_ones() & 1) as u8
}

/// XOR basis of `(m, 1)` vectors with combination masks over frame levels.
#[derive(Clone, Default)]
struct Span {
    pivots: Vec<(u32, u32)>,
}

impl Span {
    /// Reduces `v`; returns the residue and the combination used.
    fn reduce(&self, mut v: u32) -> (u32, u32) {
        let mut combo = 0;
        for &(p, c) in &self.pivots {
            if v ^ p < v {
                v ^= p;
                combo ^= c;
            }
        }
        (v, combo)
    }

    fn contains(&self, v: u32) -> bool {
        self.reduce(v).0 == 0
    }

    fn insert(&mut self, v: u32, level: usize) {
        let (r, combo) = self.reduce(v);
        debug_assert!(r != 0);
        self.pivots.push((r, combo ^ (1 << level)));
        // `reduce` needs pivots in descending order of leading bit
        self.pivots.sort_by_key(|p| p.0.leading_zeros());
    }
}

struct SplitSearch {
    genus: usize,
    n: usize,
    target: CharTuple,
    /// Elements fixed once frame level `l` is assigned, with their frame combinations.
    determined_at: Vec<Vec<(usize, u32)>>,
    parity: Vec<u8>,
    members: Vec<bool>,
    candidates: Vec<u32>,
    budget: u64,
    nodes: u64,
    images: Vec<u32>,
    assigned: Vec<usize>,
    frame_images: Vec<u32>,
}

impl SplitSearch {
    fn new(s: &[Characteristic], target: &CharTuple, budget: u64) -> Self {
        let genus = target.genus();
        let packed: Vec<u32> = target.entries().iter().map(|m| m.packed()).collect();
        let n = packed.len();
        let lift = |p: u32| (p << 1) | 1;

        // Greedy affine frame: each step adds the element that fixes the most others.
        let mut span = Span::default();
        let mut frame: Vec<usize> = Vec::new();
        loop {
            let mut best: Option<(usize, usize)> = None;
            for c in 0..n {
                if span.contains(lift(packed[c])) {
                    continue;
                }
                let mut trial = span.clone();
                trial.insert(lift(packed[c]), frame.len());
                let covered = packed.iter().filter(|&&p| trial.contains(lift(p))).count();
                if best.is_none_or(|(_, b)| covered > b) {
                    best = Some((c, covered));
                }
            }
            match best {
                Some((c, _)) => {
                    span.insert(lift(packed[c]), frame.len());
                    frame.push(c);
                }
                None => break,
            }
        }
        let mut determined_at = vec![Vec::new(); frame.len()];
        for (j, &p) in packed.iter().enumerate() {
            let (_, combo) = span.reduce(lift(p));
            let top = 31 - combo.leading_zeros() as usize;
            determined_at[top].push((j, combo));
        }
        for list in determined_at.iter_mut() {
            // the frame element itself first
            list.sort_by_key(|&(_, c)| c.count_ones());
        }

        let mut parity = vec![0u8; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    parity[(a * n + b) * n + c] = parity_of(packed[a] ^ packed[b] ^ packed[c], genus);
                }
            }
        }
        let mut members = vec![false; 1 << (2 * genus)];
        let mut candidates = Vec::new();
        for m in s {
            if !members[m.packed() as usize] {
                members[m.packed() as usize] = true;
                candidates.push(m.packed());
            }
        }
        SplitSearch {
            genus,
            n,
            target: target.clone(),
            determined_at,
            parity,
            members,
            candidates,
            budget,
            nodes: 0,
            images: vec![0; n],
            assigned: Vec::with_capacity(n),
            frame_images: Vec::new(),
        }
    }

    fn consistent(&self, j: usize, value: u32) -> bool {
        let n = self.n;
        for (x, &a) in self.assigned.iter().enumerate() {
            let va = value ^ self.images[a];
            for &b in &self.assigned[x + 1..] {
                if parity_of(va ^ self.images[b], self.genus) != self.parity[(j * n + a) * n + b] {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, level: usize, span: &Span) -> Result<bool> {
        if level == self.determined_at.len() {
            return Ok(true);
        }
        for ci in 0..self.candidates.len() {
            let c = self.candidates[ci];
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            let lifted = (c << 1) | 1;
            if span.contains(lifted) {
                continue;
            }
            self.frame_images.push(c);
            let before = self.assigned.len();
            let mut ok = true;
            for idx in 0..self.determined_at[level].len() {
                let (j, combo) = self.determined_at[level][idx];
                let value = (0..=level)
                    .filter(|l| (combo >> l) & 1 == 1)
                    .fold(0, |acc, l| acc ^ self.frame_images[l]);
                if !self.members[value as usize] || !self.consistent(j, value) {
                    ok = false;
                    break;
                }
                self.images[j] = value;
                self.assigned.push(j);
            }
            if ok {
                let mut next = span.clone();
                next.insert(lifted, level);
                if self.run(level + 1, &next)? {
                    return Ok(true);
                }
            }
            self.assigned.truncate(before);
            self.frame_images.pop();
        }
        Ok(false)
    }

    fn witness(&self) -> Result<CharTuple> {
        let entries = self
            .images
            .iter()
            .map(|&p| Characteristic::from_packed(self.genus, p))
            .collect::<Result<Vec<_>>>()?;
        CharTuple::new(self.genus, entries)
    }
}

/// Outcome of [`detect_split`] when a split is found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitWitness {
    pub k: usize,
    /// Sub-tuple of the vanishing set in the orbit of `I_k`, aligned with `I_k`.
    pub witness: CharTuple,
    pub nodes: u64,
}

/// Searches `s` for a sub-tuple in the orbit of `I_k`, within `budget` nodes.
pub fn detect_split_with_budget(s: &[Characteristic], genus: usize, k: usize, budget: u64) -> Result<Option<SplitWitness>> {
    let target = product_split_tuple(genus, k)?;
    if let Some(m) = s.iter().find(|m| m.genus() != genus) {
        return Err(Error::GenusMismatch {
            left: genus,
            right: m.genus(),
        });
    }
    if let Some(index) = s.iter().position(|m| !m.is_even()) {
        return Err(Error::OddEntry { index });
    }
    let distinct: HashSet<_> = s.iter().collect();
    if distinct.len() < target.len() {
        return Ok(None);
    }
    let mut search = SplitSearch::new(s, &target, budget);
    if !search.run(0, &Span::default())? {
        return Ok(None);
    }
    let witness = search.witness()?;
    if !tuples_equivalent(&witness, &search.target)? {
        return Err(Error::Invalid("split search produced an inequivalent witness".into()));
    }
    Ok(Some(SplitWitness {
        k,
        witness,
        nodes: search.nodes,
    }))
}

/// [`detect_split_with_budget`] with the default budget.
pub fn detect_split(s: &[Characteristic], genus: usize, k: usize) -> Result<Option<SplitWitness>> {
    detect_split_with_budget(s, genus, k, SPLIT_NODE_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFlags {
    pub schottky_vanishes: bool,
    pub theta_null_vanishes: bool,
    pub f1_vanishes: bool,
}

/// Facts about the factors of a split, supplied by the caller or measured on
/// block factors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorFlags {
    /// For a 1 + 3 split: whether the genus-3 factor is hyperelliptic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus3_hyperelliptic: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Elliptic,
    /// Indecomposable genus 2.
    GenusTwo,
    DecomposableGenusTwo,
    NonHyperellipticGenusThree,
    HyperellipticGenusThree,
    DecomposableGenusThree,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorReport {
    pub indices: Vec<usize>,
    pub genus: usize,
    pub vanishing_count: usize,
    pub kind: FactorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormMagnitudes {
    #[serde(rename = "FT")]
    pub schottky: f64,
    #[serde(rename = "THETANULL")]
    pub theta_null: f64,
    #[serde(rename = "F1")]
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumReport {
    pub label: Label,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form_magnitudes: Option<FormMagnitudes>,
    pub flags: FormFlags,
    pub vanishing_set: Vec<Characteristic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    pub splits: Vec<SplitWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<FactorReport>,
    pub threshold: f64,
    pub warnings: Vec<String>,
}

/// Vanishing count of a product from its factors' even and vanishing counts.
fn product_vanishing_count(factors: &[(usize, usize)]) -> usize {
    let total: usize = 1 << (factors.iter().map(|f| f.0).sum::<usize>() - 1);
    let genus: usize = factors.iter().map(|f| f.0).sum();
    let evens = total * ((1 << genus) + 1);
    evens - factors.iter().map(|&(g, v)| EVENS[g] - v).product::<usize>()
}

fn count_elliptic_times(genus3_vanishing: usize) -> usize {
    product_vanishing_count(&[(1, 0), (3, genus3_vanishing)])
}

/// Label of a point in `Z(F_T) ∩ Z(THETA_NULL) ∩ Z(F_1)` from its splits.
fn label_from_splits(
    one_three: bool,
    two_two: bool,
    count: usize,
    factor_flags: &FactorFlags,
) -> std::result::Result<Label, String> {
    let x5 = product_vanishing_count(&[(1, 0), (1, 0), (2, 0)]);
    let x6 = product_vanishing_count(&[(1, 0), (1, 0), (1, 0), (1, 0)]);
    match (one_three, two_two) {
        (false, false) => Ok(Label::X3),
        (true, false) => match factor_flags.genus3_hyperelliptic {
            Some(false) => Ok(Label::X3),
            Some(true) => Ok(Label::X4),
            None if count == count_elliptic_times(0) => Ok(Label::X3),
            None if count == count_elliptic_times(1) => Ok(Label::X4),
            None => Err(format!("1+3 split with {count} vanishing constants")),
        },
        (false, true) => Ok(Label::X4),
        (true, true) if count == x6 => Ok(Label::X6),
        (true, true) if count == x5 => Ok(Label::X5),
        (true, true) => Err(format!("1+3 and 2+2 splits with {count} vanishing constants")),
    }
}

fn split_tuple_genus4(s: &[Characteristic]) -> Result<Vec<SplitWitness>> {
    let mut out = Vec::new();
    for k in 1..=2 {
        if let Some(w) = detect_split(s, 4, k)? {
            out.push(w);
        }
    }
    Ok(out)
}

fn check_pattern(flags: &FormFlags, s: &[Characteristic]) -> Result<()> {
    let inconsistent = |msg: &str| Err(Error::InconsistentFlags(msg.into()));
    if flags.theta_null_vanishes && s.is_empty() {
        return inconsistent("THETANULL vanishes but no theta constant does");
    }
    if !flags.theta_null_vanishes && !s.is_empty() {
        return inconsistent("THETANULL is nonzero but some theta constant vanishes");
    }
    if flags.theta_null_vanishes && flags.f1_vanishes && s.len() < 2 {
        return inconsistent("F1 vanishes on THETANULL = 0 only when two constants vanish");
    }
    if flags.theta_null_vanishes && !flags.f1_vanishes && s.len() >= 2 {
        return inconsistent("F1 is nonzero but two or more constants vanish");
    }
    Ok(())
}

/// Decision chain on synthetic evidence. Never returns `UNRESOLVED`;
/// inconsistent inputs are errors.
pub fn classify_from_pattern(flags: FormFlags, s: &[Characteristic], factor_flags: &FactorFlags) -> Result<StratumReport> {
    if s.iter().any(|m| m.genus() != 4) {
        return Err(Error::Invalid("vanishing set must hold genus-4 characteristics".into()));
    }
    if let Some(index) = s.iter().position(|m| !m.is_even()) {
        return Err(Error::OddEntry { index });
    }
    check_pattern(&flags, s)?;
    let mut report = StratumReport {
        label: Label::X0,
        form_magnitudes: None,
        flags,
        vanishing_set: s.to_vec(),
        margin: None,
        splits: Vec::new(),
        factors: Vec::new(),
        threshold: DEFAULT_THRESHOLD,
        warnings: Vec::new(),
    };
    report.label = if !flags.schottky_vanishes {
        Label::X0
    } else if !flags.theta_null_vanishes {
        Label::X1
    } else if !flags.f1_vanishes {
        Label::X2
    } else {
        report.splits = split_tuple_genus4(s)?;
        let one_three = report.splits.iter().any(|w| w.k == 1);
        let two_two = report.splits.iter().any(|w| w.k == 2);
        label_from_splits(one_three, two_two, s.len(), factor_flags).map_err(Error::InconsistentFlags)?
    };
    Ok(report)
}

/// Connected components of the off-diagonal support of `tau`.
fn block_components(tau: &SiegelPoint) -> Vec<Vec<usize>> {
    let g = tau.genus();
    let t = tau.tau();
    let scale = t.iter().fold(1.0f64, |a, z| a.max(z.norm()));
    let mut comp: Vec<usize> = (0..g).collect();
    fn root(comp: &mut [usize], mut i: usize) -> usize {
        while comp[i] != i {
            i = comp[i];
        }
        i
    }
    for i in 0..g {
        for j in i + 1..g {
            if t[(i, j)].norm() > 1e-14 * scale {
                let (a, b) = (root(&mut comp, i), root(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..g {
        let r = root(&mut comp, i);
        match out.iter_mut().find(|c| root(&mut comp, c[0]) == r) {
            Some(c) => c.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

fn factor_kind(genus: usize, vanishing: usize) -> Option<FactorKind> {
    match (genus, vanishing) {
        (1, 0) => Some(FactorKind::Elliptic),
        (2, 0) => Some(FactorKind::GenusTwo),
        (2, _) => Some(FactorKind::DecomposableGenusTwo),
        (3, 0) => Some(FactorKind::NonHyperellipticGenusThree),
        (3, 1) => Some(FactorKind::HyperellipticGenusThree),
        (3, _) => Some(FactorKind::DecomposableGenusThree),
        _ => None,
    }
}

/// Label implied by the factor kinds of a block point.
fn label_from_factors(factors: &[FactorReport]) -> Option<Label> {
    use FactorKind::*;
    // count elliptic curves hidden inside decomposable factors
    let elliptic: usize = factors
        .iter()
        .map(|f| match (f.kind, f.vanishing_count) {
            (Elliptic, _) => 1,
            (DecomposableGenusTwo, _) => 2,
            (DecomposableGenusThree, 6) => 1,
            (DecomposableGenusThree, _) => 3,
            _ => 0,
        })
        .sum();
    let kinds: Vec<FactorKind> = factors.iter().map(|f| f.kind).collect();
    match elliptic {
        4 => Some(Label::X6),
        2 => Some(Label::X5),
        _ if kinds.contains(&NonHyperellipticGenusThree) => Some(Label::X3),
        _ if kinds.contains(&HyperellipticGenusThree) => Some(Label::X4),
        _ if kinds == [GenusTwo, GenusTwo] => Some(Label::X4),
        _ => None,
    }
}

/// Classifies a genus-4 point at relative vanishing threshold `rel_threshold`.
pub fn classify(tau: &SiegelPoint, rel_threshold: f64) -> Result<StratumReport> {
    if tau.genus() != 4 {
        return Err(Error::GenusMismatch {
            left: 4,
            right: tau.genus(),
        });
    }
    check_threshold(rel_threshold)?;
    let constants: Vec<(Characteristic, Complex64)> = even_theta_constants(tau, CLASSIFY_TARGET)?
        .into_iter()
        .map(|(m, t)| (m, t.value))
        .collect();
    let values: Vec<Complex64> = constants.iter().map(|c| c.1).collect();
    let forms = forms_from_constants(4, &values);
    let van = vanishing_set_from_constants(&constants, rel_threshold);
    let s = van.entries.clone();
    let flags = FormFlags {
        schottky_vanishes: forms.get(FormId::Schottky).relative_magnitude < rel_threshold,
        theta_null_vanishes: !s.is_empty(),
        f1_vanishes: s.len() >= 2,
    };
    let mut report = StratumReport {
        label: Label::X0,
        form_magnitudes: Some(FormMagnitudes {
            schottky: forms.schottky.relative_magnitude,
            theta_null: forms.theta_null.relative_magnitude,
            f1: forms.f1.relative_magnitude,
        }),
        flags,
        vanishing_set: s.clone(),
        margin: Some(van.margin),
        splits: Vec::new(),
        factors: Vec::new(),
        threshold: rel_threshold,
        warnings: Vec::new(),
    };
    if !van.well_separated() {
        report.warnings.push(format!(
            "vanishing set is ill-separated: margin {:.3e} < {REQUIRED_MARGIN}",
            van.margin
        ));
    }
    if !flags.schottky_vanishes {
        report.label = Label::X0;
        return Ok(report);
    }
    if !flags.theta_null_vanishes {
        report.label = Label::X1;
        return Ok(report);
    }
    if !flags.f1_vanishes {
        report.label = Label::X2;
        return Ok(report);
    }

    match split_tuple_genus4(&s) {
        Ok(splits) => report.splits = splits,
        Err(e) if e.is_cap_exceeded() => {
            report.warnings.push(format!("split search: {e}"));
            report.label = Label::Unresolved;
            return Ok(report);
        }
        Err(e) => return Err(e),
    }
    let one_three = report.splits.iter().any(|w| w.k == 1);
    let two_two = report.splits.iter().any(|w| w.k == 2);
    let by_splits = match label_from_splits(one_three, two_two, s.len(), &FactorFlags::default()) {
        Ok(l) => l,
        Err(msg) => {
            report.warnings.push(msg);
            Label::Unresolved
        }
    };
    if by_splits == Label::X3 && !one_three && s.len() != HYPERELLIPTIC_4_COUNT {
        report.warnings.push(format!(
            "no split, but {} vanishing constants where a hyperelliptic point has {HYPERELLIPTIC_4_COUNT}",
            s.len()
        ));
    }
    report.label = by_splits;

    let components = block_components(tau);
    if components.len() > 1 {
        for indices in components {
            let sub = tau.submatrix(&indices)?;
            let genus = indices.len();
            let factor_van = vanishing_set(&sub, rel_threshold)?;
            let vanishing_count = factor_van.entries.len();
            let Some(kind) = factor_kind(genus, vanishing_count) else {
                report.warnings.push(format!("unexpected factor of genus {genus}"));
                report.label = Label::Unresolved;
                return Ok(report);
            };
            report.factors.push(FactorReport {
                indices,
                genus,
                vanishing_count,
                kind,
            });
        }
        let expected =
            product_vanishing_count(&report.factors.iter().map(|f| (f.genus, f.vanishing_count)).collect::<Vec<_>>());
        if expected != s.len() {
            report.warnings.push(format!(
                "factors predict {expected} vanishing constants, found {}",
                s.len()
            ));
            report.label = Label::Unresolved;
        } else if let Some(by_factors) = label_from_factors(&report.factors) {
            if by_factors != report.label {
                report.warnings.push(format!(
                    "factor structure gives {by_factors}, split structure gives {}",
                    report.label
                ));
                report.label = Label::Unresolved;
            }
        }
    }
    Ok(report)
}
