//! Orbit invariants of characteristic tuples and a brute-force orbit oracle.
//!
//! Two tuples of even characteristics lie in the same orbit of the affine
//! `Sp(2g, F2)` action exactly when they share their even-cardinality linear
//! relations and the parities `e(m_i + m_j + m_k)` of all triples.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::characteristic::{CharTuple, Characteristic};
use crate::error::{Error, Result};
use crate::symplectic::{act_on_tuple, standard_generators, SymplecticModTwo};

/// Largest genus for which [`orbit_bfs`] runs.
pub const BFS_MAX_GENUS: usize = 3;
/// Largest orbit [`orbit_bfs`] will materialize.
pub const BFS_MAX_ORBIT: usize = 1 << 24;

/// A set of tuple indices, as a little bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct IndexSet(Vec<u64>);

impl IndexSet {
    fn empty(len: usize) -> Self {
        IndexSet(vec![0; len.div_ceil(64).max(1)])
    }

    fn unit(len: usize, i: usize) -> Self {
        let mut s = IndexSet::empty(len);
        s.0[i / 64] |= 1 << (i % 64);
        s
    }

    fn contains(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    fn xor_assign(&mut self, other: &IndexSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn indices(&self, len: usize) -> Vec<usize> {
        (0..len).filter(|&i| self.contains(i)).collect()
    }
}

/// Reduced row echelon form with pivots at the lowest set index.
fn reduced_echelon(mut rows: Vec<IndexSet>) -> Vec<IndexSet> {
    let mut basis: Vec<IndexSet> = Vec::new();
    for mut r in rows.drain(..) {
        for b in &basis {
            let p = b.lowest().expect("basis rows are nonzero");
            if r.contains(p) {
                r.xor_assign(b);
            }
        }
        if let Some(p) = r.lowest() {
            for b in basis.iter_mut() {
                if b.contains(p) {
                    b.xor_assign(&r);
                }
            }
            basis.push(r);
        }
    }
    basis.sort_by_key(|b| b.lowest());
    basis
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TripleParity {
    pub indices: [usize; 3],
    pub parity: u8,
}

/// The data the orbit criterion compares.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitProfile {
    pub length: usize,
    /// Canonical basis of the space of even-size index sets with zero characteristic sum.
    pub relation_basis: Vec<Vec<usize>>,
    /// `e(m_i + m_j + m_k)` for `i < j < k`, in lexicographic order of the triple.
    pub triple_parities: Vec<TripleParity>,
}

fn relation_basis(entries: &[Characteristic]) -> Vec<Vec<usize>> {
    let p = entries.len();
    // Row-reduce the vectors (m_i, 1) while tracking which indices were combined;
    // rows that reduce to zero are even-size relations.
    let mut pivots: Vec<Option<(u32, IndexSet)>> = vec![None; 32];
    let mut relations = Vec::new();
    for (i, m) in entries.iter().enumerate() {
        let mut v = (m.packed() << 1) | 1;
        let mut combo = IndexSet::unit(p, i);
        for top in (0..32).rev() {
            if (v >> top) & 1 == 1 {
                if let Some((pv, pc)) = &pivots[top] {
                    v ^= pv;
                    combo.xor_assign(pc);
                }
            }
        }
        if v == 0 {
            relations.push(combo);
        } else {
            let top = 31 - v.leading_zeros() as usize;
            pivots[top] = Some((v, combo));
        }
    }
    reduced_echelon(relations)
        .into_iter()
        .map(|r| r.indices(p))
        .collect()
}

/// Profile of a nonempty tuple of even characteristics.
pub fn orbit_profile(tuple: &CharTuple) -> Result<OrbitProfile> {
    if tuple.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let e = tuple.entries();
    let p = e.len();
    let mut triples = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            let ij = e[i].add(&e[j])?;
            for k in j + 1..p {
                triples.push(TripleParity {
                    indices: [i, j, k],
                    parity: ij.add(&e[k])?.parity_bit(),
                });
            }
        }
    }
    Ok(OrbitProfile {
        length: p,
        relation_basis: relation_basis(e),
        triple_parities: triples,
    })
}

/// Invariant-based orbit test.
pub fn tuples_equivalent(first: &CharTuple, second: &CharTuple) -> Result<bool> {
    if first.genus() != second.genus() {
        return Err(Error::GenusMismatch {
            left: first.genus(),
            right: second.genus(),
        });
    }
    if first.len() != second.len() {
        return Err(Error::LengthMismatch {
            left: first.len(),
            right: second.len(),
        });
    }
    Ok(orbit_profile(first)? == orbit_profile(second)?)
}

fn tuple_key(t: &CharTuple) -> Vec<u8> {
    // 2g <= 6 bits per entry at the BFS genus cap
    t.entries().iter().map(|m| m.packed() as u8).collect()
}

/// Full orbit of `tuple` under the group generated by the reduced standard
/// generators, sorted lexicographically.
pub fn orbit_bfs(tuple: &CharTuple) -> Result<Vec<CharTuple>> {
    let g = tuple.genus();
    if g > BFS_MAX_GENUS {
        return Err(Error::GenusOutOfRange {
            genus: g,
            max: BFS_MAX_GENUS,
        });
    }
    let gens: Vec<SymplecticModTwo> = standard_generators(g)?
        .iter()
        .map(|s| s.reduce_mod2())
        .collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut orbit = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(tuple_key(tuple));
    queue.push_back(tuple.clone());
    while let Some(t) = queue.pop_front() {
        for gen in &gens {
            let next = act_on_tuple(gen, &t)?;
            if seen.insert(tuple_key(&next)) {
                if seen.len() > BFS_MAX_ORBIT {
                    return Err(Error::OrbitCapExceeded { cap: BFS_MAX_ORBIT });
                }
                queue.push_back(next);
            }
        }
        orbit.push(t);
    }
    orbit.sort();
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::{all_characteristics, ParityFilter};

    fn tuple(s: &[&str]) -> CharTuple {
        CharTuple::from_entries(s.iter().map(|x| x.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p = orbit_profile(&tuple(&["01|10", "01|10"])).unwrap();
        assert_eq!(p.relation_basis, vec![vec![0, 1]]);
        assert!(p.triple_parities.is_empty());

        let p = orbit_profile(&tuple(&["0|0", "0|1"])).unwrap();
        assert!(p.relation_basis.is_empty());

        let p = orbit_profile(&tuple(&["0|0", "0|1", "1|0"])).unwrap();
        assert_eq!(p.triple_parities.len(), 1);
        assert_eq!(p.triple_parities[0].parity, 1);

        let empty = CharTuple::new(2, vec![]).unwrap();
        assert_eq!(orbit_profile(&empty), Err(Error::EmptyTuple));
    }

    #[test]
    fn relations_are_even_zero_sums() {
        let evens = all_characteristics(3, ParityFilter::Even).unwrap();
        let t = CharTuple::new(3, evens.clone()).unwrap();
        let p = orbit_profile(&t).unwrap();
        // kernel of a 36 -> F2^7 map restricted to even weight
        assert_eq!(p.relation_basis.len(), 36 - 7);
        for rel in &p.relation_basis {
            assert_eq!(rel.len() % 2, 0);
            let sum = rel
                .iter()
                .fold(Characteristic::zero(3).unwrap(), |acc, &i| acc.add(&evens[i]).unwrap());
            assert_eq!(sum, Characteristic::zero(3).unwrap());
        }
        assert_eq!(p.triple_parities.len(), 36 * 35 * 34 / 6);
    }

    #[test]
    fn equivalence_examples() {
        let a = tuple(&["0|0", "0|1"]);
        assert!(tuples_equivalent(&a, &a).unwrap());
        assert!(tuples_equivalent(&a, &tuple(&["0|1", "1|0"])).unwrap());
        assert!(!tuples_equivalent(&tuple(&["0|0", "0|0"]), &a).unwrap());
        assert!(matches!(
            tuples_equivalent(&a, &tuple(&["0|0"])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            tuples_equivalent(&a, &tuple(&["00|00", "00|01"])),
            Err(Error::GenusMismatch { .. })
        ));
    }

    #[test]
    fn bfs_single_orbits() {
        assert_eq!(orbit_bfs(&tuple(&["0|0"])).unwrap().len(), 3);
        assert_eq!(orbit_bfs(&tuple(&["00|00"])).unwrap().len(), 10);
        assert_eq!(orbit_bfs(&tuple(&["000|000"])).unwrap().len(), 36);
        assert!(matches!(
            orbit_bfs(&tuple(&["0000|0000"])),
            Err(Error::GenusOutOfRange { .. })
        ));
    }

    #[test]
    fn bfs_orbit_is_closed() {
        let orbit = orbit_bfs(&tuple(&["00|00", "01|00"])).unwrap();
        let members: HashSet<_> = orbit.iter().cloned().collect();
        for gen in standard_generators(2).unwrap() {
            let gm = gen.reduce_mod2();
            for t in &orbit {
                assert!(members.contains(&act_on_tuple(&gm, t).unwrap()));
            }
        }
    }
}
