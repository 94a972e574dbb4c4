//! Theta characteristics over F2.
//!
//! A characteristic `[eps|delta]` of genus `g` is stored as two `g`-bit masks.
//! Column `i` (0-based, left to right) lives at bit `g - 1 - i`, so comparing
//! `(eps, delta)` as integers gives the lexicographic order on the printed form
//! `"e1..eg|d1..dg"`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest genus the bit-packed representation supports.
pub const MAX_GENUS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic {
    genus: u8,
    eps: u16,
    delta: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityFilter {
    All,
    Even,
    Odd,
}

impl ParityFilter {
    fn accepts(self, p: Parity) -> bool {
        match self {
            ParityFilter::All => true,
            ParityFilter::Even => p == Parity::Even,
            ParityFilter::Odd => p == Parity::Odd,
        }
    }
}

fn check_genus(genus: usize) -> Result<()> {
    if genus == 0 || genus > MAX_GENUS {
        return Err(Error::GenusOutOfRange {
            genus,
            max: MAX_GENUS,
        });
    }
    Ok(())
}

fn mask(bits: usize) -> u16 {
    if bits >= 16 {
        u16::MAX
    } else {
        (1u16 << bits) - 1
    }
}

impl Characteristic {
    /// Builds a characteristic from its two bit masks (column 0 is the high bit).
    pub fn new(genus: usize, eps: u16, delta: u16) -> Result<Self> {
        check_genus(genus)?;
        let m = mask(genus);
        if eps & !m != 0 || delta & !m != 0 {
            return Err(Error::Invalid(format!(
                "bit mask wider than genus {genus}"
            )));
        }
        Ok(Characteristic {
            genus: genus as u8,
            eps,
            delta,
        })
    }

    /// Builds a characteristic from explicit 0/1 columns.
    pub fn from_bits(eps: &[u8], delta: &[u8]) -> Result<Self> {
        if eps.len() != delta.len() {
            return Err(Error::GenusMismatch {
                left: eps.len(),
                right: delta.len(),
            });
        }
        let pack = |bits: &[u8]| -> Result<u16> {
            bits.iter().try_fold(0u16, |acc, &b| match b {
                0 | 1 => Ok((acc << 1) | b as u16),
                _ => Err(Error::Invalid(format!("entry {b} is not a bit"))),
            })
        };
        Characteristic::new(eps.len(), pack(eps)?, pack(delta)?)
    }

    pub fn zero(genus: usize) -> Result<Self> {
        Characteristic::new(genus, 0, 0)
    }

    pub fn genus(&self) -> usize {
        self.genus as usize
    }

    pub fn eps(&self) -> u16 {
        self.eps
    }

    pub fn delta(&self) -> u16 {
        self.delta
    }

    pub fn eps_bit(&self, column: usize) -> u8 {
        ((self.eps >> (self.genus() - 1 - column)) & 1) as u8
    }

    pub fn delta_bit(&self, column: usize) -> u8 {
        ((self.delta >> (self.genus() - 1 - column)) & 1) as u8
    }

    /// The characteristic as a single `2g`-bit vector `eps << g | delta`.
    pub fn packed(&self) -> u32 {
        ((self.eps as u32) << self.genus) | self.delta as u32
    }

    pub fn from_packed(genus: usize, packed: u32) -> Result<Self> {
        check_genus(genus)?;
        let m = mask(genus) as u32;
        Characteristic::new(genus, ((packed >> genus) & m) as u16, (packed & m) as u16)
    }

    pub fn parity(&self) -> Parity {
        if (self.eps & self.delta).count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// `e(m)` as a bit.
    pub fn parity_bit(&self) -> u8 {
        ((self.eps & self.delta).count_ones() % 2) as u8
    }

    /// Componentwise sum over F2.
    pub fn add(&self, other: &Characteristic) -> Result<Characteristic> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: other.genus(),
            });
        }
        Ok(Characteristic {
            genus: self.genus,
            eps: self.eps ^ other.eps,
            delta: self.delta ^ other.delta,
        })
    }

    /// Columns `start..start + len` as a characteristic of genus `len`.
    pub fn restrict(&self, start: usize, len: usize) -> Result<Characteristic> {
        if len == 0 || start + len > self.genus() {
            return Err(Error::Invalid(format!(
                "columns {start}..{} out of range for genus {}",
                start + len,
                self.genus
            )));
        }
        let shift = self.genus() - start - len;
        let m = mask(len);
        Characteristic::new(len, (self.eps >> shift) & m, (self.delta >> shift) & m)
    }

    /// Juxtaposes two characteristics: the columns of `self` followed by those of `other`.
    pub fn concat(&self, other: &Characteristic) -> Result<Characteristic> {
        let genus = self.genus() + other.genus();
        check_genus(genus)?;
        Characteristic::new(
            genus,
            (self.eps << other.genus) | other.eps,
            (self.delta << other.genus) | other.delta,
        )
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.genus() {
            write!(f, "{}", self.eps_bit(i))?;
        }
        f.write_str("|")?;
        for i in 0..self.genus() {
            write!(f, "{}", self.delta_bit(i))?;
        }
        Ok(())
    }
}

impl FromStr for Characteristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseCharacteristic(s.to_string());
        let (e, d) = s.trim().split_once('|').ok_or_else(bad)?;
        let bits = |part: &str| -> Result<Vec<u8>> {
            part.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(bad()),
                })
                .collect()
        };
        let (e, d) = (bits(e)?, bits(d)?);
        if e.is_empty() || e.len() != d.len() {
            return Err(bad());
        }
        Characteristic::from_bits(&e, &d).map_err(|_| bad())
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Characteristic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Free-function form of [`Characteristic::parity`].
pub fn parity(m: &Characteristic) -> Parity {
    m.parity()
}

/// Free-function form of [`Characteristic::add`].
pub fn add(m1: &Characteristic, m2: &Characteristic) -> Result<Characteristic> {
    m1.add(m2)
}

/// Every characteristic of genus `g` passing `filter`, in lexicographic order.
pub fn all_characteristics(genus: usize, filter: ParityFilter) -> Result<Vec<Characteristic>> {
    check_genus(genus)?;
    let n = 1u32 << genus;
    let mut out = Vec::new();
    for eps in 0..n {
        for delta in 0..n {
            let m = Characteristic {
                genus: genus as u8,
                eps: eps as u16,
                delta: delta as u16,
            };
            if filter.accepts(m.parity()) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// `(even, odd)` counts, by enumeration.
pub fn parity_census(genus: usize) -> Result<(usize, usize)> {
    let all = all_characteristics(genus, ParityFilter::All)?;
    let even = all.iter().filter(|m| m.is_even()).count();
    Ok((even, all.len() - even))
}

/// An ordered tuple of even characteristics of one genus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharTuple {
    genus: usize,
    entries: Vec<Characteristic>,
}

impl CharTuple {
    pub fn new(genus: usize, entries: Vec<Characteristic>) -> Result<Self> {
        check_genus(genus)?;
        for (index, m) in entries.iter().enumerate() {
            if m.genus() != genus {
                return Err(Error::GenusMismatch {
                    left: genus,
                    right: m.genus(),
                });
            }
            if !m.is_even() {
                return Err(Error::OddEntry { index });
            }
        }
        Ok(CharTuple { genus, entries })
    }

    /// Genus taken from the first entry; the tuple must be nonempty.
    pub fn from_entries(entries: Vec<Characteristic>) -> Result<Self> {
        let genus = entries.first().ok_or(Error::EmptyTuple)?.genus();
        CharTuple::new(genus, entries)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn entries(&self) -> &[Characteristic] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<Characteristic> {
        self.entries
    }
}

impl Serialize for CharTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CharTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<Characteristic>::deserialize(deserializer)?;
        CharTuple::from_entries(entries).map_err(serde::de::Error::custom)
    }
}

fn check_split(genus: usize, k: usize) -> Result<()> {
    check_genus(genus)?;
    if k == 0 || k >= genus {
        return Err(Error::SplitOutOfRange { genus, k });
    }
    Ok(())
}

/// The tuple `I_k`: every genus-`g` characteristic whose first `k` columns are
/// odd and whose last `g - k` columns are odd, in lexicographic order.
pub fn product_split_tuple(genus: usize, k: usize) -> Result<CharTuple> {
    check_split(genus, k)?;
    let entries = all_characteristics(genus, ParityFilter::Even)?
        .into_iter()
        .filter(|m| {
            let head = m.restrict(0, k).expect("k < g");
            let tail = m.restrict(k, genus - k).expect("k < g");
            !head.is_even() && !tail.is_even()
        })
        .collect();
    CharTuple::new(genus, entries)
}

/// `n_k`, the length of [`product_split_tuple`].
pub fn n_k(genus: usize, k: usize) -> Result<usize> {
    check_split(genus, k)?;
    let (_, odd_head) = parity_census(k)?;
    let (_, odd_tail) = parity_census(genus - k)?;
    Ok(odd_head * odd_tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> Characteristic {
        s.parse().unwrap()
    }

    #[test]
    fn genus_one_lists() {
        let even: Vec<String> = all_characteristics(1, ParityFilter::Even)
            .unwrap()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(even, ["0|0", "0|1", "1|0"]);
        let odd = all_characteristics(1, ParityFilter::Odd).unwrap();
        assert_eq!(odd, vec![ch("1|1")]);
        assert_eq!(all_characteristics(1, ParityFilter::All).unwrap().len(), 4);
    }

    #[test]
    fn genus_zero_rejected() {
        assert!(matches!(
            all_characteristics(0, ParityFilter::All),
            Err(Error::GenusOutOfRange { .. })
        ));
    }

    #[test]
    fn census_by_enumeration() {
        // 2^{g-1}(2^g + 1) even, 2^{g-1}(2^g - 1) odd
        for g in 1..=4 {
            let (e, o) = parity_census(g).unwrap();
            assert_eq!(e, (1 << (g - 1)) * ((1 << g) + 1));
            assert_eq!(o, (1 << (g - 1)) * ((1 << g) - 1));
        }
        assert_eq!(all_characteristics(4, ParityFilter::Even).unwrap().len(), 136);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(ch("0|0").parity(), Parity::Even);
        assert_eq!(ch("1|1").parity(), Parity::Odd);
        assert_eq!(ch("11|11").parity(), Parity::Even);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(ch("0|1").add(&ch("0|1")).unwrap(), ch("0|0"));
        assert_eq!(ch("0|1").add(&ch("1|0")).unwrap(), ch("1|1"));
        assert_eq!(ch("01|10").add(&ch("10|10")).unwrap(), ch("11|00"));
        assert!(matches!(
            ch("0|1").add(&ch("00|11")),
            Err(Error::GenusMismatch { .. })
        ));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "|", "01|1", "0a|01", "0101", "|0"] {
            assert!(s.parse::<Characteristic>().is_err(), "{s:?}");
        }
        assert_eq!(ch("0110|1001").to_string(), "0110|1001");
    }

    #[test]
    fn restrict_and_concat() {
        let m = ch("0110|1001");
        let head = m.restrict(0, 1).unwrap();
        let tail = m.restrict(1, 3).unwrap();
        assert_eq!(head, ch("0|1"));
        assert_eq!(tail, ch("110|001"));
        assert_eq!(head.concat(&tail).unwrap(), m);
    }

    #[test]
    fn split_tuples() {
        let i21 = product_split_tuple(2, 1).unwrap();
        assert_eq!(i21.entries(), &[ch("11|11")]);
        assert_eq!(product_split_tuple(4, 1).unwrap().len(), 28);
        assert_eq!(product_split_tuple(4, 2).unwrap().len(), 36);
        assert_eq!(n_k(2, 1).unwrap(), 1);
        assert_eq!(n_k(4, 1).unwrap(), 28);
        assert_eq!(n_k(4, 2).unwrap(), 36);
        for g in 2..=5 {
            for k in 1..g {
                assert_eq!(product_split_tuple(g, k).unwrap().len(), n_k(g, k).unwrap());
                assert_eq!(n_k(g, k).unwrap(), n_k(g, g - k).unwrap());
            }
        }
        assert!(matches!(n_k(4, 4), Err(Error::SplitOutOfRange { .. })));
        assert!(matches!(product_split_tuple(4, 0), Err(Error::SplitOutOfRange { .. })));
    }

    #[test]
    fn tuple_rejects_odd_and_mixed_genus() {
        assert!(matches!(
            CharTuple::from_entries(vec![ch("0|0"), ch("1|1")]),
            Err(Error::OddEntry { index: 1 })
        ));
        assert!(matches!(
            CharTuple::from_entries(vec![ch("0|0"), ch("00|00")]),
            Err(Error::GenusMismatch { .. })
        ));
        let t = CharTuple::from_entries(vec![ch("0|0"), ch("1|0")]).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"["0|0","1|0"]"#);
        assert_eq!(serde_json::from_str::<CharTuple>(&json).unwrap(), t);
    }
}
