//! `Sp(2g, Z)` in block form, its reduction mod 2, and the affine action of
//! the reduction on theta characteristics.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::characteristic::{CharTuple, Characteristic, MAX_GENUS};
use crate::error::{Error, Result};

/// `gamma = [[A, B], [C, D]]` with integer blocks, satisfying `gamma^T J gamma = J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticInteger {
    genus: usize,
    a: DMatrix<i64>,
    b: DMatrix<i64>,
    c: DMatrix<i64>,
    d: DMatrix<i64>,
}

fn check_block_genus(genus: usize) -> Result<()> {
    if genus == 0 || genus > MAX_GENUS {
        return Err(Error::GenusOutOfRange {
            genus,
            max: MAX_GENUS,
        });
    }
    Ok(())
}

impl SymplecticInteger {
    pub fn new(a: DMatrix<i64>, b: DMatrix<i64>, c: DMatrix<i64>, d: DMatrix<i64>) -> Result<Self> {
        let g = a.nrows();
        check_block_genus(g)?;
        for m in [&a, &b, &c, &d] {
            if m.nrows() != g || m.ncols() != g {
                return Err(Error::NotSquare {
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
        }
        let gamma = SymplecticInteger { genus: g, a, b, c, d };
        if !gamma.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(gamma)
    }

    pub fn identity(genus: usize) -> Self {
        let id = DMatrix::<i64>::identity(genus, genus);
        let zero = DMatrix::<i64>::zeros(genus, genus);
        SymplecticInteger {
            genus,
            a: id.clone(),
            b: zero.clone(),
            c: zero,
            d: id,
        }
    }

    /// `J = [[0, 1], [-1, 0]]`, acting as `tau -> -tau^{-1}`.
    pub fn inversion(genus: usize) -> Self {
        let id = DMatrix::<i64>::identity(genus, genus);
        let zero = DMatrix::<i64>::zeros(genus, genus);
        SymplecticInteger {
            genus,
            a: zero.clone(),
            b: id.clone(),
            c: -id,
            d: zero,
        }
    }

    /// `[[1, S], [0, 1]]` for symmetric `S`, acting as `tau -> tau + S`.
    pub fn translation(s: DMatrix<i64>) -> Result<Self> {
        let g = s.nrows();
        if s.ncols() != g {
            return Err(Error::NotSquare {
                rows: g,
                cols: s.ncols(),
            });
        }
        if s != s.transpose() {
            return Err(Error::NotSymplectic);
        }
        let id = DMatrix::<i64>::identity(g, g);
        SymplecticInteger::new(id.clone(), s, DMatrix::zeros(g, g), id)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn a(&self) -> &DMatrix<i64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<i64> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<i64> {
        &self.c
    }

    pub fn d(&self) -> &DMatrix<i64> {
        &self.d
    }

    /// The full `2g x 2g` matrix.
    pub fn to_full(&self) -> DMatrix<i64> {
        let g = self.genus;
        let mut m = DMatrix::<i64>::zeros(2 * g, 2 * g);
        m.view_mut((0, 0), (g, g)).copy_from(&self.a);
        m.view_mut((0, g), (g, g)).copy_from(&self.b);
        m.view_mut((g, 0), (g, g)).copy_from(&self.c);
        m.view_mut((g, g), (g, g)).copy_from(&self.d);
        m
    }

    fn from_full_unchecked(m: &DMatrix<i64>) -> Self {
        let g = m.nrows() / 2;
        SymplecticInteger {
            genus: g,
            a: m.view((0, 0), (g, g)).into_owned(),
            b: m.view((0, g), (g, g)).into_owned(),
            c: m.view((g, 0), (g, g)).into_owned(),
            d: m.view((g, g), (g, g)).into_owned(),
        }
    }

    pub fn is_symplectic(&self) -> bool {
        // A^T D - C^T B = 1, A^T C and B^T D symmetric
        let g = self.genus;
        let atc = self.a.transpose() * &self.c;
        let btd = self.b.transpose() * &self.d;
        let cross = self.a.transpose() * &self.d - self.c.transpose() * &self.b;
        atc == atc.transpose() && btd == btd.transpose() && cross == DMatrix::identity(g, g)
    }

    pub fn mul(&self, other: &SymplecticInteger) -> Result<SymplecticInteger> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(SymplecticInteger::from_full_unchecked(
            &(self.to_full() * other.to_full()),
        ))
    }

    /// `[[D^T, -B^T], [-C^T, A^T]]`.
    pub fn inverse(&self) -> SymplecticInteger {
        SymplecticInteger {
            genus: self.genus,
            a: self.d.transpose(),
            b: -self.b.transpose(),
            c: -self.c.transpose(),
            d: self.a.transpose(),
        }
    }

    pub fn reduce_mod2(&self) -> SymplecticModTwo {
        let bits = |m: &DMatrix<i64>| BitMatrix::from_fn(self.genus, |i, j| m[(i, j)].rem_euclid(2) == 1);
        SymplecticModTwo {
            genus: self.genus,
            a: bits(&self.a),
            b: bits(&self.b),
            c: bits(&self.c),
            d: bits(&self.d),
        }
    }
}

fn rows_of(m: &DMatrix<i64>) -> Vec<Vec<i64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn matrix_of(rows: &[Vec<i64>]) -> std::result::Result<DMatrix<i64>, String> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err("blocks must be square".into());
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

#[derive(Serialize, Deserialize)]
struct BlocksJson<T> {
    #[serde(rename = "A")]
    a: Vec<Vec<T>>,
    #[serde(rename = "B")]
    b: Vec<Vec<T>>,
    #[serde(rename = "C")]
    c: Vec<Vec<T>>,
    #[serde(rename = "D")]
    d: Vec<Vec<T>>,
}

impl Serialize for SymplecticInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BlocksJson {
            a: rows_of(&self.a),
            b: rows_of(&self.b),
            c: rows_of(&self.c),
            d: rows_of(&self.d),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymplecticInteger {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BlocksJson::<i64>::deserialize(deserializer)?;
        let m = |r: &[Vec<i64>]| matrix_of(r).map_err(D::Error::custom);
        SymplecticInteger::new(m(&raw.a)?, m(&raw.b)?, m(&raw.c)?, m(&raw.d)?).map_err(D::Error::custom)
    }
}

/// Square bit matrix of size `n <= 16`. Row `i` is a mask whose bit `n - 1 - j`
/// holds entry `(i, j)`, matching the column layout of [`Characteristic`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<u16>,
}

impl BitMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).fold(0u16, |acc, j| (acc << 1) | f(i, j) as u16))
            .collect();
        BitMatrix { n, rows }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix::from_fn(n, |i, j| i == j)
    }

    pub fn zero(n: usize) -> Self {
        BitMatrix { n, rows: vec![0; n] }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> (self.n - 1 - j)) & 1 == 1
    }

    pub fn transpose(&self) -> Self {
        BitMatrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn mul_vec(&self, v: u16) -> u16 {
        self.rows
            .iter()
            .fold(0u16, |acc, &r| (acc << 1) | ((r & v).count_ones() & 1) as u16)
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        let t = other.transpose();
        BitMatrix::from_fn(self.n, |i, j| (self.rows[i] & t.rows[j]).count_ones() & 1 == 1)
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        BitMatrix {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(x, y)| x ^ y).collect(),
        }
    }

    /// `diag(self * other^T)` packed as a vector.
    pub fn diag_mul_transpose(&self, other: &BitMatrix) -> u16 {
        self.rows
            .iter()
            .zip(&other.rows)
            .fold(0u16, |acc, (x, y)| (acc << 1) | ((x & y).count_ones() & 1) as u16)
    }

    fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }
}

/// The reduction of a symplectic matrix mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticModTwo {
    genus: usize,
    a: BitMatrix,
    b: BitMatrix,
    c: BitMatrix,
    d: BitMatrix,
}

impl SymplecticModTwo {
    pub fn new(a: BitMatrix, b: BitMatrix, c: BitMatrix, d: BitMatrix) -> Result<Self> {
        let g = a.n;
        check_block_genus(g)?;
        if [&b, &c, &d].iter().any(|m| m.n != g) {
            return Err(Error::NotSquare { rows: g, cols: 0 });
        }
        let gamma = SymplecticModTwo { genus: g, a, b, c, d };
        if !gamma.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(gamma)
    }

    pub fn identity(genus: usize) -> Self {
        SymplecticModTwo {
            genus,
            a: BitMatrix::identity(genus),
            b: BitMatrix::zero(genus),
            c: BitMatrix::zero(genus),
            d: BitMatrix::identity(genus),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn blocks(&self) -> (&BitMatrix, &BitMatrix, &BitMatrix, &BitMatrix) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn is_symplectic(&self) -> bool {
        let at = self.a.transpose();
        let bt = self.b.transpose();
        let ct = self.c.transpose();
        let atc = at.mul(&self.c);
        let btd = bt.mul(&self.d);
        let cross = at.mul(&self.d).add(&ct.mul(&self.b));
        atc == atc.transpose() && btd == btd.transpose() && cross == BitMatrix::identity(self.genus)
    }

    pub fn mul(&self, other: &SymplecticModTwo) -> Result<SymplecticModTwo> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(SymplecticModTwo {
            genus: self.genus,
            a: self.a.mul(&other.a).add(&self.b.mul(&other.c)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.d)),
            c: self.c.mul(&other.a).add(&self.d.mul(&other.c)),
            d: self.c.mul(&other.b).add(&self.d.mul(&other.d)),
        })
    }

    /// The affine action on characteristics, in the convention for which
    /// `theta_m(0, gamma.tau)^8 = det(C tau + D)^4 theta_{gamma*m}(0, tau)^8`:
    ///
    /// ```text
    /// eps'   = A^T eps + C^T delta + diag(A^T C)
    /// delta' = B^T eps + D^T delta + diag(B^T D)
    /// ```
    ///
    /// This is the classical `[[D, C], [B, A]]` action with shift
    /// `[diag(C D^T); diag(A B^T)]`, applied to `gamma^{-1}`. It is a right
    /// action: `(g1 g2) * m = g2 * (g1 * m)`.
    pub fn act(&self, m: &Characteristic) -> Result<Characteristic> {
        if m.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: m.genus(),
            });
        }
        let at = self.a.transpose();
        let bt = self.b.transpose();
        let ct = self.c.transpose();
        let dt = self.d.transpose();
        let (e, d) = (m.eps(), m.delta());
        let eps = at.mul_vec(e) ^ ct.mul_vec(d) ^ at.diag_mul_transpose(&ct);
        let delta = bt.mul_vec(e) ^ dt.mul_vec(d) ^ bt.diag_mul_transpose(&dt);
        Characteristic::new(self.genus, eps, delta)
    }
}

#[derive(Serialize, Deserialize)]
struct BitBlocksJson {
    #[serde(rename = "A")]
    a: Vec<Vec<u8>>,
    #[serde(rename = "B")]
    b: Vec<Vec<u8>>,
    #[serde(rename = "C")]
    c: Vec<Vec<u8>>,
    #[serde(rename = "D")]
    d: Vec<Vec<u8>>,
}

impl Serialize for SymplecticModTwo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BitBlocksJson {
            a: self.a.to_rows(),
            b: self.b.to_rows(),
            c: self.c.to_rows(),
            d: self.d.to_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymplecticModTwo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BitBlocksJson::deserialize(deserializer)?;
        let m = |rows: &[Vec<u8>]| -> std::result::Result<BitMatrix, D::Error> {
            let n = rows.len();
            if n == 0 || n > 16 || rows.iter().any(|r| r.len() != n || r.iter().any(|&b| b > 1)) {
                return Err(D::Error::custom("blocks must be square bit arrays"));
            }
            Ok(BitMatrix::from_fn(n, |i, j| rows[i][j] == 1))
        };
        SymplecticModTwo::new(m(&raw.a)?, m(&raw.b)?, m(&raw.c)?, m(&raw.d)?).map_err(D::Error::custom)
    }
}

/// Free-function form of [`SymplecticModTwo::act`].
pub fn affine_action(gamma: &SymplecticModTwo, m: &Characteristic) -> Result<Characteristic> {
    gamma.act(m)
}

/// Entrywise [`affine_action`], order preserved.
pub fn act_on_tuple(gamma: &SymplecticModTwo, tuple: &CharTuple) -> Result<CharTuple> {
    if gamma.genus() != tuple.genus() {
        return Err(Error::GenusMismatch {
            left: gamma.genus(),
            right: tuple.genus(),
        });
    }
    let entries = tuple
        .entries()
        .iter()
        .map(|m| gamma.act(m))
        .collect::<Result<Vec<_>>>()?;
    CharTuple::new(tuple.genus(), entries)
}

/// The inversion followed by the translations by `e_ii` and `e_ij + e_ji`
/// (`i < j`), in row-major order of `(i, j)`.
pub fn standard_generators(genus: usize) -> Result<Vec<SymplecticInteger>> {
    check_block_genus(genus)?;
    let mut out = vec![SymplecticInteger::inversion(genus)];
    for i in 0..genus {
        for j in i..genus {
            let mut s = DMatrix::<i64>::zeros(genus, genus);
            s[(i, j)] = 1;
            s[(j, i)] = 1;
            out.push(SymplecticInteger::translation(s)?);
        }
    }
    Ok(out)
}

/// A seeded product of `word_length` standard generators or their inverses.
pub fn random_symplectic(genus: usize, word_length: usize, seed: u64) -> Result<SymplecticInteger> {
    if word_length == 0 {
        return Err(Error::EmptyWord);
    }
    let gens = standard_generators(genus)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gamma = SymplecticInteger::identity(genus);
    for _ in 0..word_length {
        let g = &gens[rng.gen_range(0..gens.len())];
        let letter = if rng.gen_bool(0.5) { g.clone() } else { g.inverse() };
        gamma = gamma.mul(&letter)?;
    }
    Ok(gamma)
}
