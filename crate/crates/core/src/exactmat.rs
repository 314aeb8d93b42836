//! Dense exact linear algebra over the rationals and over prime fields.
//!
//! Rank over `Q` is computed with fraction-free (Bareiss) elimination on an
//! integer image of the matrix, so intermediate values never leave `Z`.
//! Modular rank is a fast probabilistic screen: it never exceeds the exact
//! rank, and agrees with it unless the prime divides some nonzero minor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// Largest prime below [`DEFAULT_PRIME`]; used to confirm negative verdicts.
pub const SECONDARY_PRIME: u64 = 2_305_843_009_213_693_921;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("denominator of entry ({row}, {col}) is divisible by {prime}")]
    DenominatorDivisibleByPrime { row: usize, col: usize, prime: u64 },
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense row-major matrix of exact rationals.
///
/// Entries are `BigRational`, which keeps every value in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries.
    ///
    /// # Panics
    /// If `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Self { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&v| int(v)).collect())
    }

    /// Builds a matrix from nested rows of integers. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_i64(rows.len(), cols, &flat)
    }

    /// Column vector.
    pub fn column(v: &[Rational]) -> Self {
        Self::from_vec(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / cols, idx % cols, v))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Kronecker product `self ⊗ other` with `self` indexing the major block.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for (i, j, a) in self.nonzeros() {
            for (k, l, b) in other.nonzeros() {
                out.set(i * other.rows + k, j * other.cols + l, a * b);
            }
        }
        out
    }

    /// `self · other - other · self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Sub-block `[r0, r0 + rows) × [c0, c0 + cols)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Exact inverse by Gauss–Jordan elimination, or `None` if singular.
    ///
    /// Pivots are chosen as the entry with the smallest absolute numerator in
    /// the column (first one on ties), which keeps results deterministic.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for c in 0..n {
            let pivot = (c..n)
                .filter(|&r| !a[r][c].is_zero())
                .min_by(|&x, &y| a[x][c].numer().abs().cmp(&a[y][c].numer().abs()))?;
            a.swap(c, pivot);
            inv.swap(c, pivot);
            let p = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &p;
                inv[c][j] = &inv[c][j] / &p;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    let d = &f * &a[c][j];
                    a[r][j] -= d;
                    let d = &f * &inv[c][j];
                    inv[r][j] -= d;
                }
            }
        }
        Some(Self::from_vec(n, n, inv.into_iter().flatten().collect()))
    }

    /// Extends the columns of `self` (an `m × n` matrix of rank `n`) to a basis of
    /// `Q^m`, appending standard basis vectors in index order. Returns the
    /// `m × m` invertible matrix whose first `n` columns are `self`.
    pub fn complete_basis(&self) -> Option<Self> {
        let m = self.rows;
        let mut cols: Vec<Vec<Rational>> = (0..self.cols)
            .map(|j| (0..m).map(|i| self.get(i, j).clone()).collect())
            .collect();
        if rank_of_columns(&cols, m) != cols.len() {
            return None;
        }
        for e in 0..m {
            if cols.len() == m {
                break;
            }
            let mut unit = vec![Rational::zero(); m];
            unit[e] = Rational::one();
            cols.push(unit);
            if rank_of_columns(&cols, m) != cols.len() {
                cols.pop();
            }
        }
        Some(Self::from_fn(m, m, |i, j| cols[j][i].clone()))
    }
}

fn rank_of_columns(cols: &[Vec<Rational>], m: usize) -> usize {
    rank_exact(&RationalMatrix::from_fn(m, cols.len(), |i, j| cols[j][i].clone()))
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: Self) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;

    fn sub(self, rhs: Self) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;

    fn neg(self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    // Skips zero entries of the left factor; representation matrices are mostly zero.
    fn mul(self, rhs: Self) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for (i, k, a) in self.nonzeros() {
            for j in 0..rhs.cols {
                let b = rhs.get(k, j);
                if !b.is_zero() {
                    out.data[i * rhs.cols + j] += a * b;
                }
            }
        }
        out
    }
}

/// `a ⊗ I_m + I_n ⊗ b` for square `a` (`n × n`) and `b` (`m × m`).
pub fn kronecker_sum(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    assert!(a.is_square() && b.is_square(), "kronecker_sum needs square inputs");
    let left = a.kron(&RationalMatrix::identity(b.rows()));
    let right = RationalMatrix::identity(a.rows()).kron(b);
    &left + &right
}

/// Scales each row by the lcm of its denominators, giving an integer matrix of equal rank.
fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect()
}

/// Rank over `Q`.
pub fn rank_exact(m: &RationalMatrix) -> usize {
    bareiss_rank(integer_rows(m), m.cols())
}

/// Fraction-free elimination. A column with no pivot is skipped; since its
/// entries below the current row are all zero, the remaining steps behave as
/// Bareiss on the matrix with that column deleted and every division stays exact.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = &row[j] * pivot;
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// `cols(m) - rank_exact(m)`.
pub fn kernel_dim(m: &RationalMatrix) -> usize {
    m.cols() - rank_exact(m)
}

/// Rank of the reduction of `m` modulo `p`.
pub fn rank_modular(m: &RationalMatrix, p: u64) -> Result<usize, MatrixError> {
    Ok(ModularMatrix::from_rational(m, p)?.rank())
}

/// Dense matrix over `Z/pZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    prime: u64,
}

impl ModularMatrix {
    pub fn from_rational(m: &RationalMatrix, prime: u64) -> Result<Self, MatrixError> {
        if !is_prime(prime) {
            return Err(MatrixError::NotPrime(prime));
        }
        let p = BigInt::from(prime);
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                let num = residue(v.numer(), &p, prime);
                if v.denom().is_one() {
                    data.push(num);
                    continue;
                }
                let den = residue(v.denom(), &p, prime);
                if den == 0 {
                    return Err(MatrixError::DenominatorDivisibleByPrime { row: i, col: j, prime });
                }
                data.push(mul_mod(num, inv_mod(den, prime), prime));
            }
        }
        Ok(Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
            prime,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn rank(&self) -> usize {
        let p = self.prime;
        let mut a: Vec<Vec<u64>> = self.data.chunks(self.cols.max(1)).map(<[u64]>::to_vec).collect();
        a.truncate(self.rows);
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, pr);
            let inv = inv_mod(a[rank][c], p);
            let (top, rest) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in rest.iter_mut() {
                if row[c] == 0 {
                    continue;
                }
                let f = mul_mod(row[c], inv, p);
                for j in c..self.cols {
                    if pivot_row[j] != 0 {
                        row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn residue(v: &BigInt, p: &BigInt, prime: u64) -> u64 {
    match v.to_i64() {
        Some(x) => (x as i128).rem_euclid(prime as i128) as u64,
        None => v.mod_floor(p).to_u64().expect("residue fits in u64"),
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}
