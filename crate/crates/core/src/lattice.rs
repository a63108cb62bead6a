//! Exact integer linear algebra on arbitrary-precision lattices.
//!
//! Matrices act on row vectors from the right: `v ↦ v·M`. Every other module
//! relies on this convention.

use std::fmt;
use std::ops::{Index, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A lattice vector with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVec(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVec(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        IntVec(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    /// gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// A ray generator must be primitive: its entries have gcd 1.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntVec {
        IntVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Pads with zeros up to `rank`, embedding `Z^r` as `Z^r ⊕ 0`.
    pub fn embed(&self, rank: usize) -> IntVec {
        let mut entries = self.0.clone();
        entries.resize(rank.max(entries.len()), BigInt::zero());
        IntVec(entries)
    }

    /// Entries as machine integers when all of them fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

impl Index<usize> for IntVec {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::RankMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::RankMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(IntMatrix { dim, entries })
    }

    /// Convenience constructor for literal matrices. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("square literal matrix")
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        IntMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.dim)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    /// Right action on a row vector: `v·M`.
    pub fn act_on(&self, v: &IntVec) -> Result<IntVec> {
        if v.rank() != self.dim {
            return Err(Error::DimMismatch {
                matrix: self.dim,
                cone: v.rank(),
            });
        }
        let out = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|i| &v[i] * self.get(i, j))
                    .fold(BigInt::zero(), |acc, x| acc + x)
            })
            .collect();
        Ok(IntVec(out))
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        (0..k).fold(IntMatrix::identity(self.dim), |acc, _| &acc * self)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product of mismatched sizes");
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let s = (0..n)
                    .map(|k| self.get(i, k) * rhs.get(k, j))
                    .fold(BigInt::zero(), |acc, x| acc + x);
                entries.push(s);
            }
        }
        IntMatrix { dim: n, entries }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", IntVec(row.to_vec()))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.dim;
    let mut a = m.rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Bareiss: the division is exact.
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    det(m).abs().is_one()
}

/// Inverse of `a` modulo `n`, normalised into `[0, n)`. For `n = 1` the
/// answer is 0.
pub fn mod_inverse<T>(a: &T, n: &T) -> Result<T>
where
    T: Integer + Signed + Clone + fmt::Display,
{
    if !n.is_positive() {
        return Err(Error::NotAUnit {
            a: a.to_string(),
            n: n.to_string(),
        });
    }
    let r = a.mod_floor(n);
    let eg = r.extended_gcd(n);
    if !eg.gcd.is_one() {
        return Err(Error::NotAUnit {
            a: a.to_string(),
            n: n.to_string(),
        });
    }
    Ok(eg.x.mod_floor(n))
}

/// Nonzero diagonal of the Smith normal form of an integer matrix given by
/// its rows (any shape). Divisors are positive and each divides the next.
// Row operations read and write two rows of `a` at once.
#[allow(clippy::needless_range_loop)]
pub fn elementary_divisors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let pivot = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut dirty = false;
        for i in t + 1..nrows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..ncols {
                let sub = &q * &a[t][j];
                a[i][j] -= sub;
            }
            dirty |= !a[i][t].is_zero();
        }
        for j in t + 1..ncols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..nrows {
                let sub = &q * &a[i][t];
                a[i][j] -= sub;
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }

        // The pivot must divide the whole trailing block.
        let offender =
            (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = offender {
            for j in t..ncols {
                let add = a[i][j].clone();
                a[t][j] += add;
            }
            continue;
        }

        divisors.push(a[t][t].abs());
        t += 1;
    }
    divisors
}

/// True iff the vectors span a direct summand of `Z^r` of full rank
/// `vectors.len()`, i.e. they extend to a lattice basis.
pub fn extends_to_basis(vectors: &[IntVec]) -> Result<bool> {
    let Some(first) = vectors.first() else {
        return Ok(true);
    };
    let rank = first.rank();
    if let Some(bad) = vectors.iter().find(|v| v.rank() != rank) {
        return Err(Error::RankMismatch {
            expected: rank,
            found: bad.rank(),
        });
    }
    if vectors.len() > rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: vectors.len(),
        });
    }
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let d = elementary_divisors(&rows);
    Ok(d.len() == vectors.len() && d.iter().all(One::is_one))
}

/// Rank over the rationals of a matrix given by rows.
#[allow(clippy::needless_range_loop)]
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let (pivot, lead) = (a[rank][col].clone(), a[i][col].clone());
            for j in col..ncols {
                a[i][j] = &a[i][j] * &pivot - &a[rank][j] * &lead;
            }
            let g = a[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in a[i].iter_mut() {
                    *x /= &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `binom(m, 2) = m(m-1)/2`, valid for every integer `m`.
pub fn binom2(m: &BigInt) -> BigInt {
    (m * (m - 1u32)) / 2u32
}
