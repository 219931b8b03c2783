//! Finite lower-triangular matrices of exact rationals.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::rational::ExactRational;

/// `size x size` lower-triangular matrix. Row `n` stores columns `0..=n`;
/// entries above the diagonal are implicitly zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TriangularMatrix {
    size: usize,
    rows: Vec<Vec<ExactRational>>,
}

impl TriangularMatrix {
    pub fn from_fn<F>(size: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> ExactRational + Sync + Send,
    {
        Self::from_fn_with(Strategy::default(), size, f)
    }

    /// Rows are built independently under `strategy`.
    pub fn from_fn_with<F>(strategy: Strategy, size: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> ExactRational + Sync + Send,
    {
        let rows = strategy.map_range(size, |n| (0..=n).map(|m| f(n, m)).collect());
        Self { size, rows }
    }

    pub fn try_from_fn<F>(size: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Result<ExactRational> + Sync + Send,
    {
        Self::try_from_fn_with(Strategy::default(), size, f)
    }

    pub fn try_from_fn_with<F>(strategy: Strategy, size: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Result<ExactRational> + Sync + Send,
    {
        let rows: Vec<Result<Vec<ExactRational>>> =
            strategy.map_range(size, |n| (0..=n).map(|m| f(n, m)).collect());
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Self { size, rows })
    }

    /// Builds from explicit rows; row `n` must hold exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidParameter(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(Self { size: rows.len(), rows })
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |n, m| {
            if n == m {
                ExactRational::one()
            } else {
                ExactRational::zero()
            }
        })
    }

    /// All-ones lower triangle: the identity of the Hadamard group.
    pub fn ones(size: usize) -> Self {
        Self::from_fn(size, |_, _| ExactRational::one())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry `(n, m)`, zero above the diagonal.
    pub fn get(&self, n: usize, m: usize) -> ExactRational {
        self.entry(n, m).cloned().unwrap_or_default()
    }

    /// Stored entry, `None` above the diagonal.
    pub fn entry(&self, n: usize, m: usize) -> Option<&ExactRational> {
        assert!(n < self.size && m < self.size, "index ({n}, {m}) out of range");
        self.rows[n].get(m)
    }

    pub fn row(&self, n: usize) -> &[ExactRational] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<ExactRational>] {
        &self.rows
    }

    pub fn column(&self, m: usize) -> Vec<ExactRational> {
        (0..self.size).map(|n| self.get(n, m)).collect()
    }

    /// Stored entries in row-major order with their positions.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &ExactRational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(m, v)| (n, m, v)))
    }

    /// Top-left `size x size` block.
    pub fn leading_block(&self, size: usize) -> Self {
        assert!(size <= self.size);
        Self {
            size,
            rows: self.rows[..size].to_vec(),
        }
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(Self::from_fn(self.size, |n, m| &self.rows[n][m] * &other.rows[n][m]))
    }

    /// Entrywise reciprocal on the stored triangle.
    pub fn hadamard_inverse(&self) -> Result<Self> {
        if let Some((n, m, _)) = self.iter().find(|(_, _, v)| v.is_zero()) {
            return Err(Error::ZeroEntry { row: n, col: m });
        }
        Ok(Self::from_fn(self.size, |n, m| {
            self.rows[n][m].checked_recip().expect("checked nonzero")
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(Self::from_fn(self.size, |n, m| &self.rows[n][m] - &other.rows[n][m]))
    }

    /// Ordinary matrix product; the product of lower-triangular matrices is
    /// lower-triangular.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.matmul_with(Strategy::default(), other)
    }

    pub fn matmul_with(&self, strategy: Strategy, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(Self::from_fn_with(strategy, self.size, |n, m| {
            (m..=n).fold(ExactRational::zero(), |mut acc, k| {
                let a = &self.rows[n][k];
                let b = &other.rows[k][m];
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
                acc
            })
        }))
    }

    /// Kronecker product `self ⊗ other`: entry `(i*s + k, j*s + l)` is
    /// `self[i][j] * other[k][l]` with `s = other.size()`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let s = other.size;
        Self::from_fn(self.size * s, |n, m| {
            let (i, k) = (n / s, n % s);
            let (j, l) = (m / s, m % s);
            self.get(i, j) * other.get(k, l)
        })
    }

    /// First position (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.size != other.size {
            return Some((self.size.min(other.size), 0));
        }
        self.iter()
            .find(|&(n, m, v)| v != &other.rows[n][m])
            .map(|(n, m, _)| (n, m))
    }

    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(&ExactRational) -> ExactRational + Sync + Send,
    {
        Self::from_fn(self.size, |n, m| f(&self.rows[n][m]))
    }
}

impl fmt::Debug for TriangularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TriangularMatrix({}x{})", self.size, self.size)?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
