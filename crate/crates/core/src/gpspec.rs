//! Symbolic matrix descriptions with per-entry evaluation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fractal::{fractal_entry, fractal_matrix};
use crate::matrix::TriangularMatrix;
use crate::pascal::build_from_c;
use crate::rational::ExactRational;
use crate::sequence::CSequence;
use crate::special::{phi_q_matrix, q_umbral_matrix};
use crate::zero::{t_coefficient, t_matrix};

#[derive(Clone, Debug)]
pub enum GPSpec {
    FromC(Arc<CSequence>),
    PhiQ { phi: ExactRational, q: u64 },
    Fractal { phi: ExactRational, q: u64 },
    QUmbral(ExactRational),
    TMatrix(u64),
    Hadamard(Vec<GPSpec>),
}

impl GPSpec {
    pub fn pascal() -> Self {
        GPSpec::FromC(Arc::new(CSequence::exponential()))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GPSpec::FromC(_) => "from-c",
            GPSpec::PhiQ { .. } => "phiq",
            GPSpec::Fractal { .. } => "fractal",
            GPSpec::QUmbral(_) => "qumbral",
            GPSpec::TMatrix(_) => "tmatrix",
            GPSpec::Hadamard(_) => "hadamard",
        }
    }

    pub fn q(&self) -> Option<u64> {
        match self {
            GPSpec::PhiQ { q, .. } | GPSpec::Fractal { q, .. } | GPSpec::TMatrix(q) => Some(*q),
            _ => None,
        }
    }

    pub fn phi(&self) -> Option<&ExactRational> {
        match self {
            GPSpec::PhiQ { phi, .. } | GPSpec::Fractal { phi, .. } => Some(phi),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            GPSpec::PhiQ { q, .. } | GPSpec::Fractal { q, .. } | GPSpec::TMatrix(q) if *q < 2 => {
                Err(Error::InvalidParameter(format!("q = {q} must be at least 2")))
            }
            GPSpec::Hadamard(parts) => parts.iter().try_for_each(GPSpec::validate),
            _ => Ok(()),
        }
    }

    /// Entry `(n, m)` without building the matrix; zero above the diagonal.
    pub fn eval(&self, n: usize, m: usize) -> Result<ExactRational> {
        self.validate()?;
        self.eval_unchecked(n, m)
    }

    fn eval_unchecked(&self, n: usize, m: usize) -> Result<ExactRational> {
        if m > n {
            return Ok(ExactRational::zero());
        }
        match self {
            GPSpec::FromC(c) => {
                let denom = c.term(n)?;
                Ok(c.term(m)? * c.term(n - m)? / denom)
            }
            GPSpec::PhiQ { phi, q } => {
                let q = *q as usize;
                Ok(if n % q >= m % q { ExactRational::one() } else { phi.clone() })
            }
            GPSpec::Fractal { phi, q } => Ok(fractal_entry(phi, *q, n as u64, m as u64)),
            GPSpec::QUmbral(q) => Ok(gaussian_binomial(q, n, m)),
            GPSpec::TMatrix(q) => Ok(t_coefficient(*q, n as u64, m as u64)),
            GPSpec::Hadamard(parts) => parts
                .iter()
                .map(|p| p.eval_unchecked(n, m))
                .product(),
        }
    }

    /// Materialized truncation through the dedicated builders.
    pub fn build(&self, size: usize) -> Result<TriangularMatrix> {
        self.validate()?;
        match self {
            GPSpec::FromC(c) => build_from_c(c, size),
            GPSpec::PhiQ { phi, q } => Ok(phi_q_matrix(phi, *q, size)),
            GPSpec::Fractal { phi, q } => Ok(fractal_matrix(phi, *q, size)),
            GPSpec::QUmbral(q) => Ok(q_umbral_matrix(q, size)),
            GPSpec::TMatrix(q) => Ok(t_matrix(*q, size)),
            GPSpec::Hadamard(parts) => parts.iter().try_fold(TriangularMatrix::ones(size), |acc, p| {
                acc.hadamard(&p.build(size)?)
            }),
        }
    }

    /// Truncation assembled from [`GPSpec::eval`] alone.
    pub fn eval_matrix(&self, size: usize) -> Result<TriangularMatrix> {
        self.validate()?;
        TriangularMatrix::try_from_fn(size, |n, m| self.eval_unchecked(n, m))
    }
}

/// Gaussian binomial `[n, m]_q` from `G(n,m) = G(n-1,m-1) + q^m G(n-1,m)`.
pub fn gaussian_binomial(q: &ExactRational, n: usize, m: usize) -> ExactRational {
    if m > n {
        return ExactRational::zero();
    }
    let powers: Vec<ExactRational> = (0..=m).map(|k| q.pow(k as u32)).collect();
    // col[j] = G(k, j) for the current row k, j <= m
    let mut col = vec![ExactRational::zero(); m + 1];
    col[0] = ExactRational::one();
    for k in 1..=n {
        for j in (1..=m.min(k)).rev() {
            let shifted = &powers[j] * &col[j];
            col[j] = &col[j - 1] + &shifted;
        }
    }
    col[m].clone()
}
