//! The generating sequences behind every generalized Pascal matrix.
//!
//! A [`BSequence`] holds the "generalized integers" `b_n` (with `b_0 = 0`),
//! whose factorials `b_n! = b_1 b_2 ... b_n` define the generalized binomial
//! coefficients. A [`CSequence`] holds the coefficients `c_n` of the series
//! `c(x)` with `c_0 = c_1 = 1`; the two are linked by `c_n = 1 / b_n!`.
//!
//! Both memoize their values. Caches are fill-once and guarded by a lock, so a
//! sequence can be shared between threads; concurrent fills compute the same
//! values and the first writer wins.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::digits::{valuation, DigitVector};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Clone, Debug)]
pub enum BRule {
    /// `b_n = n`
    Naturals,
    /// `b_n = phi^{v_q(n)}`
    Fractal { q: u64, phi: ExactRational },
    /// `values[n] = b_n`; `values[0]` is ignored.
    Explicit(Vec<ExactRational>),
    /// `b_n = c_1 c_{n-1} / c_n`
    FromC(Arc<CSequence>),
}

pub struct BSequence {
    rule: BRule,
    // factorials[n] = b_n!, filled as a prefix
    factorials: RwLock<Vec<ExactRational>>,
}

impl BSequence {
    pub fn new(rule: BRule) -> Self {
        Self {
            rule,
            factorials: RwLock::new(vec![ExactRational::one()]),
        }
    }

    pub fn naturals() -> Self {
        Self::new(BRule::Naturals)
    }

    pub fn fractal(q: u64, phi: ExactRational) -> Self {
        assert!(q >= 2, "fractal sequences need q >= 2");
        Self::new(BRule::Fractal { q, phi })
    }

    /// `values[n] = b_n` for `1 <= n < values.len()`.
    pub fn explicit(values: Vec<ExactRational>) -> Self {
        Self::new(BRule::Explicit(values))
    }

    pub fn from_c(c: Arc<CSequence>) -> Self {
        Self::new(BRule::FromC(c))
    }

    pub fn rule(&self) -> &BRule {
        &self.rule
    }

    /// `b_n`; `b_0 = 0` for every rule.
    pub fn term(&self, n: usize) -> Result<ExactRational> {
        if n == 0 {
            return Ok(ExactRational::zero());
        }
        match &self.rule {
            BRule::Naturals => Ok(ExactRational::from(n)),
            BRule::Fractal { q, phi } => Ok(fractal_b(*q, phi, n as u64)),
            BRule::Explicit(values) => values.get(n).cloned().ok_or(Error::IndexOutOfRange {
                index: n,
                len: values.len(),
            }),
            BRule::FromC(c) => {
                let num = c.term(1)? * c.term(n - 1)?;
                let den = c.term(n)?;
                num.checked_div(&den).ok_or(Error::DivisionByZero)
            }
        }
    }

    /// True when some `b_m`, `1 <= m <= n`, vanishes.
    pub fn has_zero_up_to(&self, n: usize) -> Result<bool> {
        match &self.rule {
            BRule::Fractal { q, phi } => Ok(phi.is_zero() && n as u64 >= *q),
            BRule::Naturals => Ok(false),
            _ => {
                for m in 1..=n {
                    if self.term(m)?.is_zero() {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// `b_n! = b_1 ... b_n`, `b_0! = 1`.
    pub fn factorial(&self, n: usize) -> Result<ExactRational> {
        {
            let cache = self.factorials.read().expect("factorial cache poisoned");
            if let Some(v) = cache.get(n) {
                return Ok(v.clone());
            }
        }
        let (start, mut acc) = {
            let cache = self.factorials.read().expect("factorial cache poisoned");
            (cache.len(), cache.last().cloned().expect("b_0! is always cached"))
        };
        let mut fresh = Vec::with_capacity(n + 1 - start);
        for m in start..=n {
            let b = self.term(m)?;
            if b.is_zero() {
                return Err(Error::ZeroFactor { index: m });
            }
            acc *= &b;
            fresh.push(acc.clone());
        }
        let mut cache = self.factorials.write().expect("factorial cache poisoned");
        // another thread may have filled part of the range meanwhile
        let already = cache.len() - start;
        cache.extend(fresh.into_iter().skip(already));
        Ok(cache[n].clone())
    }

    /// Generalized binomial coefficient `b_n! / (b_m! b_{n-m}!)`, zero for
    /// `m > n`.
    pub fn binomial(&self, n: usize, m: usize) -> Result<ExactRational> {
        if m > n {
            return Ok(ExactRational::zero());
        }
        let num = self.factorial(n)?;
        let den = self.factorial(m)? * self.factorial(n - m)?;
        Ok(num / den)
    }
}

impl Clone for BSequence {
    fn clone(&self) -> Self {
        Self::new(self.rule.clone())
    }
}

impl fmt::Debug for BSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BSequence").field("rule", &self.rule).finish()
    }
}

#[derive(Clone, Debug)]
pub enum CRule {
    /// `c_n = 1/n!`, the series `e^x`.
    Exponential,
    /// `c_n = 1`, the series `(1-x)^{-1}`.
    Geometric,
    /// `c_n = 1 / b_n!`
    FromB(Arc<BSequence>),
    /// `c_{qn+i} = phi^{-n}`
    PhiQ { phi: ExactRational, q: u64 },
    /// `c_n = 1 / b_n!` with `b = fractal(q, q)`.
    Fractal { q: u64 },
    /// `c_n = prod_i base[n_i]` over the base-q digits of n.
    DigitProduct { q: u64, base: Vec<ExactRational> },
    Explicit(Vec<ExactRational>),
}

pub struct CSequence {
    rule: CRule,
    helper: Option<Arc<BSequence>>,
    cache: RwLock<HashMap<usize, ExactRational>>,
}

impl CSequence {
    fn with_rule(rule: CRule) -> Self {
        let helper = match &rule {
            CRule::Exponential => Some(Arc::new(BSequence::naturals())),
            CRule::Fractal { q } => Some(Arc::new(BSequence::fractal(
                *q,
                ExactRational::from(*q),
            ))),
            CRule::FromB(b) => Some(Arc::clone(b)),
            _ => None,
        };
        Self {
            rule,
            helper,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn exponential() -> Self {
        Self::with_rule(CRule::Exponential)
    }

    pub fn geometric() -> Self {
        Self::with_rule(CRule::Geometric)
    }

    pub fn fractal(q: u64) -> Self {
        assert!(q >= 2, "fractal sequences need q >= 2");
        Self::with_rule(CRule::Fractal { q })
    }

    pub fn from_b(b: Arc<BSequence>) -> Self {
        Self::with_rule(CRule::FromB(b))
    }

    /// `c(phi, q, x) = w_{q-1}(x) (1 - x^q/phi)^{-1}`; undefined for `phi = 0`.
    pub fn phi_q(phi: ExactRational, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q = {q} must be at least 2")));
        }
        if phi.is_zero() {
            return Err(Error::ZeroPhi);
        }
        Ok(Self::with_rule(CRule::PhiQ { phi, q }))
    }

    /// Digit-product series from its first `q` coefficients. Requires
    /// `base[0] = base[1] = 1` and nonzero entries.
    pub fn digit_product(q: u64, base: Vec<ExactRational>) -> Result<Self> {
        if q < 2 || base.len() != q as usize {
            return Err(Error::InvalidParameter(format!(
                "digit-product series needs exactly q = {q} >= 2 base coefficients"
            )));
        }
        check_normalized(&base)?;
        Ok(Self::with_rule(CRule::DigitProduct { q, base }))
    }

    /// Finite explicit series. Requires `c_0 = c_1 = 1` and nonzero entries.
    pub fn explicit(values: Vec<ExactRational>) -> Result<Self> {
        check_normalized(&values)?;
        Ok(Self::with_rule(CRule::Explicit(values)))
    }

    pub fn rule(&self) -> &CRule {
        &self.rule
    }

    pub fn term(&self, n: usize) -> Result<ExactRational> {
        if let Some(v) = self.cache.read().expect("series cache poisoned").get(&n) {
            return Ok(v.clone());
        }
        let value = self.compute(n)?;
        self.cache
            .write()
            .expect("series cache poisoned")
            .entry(n)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    fn compute(&self, n: usize) -> Result<ExactRational> {
        match &self.rule {
            CRule::Geometric => Ok(ExactRational::one()),
            CRule::Exponential | CRule::Fractal { .. } | CRule::FromB(_) => {
                let b = self.helper.as_ref().expect("factorial-backed rule has a helper");
                Ok(b.factorial(n)?
                    .checked_recip()
                    .expect("nonzero factorials have reciprocals"))
            }
            CRule::PhiQ { phi, q } => Ok(phi
                .powi(-((n as u64 / q) as i64))
                .expect("phi is nonzero")),
            CRule::DigitProduct { q, base } => Ok(DigitVector::new(n as u64, *q)
                .digits()
                .iter()
                .map(|&d| base[d as usize].clone())
                .product()),
            CRule::Explicit(values) => values.get(n).cloned().ok_or(Error::IndexOutOfRange {
                index: n,
                len: values.len(),
            }),
        }
    }

    /// `c_0, ..., c_{len-1}`
    pub fn prefix(&self, len: usize) -> Result<Vec<ExactRational>> {
        (0..len).map(|n| self.term(n)).collect()
    }
}

fn check_normalized(values: &[ExactRational]) -> Result<()> {
    if let Some(i) = values.iter().position(ExactRational::is_zero) {
        return Err(Error::InvalidParameter(format!("c_{i} = 0; coefficients must be nonzero")));
    }
    for (i, v) in values.iter().enumerate().take(2) {
        if !v.is_one() {
            return Err(Error::InvalidParameter(format!("c_{i} = {v}; expected c_0 = c_1 = 1")));
        }
    }
    Ok(())
}

impl Clone for CSequence {
    fn clone(&self) -> Self {
        Self::with_rule(self.rule.clone())
    }
}

impl fmt::Debug for CSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CSequence").field("rule", &self.rule).finish()
    }
}

/// `b_n! = prod_{m=1}^n b_m`.
pub fn b_factorial(b: &BSequence, n: usize) -> Result<ExactRational> {
    b.factorial(n)
}

/// `c_n = 1 / b_n!` (normalized so that `c_1 = 1`).
pub fn c_from_b(b: &BSequence, n: usize) -> Result<ExactRational> {
    Ok(b.factorial(n)?
        .checked_recip()
        .expect("nonzero factorials have reciprocals"))
}

/// `phi^{v_q(n)}` for `n >= 1`. With `phi = 0` this is zero exactly at the
/// multiples of `q`.
pub fn fractal_b(q: u64, phi: &ExactRational, n: u64) -> ExactRational {
    assert!(q >= 2 && n >= 1);
    phi.pow(valuation(q, n))
}
