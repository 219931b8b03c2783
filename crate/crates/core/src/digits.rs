//! Base-q digit expansions and the small number-theoretic helpers built on
//! them (valuations, primes, the Möbius function, ordinary binomials).

use num_bigint::BigInt;

/// Little-endian base-`q` digits of an index. No trailing zeros are stored,
/// so zero has an empty digit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitVector {
    base: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn new(value: u64, base: u64) -> Self {
        assert!(base >= 2, "digit base must be at least 2");
        let mut digits = Vec::new();
        let mut v = value;
        while v > 0 {
            digits.push(v % base);
            v /= base;
        }
        Self { base, digits }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at position `i`, zero past the stored length.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.base + d)
    }

    /// True when every digit of `self` is at least the matching digit of
    /// `other`.
    pub fn dominates(&self, other: &DigitVector) -> bool {
        debug_assert_eq!(self.base, other.base);
        (0..self.len().max(other.len())).all(|i| self.digit(i) >= other.digit(i))
    }
}

/// Largest `k` with `q^k | n`. Zero has no finite valuation; callers must
/// handle `n = 0` themselves.
pub fn valuation(q: u64, n: u64) -> u32 {
    assert!(q >= 2 && n > 0);
    let mut k = 0;
    let mut v = n;
    while v % q == 0 {
        v /= q;
        k += 1;
    }
    k
}

/// Sum of base-q digits.
pub fn digit_sum(q: u64, n: u64) -> u64 {
    DigitVector::new(n, q).digits().iter().sum()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

/// Möbius function by trial factorization.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1);
    let mut v = n;
    let mut sign = 1i8;
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            v /= d;
            if v % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if v > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Ordinary binomial coefficient, zero for `m > n`.
pub fn binomial(n: u64, m: u64) -> BigInt {
    if m > n {
        return BigInt::from(0);
    }
    let m = m.min(n - m);
    let mut acc = BigInt::from(1);
    for i in 0..m {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
