//! Fractal matrices `[phi,q]P`, the Hadamard products of `phi,q^k P` over
//! `k >= 1`.
//!
//! An entry of `[phi,q]P` is `phi^e` where `e` counts the `k >= 1` with
//! `n mod q^k < m mod q^k`, which is the number of borrows when subtracting
//! `m` from `n` in base `q`. For `phi = q` this is the generalized binomial
//! built from `b_n = q^{v_q(n)}`; for `phi = 0` it is the digit-dominance
//! mask.
//!
//! # Truncation
//!
//! For `n, m < N <= q^k` both residues mod `q^k` equal the indices, so
//! `n mod q^k = n >= m = m mod q^k` and the factor `phi,q^k P` is all ones
//! on the `N x N` block. The infinite product therefore stops exactly at the
//! last `k` with `q^k < N`. The same argument applies to the product of
//! `[p]P` over primes `p < N`.

use std::collections::HashMap;

use serde_json::json;

use crate::digits::{binomial, primes_up_to, valuation};
use crate::exec::Strategy;
use crate::matrix::TriangularMatrix;
use crate::poly::{w_poly, Polynomial};
use crate::rational::ExactRational;
use crate::report::Report;
use crate::sequence::{fractal_b, BSequence, CSequence};
use crate::special::phi_q_matrix;

/// Moduli `q, q^2, ...` below `size`.
fn moduli_below(q: u64, size: usize) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(q), move |&m| m.checked_mul(q)).take_while(move |&m| m < size as u64)
}

/// `×_k phi,q^k P` truncated to `size`.
pub fn fractal_matrix(phi: &ExactRational, q: u64, size: usize) -> TriangularMatrix {
    assert!(q >= 2, "modulus must be at least 2");
    moduli_below(q, size).fold(TriangularMatrix::ones(size), |acc, qk| {
        acc.hadamard(&phi_q_matrix(phi, qk, size)).expect("same size")
    })
}

/// Entrywise construction from [`fractal_entry`].
pub fn fractal_matrix_direct(strategy: Strategy, phi: &ExactRational, q: u64, size: usize) -> TriangularMatrix {
    TriangularMatrix::from_fn_with(strategy, size, |n, m| fractal_entry(phi, q, n as u64, m as u64))
}

/// Number of base-`q` borrows in `n - m`, computed one digit at a time.
/// A borrow at digit `i` means `i < j`; it is applied through
/// `(qn+i, qm+j) = b_{m+1} (n, m+1) (q+i, j)` with `(q+i, j) = q`.
pub fn fractal_exponent(q: u64, n: u64, m: u64) -> u32 {
    assert!(q >= 2 && m <= n, "need q >= 2 and m <= n");
    let (mut n, mut m) = (n, m);
    let mut e = 0;
    while m > 0 {
        let (i, j) = (n % q, m % q);
        n /= q;
        m /= q;
        if i < j {
            m += 1;
            e += 1 + valuation(q, m);
        }
    }
    e
}

/// `(n, m)` of `[q]P`, i.e. the generalized binomial for `b_n = q^{v_q(n)}`.
pub fn fast_gbinom_fractal(q: u64, n: u64, m: u64) -> ExactRational {
    ExactRational::from(q).pow(fractal_exponent(q, n, m))
}

/// `(n, m)` of `[phi,q]P`; zero above the diagonal.
pub fn fractal_entry(phi: &ExactRational, q: u64, n: u64, m: u64) -> ExactRational {
    if m > n {
        return ExactRational::zero();
    }
    phi.pow(fractal_exponent(q, n, m))
}

fn b_fractal(q: u64, n: u64) -> ExactRational {
    if n == 0 {
        ExactRational::zero()
    } else {
        fractal_b(q, &ExactRational::from(q), n)
    }
}

/// Rows and columns of `[q]P` from the digit recurrences
///
/// `u_{qn+i}(x) = w_i(x) u_n(x^q) + q b_n x^{i+1} w_{q-2-i}(x) u_{n-1}(x^q)`,
/// `g_{qn+i}(x) = x^i w_{q-1-i}(x) g_n(x^q) + q b_{n+1} w_{i-1}(x) g_{n+1}(x^q)`,
///
/// with `u_0 = 1` and `g_n` for `n < q` read off directly.
pub struct FractalRecurrences {
    q: u64,
    len: usize,
    rows: HashMap<u64, Polynomial>,
    columns: HashMap<u64, Polynomial>,
}

impl FractalRecurrences {
    /// Columns are truncated below degree `len`.
    pub fn new(q: u64, len: usize) -> Self {
        assert!(q >= 2, "modulus must be at least 2");
        Self {
            q,
            len,
            rows: HashMap::new(),
            columns: HashMap::new(),
        }
    }

    pub fn row(&mut self, n: u64) -> Polynomial {
        if let Some(u) = self.rows.get(&n) {
            return u.clone();
        }
        let q = self.q;
        let u = if n == 0 {
            Polynomial::one()
        } else {
            let (k, i) = (n / q, (n % q) as i64);
            let qs = q as usize;
            let mut u = &w_poly(i) * &self.row(k).substitute_power(qs);
            if k > 0 {
                let coeff = ExactRational::from(q) * b_fractal(q, k);
                let tail = (&w_poly(q as i64 - 2 - i) * &self.row(k - 1).substitute_power(qs))
                    .shift(i as usize + 1)
                    .scale(&coeff);
                u = &u + &tail;
            }
            u
        };
        self.rows.insert(n, u.clone());
        u
    }

    pub fn column(&mut self, n: u64) -> Polynomial {
        if let Some(g) = self.columns.get(&n) {
            return g.clone();
        }
        let (q, len) = (self.q, self.len);
        let g = if n < q {
            let coeffs = (0..len as u64)
                .map(|r| if r < n { ExactRational::zero() } else { fast_gbinom_fractal(q, r, n) })
                .collect();
            Polynomial::from_coeffs(coeffs)
        } else {
            let (k, i) = (n / q, (n % q) as i64);
            let qs = q as usize;
            let head = (&w_poly(q as i64 - 1 - i) * &self.column(k).substitute_power(qs).truncate(len))
                .shift(i as usize);
            let mut g = head.truncate(len);
            if i > 0 {
                let coeff = ExactRational::from(q) * b_fractal(q, k + 1);
                let tail = self
                    .column(k + 1)
                    .substitute_power(qs)
                    .mul_truncated(&w_poly(i - 1), len)
                    .scale(&coeff);
                g = &g + &tail;
            }
            g
        };
        self.columns.insert(n, g.clone());
        g
    }
}

/// Row `n` of `[q]P` as `sum_m (n,m) x^m`.
pub fn fractal_rows(q: u64, n: u64) -> Polynomial {
    FractalRecurrences::new(q, 0).row(n)
}

/// Column `n` of `[q]P` as `sum_r (r,n) x^r`, below degree `len`.
pub fn fractal_columns(q: u64, n: u64, len: usize) -> Polynomial {
    FractalRecurrences::new(q, len).column(n)
}

/// Rows and columns from the recurrences against [`fractal_matrix`].
pub fn recurrence_check(q: u64, size: usize) -> Report {
    let m = fractal_matrix(&ExactRational::from(q), q, size);
    let mut rec = FractalRecurrences::new(q, size);
    let mut checked = 0;
    for n in 0..size {
        checked += 2;
        let row = rec.row(n as u64).padded(n + 1);
        if row.len() != n + 1 || row.as_slice() != m.row(n) {
            return Report::failed("recurrences", checked, json!({"q": q, "row": n}));
        }
        let col = rec.column(n as u64).padded(size);
        if col != m.column(n) {
            return Report::failed("recurrences", checked, json!({"q": q, "column": n}));
        }
    }
    Report::passed("recurrences", checked)
}

/// Both digit-block identities of `[q]P` for every block `q^k < size`:
/// `(q^k n+i, q^k m+j) = (n,m)(i,j)` when `i >= j`, and when `i < j`
/// `b_n (n-1,m)(q^k+i,j) = b_{m+1} (n,m+1)(q^k+i,j) = (q^k n+i, q^k m+j)`.
pub fn block_identity_check(q: u64, size: usize) -> Report {
    let b = BSequence::fractal(q, ExactRational::from(q));
    let g = |n: u64, m: u64| b.binomial(n as usize, m as usize).expect("nonzero b");
    let mut checked = 0;
    for qk in moduli_below(q, size) {
        for row in 0..size as u64 {
            for col in 0..=row {
                let (n, i) = (row / qk, row % qk);
                let (m, j) = (col / qk, col % qk);
                let direct = g(row, col);
                checked += 1;
                let ok = if i >= j {
                    direct == g(n, m) * g(i, j)
                } else {
                    let tail = g(qk + i, j);
                    let first = b.term(n as usize).expect("term") * g(n - 1, m) * &tail;
                    let second = b.term(m as usize + 1).expect("term") * g(n, m + 1) * &tail;
                    direct == first && direct == second
                };
                if !ok {
                    return Report::failed(
                        "block-identities",
                        checked,
                        json!({"q": q, "block": qk, "n": row, "m": col}),
                    );
                }
            }
        }
    }
    Report::passed("block-identities", checked)
}

/// `×_{p prime, p < N} [p]P` against the additive Pascal triangle, entry by
/// entry without materializing the factors. A failing entry reports each
/// prime's factor.
pub fn pascal_prime_factorization(size: usize) -> Report {
    pascal_prime_factorization_with(Strategy::default(), size)
}

pub fn pascal_prime_factorization_with(strategy: Strategy, size: usize) -> Report {
    let primes = primes_up_to(size as u64);
    let pascal = crate::pascal::pascal_additive(size);
    let failure = strategy.find_first(size, |n| {
        (0..=n).find_map(|m| {
            let factors: Vec<(u64, ExactRational)> = primes
                .iter()
                .map(|&p| (p, fast_gbinom_fractal(p, n as u64, m as u64)))
                .collect();
            let product: ExactRational = factors.iter().map(|(_, v)| v).product();
            (product != pascal.get(n, m)).then(|| {
                let per_prime: serde_json::Map<String, serde_json::Value> = factors
                    .iter()
                    .map(|(p, v)| (p.to_string(), json!(v)))
                    .collect();
                json!({
                    "n": n,
                    "m": m,
                    "factors": per_prime,
                    "product": product,
                    "expected": pascal.get(n, m),
                })
            })
        })
    });
    let checked = (size * (size + 1) / 2) as u64;
    Report::from_outcome("primes", checked, failure)
}

/// `c(x) = prod_{n >= 0} w_{q-1}(x^{q^n} / q^{(q^n-1)/(q-1)})` through
/// degree `D`, as a polynomial.
pub fn fractal_c_product(q: u64, degree: usize) -> Polynomial {
    let len = degree + 1;
    let mut acc = Polynomial::one();
    let mut qn = 1u64;
    let mut scale_exp = 0u32;
    while qn as usize <= degree {
        let s = ExactRational::from(q).pow(scale_exp).checked_recip().expect("q > 0");
        let factor = Polynomial::from_coeffs(
            (0..q as u32).map(|j| s.pow(j)).collect(),
        )
        .substitute_power(qn as usize);
        acc = acc.mul_truncated(&factor, len);
        scale_exp += qn as u32;
        qn *= q;
    }
    acc
}

/// The product formula for the fractal `c(x)` and, for prime moduli, the
/// Hadamard product of those series over primes `p <= D` equal to `e^x`.
pub fn fractal_c_check(q: u64, degree: usize) -> Report {
    let c = CSequence::fractal(q);
    let product = fractal_c_product(q, degree);
    for n in 0..=degree {
        if product.coeff(n) != c.term(n).expect("fractal c") {
            return Report::failed(
                "fractal-c",
                n as u64 + 1,
                json!({"part": "product", "q": q, "degree": n, "product": product.coeff(n)}),
            );
        }
    }
    let primes = primes_up_to(degree as u64);
    let series: Vec<Vec<ExactRational>> = primes
        .iter()
        .map(|&p| fractal_c_product(p, degree).padded(degree + 1))
        .collect();
    let mut factorial = ExactRational::one();
    for n in 0..=degree {
        if n > 0 {
            factorial *= &ExactRational::from(n as u64);
        }
        let h: ExactRational = series.iter().map(|s| &s[n]).product();
        if h != factorial.checked_recip().expect("n! > 0") {
            return Report::failed(
                "fractal-c",
                (degree + 2 + n) as u64,
                json!({"part": "exponential", "degree": n, "value": h}),
            );
        }
    }
    Report::passed("fractal-c", 2 * (degree as u64 + 1))
}

/// `b(x) = x w_{q-2}(x) / (1 - x^q) + q b(x^q)` through degree `D`
/// with `b_n = q^{v_q(n)}`.
pub fn b_functional_equation_check(q: u64, degree: usize) -> Report {
    let len = degree + 1;
    let b = Polynomial::from_coeffs((0..len as u64).map(|n| b_fractal(q, n)).collect());
    let geometric = Polynomial::from_coeffs(
        (0..len).map(|n| if n % q as usize == 0 { ExactRational::one() } else { ExactRational::zero() }).collect(),
    );
    let lhs = w_poly(q as i64 - 2).shift(1).mul_truncated(&geometric, len);
    let rhs = &lhs + &b.substitute_power(q as usize).truncate(len).scale(&ExactRational::from(q));
    match (0..len).find(|&n| rhs.coeff(n) != b.coeff(n)) {
        Some(n) => Report::failed(
            "b-functional-equation",
            n as u64 + 1,
            json!({"q": q, "degree": n, "lhs": b.coeff(n), "rhs": rhs.coeff(n)}),
        ),
        None => Report::passed("b-functional-equation", len as u64),
    }
}

/// Borrow count by schoolbook subtraction; kept independent of
/// [`fractal_exponent`] for cross-checks.
pub fn borrow_count(q: u64, n: u64, m: u64) -> u32 {
    let (mut n, mut m) = (n, m);
    let (mut borrow, mut count) = (0, 0);
    while n > 0 || m > 0 {
        let need = m % q + borrow;
        borrow = u64::from(n % q < need);
        count += borrow as u32;
        n /= q;
        m /= q;
    }
    count
}

/// Ordinary binomial, for oracle comparisons.
pub fn ordinary_binomial(n: u64, m: u64) -> ExactRational {
    binomial(n, m).into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pascal::{build_from_c, gbinom, pascal_additive};
    use crate::rational::rat;
    use crate::zero::digit_binom;
    use crate::exec::Strategy;
    use proptest::prelude::*;

    fn ints(row: &[ExactRational]) -> Vec<i64> {
        row.iter().map(|v| v.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn golden_rows() {
        let f2 = fractal_matrix(&2.into(), 2, 16);
        assert_eq!(ints(f2.row(8)), vec![1, 8, 4, 8, 2, 8, 4, 8, 1]);
        assert_eq!(ints(f2.row(10)), vec![1, 2, 1, 8, 2, 4, 2, 8, 1, 2, 1]);
        let f3 = fractal_matrix(&3.into(), 3, 18);
        assert_eq!(ints(f3.row(9)), vec![1, 9, 9, 3, 9, 9, 3, 9, 9, 1]);
        assert_eq!(ints(&f3.row(12)[..6]), vec![1, 3, 3, 1, 9, 9]);
        let z = fractal_matrix(&0.into(), 2, 16);
        assert_eq!(ints(z.row(12)), vec![1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn closed_forms_agree_with_product() {
        for q in 2..6 {
            for phi in [rat(0, 1), rat(-1, 1), rat(2, 3), ExactRational::from(q)] {
                assert_eq!(
                    fractal_matrix(&phi, q, 40),
                    fractal_matrix_direct(Strategy::Sequential, &phi, q, 40),
                    "q={q} phi={phi}"
                );
            }
        }
        assert_eq!(
            fractal_matrix(&2.into(), 2, 32),
            build_from_c(&CSequence::fractal(2), 32).unwrap()
        );
    }

    #[test]
    fn fast_examples() {
        assert_eq!(fast_gbinom_fractal(2, 10, 3), 8.into());
        assert_eq!(fast_gbinom_fractal(3, 12, 5), 9.into());
        assert_eq!(fast_gbinom_fractal(2, 8, 4), 2.into());
        assert_eq!(fast_gbinom_fractal(7, 40, 0), 1.into());
        assert_eq!(fractal_entry(&5.into(), 2, 3, 4), 0.into());
    }

    #[test]
    fn fast_path_matches_factorials() {
        for q in [2u64, 3, 4, 5] {
            let b = BSequence::fractal(q, ExactRational::from(q));
            for n in 0..200u64 {
                for m in 0..=n {
                    assert_eq!(
                        fast_gbinom_fractal(q, n, m),
                        gbinom(&b, n as usize, m as usize).unwrap(),
                        "q={q} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_phi_is_digit_mask() {
        for q in [2u64, 3, 4] {
            for n in 0..100u64 {
                for m in 0..=n {
                    assert_eq!(
                        fractal_entry(&0.into(), q, n, m),
                        ExactRational::from(u64::from(digit_binom(q, n, m)))
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        let u5 = fractal_rows(2, 5);
        assert_eq!(u5, Polynomial::from_ints(&[1, 1, 2, 2, 1, 1]));
        assert_eq!(u5, &w_poly(1) * &fractal_rows(2, 2).substitute_power(2));
        assert_eq!(fractal_rows(2, 4), Polynomial::from_ints(&[1, 4, 2, 4, 1]));
        assert_eq!(fractal_rows(3, 0), Polynomial::one());
        assert_eq!(
            fractal_columns(2, 2, 8),
            Polynomial::from_ints(&[0, 0, 1, 1, 2, 2, 1, 1])
        );
    }

    #[test]
    fn recurrences_match_matrix() {
        for q in [2, 3, 5] {
            let r = recurrence_check(q, 64);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn block_identities() {
        assert!(block_identity_check(2, 28).pass);
        assert!(block_identity_check(3, 28).pass);
    }

    #[test]
    fn prime_factorization() {
        assert!(pascal_prime_factorization(16).pass);
        assert!(pascal_prime_factorization(1).pass);
        let factors: Vec<ExactRational> = [2, 3, 5].iter().map(|&p| fast_gbinom_fractal(p, 6, 3)).collect();
        assert_eq!(factors, vec![4.into(), 1.into(), 5.into()]);
        assert_eq!(factors.iter().product::<ExactRational>(), ordinary_binomial(6, 3));
        assert_eq!(
            pascal_prime_factorization_with(Strategy::Sequential, 30),
            pascal_prime_factorization_with(Strategy::Parallel, 30)
        );
    }

    #[test]
    fn series_examples() {
        let c2 = fractal_c_product(2, 20);
        assert_eq!(c2.coeff(16), rat(1, 1 << 15));
        assert_eq!(c2.coeff(20), rat(1, 1 << 18));
        assert_eq!(c2.coeff(0), 1.into());
        assert_eq!(fractal_c_product(3, 5).coeff(3), rat(1, 3));
        assert_eq!(c2.coeff(4) * fractal_c_product(3, 4).coeff(4), rat(1, 24));
        for q in [2, 3, 5] {
            assert!(fractal_c_check(q, 40).pass);
            assert!(b_functional_equation_check(q, 40).pass);
        }
    }

    #[test]
    fn b_series_examples() {
        let b = |q: u64, n: u64| b_fractal(q, n);
        assert_eq!(b(2, 8), 8.into());
        assert_eq!(b(2, 16), 16.into());
        assert_eq!(b(3, 9), 9.into());
        assert_eq!(b(3, 12), 3.into());
        assert_eq!(b(2, 1), 1.into());
    }

    #[test]
    fn difference_display() {
        let f2 = fractal_matrix(&2.into(), 2, 12);
        let d = f2.sub(&f2.hadamard(&phi_q_matrix(&0.into(), 4, 12)).unwrap()).unwrap();
        assert_eq!(ints(d.row(4)), vec![0, 4, 2, 4, 0]);
        assert_eq!(ints(d.row(3)), vec![0, 0, 0, 0]);
    }

    #[test]
    fn group_law() {
        for (phi, beta) in [(rat(2, 1), rat(3, 1)), (rat(-1, 2), rat(4, 5)), (rat(0, 1), rat(7, 1))] {
            let lhs = fractal_matrix(&phi, 2, 32)
                .hadamard(&fractal_matrix(&beta, 2, 32))
                .unwrap();
            assert_eq!(lhs, fractal_matrix(&(&phi * &beta), 2, 32));
        }
        let p = pascal_additive(16);
        let f = [2u64, 3, 5, 7, 11, 13]
            .iter()
            .map(|&p| fractal_matrix(&p.into(), p, 16))
            .fold(TriangularMatrix::ones(16), |a, b| a.hadamard(&b).unwrap());
        assert_eq!(f, p);
    }

    proptest! {
        #[test]
        fn exponent_is_borrow_count(q in 2u64..12, n in 0u64..100_000, m in 0u64..100_000) {
            let (n, m) = if m <= n { (n, m) } else { (m, n) };
            prop_assert_eq!(fractal_exponent(q, n, m), borrow_count(q, n, m));
        }
    }
}
