//! Zero generalized Pascal matrices and their digit calculus.
//!
//! The fractal zero matrix `[0,q]P` has entry `C0(n, m) = 1` exactly when
//! every base-q digit of `n` dominates the matching digit of `m`. Masking a
//! Toeplitz matrix with it gives the algebra `(a(x)|q)` with entries
//! `a_{n-m} C0(n, m)`, whose product is the carryless convolution `∘`.

use serde_json::json;

use crate::digits::{binomial, DigitVector};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::matrix::TriangularMatrix;
use crate::pascal::build_from_c;
use crate::poly::Polynomial;
use crate::rational::ExactRational;
use crate::report::Report;
use crate::sequence::CSequence;

/// `C0(n, m)`: 1 iff each base-q digit of `n` is at least the digit of `m`.
pub fn digit_binom(q: u64, n: u64, m: u64) -> u8 {
    assert!(q >= 2);
    if m > n {
        return 0;
    }
    let (mut n, mut m) = (n, m);
    while m > 0 {
        if n % q < m % q {
            return 0;
        }
        n /= q;
        m /= q;
    }
    1
}

fn digit_mask(q: u64, n: usize, m: usize) -> bool {
    digit_binom(q, n as u64, m as u64) == 1
}

/// `[0,q]P` truncated to `size`, evaluated digit by digit.
pub fn sierpinski_matrix(q: u64, size: usize) -> TriangularMatrix {
    TriangularMatrix::from_fn(size, |n, m| ExactRational::from(digit_binom(q, n as u64, m as u64) as u64))
}

/// `A ⊗ B`
pub fn kronecker(a: &TriangularMatrix, b: &TriangularMatrix) -> TriangularMatrix {
    a.kronecker(b)
}

/// The leading `q^{k+1}` block of `[0,q]P` equals both `S_{q,1} ⊗ S_{q,k}`
/// and `S_{q,k} ⊗ S_{q,1}`, where `S_{q,j}` is its leading `q^j` block.
pub fn sierpinski_selfsim_check(q: u64, k: u32) -> Report {
    assert!(q >= 2 && k >= 1);
    let big = q.pow(k + 1) as usize;
    let s = sierpinski_matrix(q, big);
    let s1 = s.leading_block(q as usize);
    let sk = s.leading_block(q.pow(k) as usize);
    let entries = (big * (big + 1) / 2) as u64;
    let mut failure = None;
    for (label, kron) in [("S1⊗Sk", s1.kronecker(&sk)), ("Sk⊗S1", sk.kronecker(&s1))] {
        if let Some((n, m)) = s.first_difference(&kron) {
            failure = Some(json!({"q": q, "k": k, "form": label, "n": n, "m": m}));
            break;
        }
    }
    Report::from_outcome("kron", 2 * entries, failure)
}

/// Checks `a(x) = (sum_{n<q} a_n x^n) a(x^q)` on the given prefix, i.e.
/// `a_0 = 1` and `a_{qn+i} = a_n a_i`.
pub fn check_fractal(a: &[ExactRational], q: u64) -> Result<()> {
    if a.first().is_some_and(|a0| !a0.is_one()) {
        return Err(Error::NotFractal { q, index: 0 });
    }
    let q = q as usize;
    for idx in q..a.len() {
        let (n, i) = (idx / q, idx % q);
        if a[idx] != &a[n] * &a[i] {
            return Err(Error::NotFractal { q: q as u64, index: idx });
        }
    }
    Ok(())
}

/// Extends `a_0 .. a_{q-1}` to the digit-product series `a_n = prod a_{n_i}`.
pub fn fractal_extend(base: &[ExactRational], q: u64, len: usize) -> Vec<ExactRational> {
    assert_eq!(base.len(), q as usize, "need exactly q base coefficients");
    (0..len)
        .map(|n| {
            DigitVector::new(n as u64, q)
                .digits()
                .iter()
                .map(|&d| base[d as usize].clone())
                .product()
        })
        .collect()
}

/// `((a(x)|q))_{n,m} = a_{n-m} C0(n, m)`.
pub fn masked_matrix(a: &[ExactRational], q: u64, size: usize) -> Result<TriangularMatrix> {
    if a.len() < size {
        return Err(Error::InvalidParameter(format!(
            "series has {} coefficients, need {size}",
            a.len()
        )));
    }
    Ok(TriangularMatrix::from_fn(size, |n, m| {
        if digit_mask(q, n, m) {
            a[n - m].clone()
        } else {
            ExactRational::zero()
        }
    }))
}

/// `[x^n] a∘b = sum_m C0(n, m) a_m b_{n-m}` for `n < len`; no structural
/// assumption on the inputs.
pub fn masked_convolve(a: &[ExactRational], b: &[ExactRational], q: u64, len: usize) -> Vec<ExactRational> {
    let at = |s: &[ExactRational], i: usize| s.get(i).cloned().unwrap_or_default();
    (0..len)
        .map(|n| {
            (0..=n)
                .filter(|&m| digit_mask(q, n, m))
                .map(|m| at(a, m) * at(b, n - m))
                .sum()
        })
        .collect()
}

/// Carryless convolution of two fractal series through degree `degree`:
/// `[x^n] a∘b = prod_i [x^{n_i}] a(x) b(x)` over the base-q digits of n.
pub fn carryless_convolve(
    a: &[ExactRational],
    b: &[ExactRational],
    q: u64,
    degree: usize,
) -> Result<Vec<ExactRational>> {
    for s in [a, b] {
        if s.len() <= degree {
            return Err(Error::InvalidParameter(format!(
                "series has {} coefficients, need {}",
                s.len(),
                degree + 1
            )));
        }
        check_fractal(&s[..=degree], q)?;
    }
    // ordinary product coefficients for single digits
    let digit_coeffs: Vec<ExactRational> = (0..(q as usize).min(degree + 1))
        .map(|d| (0..=d).map(|j| &a[j] * &b[d - j]).sum())
        .collect();
    Ok((0..=degree)
        .map(|n| {
            DigitVector::new(n as u64, q)
                .digits()
                .iter()
                .map(|&d| digit_coeffs[d as usize].clone())
                .product()
        })
        .collect())
}

/// Row `n` of `(a(x)|q)` as `prod_i u_{n_i}(x^{q^i})` with base rows
/// `u_d(x) = sum_{m<=d} a_{d-m} x^m`, `d < q`.
pub fn masked_row(a: &[ExactRational], q: u64, n: u64) -> Result<Polynomial> {
    if a.len() < q as usize {
        return Err(Error::InvalidParameter(format!("need at least q = {q} coefficients")));
    }
    check_fractal(a, q)?;
    let base_row = |d: usize| Polynomial::from_coeffs((0..=d).map(|m| a[d - m].clone()).collect());
    let mut row = Polynomial::one();
    let mut scale = 1usize;
    for &d in DigitVector::new(n, q).digits() {
        row = &row * &base_row(d as usize).substitute_power(scale);
        scale *= q as usize;
    }
    Ok(row)
}

/// `(a(x), b(x) | q, k) = ((sum_{n<q^k} b_n x^n) a(x^{q^k}) | q)`: block
/// `(n, m)` is `a_{n-m} C0(n, m)` times the leading `q^k` block of `(b|q)`.
pub fn block_matrix(
    a: &[ExactRational],
    b: &[ExactRational],
    q: u64,
    k: u32,
    size: usize,
) -> Result<TriangularMatrix> {
    let block = q.pow(k) as usize;
    if size % block != 0 {
        return Err(Error::SizeMismatch { left: size, right: block });
    }
    if b.len() > block {
        return Err(Error::InvalidParameter(format!(
            "inner series must have degree < q^k = {block}"
        )));
    }
    let blocks = size / block;
    let at = |s: &[ExactRational], i: usize| s.get(i).cloned().unwrap_or_default();
    Ok(TriangularMatrix::from_fn(size, |row, col| {
        let (n, i) = (row / block, row % block);
        let (m, j) = (col / block, col % block);
        debug_assert!(n < blocks);
        if n < m || i < j || !digit_mask(q, n, m) || !digit_mask(q, i, j) {
            return ExactRational::zero();
        }
        at(a, n - m) * at(b, i - j)
    }))
}

/// `(a,b|q,k)(c,d|q,k) = (a∘c, b∘d|q,k)`: the left side by ordinary matrix
/// multiplication, the right side built directly.
pub fn block_product_check(
    a: &[ExactRational],
    b: &[ExactRational],
    c: &[ExactRational],
    d: &[ExactRational],
    q: u64,
    k: u32,
    size: usize,
) -> Result<Report> {
    let block = q.pow(k) as usize;
    let lhs = block_matrix(a, b, q, k, size)?.matmul(&block_matrix(c, d, q, k, size)?)?;
    let outer = masked_convolve(a, c, q, size / block.max(1));
    let inner = masked_convolve(b, d, q, block);
    let rhs = block_matrix(&outer, &inner, q, k, size)?;
    let failure = lhs
        .first_difference(&rhs)
        .map(|(n, m)| json!({"n": n, "m": m, "product": lhs.get(n, m), "direct": rhs.get(n, m)}));
    Ok(Report::from_outcome("block-product", (size * (size + 1) / 2) as u64, failure))
}

/// `(q^k n + i, q^k m + j)` entry equals `(n, m)` entry times `(i, j)` entry
/// for every `q^k < size` (the digit-block law), and each entry is the
/// product of its single-digit entries.
pub fn digit_block_check(a: &TriangularMatrix, q: u64) -> Report {
    digit_block_check_with(Strategy::default(), a, q)
}

pub fn digit_block_check_with(strategy: Strategy, a: &TriangularMatrix, q: u64) -> Report {
    let size = a.size();
    let per_row = strategy.map_range(size, |row| {
        let mut checked = 0u64;
        for col in 0..=row {
            let value = a.get(row, col);
            let mut block = q as usize;
            while block < size {
                let (n, i) = (row / block, row % block);
                let (m, j) = (col / block, col % block);
                checked += 1;
                if value != a.get(n, m) * a.get(i, j) {
                    return (
                        checked,
                        Some(json!({"law": "block", "block": block, "n": row, "m": col})),
                    );
                }
                block *= q as usize;
            }
            let nd = DigitVector::new(row as u64, q);
            let md = DigitVector::new(col as u64, q);
            let digitwise: ExactRational = (0..nd.len())
                .map(|i| a.get(nd.digit(i) as usize, md.digit(i) as usize))
                .product();
            checked += 1;
            if value != digitwise {
                return (checked, Some(json!({"law": "digits", "n": row, "m": col})));
            }
        }
        (checked, None)
    });
    let checked = per_row.iter().map(|(c, _)| c).sum();
    let failure = per_row.into_iter().find_map(|(_, f)| f);
    Report::from_outcome("digit-block", checked, failure)
}

/// `T^{(q)}` entry: product of ordinary binomials of the base-q digits.
pub fn t_coefficient(q: u64, n: u64, m: u64) -> ExactRational {
    if m > n {
        return ExactRational::zero();
    }
    let nd = DigitVector::new(n, q);
    let md = DigitVector::new(m, q);
    (0..nd.len().max(md.len()))
        .map(|i| ExactRational::from(binomial(nd.digit(i), md.digit(i))))
        .product()
}

/// Row `n` of `T^{(q)}`: `prod_i (1 + x^{q^i})^{n_i}`.
pub fn t_row(q: u64, n: u64) -> Polynomial {
    let mut row = Polynomial::one();
    let mut scale = 1usize;
    for &d in DigitVector::new(n, q).digits() {
        let factor = Polynomial::from_ints(&[1, 1]).substitute_power(scale);
        row = &row * &factor.pow(d as u32);
        scale *= q as usize;
    }
    row
}

/// `T^{(q)}` from digit products.
pub fn t_matrix(q: u64, size: usize) -> TriangularMatrix {
    TriangularMatrix::from_fn(size, |n, m| t_coefficient(q, n as u64, m as u64))
}

/// `T^{(q)}` as the leading block of `T_1 ⊗ T_1 ⊗ ...`, `T_1` the first `q`
/// rows of the Pascal matrix.
pub fn t_matrix_kronecker(q: u64, size: usize) -> TriangularMatrix {
    let t1 = crate::pascal::pascal_additive(q as usize);
    let mut acc = TriangularMatrix::ones(1);
    while acc.size() < size {
        acc = acc.kronecker(&t1);
    }
    acc.leading_block(size)
}

/// `T^{(q)} = P_{c(x)} × [0,q]P` with `c_n = 1/n!` for `n < q`, extended by
/// digit products.
pub fn t_matrix_overlay(q: u64, size: usize) -> Result<TriangularMatrix> {
    let mut base = Vec::with_capacity(q as usize);
    let mut fact = ExactRational::one();
    for n in 0..q {
        if n > 0 {
            fact *= &ExactRational::from(n);
        }
        base.push(fact.checked_recip().expect("factorials are nonzero"));
    }
    let c = CSequence::digit_product(q, base)?;
    build_from_c(&c, size)?.hadamard(&sierpinski_matrix(q, size))
}

/// All three constructions of `T^{(q)}` agree.
pub fn t_matrix_check(q: u64, size: usize) -> Result<Report> {
    let digits = t_matrix(q, size);
    let kron = t_matrix_kronecker(q, size);
    let overlay = t_matrix_overlay(q, size)?;
    let mut failure = None;
    for (label, other) in [("kronecker", &kron), ("overlay", &overlay)] {
        if let Some((n, m)) = digits.first_difference(other) {
            failure = Some(json!({"q": q, "form": label, "n": n, "m": m}));
            break;
        }
    }
    Ok(Report::from_outcome("t-matrix", (size * (size + 1)) as u64, failure))
}
