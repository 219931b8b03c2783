//! Generalized Pascal matrices `P_{c(x)}` with entries `c_m c_{n-m} / c_n`,
//! their binomial-coefficient form, the identities every such matrix
//! satisfies, and the convolution product each one induces on series.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::matrix::TriangularMatrix;
use crate::poly::Polynomial;
use crate::rational::ExactRational;
use crate::report::Report;
use crate::sequence::{BSequence, CSequence};

/// `N x N` truncation of `P_{c(x)}`.
pub fn build_from_c(c: &CSequence, size: usize) -> Result<TriangularMatrix> {
    let cs = c.prefix(size)?;
    if let Some(i) = cs.iter().position(ExactRational::is_zero) {
        return Err(Error::InvalidParameter(format!("c_{i} = 0")));
    }
    Ok(TriangularMatrix::from_fn(size, |n, m| {
        &cs[m] * &cs[n - m] / &cs[n]
    }))
}

/// `b_n! / (b_m! b_{n-m}!)`, zero for `m > n`.
pub fn gbinom(b: &BSequence, n: usize, m: usize) -> Result<ExactRational> {
    b.binomial(n, m)
}

/// Same value as [`gbinom`], computed row by row from
/// `C(k, j) = C(k-1, j-1) + (b_k - b_j) / b_{k-j} * C(k-1, j)`.
pub fn gbinom_via_recurrence(b: &BSequence, n: usize, m: usize) -> Result<ExactRational> {
    if m > n {
        return Ok(ExactRational::zero());
    }
    let mut last = ExactRational::zero();
    recurrence_rows(b, n + 1, m, |k, row| {
        if k == n {
            last = row[m].clone();
        }
    })?;
    Ok(last)
}

/// The whole `N x N` truncation from the recurrence alone.
pub fn recurrence_triangle(b: &BSequence, size: usize) -> Result<TriangularMatrix> {
    let mut rows = Vec::with_capacity(size);
    recurrence_rows(b, size, size, |_, row| rows.push(row.to_vec()))?;
    TriangularMatrix::from_rows(rows)
}

/// Feeds rows `0..count` (each cut at column `width`) to `visit`.
fn recurrence_rows<F>(b: &BSequence, count: usize, width: usize, mut visit: F) -> Result<()>
where
    F: FnMut(usize, &[ExactRational]),
{
    let bs: Vec<ExactRational> = (0..count).map(|k| b.term(k)).collect::<Result<_>>()?;
    if let Some(k) = (1..count).find(|&k| bs[k].is_zero()) {
        return Err(Error::ZeroFactor { index: k });
    }
    let mut row = vec![ExactRational::one()];
    if count > 0 {
        visit(0, &row);
    }
    for k in 1..count {
        let w = k.min(width);
        let mut next = Vec::with_capacity(w + 1);
        next.push(ExactRational::one());
        for j in 1..=w {
            let mut v = row[j - 1].clone();
            // C(k-1, j) vanishes for j = k, where b_{k-j} = b_0 = 0
            if j < k {
                let factor = (&bs[k] - &bs[j]) / &bs[k - j];
                v += &(factor * &row[j]);
            }
            next.push(v);
        }
        row = next;
        visit(k, &row);
    }
    Ok(())
}

/// Entrywise product of two truncations.
pub fn hadamard(a: &TriangularMatrix, b: &TriangularMatrix) -> Result<TriangularMatrix> {
    a.hadamard(b)
}

/// Inverse in the Hadamard group; fails on any zero entry.
pub fn hadamard_inverse(a: &TriangularMatrix) -> Result<TriangularMatrix> {
    a.hadamard_inverse()
}

/// Checks `(n,0) = 1`, `(n,m) = (n,n-m)` and
/// `(n+q,q)(n+p,m+p)(m+p,p) = (n+p,p)(n+q,m+q)(m+q,q)`
/// for every index combination that stays inside the truncation.
pub fn identity_check(a: &TriangularMatrix) -> Report {
    identity_check_with(Strategy::default(), a)
}

pub fn identity_check_with(strategy: Strategy, a: &TriangularMatrix) -> Report {
    let size = a.size();
    let per_row = strategy.map_range(size, |n| {
        let mut checked = 0u64;
        checked += 1;
        if !a.get(n, 0).is_one() {
            return (checked, Some(json!({"identity": "column0", "n": n, "value": a.get(n, 0)})));
        }
        for m in 0..=n {
            checked += 1;
            if a.get(n, m) != a.get(n, n - m) {
                return (checked, Some(json!({"identity": "symmetry", "n": n, "m": m})));
            }
        }
        for m in 0..=n {
            // the relation is symmetric in (p, q), so p < q covers it
            for q in 1..size - n {
                for p in 0..q {
                    checked += 1;
                    let lhs = a.get(n + q, q) * a.get(n + p, m + p) * a.get(m + p, p);
                    let rhs = a.get(n + p, p) * a.get(n + q, m + q) * a.get(m + q, q);
                    if lhs != rhs {
                        return (
                            checked,
                            Some(json!({"identity": "eq2", "n": n, "m": m, "p": p, "q": q})),
                        );
                    }
                }
            }
        }
        (checked, None)
    });
    let checked = per_row.iter().map(|(c, _)| c).sum();
    let failure = per_row.into_iter().find_map(|(_, f)| f);
    Report::from_outcome("identities", checked, failure)
}

/// `g_n = sum_m (A)_{n,m} a_m b_{n-m}` for `n < N`.
pub fn pascal_convolve(a: &TriangularMatrix, x: &Polynomial, y: &Polynomial) -> Result<Polynomial> {
    let size = a.size();
    for p in [x, y] {
        if p.degree().is_some_and(|d| d >= size) {
            return Err(Error::InvalidParameter(format!(
                "series degree {} exceeds truncation {size}",
                p.degree().unwrap_or(0)
            )));
        }
    }
    let xs = x.padded(size);
    let ys = y.padded(size);
    let coeffs = (0..size)
        .map(|n| {
            a.row(n)
                .iter()
                .enumerate()
                .map(|(m, v)| v * &xs[m] * &ys[n - m])
                .sum()
        })
        .collect();
    Ok(Polynomial::from_coeffs(coeffs))
}

/// First column as an explicit b-sequence: `b_n = (A)_{n,1}`.
pub fn first_column_b(a: &TriangularMatrix) -> BSequence {
    let mut values = vec![ExactRational::zero()];
    values.extend((1..a.size()).map(|n| a.get(n, 1)));
    BSequence::explicit(values)
}

/// Ordinary Pascal matrix via the additive rule; independent of any
/// factorial or series code.
pub fn pascal_additive(size: usize) -> TriangularMatrix {
    let mut rows: Vec<Vec<ExactRational>> = Vec::with_capacity(size);
    for n in 0..size {
        let row = (0..=n)
            .map(|m| {
                if m == 0 || m == n {
                    ExactRational::one()
                } else {
                    &rows[n - 1][m - 1] + &rows[n - 1][m]
                }
            })
            .collect();
        rows.push(row);
    }
    TriangularMatrix::from_rows(rows).expect("rows have triangular shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use std::sync::Arc;

    fn ints(row: &[ExactRational]) -> Vec<i64> {
        row.iter().map(|v| v.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn build_examples() {
        let p = build_from_c(&CSequence::exponential(), 5).unwrap();
        assert_eq!(ints(p.row(4)), vec![1, 4, 6, 4, 1]);
        assert_eq!(build_from_c(&CSequence::geometric(), 7).unwrap(), TriangularMatrix::ones(7));
        let f2 = build_from_c(&CSequence::fractal(2), 11).unwrap();
        assert_eq!(ints(f2.row(10)), vec![1, 2, 1, 8, 2, 4, 2, 8, 1, 2, 1]);
    }

    #[test]
    fn gbinom_examples() {
        let b2 = BSequence::fractal(2, 2.into());
        let b3 = BSequence::fractal(3, 3.into());
        assert_eq!(gbinom(&b2, 8, 1).unwrap(), 8.into());
        assert_eq!(gbinom(&b3, 9, 3).unwrap(), 3.into());
        assert_eq!(gbinom(&b3, 17, 0).unwrap(), 1.into());
        assert_eq!(gbinom(&b2, 3, 5).unwrap(), 0.into());
    }

    #[test]
    fn recurrence_examples() {
        let b2 = BSequence::fractal(2, 2.into());
        // 1 + ((4 - 2) / 2) * 1
        assert_eq!(gbinom_via_recurrence(&b2, 4, 2).unwrap(), 2.into());
        assert_eq!(gbinom_via_recurrence(&b2, 13, 13).unwrap(), 1.into());
        assert_eq!(gbinom_via_recurrence(&BSequence::naturals(), 5, 2).unwrap(), 10.into());
        let zero = BSequence::fractal(2, 0.into());
        assert!(matches!(gbinom_via_recurrence(&zero, 4, 1), Err(Error::ZeroFactor { .. })));
    }

    #[test]
    fn two_definitions_agree() {
        for b in [
            BSequence::naturals(),
            BSequence::fractal(2, 2.into()),
            BSequence::fractal(3, 3.into()),
        ] {
            let b = Arc::new(b);
            let m = build_from_c(&CSequence::from_b(Arc::clone(&b)), 32).unwrap();
            for n in 0..32 {
                for k in 0..=n {
                    assert_eq!(m.get(n, k), gbinom(&b, n, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn recurrence_matches_factorials() {
        for b in [
            BSequence::naturals(),
            BSequence::fractal(2, 2.into()),
            BSequence::fractal(3, 3.into()),
        ] {
            let triangle = recurrence_triangle(&b, 64).unwrap();
            for (n, m, v) in triangle.iter() {
                assert_eq!(v, &gbinom(&b, n, m).unwrap(), "n={n} m={m}");
            }
            assert_eq!(gbinom_via_recurrence(&b, 63, 17).unwrap(), triangle.get(63, 17));
        }
    }

    #[test]
    fn identity_check_examples() {
        assert!(identity_check(&pascal_additive(16)).pass);
        let f3 = build_from_c(&CSequence::fractal(3), 18).unwrap();
        let r = identity_check(&f3);
        assert!(r.pass, "{r:?}");
        assert!(r.checked > 0);

        // (2,1) = 5 alone is P_c with c_2 = 1/5, c_3 = 1/15 at N = 4
        let perturb = |size: usize, n: usize, m: usize| {
            let mut rows: Vec<Vec<ExactRational>> = pascal_additive(size).rows().to_vec();
            rows[n][m] = 5.into();
            TriangularMatrix::from_rows(rows).unwrap()
        };
        assert!(identity_check(&perturb(4, 2, 1)).pass);

        let r = identity_check(&perturb(5, 2, 1));
        assert!(!r.pass);
        assert_eq!(r.counterexample.unwrap()["identity"], "eq2");

        assert!(!identity_check(&perturb(4, 3, 1)).pass);
    }

    #[test]
    fn identity_check_strategies_agree() {
        let mut rows: Vec<Vec<ExactRational>> = pascal_additive(12).rows().to_vec();
        rows[9][4] = 7.into();
        let broken = TriangularMatrix::from_rows(rows).unwrap();
        assert_eq!(
            identity_check_with(Strategy::Sequential, &broken),
            identity_check_with(Strategy::Parallel, &broken)
        );
    }

    #[test]
    fn convolution_examples() {
        let x = Polynomial::from_ints(&[1, 2, 0, -1]);
        let y = Polynomial::from_ints(&[3, 0, 1]);
        let ones = TriangularMatrix::ones(8);
        assert_eq!(pascal_convolve(&ones, &x, &y).unwrap(), &x * &y);
        assert_eq!(
            pascal_convolve(&ones, &x, &y).unwrap(),
            pascal_convolve(&ones, &y, &x).unwrap()
        );
        let p = pascal_additive(8);
        assert_eq!(
            pascal_convolve(&p, &x, &y).unwrap(),
            pascal_convolve(&p, &y, &x).unwrap()
        );
        let too_long = Polynomial::from_ints(&[1; 9]);
        assert!(pascal_convolve(&ones, &too_long, &y).is_err());
    }

    #[test]
    fn first_column_examples() {
        let b = first_column_b(&pascal_additive(10));
        for n in 1..10 {
            assert_eq!(b.term(n).unwrap(), ExactRational::from(n));
        }
        let f2 = build_from_c(&CSequence::fractal(2), 9).unwrap();
        let b = first_column_b(&f2);
        let got: Vec<_> = (1..9).map(|n| b.term(n).unwrap()).collect();
        let want: Vec<ExactRational> = [1, 2, 1, 4, 1, 2, 1, 8].iter().map(|&v| v.into()).collect();
        assert_eq!(got, want);
        let phi = rat(5, 2);
        let c = CSequence::phi_q(phi.clone(), 3).unwrap();
        let b = first_column_b(&build_from_c(&c, 13).unwrap());
        for n in 1..13 {
            let want = if n % 3 == 0 { phi.clone() } else { 1.into() };
            assert_eq!(b.term(n).unwrap(), want);
        }
    }

    #[test]
    fn hadamard_of_pascal_family_is_pascal() {
        let a = build_from_c(&CSequence::fractal(2), 16).unwrap();
        let b = build_from_c(&CSequence::phi_q(rat(-2, 3), 5).unwrap(), 16).unwrap();
        let prod = hadamard(&a, &b).unwrap();
        assert!(identity_check(&prod).pass);
        assert_eq!(hadamard(&prod, &hadamard_inverse(&b).unwrap()).unwrap(), a);
    }
}
