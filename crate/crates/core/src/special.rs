//! The special system `phi,q P`, the decomposition of any nonzero
//! generalized Pascal matrix into it, and the q-umbral family.
//!
//! `(phi,q P)_{n,m}` is 1 when `n mod q >= m mod q` and `phi` otherwise.
//! Its first column is `phi` at multiples of `q` and 1 elsewhere, so the
//! first column of a Hadamard product `×_q q P(beta_q)` is
//! `b_n = prod_{d | n, d > 1} beta_d`. Möbius inversion over the divisor
//! lattice recovers `beta_q = prod_{d | q} b_d^{mu(q/d)}`.

use std::collections::BTreeMap;

use serde_json::json;

use crate::digits::{divisors, mobius};
use crate::error::{Error, Result};
use crate::matrix::TriangularMatrix;
use crate::pascal::{build_from_c, first_column_b};
use crate::poly::Polynomial;
use crate::rational::ExactRational;
use crate::report::Report;
use crate::sequence::CSequence;

/// `phi,q P` in closed form. `phi = 0` gives a zero generalized Pascal matrix.
pub fn phi_q_matrix(phi: &ExactRational, q: u64, size: usize) -> TriangularMatrix {
    assert!(q >= 2, "modulus must be at least 2");
    let q = q as usize;
    TriangularMatrix::from_fn(size, |n, m| {
        if n % q >= m % q {
            ExactRational::one()
        } else {
            phi.clone()
        }
    })
}

/// `c(phi, q, x)`, with `c_{qn+i} = phi^{-n}`.
pub fn phi_q_series(phi: ExactRational, q: u64) -> Result<CSequence> {
    CSequence::phi_q(phi, q)
}

/// Coordinates `beta_q` of a nonzero generalized Pascal matrix in the
/// special system, for `2 <= q <= Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCoordinates {
    betas: BTreeMap<u64, ExactRational>,
}

impl PhiCoordinates {
    pub fn from_map(betas: BTreeMap<u64, ExactRational>) -> Self {
        Self { betas }
    }

    pub fn beta(&self, q: u64) -> Option<&ExactRational> {
        self.betas.get(&q)
    }

    pub fn betas(&self) -> &BTreeMap<u64, ExactRational> {
        &self.betas
    }

    pub fn max_modulus(&self) -> u64 {
        self.betas.keys().next_back().copied().unwrap_or(1)
    }

    /// `×_{q} phi_q_matrix(beta_q, q)` truncated to `size`.
    pub fn recompose(&self, size: usize) -> TriangularMatrix {
        self.betas
            .iter()
            .filter(|(_, beta)| !beta.is_one())
            .fold(TriangularMatrix::ones(size), |acc, (&q, beta)| {
                acc.hadamard(&phi_q_matrix(beta, q, size))
                    .expect("same size")
            })
    }

    /// JSON object `{"q": "beta", ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .betas
            .iter()
            .map(|(q, b)| (q.to_string(), serde_json::Value::String(b.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Möbius extraction of the coordinates from the first column. Requires
/// `Q < N` so every `b_q` is inside the truncation; the caller is
/// responsible for `a` being a generalized Pascal truncation.
pub fn phi_coordinates(a: &TriangularMatrix, max_q: u64) -> Result<PhiCoordinates> {
    if max_q as usize >= a.size() {
        return Err(Error::InvalidParameter(format!(
            "max modulus {max_q} must be below the truncation size {}",
            a.size()
        )));
    }
    let b = first_column_b(a);
    let bs: Vec<ExactRational> = (0..=max_q as usize)
        .map(|n| if n == 0 { Ok(ExactRational::zero()) } else { b.term(n) })
        .collect::<Result<_>>()?;
    if let Some(n) = (1..bs.len()).find(|&n| bs[n].is_zero()) {
        return Err(Error::ZeroEntry { row: n, col: 1 });
    }
    let betas = (2..=max_q)
        .map(|q| {
            let beta = divisors(q)
                .into_iter()
                .map(|d| {
                    bs[d as usize]
                        .powi(mobius(q / d) as i64)
                        .expect("b_d is nonzero")
                })
                .product();
            (q, beta)
        })
        .collect();
    Ok(PhiCoordinates { betas })
}

/// Multiplicative form of the homomorphism `phi,q P -> e_q log|phi|`:
/// coordinates of `A × B` are the products of the coordinates, and any
/// matrix whose coordinates are all `±1` has only `±1` entries.
pub fn homomorphism_check(a: &TriangularMatrix, b: &TriangularMatrix, max_q: u64) -> Result<Report> {
    let ab = a.hadamard(b)?;
    let ca = phi_coordinates(a, max_q)?;
    let cb = phi_coordinates(b, max_q)?;
    let cab = phi_coordinates(&ab, max_q)?;
    let mut checked = 0u64;
    for q in 2..=max_q {
        checked += 1;
        let lhs = cab.beta(q).expect("coordinate present");
        let rhs = ca.beta(q).expect("coordinate present") * cb.beta(q).expect("coordinate present");
        if lhs != &rhs {
            return Ok(Report::failed(
                "homomorphism",
                checked,
                json!({"property": "product", "q": q, "lhs": lhs, "rhs": rhs}),
            ));
        }
    }
    for (label, m, c) in [("A", a, &ca), ("B", b, &cb), ("AxB", &ab, &cab)] {
        checked += 1;
        let involutive = c.betas().values().all(|v| v.abs().is_one());
        if involutive {
            if let Some((n, k, _)) = m.iter().find(|(_, _, v)| !v.abs().is_one()) {
                return Ok(Report::failed(
                    "homomorphism",
                    checked,
                    json!({"property": "kernel", "matrix": label, "n": n, "m": k}),
                ));
            }
        }
    }
    Ok(Report::passed("homomorphism", checked))
}

/// `P_{g(q,x)}`: column `n` is `x^n prod_{m=0}^{n} (1 - q^m x)^{-1}`,
/// expanded through degree `N - 1`.
pub fn q_umbral_matrix(q: &ExactRational, size: usize) -> TriangularMatrix {
    let mut columns: Vec<Vec<ExactRational>> = Vec::with_capacity(size);
    // x^n prod_{m<n} (1 - q^m x)^{-1}, before the n-th factor
    let mut running = vec![ExactRational::zero(); size];
    if size > 0 {
        running[0] = ExactRational::one();
    }
    for n in 0..size {
        let ratio = q.pow(n as u32);
        // multiply by (1 - ratio x)^{-1}: out_k = in_k + ratio * out_{k-1}
        for k in 1..size {
            let prev = &ratio * &running[k - 1];
            running[k] += &prev;
        }
        columns.push(running.clone());
        running.rotate_right(1);
        running[0] = ExactRational::zero();
    }
    TriangularMatrix::from_fn(size, |n, m| columns[m][n].clone())
}

/// `P^{-1}_{g(q,x)}`: row `n` is `prod_{m=0}^{n-1} (x - q^m)`.
pub fn q_umbral_inverse(q: &ExactRational, size: usize) -> TriangularMatrix {
    let mut rows: Vec<Vec<ExactRational>> = Vec::with_capacity(size);
    let mut row = Polynomial::one();
    for n in 0..size {
        rows.push(row.padded(n + 1));
        let factor = Polynomial::from_coeffs(vec![-q.pow(n as u32), ExactRational::one()]);
        row = &row * &factor;
    }
    TriangularMatrix::from_rows(rows).expect("row n has degree n")
}

/// `0,q P × P_{c(x)}` with `c(x) = w_{q-1}(x) e^{x^q}`, i.e. `c_{qn+i} = 1/n!`.
pub fn zero_overlay_matrix(q: u64, size: usize) -> Result<TriangularMatrix> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q = {q} must be at least 2")));
    }
    let mut inv_fact = vec![ExactRational::one()];
    for n in 1..=size as u64 / q {
        let next = inv_fact.last().expect("nonempty") / ExactRational::from(n);
        inv_fact.push(next);
    }
    let cs = (0..size).map(|n| inv_fact[n / q as usize].clone()).collect();
    let c = CSequence::explicit(cs)?;
    build_from_c(&c, size)?.hadamard(&phi_q_matrix(&ExactRational::zero(), q, size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pascal::{identity_check, pascal_additive};
    use crate::rational::rat;

    fn ints(row: &[ExactRational]) -> Vec<i64> {
        row.iter().map(|v| v.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn phi_q_examples() {
        let phi = ExactRational::from(7);
        let m = phi_q_matrix(&phi, 2, 9);
        assert_eq!(m.get(4, 3), phi);
        assert_eq!(m.get(4, 2), 1.into());
        assert_eq!(phi_q_matrix(&phi, 3, 9).get(3, 1), phi);
        assert_eq!(phi_q_matrix(&1.into(), 4, 10), TriangularMatrix::ones(10));
    }

    #[test]
    fn series_matches_closed_form() {
        let c = phi_q_series(3.into(), 3).unwrap();
        assert_eq!(build_from_c(&c, 9).unwrap(), phi_q_matrix(&3.into(), 3, 9));
        for phi in [rat(2, 1), rat(-1, 1), rat(-5, 3), rat(1, 7)] {
            for q in 2..6 {
                let c = phi_q_series(phi.clone(), q).unwrap();
                assert_eq!(build_from_c(&c, 32).unwrap(), phi_q_matrix(&phi, q, 32));
            }
        }
        assert!(matches!(phi_q_series(0.into(), 2), Err(Error::ZeroPhi)));
    }

    #[test]
    fn pascal_coordinates() {
        let c = phi_coordinates(&pascal_additive(7), 6).unwrap();
        let want = [(2, 2), (3, 3), (4, 2), (5, 5), (6, 1)];
        for (q, beta) in want {
            assert_eq!(c.beta(q).unwrap(), &ExactRational::from(beta), "beta_{q}");
        }
        assert_eq!(c.recompose(7), pascal_additive(7));
    }

    #[test]
    fn special_and_fractal_coordinates() {
        let phi = rat(-4, 9);
        let c = phi_coordinates(&phi_q_matrix(&phi, 3, 12), 11).unwrap();
        for q in 2..=11 {
            let want = if q == 3 { phi.clone() } else { 1.into() };
            assert_eq!(c.beta(q).unwrap(), &want);
        }
        let f2 = build_from_c(&CSequence::fractal(2), 9).unwrap();
        let c = phi_coordinates(&f2, 8).unwrap();
        for q in 2..=8 {
            let want = if [2, 4, 8].contains(&q) { 2 } else { 1 };
            assert_eq!(c.beta(q).unwrap(), &ExactRational::from(want));
        }
        assert_eq!(c.recompose(9), f2);
    }

    #[test]
    fn mobius_reproduces_displayed_factors() {
        // arbitrary distinct b_n to keep the ratios distinguishable
        let values: Vec<ExactRational> = (0..13)
            .map(|n| if n <= 1 { 1.into() } else { ExactRational::from(n as i64 * 7 + 3) })
            .collect();
        let mut cs = vec![ExactRational::one()];
        for n in 1..13 {
            let next = cs[n - 1].clone() / &values[n];
            cs.push(next);
        }
        let a = build_from_c(&CSequence::explicit(cs).unwrap(), 13).unwrap();
        let b = |n: usize| values[n].clone();
        let c = phi_coordinates(&a, 12).unwrap();
        assert_eq!(c.beta(4).unwrap(), &(b(4) / b(2)));
        assert_eq!(c.beta(6).unwrap(), &(b(6) / (b(2) * b(3))));
        assert_eq!(c.beta(8).unwrap(), &(b(8) / b(4)));
        assert_eq!(c.beta(9).unwrap(), &(b(9) / b(3)));
        assert_eq!(c.beta(10).unwrap(), &(b(10) / (b(2) * b(5))));
        assert_eq!(c.beta(12).unwrap(), &(b(12) * b(2) / (b(4) * b(6))));
        assert_eq!(c.recompose(13), a);
    }

    #[test]
    fn coordinates_reject_zero_matrices() {
        let z = phi_q_matrix(&0.into(), 2, 8);
        assert!(matches!(phi_coordinates(&z, 7), Err(Error::ZeroEntry { .. })));
        assert!(phi_coordinates(&pascal_additive(5), 5).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let a = phi_q_matrix(&2.into(), 2, 10);
        let b = phi_q_matrix(&3.into(), 2, 10);
        let ab = a.hadamard(&b).unwrap();
        assert_eq!(phi_coordinates(&ab, 9).unwrap().beta(2).unwrap(), &6.into());
        assert!(homomorphism_check(&a, &b, 9).unwrap().pass);

        let p = pascal_additive(10);
        let ones = TriangularMatrix::ones(10);
        assert_eq!(
            phi_coordinates(&p.hadamard(&ones).unwrap(), 9).unwrap(),
            phi_coordinates(&p, 9).unwrap()
        );
        assert!(homomorphism_check(&p, &ones, 9).unwrap().pass);

        let inv = phi_q_matrix(&(-1).into(), 2, 10);
        assert_eq!(phi_coordinates(&inv, 9).unwrap().beta(2).unwrap(), &(-1).into());
        assert!(inv.iter().all(|(_, _, v)| v.abs().is_one()));
        assert!(homomorphism_check(&inv, &p, 9).unwrap().pass);
    }

    #[test]
    fn q_umbral_examples() {
        let m = q_umbral_matrix(&(-1).into(), 7);
        assert_eq!(ints(m.row(6)), vec![1, 0, 3, 0, 3, 0, 1]);
        let inv = q_umbral_inverse(&(-1).into(), 6);
        assert_eq!(ints(inv.row(5)), vec![-1, 1, 2, -2, -1, 1]);
        assert_eq!(q_umbral_matrix(&1.into(), 5), pascal_additive(5));
        assert_eq!(q_umbral_matrix(&0.into(), 9), TriangularMatrix::ones(9));
    }

    #[test]
    fn q_umbral_inverse_is_inverse() {
        for q in [rat(-1, 1), rat(0, 1), rat(1, 1), rat(2, 1), rat(3, 1), rat(-2, 5)] {
            let prod = q_umbral_matrix(&q, 16).matmul(&q_umbral_inverse(&q, 16)).unwrap();
            assert_eq!(prod, TriangularMatrix::identity(16), "q = {q}");
        }
    }

    #[test]
    fn q_umbral_minus_one_closed_form() {
        let m = q_umbral_matrix(&(-1).into(), 32);
        for row in 0..32 {
            for col in 0..=row {
                let (n, i) = (row / 2, row % 2);
                let (k, j) = (col / 2, col % 2);
                let want = if i >= j {
                    ExactRational::from(crate::digits::binomial(n as u64, k as u64))
                } else {
                    ExactRational::zero()
                };
                assert_eq!(m.get(row, col), want, "({row}, {col})");
            }
        }
    }

    #[test]
    fn q_umbral_is_generalized_pascal() {
        for q in [rat(-1, 1), rat(2, 1), rat(3, 1), rat(1, 2)] {
            assert!(identity_check(&q_umbral_matrix(&q, 14)).pass, "q = {q}");
        }
    }

    #[test]
    fn zero_overlay_examples() {
        let z = zero_overlay_matrix(2, 7).unwrap();
        assert_eq!(z, q_umbral_matrix(&(-1).into(), 7));
        assert_eq!(z.get(0, 0), 1.into());
        assert_eq!(z.get(5, 2), 2.into());
        let z3 = zero_overlay_matrix(3, 30).unwrap();
        for row in 0..30 {
            for col in 0..=row {
                let (n, i) = (row / 3, row % 3);
                let (k, j) = (col / 3, col % 3);
                let want = if i >= j {
                    ExactRational::from(crate::digits::binomial(n as u64, k as u64))
                } else {
                    ExactRational::zero()
                };
                assert_eq!(z3.get(row, col), want);
            }
        }
        assert!(identity_check(&z3).pass);
    }
}
