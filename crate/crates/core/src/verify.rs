//! Named verification suites. Each takes a truncation size and returns a
//! combined [`Report`].

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::digits::binomial;
use crate::error::{Error, Result};
use crate::fractal::{
    b_functional_equation_check, block_identity_check, fractal_c_check, fractal_matrix,
    pascal_prime_factorization, recurrence_check,
};
use crate::matrix::TriangularMatrix;
use crate::pascal::{build_from_c, gbinom, identity_check, pascal_additive, recurrence_triangle};
use crate::rational::ExactRational;
use crate::report::Report;
use crate::sequence::{BSequence, CSequence};
use crate::special::{
    homomorphism_check, phi_coordinates, phi_q_matrix, q_umbral_inverse, q_umbral_matrix,
    zero_overlay_matrix,
};
use crate::zero::{
    block_product_check, carryless_convolve, digit_binom, fractal_extend, masked_matrix,
    sierpinski_selfsim_check, t_matrix, t_matrix_check,
};

pub const SUITES: [&str; 8] = [
    "identities",
    "lucas",
    "primes",
    "kron",
    "recurrences",
    "umbral",
    "convolution",
    "decompose-roundtrip",
];

const SEED: u64 = 0x5eed_0f_2a5ca1;

pub fn run_suite(name: &str, size: usize) -> Result<Report> {
    if size == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    match name {
        "identities" => identities(size),
        "lucas" => lucas(size),
        "primes" => Ok(pascal_prime_factorization(size)),
        "kron" => Ok(kron(size)),
        "recurrences" => Ok(recurrences(size)),
        "umbral" => Ok(umbral(size)),
        "convolution" => convolution(size),
        "decompose-roundtrip" => decompose_roundtrip(size, 200, 50),
        other => Err(Error::InvalidParameter(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// A nonzero rational with numerator and denominator in `1..=9`.
pub fn random_rational(rng: &mut impl Rng) -> ExactRational {
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=9);
    ExactRational::new(num, den).expect("nonzero denominator")
}

/// `c_0 = c_1 = 1` followed by random nonzero rationals.
pub fn random_c_sequence(rng: &mut impl Rng, len: usize) -> CSequence {
    let values = (0..len.max(2))
        .map(|n| if n < 2 { ExactRational::one() } else { random_rational(rng) })
        .collect();
    CSequence::explicit(values).expect("valid c-sequence")
}

pub fn random_series(rng: &mut impl Rng, len: usize) -> Vec<ExactRational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

/// Every built matrix family passes the identity check, including products.
fn identities(size: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let q = |n: i64| ExactRational::from(n);
    let random = build_from_c(&random_c_sequence(&mut rng, size), size)?;
    let f2 = fractal_matrix(&q(2), 2, size);
    let matrices: Vec<(&str, TriangularMatrix)> = vec![
        ("pascal", pascal_additive(size)),
        ("ones", TriangularMatrix::ones(size)),
        ("fractal-2", f2.clone()),
        ("fractal-3", fractal_matrix(&q(3), 3, size)),
        ("fractal-0-2", fractal_matrix(&q(0), 2, size)),
        ("fractal-phi", fractal_matrix(&ExactRational::new(-3, 5)?, 5, size)),
        ("phiq", phi_q_matrix(&ExactRational::new(7, 2)?, 3, size)),
        ("phiq-zero", phi_q_matrix(&q(0), 4, size)),
        ("qumbral", q_umbral_matrix(&q(2), size)),
        ("qumbral-minus", q_umbral_matrix(&q(-1), size)),
        ("zero-overlay", zero_overlay_matrix(3, size)?),
        ("tmatrix", t_matrix(3, size)),
        ("random", random.clone()),
        ("product", random.hadamard(&f2)?.hadamard(&phi_q_matrix(&q(-2), 3, size))?),
    ];
    Ok(Report::combine(
        "identities",
        matrices.into_iter().map(|(label, m)| {
            let mut r = identity_check(&m);
            r.suite = label.to_string();
            r
        }),
    ))
}

/// Pascal parity against the digit rule, and the three `T^{(q)}` builds.
fn lucas(size: usize) -> Result<Report> {
    let pascal = pascal_additive(size);
    let two = num_bigint::BigInt::from(2);
    let mut failure = None;
    let mut checked = 0u64;
    'outer: for n in 0..size {
        for m in 0..=n {
            checked += 1;
            let parity = pascal.get(n, m).numer() % &two;
            if parity != num_bigint::BigInt::from(digit_binom(2, n as u64, m as u64)) {
                failure = Some(json!({"n": n, "m": m}));
                break 'outer;
            }
        }
    }
    Ok(Report::combine(
        "lucas",
        [
            Report::from_outcome("parity", checked, failure),
            t_matrix_check(2, size)?,
            t_matrix_check(3, size)?,
        ],
    ))
}

/// Sierpinski self-similarity for every block that fits.
fn kron(size: usize) -> Report {
    let mut parts = Vec::new();
    for q in [2u64, 3] {
        let mut k = 1;
        while q.pow(k + 1) as usize <= size {
            parts.push(sierpinski_selfsim_check(q, k));
            k += 1;
        }
    }
    Report::combine("kron", parts)
}

/// Row/column recurrences of `[q]P`, the binomial recurrence and the digit
/// block identities.
fn recurrences(size: usize) -> Report {
    let mut parts: Vec<Report> = [2, 3, 5].iter().map(|&q| recurrence_check(q, size)).collect();
    for b in [BSequence::naturals(), BSequence::fractal(2, 2.into()), BSequence::fractal(3, 3.into())] {
        let triangle = recurrence_triangle(&b, size).expect("nonzero b");
        let failure = triangle
            .iter()
            .find(|&(n, m, v)| v != &gbinom(&b, n, m).expect("nonzero b"))
            .map(|(n, m, _)| json!({"rule": format!("{:?}", b.rule()), "n": n, "m": m}));
        parts.push(Report::from_outcome("binomial-recurrence", triangle.iter().count() as u64, failure));
    }
    parts.push(block_identity_check(2, size));
    parts.push(block_identity_check(3, size));
    for q in [2, 3, 5] {
        parts.push(fractal_c_check(q, size.saturating_sub(1).max(1)));
        parts.push(b_functional_equation_check(q, size.saturating_sub(1).max(1)));
    }
    Report::combine("recurrences", parts)
}

/// `P_{g(q,x)} P^{-1}_{g(q,x)} = I`, and the `q = -1` zero-matrix form.
fn umbral(size: usize) -> Report {
    let identity = TriangularMatrix::identity(size);
    let mut parts: Vec<Report> = [-1i64, 0, 1, 2, 3]
        .iter()
        .map(|&q| {
            let q = ExactRational::from(q);
            let prod = q_umbral_matrix(&q, size)
                .matmul(&q_umbral_inverse(&q, size))
                .expect("same size");
            let failure = prod
                .first_difference(&identity)
                .map(|(n, m)| json!({"q": q, "n": n, "m": m}));
            Report::from_outcome("inverse", (size * (size + 1) / 2) as u64, failure)
        })
        .collect();
    let minus = q_umbral_matrix(&ExactRational::from(-1), size);
    let closed = TriangularMatrix::from_fn(size, |r, c| {
        if r % 2 >= c % 2 {
            binomial((r / 2) as u64, (c / 2) as u64).into()
        } else {
            ExactRational::zero()
        }
    });
    let overlay = zero_overlay_matrix(2, size).expect("q = 2");
    for (label, other) in [("closed-form", &closed), ("overlay", &overlay)] {
        let failure = minus.first_difference(other).map(|(n, m)| json!({"n": n, "m": m}));
        parts.push(Report::from_outcome(label, (size * (size + 1) / 2) as u64, failure));
    }
    Report::combine("umbral", parts)
}

/// Masked-matrix products against carryless convolution, and the block
/// product rule on random inputs.
fn convolution(size: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut parts = Vec::new();
    for q in [2u64, 3] {
        let a = fractal_extend(&random_base(&mut rng, q), q, size);
        let b = fractal_extend(&random_base(&mut rng, q), q, size);
        let product = masked_matrix(&a, q, size)?.matmul(&masked_matrix(&b, q, size)?)?;
        let conv = carryless_convolve(&a, &b, q, size - 1)?;
        let direct = masked_matrix(&conv, q, size)?;
        let failure = product.first_difference(&direct).map(|(n, m)| json!({"q": q, "n": n, "m": m}));
        parts.push(Report::from_outcome("masked-product", (size * (size + 1) / 2) as u64, failure));
    }
    let block = 2usize;
    let outer = size.div_ceil(block);
    let block_size = outer * block;
    let a = random_series(&mut rng, outer);
    let b = random_series(&mut rng, block);
    let c = random_series(&mut rng, outer);
    let d = random_series(&mut rng, block);
    parts.push(block_product_check(&a, &b, &c, &d, 2, 1, block_size)?);
    Ok(Report::combine("convolution", parts))
}

fn random_base(rng: &mut impl Rng, q: u64) -> Vec<ExactRational> {
    (0..q)
        .map(|i| if i == 0 { ExactRational::one() } else { random_rational(rng) })
        .collect()
}

/// Möbius coordinates recompose random generalized Pascal matrices and
/// Pascal itself; coordinates are multiplicative and `±1` coordinates give
/// `±1` entries.
pub fn decompose_roundtrip(size: usize, samples: usize, pairs: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let max_q = size.saturating_sub(1) as u64;
    let roundtrip = |label: &str, m: &TriangularMatrix| -> Result<Report> {
        let back = phi_coordinates(m, max_q)?.recompose(size);
        let failure = m.first_difference(&back).map(|(n, k)| json!({"matrix": label, "n": n, "m": k}));
        Ok(Report::from_outcome("recompose", (size * (size + 1) / 2) as u64, failure))
    };
    let mut parts = vec![roundtrip("pascal", &pascal_additive(size))?];
    let mut built = Vec::with_capacity(samples);
    for i in 0..samples {
        let m = build_from_c(&random_c_sequence(&mut rng, size), size)?;
        parts.push(roundtrip(&format!("random-{i}"), &m)?);
        built.push(m);
    }
    for i in 0..pairs {
        let a = &built[i % built.len().max(1)];
        let b = &built[(i * 7 + 3) % built.len().max(1)];
        parts.push(homomorphism_check(a, b, max_q)?);
        // involutions: random signs on the special system
        let signs: Vec<TriangularMatrix> = (2..=max_q.min(6))
            .filter(|_| rng.gen_bool(0.5))
            .map(|q| phi_q_matrix(&ExactRational::from(-1), q, size))
            .collect();
        let inv = signs
            .iter()
            .try_fold(TriangularMatrix::ones(size), |acc, s| acc.hadamard(s))?;
        parts.push(homomorphism_check(&inv, a, max_q)?);
    }
    Ok(Report::combine("decompose-roundtrip", parts))
}
