#![allow(dead_code)]

use ginvkit::{CMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn entry(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMatrix {
    CMatrix::from_fn(r, c, |_, _| entry(rng))
}

/// `I - 2vv^H/|v|^2`.
pub fn householder(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let v = random(rng, n, 1);
    let nv = v.frobenius_norm().powi(2);
    &CMatrix::identity(n) - &(&v * &v.adjoint()).scaled_real(2.0 / nv)
}

/// `(S, S^{-1})` with singular values of `S` in `[1, 10]`.
pub fn similarity(rng: &mut ChaCha8Rng, n: usize) -> (CMatrix, CMatrix) {
    let (h1, h2) = (householder(rng, n), householder(rng, n));
    let d: Vec<f64> = (0..n)
        .map(|_| 10f64.powf(rng.random_range(0.0..1.0)))
        .collect();
    let inv: Vec<f64> = d.iter().map(|x| 1.0 / x).collect();
    (
        &(&h1 * &CMatrix::diag_real(&d)) * &h2,
        &(&h2 * &CMatrix::diag_real(&inv)) * &h1,
    )
}

pub fn nonzero(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(
        rng.random_range(0.5..2.0),
        rng.random_range(0.0..std::f64::consts::TAU),
    )
}

/// `S diag(J_k(0), 0_z, Λ) S^{-1}`: index `k` (or 1 when `k <= 1`).
pub fn with_core(rng: &mut ChaCha8Rng, n: usize, k: usize, zeros: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 1..k {
        m.set(i - 1, i, C64::new(1.0, 0.0));
    }
    for i in (k + zeros)..n {
        m.set(i, i, nonzero(rng));
    }
    let (s, si) = similarity(rng, n);
    &(&s * &m) * &si
}

/// A matrix with a group inverse and `zeros` zero eigenvalues.
pub fn group_invertible(rng: &mut ChaCha8Rng, n: usize, zeros: usize) -> CMatrix {
    with_core(rng, n, 0, zeros.min(n))
}

/// A matrix of index at least 2.
pub fn index_two_or_more(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let k = rng.random_range(2..=n.min(4));
    with_core(rng, n, k, 0)
}

pub fn close(x: &CMatrix, y: &CMatrix, rel: f64) -> bool {
    x.shape() == y.shape() && (x - y).frobenius_norm() <= rel * x.frobenius_norm().max(1.0)
}

/// A group invertible matrix with a random number of zero eigenvalues.
pub fn any_group_invertible(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let zeros = rng.random_range(0..=n);
    group_invertible(rng, n, zeros)
}
