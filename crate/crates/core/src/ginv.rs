//! Group inverse, Drazin inverse, spectral idempotent, Cline's formula.
//!
//! Two unrelated algorithms compute the group inverse so that each can check
//! the other:
//!
//! * [`group_inverse`] factors `a = F G` with `F` an orthonormal basis of the
//!   range (pivoted Gram-Schmidt), and returns `F (GF)^-2 G`;
//! * [`oracle_group_inverse`] evaluates `a (a^3)^+ a` with an SVD
//!   pseudoinverse and accepts it only if the three axioms hold.
//!
//! The Drazin inverse uses the same factorization of `a^k`, `k` the index:
//! `a^D = F (G a F)^-1 G`.
//!
//! Every function has a `_scaled` form taking the magnitude of the terms that
//! produced `a`. Rank and zero decisions are measured against that magnitude,
//! so an element that is exactly zero in theory but carries rounding noise is
//! treated as zero.

use serde::Serialize;

use crate::error::{GinvError, Result};
use crate::matrix::{
    is_negligible, lu_inverse, negligible_bound, pinv_relative_to, rank_relative_to, CMatrix,
    Tolerance, C64,
};

/// Frobenius norms of `xax - x`, `ax - xa`, `a^2 x - a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxiomResiduals {
    pub outer: f64,
    pub commute: f64,
    pub inner: f64,
}

impl AxiomResiduals {
    pub fn max(&self) -> f64 {
        self.outer.max(self.commute).max(self.inner)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub residuals: AxiomResiduals,
    /// Scales the residuals were judged against: `|x|^2|a|`, `|a||x|`, `|a|^2|x|`.
    pub scales: [f64; 3],
    pub verdict: bool,
}

pub fn verify_axioms(a: &CMatrix, x: &CMatrix, tol: &Tolerance) -> Result<AxiomCheck> {
    verify_axioms_scaled(a, a.frobenius_norm(), x, tol)
}

pub fn verify_axioms_scaled(
    a: &CMatrix,
    a_scale: f64,
    x: &CMatrix,
    tol: &Tolerance,
) -> Result<AxiomCheck> {
    a.require_square()?;
    if a.shape() != x.shape() {
        return Err(GinvError::DimensionMismatch {
            op: "verify_axioms",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let na = a_scale.max(a.frobenius_norm());
    let nx = x.frobenius_norm();
    let ax = a * x;
    let xa = x * a;
    let residuals = AxiomResiduals {
        outer: (&(&xa * x) - x).frobenius_norm(),
        commute: (&ax - &xa).frobenius_norm(),
        inner: (&(a * &ax) - a).frobenius_norm(),
    };
    let scales = [nx * nx * na, na * nx, na * na * nx];
    let verdict = residuals.outer <= negligible_bound(scales[0], tol)
        && residuals.commute <= negligible_bound(scales[1], tol)
        && residuals.inner <= negligible_bound(scales[2], tol);
    Ok(AxiomCheck {
        residuals,
        scales,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GinvDiagnostic {
    /// Ranks agreed but `GF` in the full-rank factorization was singular.
    SingularCore,
    /// Ranks agreed but the computed candidate failed the axioms.
    AxiomsFailed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GinvResult {
    pub exists: bool,
    pub inverse: Option<CMatrix>,
    pub rank_a: usize,
    pub rank_a2: usize,
    pub residuals: Option<AxiomResiduals>,
    pub diagnostic: Option<GinvDiagnostic>,
}

impl GinvResult {
    fn absent(rank_a: usize, rank_a2: usize) -> Self {
        GinvResult {
            exists: false,
            inverse: None,
            rank_a,
            rank_a2,
            residuals: None,
            diagnostic: None,
        }
    }
}

/// Reference magnitude of `a^k` when `a` itself is known to `scale`:
/// `scale * |a|^(k-1)`.
fn power_scale(a: &CMatrix, scale: f64, k: usize) -> f64 {
    scale * a.frobenius_norm().powi(k as i32 - 1)
}

pub fn group_inverse(a: &CMatrix, tol: &Tolerance) -> Result<GinvResult> {
    group_inverse_scaled(a, a.frobenius_norm(), tol)
}

pub fn group_inverse_scaled(a: &CMatrix, scale: f64, tol: &Tolerance) -> Result<GinvResult> {
    a.require_square()?;
    let n = a.rows();
    let scale = scale.max(a.frobenius_norm());
    let a2 = a * a;
    let rank_a = rank_relative_to(a, scale, tol);
    let rank_a2 = rank_relative_to(&a2, power_scale(a, scale, 2), tol);
    if rank_a != rank_a2 {
        return Ok(GinvResult::absent(rank_a, rank_a2));
    }
    if rank_a == 0 {
        return Ok(GinvResult {
            exists: true,
            inverse: Some(CMatrix::zeros(n, n)),
            rank_a,
            rank_a2,
            residuals: Some(AxiomResiduals {
                outer: 0.0,
                commute: 0.0,
                inner: a.frobenius_norm(),
            }),
            diagnostic: None,
        });
    }

    let f = range_basis(a, rank_a);
    let g = &f.adjoint() * a;
    let core = &g * &f;
    let core_inv = if rank_relative_to(&core, scale, tol) == rank_a {
        lu_inverse(&core)
    } else {
        None
    };
    let Some(core_inv) = core_inv else {
        let mut r = GinvResult::absent(rank_a, rank_a2);
        r.diagnostic = Some(GinvDiagnostic::SingularCore);
        return Ok(r);
    };
    let x = &(&f * &(&core_inv * &core_inv)) * &g;
    let check = verify_axioms_scaled(a, scale, &x, tol)?;
    if !check.verdict {
        return Ok(GinvResult {
            exists: false,
            inverse: None,
            rank_a,
            rank_a2,
            residuals: Some(check.residuals),
            diagnostic: Some(GinvDiagnostic::AxiomsFailed),
        });
    }
    Ok(GinvResult {
        exists: true,
        inverse: Some(x),
        rank_a,
        rank_a2,
        residuals: Some(check.residuals),
        diagnostic: None,
    })
}

/// Orthonormal basis of the column space of `a`, `rank` columns, picked by
/// largest remaining column norm (Gram-Schmidt with reorthogonalization).
fn range_basis(a: &CMatrix, rank: usize) -> CMatrix {
    let n = a.rows();
    let mut work: Vec<Vec<C64>> = (0..a.cols())
        .map(|j| (0..n).map(|i| a.get(i, j)).collect())
        .collect();
    let mut used = vec![false; work.len()];
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(rank);

    let norm = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    for _ in 0..rank {
        let (j, nrm) = work
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, v)| (j, norm(v)))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("rank exceeds column count");
        used[j] = true;
        let q: Vec<C64> = work[j].iter().map(|z| z / nrm).collect();
        for (k, col) in work.iter_mut().enumerate() {
            if used[k] {
                continue;
            }
            for _ in 0..2 {
                let proj: C64 = q
                    .iter()
                    .zip(col.iter())
                    .map(|(qi, ci)| qi.conj() * ci)
                    .sum();
                for (ci, qi) in col.iter_mut().zip(q.iter()) {
                    *ci -= proj * qi;
                }
            }
        }
        basis.push(q);
    }
    CMatrix::from_fn(n, rank, |i, k| basis[k][i])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrazinResult {
    pub inverse: CMatrix,
    /// Smallest k with rank(a^k) = rank(a^(k+1)).
    pub index: usize,
    /// `I - a a^D`.
    pub spectral_idempotent: CMatrix,
}

pub fn drazin_inverse(a: &CMatrix, tol: &Tolerance) -> Result<DrazinResult> {
    drazin_inverse_scaled(a, a.frobenius_norm(), tol)
}

pub fn drazin_inverse_scaled(a: &CMatrix, scale: f64, tol: &Tolerance) -> Result<DrazinResult> {
    a.require_square()?;
    let n = a.rows();
    let scale = scale.max(a.frobenius_norm());

    // ranks of a^0 .. a^(n+1); nonincreasing, so the search ends by k = n
    let mut powers = vec![CMatrix::identity(n)];
    let mut ranks = vec![n];
    let mut index = None;
    for k in 0..=n {
        let next = &powers[k] * a;
        let r = rank_relative_to(&next, power_scale(a, scale, k + 1), tol);
        powers.push(next);
        ranks.push(r);
        if ranks[k] == r {
            index = Some(k);
            break;
        }
    }
    let index = index.unwrap_or(n);

    let ak = &powers[index];
    let rank = ranks[index];
    let inverse = if index == 0 {
        lu_inverse(a).unwrap_or_else(|| pinv_relative_to(a, scale, tol))
    } else if rank == 0 {
        CMatrix::zeros(n, n)
    } else {
        // a^k = F G; a^D = F (G a F)^-1 G
        let f = range_basis(ak, rank);
        let g = &f.adjoint() * ak;
        match lu_inverse(&(&(&g * a) * &f)) {
            Some(core_inv) => &(&f * &core_inv) * &g,
            None => {
                let big = ak.pow(2) * a;
                let p = pinv_relative_to(&big, power_scale(a, scale, 2 * index + 1), tol);
                &(ak * &p) * ak
            }
        }
    };
    let spectral_idempotent = &CMatrix::identity(n) - &(a * &inverse);
    Ok(DrazinResult {
        inverse,
        index,
        spectral_idempotent,
    })
}

/// `I - a a^D`.
pub fn spectral_idempotent(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    Ok(drazin_inverse(a, tol)?.spectral_idempotent)
}

/// `(xy)^D` computed as `x ((yx)^D)^2 y`.
pub fn cline_drazin(x: &CMatrix, y: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    if x.rows() != y.cols() || x.cols() != y.rows() {
        return Err(GinvError::DimensionMismatch {
            op: "cline_drazin",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let yx = y * x;
    let d = drazin_inverse_scaled(&yx, x.frobenius_norm() * y.frobenius_norm(), tol)?.inverse;
    Ok(&(&(x * &d) * &d) * y)
}

/// Independent check: `a (a^3)^+ a`, accepted iff it satisfies the axioms.
pub fn oracle_group_inverse(a: &CMatrix, tol: &Tolerance) -> Result<GinvResult> {
    oracle_group_inverse_scaled(a, a.frobenius_norm(), tol)
}

pub fn oracle_group_inverse_scaled(a: &CMatrix, scale: f64, tol: &Tolerance) -> Result<GinvResult> {
    a.require_square()?;
    let scale = scale.max(a.frobenius_norm());
    let a2 = a * a;
    let a3 = &a2 * a;
    let rank_a = rank_relative_to(a, scale, tol);
    let rank_a2 = rank_relative_to(&a2, power_scale(a, scale, 2), tol);
    let x = &(a * &pinv_relative_to(&a3, power_scale(a, scale, 3), tol)) * a;
    let check = verify_axioms_scaled(a, scale, &x, tol)?;
    Ok(GinvResult {
        exists: check.verdict,
        inverse: check.verdict.then_some(x),
        rank_a,
        rank_a2,
        residuals: Some(check.residuals),
        diagnostic: None,
    })
}

/// True iff `x` and `y` agree to `rel * max(1, |x|_F)`.
pub fn agree(x: &CMatrix, y: &CMatrix, rel: f64) -> bool {
    x.shape() == y.shape() && (x - y).frobenius_norm() <= rel * x.frobenius_norm().max(1.0)
}

/// `|a^2 - a|_F` is negligible at the scale of `a`.
pub fn is_idempotent(p: &CMatrix, tol: &Tolerance) -> bool {
    p.is_square() && is_negligible(&(&(p * p) - p), p.frobenius_norm().powi(2), tol)
}
