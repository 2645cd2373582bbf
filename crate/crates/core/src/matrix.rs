//! Dense complex matrices and the tolerance policy used for every "is zero",
//! rank, and invertibility decision in the crate.
//!
//! Storage and LU are delegated to `nalgebra` and the SVD to `faer`; this
//! module owns the
//! numerical conventions layered on top (relative cutoffs, reference scales).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{GinvError, Result};

pub type C64 = Complex64;

/// A dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct CMatrix(DMatrix<C64>);

impl CMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(GinvError::BadLength {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if let Some(k) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(GinvError::NonFinite {
                row: k / cols.max(1),
                col: k % cols.max(1),
            });
        }
        Ok(CMatrix(DMatrix::from_row_iterator(rows, cols, entries)))
    }

    /// Real matrix from row-major data. Panics on a length mismatch; meant for
    /// literals in code and tests.
    pub fn real(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "real(): wrong entry count");
        CMatrix(DMatrix::from_row_iterator(
            rows,
            cols,
            data.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        CMatrix(DMatrix::identity(n, n))
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        CMatrix(m)
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        CMatrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_inner(m: DMatrix<C64>) -> Self {
        CMatrix(m)
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.0[(i, j)] = value;
    }

    /// Row-major copy of the entries.
    pub fn entries(&self) -> Vec<C64> {
        let (r, c) = self.shape();
        let mut out = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        CMatrix(self.0.transpose())
    }

    pub fn adjoint(&self) -> Self {
        CMatrix(self.0.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: C64) -> Self {
        CMatrix(&self.0 * c)
    }

    pub fn scaled_real(&self, c: f64) -> Self {
        self.scaled(C64::new(c, 0.0))
    }

    /// `self^k` for a square matrix; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square(), "pow() of a non-square matrix");
        let mut acc = CMatrix::identity(self.rows());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(GinvError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            })
        }
    }

    pub fn checked_add(&self, other: &CMatrix) -> Result<CMatrix> {
        same_shape("add", self, other)?;
        Ok(CMatrix(&self.0 + &other.0))
    }

    pub fn checked_sub(&self, other: &CMatrix) -> Result<CMatrix> {
        same_shape("sub", self, other)?;
        Ok(CMatrix(&self.0 - &other.0))
    }

    pub fn checked_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols() != other.rows() {
            return Err(GinvError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(CMatrix(&self.0 * &other.0))
    }

    /// Copy of the `nr x nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> CMatrix {
        CMatrix(self.0.view((r0, c0), (nr, nc)).into_owned())
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> Result<CMatrix> {
        let (m, n) = (a.rows(), d.rows());
        let conformable =
            a.is_square() && d.is_square() && b.shape() == (m, n) && c.shape() == (n, m);
        if !conformable {
            return Err(GinvError::DimensionMismatch {
                op: "block assembly",
                left: b.shape(),
                right: c.shape(),
            });
        }
        let mut out = DMatrix::zeros(m + n, m + n);
        out.view_mut((0, 0), (m, m)).copy_from(&a.0);
        out.view_mut((0, m), (m, n)).copy_from(&b.0);
        out.view_mut((m, 0), (n, m)).copy_from(&c.0);
        out.view_mut((m, m), (n, n)).copy_from(&d.0);
        Ok(CMatrix(out))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

fn same_shape(op: &'static str, a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.shape() == b.shape() {
        Ok(())
    } else {
        Err(GinvError::DimensionMismatch {
            op,
            left: a.shape(),
            right: b.shape(),
        })
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "\n  ")?;
            for j in 0..self.cols() {
                let z = self.0[(i, j)];
                if z.im == 0.0 {
                    write!(f, "{:>10.4} ", z.re)?;
                } else {
                    write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
                }
            }
        }
        write!(f, "]")
    }
}

/// Same layout as the CLI's matrix file: `{rows, cols, data: [[[re, im], ...], ...]}`.
impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let data: Vec<Vec<[f64; 2]>> = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| {
                        let z = self.0[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        let mut s = serializer.serialize_struct("CMatrix", 3)?;
        s.serialize_field("rows", &self.rows())?;
        s.serialize_field("cols", &self.cols())?;
        s.serialize_field("data", &data)?;
        s.end()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr<&CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: &CMatrix) -> CMatrix {
                CMatrix($tr::$f(&self.0, &rhs.0))
            }
        }
        impl $tr<CMatrix> for &CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: CMatrix) -> CMatrix {
                CMatrix($tr::$f(&self.0, &rhs.0))
            }
        }
        impl $tr<&CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: &CMatrix) -> CMatrix {
                CMatrix($tr::$f(&self.0, &rhs.0))
            }
        }
        impl $tr<CMatrix> for CMatrix {
            type Output = CMatrix;
            fn $f(self, rhs: CMatrix) -> CMatrix {
                CMatrix($tr::$f(&self.0, &rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix(-&self.0)
    }
}

/// Numerical policy: when a residual counts as zero and where the
/// singular-value cutoff for rank decisions sits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub zero_rel: f64,
    pub zero_abs: f64,
    pub rank_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            zero_rel: 1e-10,
            zero_abs: 1e-12,
            rank_rel: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(zero_rel: f64, zero_abs: f64, rank_rel: f64) -> Result<Self> {
        let t = Tolerance {
            zero_rel,
            zero_abs,
            rank_rel,
        };
        t.validate()?;
        Ok(t)
    }

    /// Sets `zero_rel`, with `zero_abs = zero_rel / 100`.
    pub fn with_zero_rel(zero_rel: f64) -> Result<Self> {
        Self::new(zero_rel, zero_rel / 100.0, Tolerance::default().rank_rel)
    }

    /// Relative distance `|x - y|_F / max(1, |x|_F)` below which two
    /// independently computed inverses are reported as equal.
    pub fn match_rel(&self) -> f64 {
        100.0 * self.zero_rel
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("zero_rel", self.zero_rel),
            ("zero_abs", self.zero_abs),
            ("rank_rel", self.rank_rel),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(GinvError::InvalidTolerance(format!(
                    "{name} must be a finite nonnegative number, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatOp {
    Add,
    Sub,
    Mul,
    /// Multiplies the left operand by a scalar; the right operand is ignored.
    Scale(C64),
}

pub fn mat_ops(a: &CMatrix, b: &CMatrix, op: MatOp) -> Result<CMatrix> {
    match op {
        MatOp::Add => a.checked_add(b),
        MatOp::Sub => a.checked_sub(b),
        MatOp::Mul => a.checked_mul(b),
        MatOp::Scale(c) => Ok(a.scaled(c)),
    }
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Vec::new();
    }
    let mut sv = to_faer(a)
        .singular_values()
        .expect("SVD of a finite matrix converges");
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

fn to_faer(a: &CMatrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(a.rows(), a.cols(), |i, j| a.0[(i, j)])
}

fn rank_cutoff(a: &CMatrix, sigma_max: f64, reference: f64, tol: &Tolerance) -> f64 {
    tol.rank_rel * a.rows().max(a.cols()) as f64 * sigma_max.max(reference)
}

/// Numerical rank: singular values above `rank_rel * max(rows, cols) * sigma_max`.
pub fn mat_rank(a: &CMatrix, tol: &Tolerance) -> usize {
    rank_relative_to(a, 0.0, tol)
}

/// Rank with the cutoff measured against `max(sigma_max, reference)`.
///
/// A matrix formed as a product or difference of larger terms can be
/// rounding noise; passing the magnitude of those terms as `reference` keeps
/// the noise below the cutoff.
pub fn rank_relative_to(a: &CMatrix, reference: f64, tol: &Tolerance) -> usize {
    let sv = singular_values(a);
    let Some(&smax) = sv.first() else {
        return 0;
    };
    let cut = rank_cutoff(a, smax, reference, tol);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Moore-Penrose pseudoinverse via SVD, dropping singular values at or below
/// the rank cutoff.
pub fn mat_pinv(a: &CMatrix, tol: &Tolerance) -> CMatrix {
    pinv_relative_to(a, 0.0, tol)
}

pub fn pinv_relative_to(a: &CMatrix, reference: f64, tol: &Tolerance) -> CMatrix {
    let (r, c) = a.shape();
    if r == 0 || c == 0 {
        return CMatrix::zeros(c, r);
    }
    let svd = to_faer(a)
        .thin_svd()
        .expect("SVD of a finite matrix converges");
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());
    let k = s.nrows();
    let smax = (0..k).map(|i| s[i].re).fold(0.0, f64::max);
    let cut = rank_cutoff(a, smax, reference, tol);
    CMatrix(DMatrix::from_fn(c, r, |i, j| {
        (0..k)
            .filter(|&l| s[l].re > cut)
            .map(|l| v[(i, l)] * u[(j, l)].conj() / s[l].re)
            .sum()
    }))
}

/// `||r||_F <= zero_abs + zero_rel * scale`, where `scale` is the product of
/// the Frobenius norms of the factors that formed `r`.
pub fn is_negligible(r: &CMatrix, scale: f64, tol: &Tolerance) -> bool {
    r.frobenius_norm() <= negligible_bound(scale, tol)
}

pub fn negligible_bound(scale: f64, tol: &Tolerance) -> f64 {
    tol.zero_abs + tol.zero_rel * scale.max(0.0)
}

/// Inverse of a square matrix via LU, `None` when LU reports singularity.
pub(crate) fn lu_inverse(a: &CMatrix) -> Option<CMatrix> {
    if a.rows() == 0 {
        return Some(a.clone());
    }
    a.0.clone().lu().try_inverse().map(CMatrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nil2() -> CMatrix {
        CMatrix::real(2, 2, &[0.0, 1.0, 0.0, 0.0])
    }

    #[test]
    fn ops_examples() {
        let i2 = CMatrix::identity(2);
        let z2 = CMatrix::zeros(2, 2);
        assert_eq!(mat_ops(&i2, &z2, MatOp::Add).unwrap(), i2);
        assert_eq!(mat_ops(&nil2(), &nil2(), MatOp::Mul).unwrap(), z2);
        let third = CMatrix::diag_real(&[1.0 / 3.0, 1.0 / 3.0]);
        let scaled = mat_ops(&third, &z2, MatOp::Scale(C64::new(3.0, 0.0))).unwrap();
        assert!((&scaled - &i2).frobenius_norm() < 1e-15);
    }

    #[test]
    fn dimension_error_carries_shapes() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(2, 3);
        match mat_ops(&a, &b, MatOp::Mul) {
            Err(GinvError::DimensionMismatch { left, right, .. }) => {
                assert_eq!(left, (2, 3));
                assert_eq!(right, (2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(mat_ops(&a, &CMatrix::zeros(3, 2), MatOp::Add).is_err());
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            CMatrix::new(2, 2, vec![C64::new(0.0, 0.0); 3]),
            Err(GinvError::BadLength { len: 3, .. })
        ));
        let mut v = vec![C64::new(1.0, 0.0); 4];
        v[3] = C64::new(f64::NAN, 0.0);
        assert!(matches!(
            CMatrix::new(2, 2, v),
            Err(GinvError::NonFinite { row: 1, col: 1 })
        ));
        assert!(CMatrix::new(0, 0, vec![]).is_ok());
    }

    #[test]
    fn rank_examples() {
        let tol = Tolerance::default();
        assert_eq!(mat_rank(&CMatrix::identity(4), &tol), 4);
        assert_eq!(mat_rank(&nil2(), &tol), 1);
        assert_eq!(mat_rank(&CMatrix::zeros(3, 3), &tol), 0);
        assert_eq!(mat_rank(&CMatrix::zeros(0, 0), &tol), 0);
        // rows e1, e2, e4, 0; its square is diag(1, 1, 0, 0)
        let a = CMatrix::real(
            4,
            4,
            &[
                1., 0., 0., 0., //
                0., 1., 0., 0., //
                0., 0., 0., 1., //
                0., 0., 0., 0.,
            ],
        );
        assert_eq!(mat_rank(&a, &tol), 3);
        assert_eq!(mat_rank(&(&a * &a), &tol), 2);
    }

    #[test]
    fn reference_scale_suppresses_noise() {
        let tol = Tolerance::default();
        let noise = CMatrix::real(2, 2, &[1e-17, 0.0, 0.0, 3e-17]);
        assert_eq!(mat_rank(&noise, &tol), 2);
        assert_eq!(rank_relative_to(&noise, 1.0, &tol), 0);
    }

    #[test]
    fn pinv_examples() {
        let tol = Tolerance::default();
        assert_eq!(mat_pinv(&CMatrix::zeros(3, 3), &tol), CMatrix::zeros(3, 3));
        let p = mat_pinv(&CMatrix::diag_real(&[2.0, 0.0]), &tol);
        assert!((&p - &CMatrix::diag_real(&[0.5, 0.0])).frobenius_norm() < 1e-15);
        // (A^H A)^{-1} A^H for A = [1; 1] is [1/2, 1/2]
        let p = mat_pinv(&CMatrix::real(2, 1, &[1.0, 1.0]), &tol);
        assert_eq!(p.shape(), (1, 2));
        assert!((&p - &CMatrix::real(1, 2, &[0.5, 0.5])).frobenius_norm() < 1e-15);
    }

    #[test]
    fn negligible_examples() {
        let tol = Tolerance::default();
        assert!(is_negligible(&CMatrix::zeros(2, 2), 5.0, &tol));
        assert!(is_negligible(
            &CMatrix::identity(2).scaled_real(1e-14),
            1.0,
            &tol
        ));
        assert!(!is_negligible(&CMatrix::identity(2), 1.0, &tol));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(-1.0, 0.0, 0.0).is_err());
        assert!(Tolerance::new(f64::NAN, 0.0, 0.0).is_err());
        let t = Tolerance::with_zero_rel(1e-8).unwrap();
        assert_eq!(t.zero_abs, 1e-10);
    }

    #[test]
    fn pow_and_blocks() {
        let n = nil2();
        assert_eq!(n.pow(0), CMatrix::identity(2));
        assert_eq!(n.pow(2), CMatrix::zeros(2, 2));
        let m = CMatrix::from_blocks(
            &CMatrix::real(1, 1, &[1.0]),
            &CMatrix::real(1, 2, &[2.0, 3.0]),
            &CMatrix::real(2, 1, &[4.0, 7.0]),
            &CMatrix::real(2, 2, &[5.0, 6.0, 8.0, 9.0]),
        )
        .unwrap();
        assert_eq!(
            m,
            CMatrix::real(3, 3, &[1., 2., 3., 4., 5., 6., 7., 8., 9.])
        );
        assert_eq!(m.block(1, 1, 2, 2), CMatrix::real(2, 2, &[5., 6., 8., 9.]));
        assert!(CMatrix::from_blocks(
            &CMatrix::identity(1),
            &CMatrix::zeros(2, 2),
            &CMatrix::zeros(2, 1),
            &CMatrix::identity(2)
        )
        .is_err());
    }
}
