//! Matrices carrying the magnitude of the terms that formed them.

use std::ops::{Add, Mul, Neg, Sub};

use crate::ginv::{drazin_inverse_scaled, group_inverse_scaled};
use crate::matrix::{negligible_bound, CMatrix, Tolerance};
use crate::theorem::Check;

#[derive(Debug, Clone)]
pub(crate) struct Elem {
    pub m: CMatrix,
    pub mag: f64,
}

impl Elem {
    pub fn new(m: CMatrix) -> Self {
        let mag = m.frobenius_norm();
        Elem { m, mag }
    }

    pub fn identity(n: usize) -> Self {
        Elem {
            m: CMatrix::identity(n),
            mag: (n as f64).sqrt(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Elem {
            m: CMatrix::zeros(rows, cols),
            mag: 0.0,
        }
    }

    pub fn t(&self) -> Self {
        Elem {
            m: self.m.transpose(),
            mag: self.mag,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Elem {
            m: self.m.scaled_real(c),
            mag: self.mag * c.abs(),
        }
    }

    pub fn sq(&self) -> Self {
        self * self
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn blocks(a: &Elem, b: &Elem, c: &Elem, d: &Elem) -> Self {
        let m = CMatrix::from_blocks(&a.m, &b.m, &c.m, &d.m)
            .expect("block shapes are checked by the caller");
        Elem {
            m,
            mag: a.mag + b.mag + c.mag + d.mag,
        }
    }
}

pub(crate) fn prod(xs: &[&Elem]) -> Elem {
    let (first, rest) = xs.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, x| &acc * *x)
}

impl Mul for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        Elem {
            m: &self.m * &rhs.m,
            mag: self.mag * rhs.mag,
        }
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        Elem {
            m: &self.m + &rhs.m,
            mag: self.mag + rhs.mag,
        }
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        Elem {
            m: &self.m - &rhs.m,
            mag: self.mag + rhs.mag,
        }
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem {
            m: -&self.m,
            mag: self.mag,
        }
    }
}

/// Group inverse of an element, or its Drazin inverse when the group
/// inverse does not exist.
#[derive(Debug, Clone)]
pub(crate) struct Inv {
    pub x: Elem,
    /// `I - a x`.
    pub pi: Elem,
    pub exists: bool,
    pub rank: usize,
    pub rank2: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Ctx {
    pub tol: Tolerance,
}

impl Ctx {
    pub fn new(tol: &Tolerance) -> Self {
        Ctx { tol: *tol }
    }

    pub fn inv(&self, a: &Elem) -> Inv {
        let g = group_inverse_scaled(&a.m, a.mag, &self.tol).expect("square by construction");
        let (x, residual) = match (g.exists, g.inverse) {
            (true, Some(x)) => (x, g.residuals.map(|r| r.max()).unwrap_or(0.0)),
            _ => {
                let d =
                    drazin_inverse_scaled(&a.m, a.mag, &self.tol).expect("square by construction");
                (d.inverse, g.rank_a.abs_diff(g.rank_a2) as f64)
            }
        };
        let x = Elem::new(x);
        let n = a.n();
        let pi = Elem {
            m: &CMatrix::identity(n) - &(&a.m * &x.m),
            mag: (n as f64).sqrt() + a.mag * x.mag,
        };
        Inv {
            x,
            pi,
            exists: g.exists,
            rank: g.rank_a,
            rank2: g.rank_a2,
            residual,
        }
    }

    /// `name`: `a ∈ R^#`.
    pub fn member(&self, name: &str, a: &Elem) -> (Check, Inv) {
        let inv = self.inv(a);
        (self.membership(name, a, &inv), inv)
    }

    pub fn membership(&self, name: &str, a: &Elem, inv: &Inv) -> Check {
        let detail =
            (!inv.exists).then(|| format!("rank {} vs rank of square {}", inv.rank, inv.rank2));
        Check {
            name: name.to_string(),
            residual: inv.residual,
            scale: a.mag,
            pass: inv.exists,
            detail,
        }
    }

    pub fn member_check(&self, name: &str, a: &Elem) -> Check {
        self.member(name, a).0
    }

    /// `name`: `r = 0`.
    pub fn zero(&self, name: &str, r: &Elem) -> Check {
        let residual = r.m.frobenius_norm();
        Check {
            name: name.to_string(),
            residual,
            scale: r.mag,
            pass: residual <= negligible_bound(r.mag, &self.tol),
            detail: None,
        }
    }

    /// `name`: `x = y`.
    pub fn equal(&self, name: &str, x: &Elem, y: &Elem) -> Check {
        self.zero(name, &(x - y))
    }

    pub fn rank(&self, a: &Elem) -> usize {
        crate::matrix::rank_relative_to(&a.m, a.mag, &self.tol)
    }
}
