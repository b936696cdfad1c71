//! Transformation shift registers and their state transition matrices.
//!
//! An invertible `(m, n)`-TSR matrix is determined by a pair `(g, A)` with
//! `g(0) = 1`, `deg g <= n - 1` and `A` in `GL_m`: the `mn x mn` matrix has
//! identity blocks on the block subdiagonal and last block column
//! `(A, c_1 A, ..., c_{n-1} A)` where `g = 1 + c_1 X + ... + c_{n-1} X^{n-1}`.

mod decompose;
mod enumerate;
mod gamma;
mod partition;

pub use decompose::{decompose, fiber_count, Decomposition, FiberMode};
pub use enumerate::{enumerate_g, enumerate_tsr, Filter, TsrIter, TsrRecord};
pub use gamma::{enumerate_s, gamma, SSet};
pub use partition::{enumerate_v, proof_partitions, Partitions};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::poly::{mn_compose, Poly};

/// Rejects the `max(m, n) = 1` boundary and zero sizes.
pub(crate) fn check_shape(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::DomainBound("m and n must be positive".into()));
    }
    if m.max(n) == 1 {
        return Err(Error::DomainBound("need max(m, n) > 1".into()));
    }
    Ok(())
}

pub(crate) fn check_g(g: &Poly, n: usize) -> Result<()> {
    if g.coeff(0) != Fe::ONE || g.degree().is_some_and(|d| d >= n) {
        return Err(Error::BadG);
    }
    Ok(())
}

/// Invertible TSR in `(g, A)` normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TsrStar {
    m: usize,
    n: usize,
    g: Poly,
    a: Matrix,
}

/// TSR matrix in the general `(c_0, ..., c_{n-1}; B)` parametrization,
/// which also covers singular matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TsrGeneral {
    m: usize,
    n: usize,
    c: Vec<Fe>,
    b: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub is_irreducible: bool,
    pub is_primitive: bool,
}

impl Classification {
    pub fn of(f: &Poly) -> Result<Classification> {
        let is_irreducible = f.is_irreducible()?;
        let is_primitive = is_irreducible && f.is_primitive()?;
        Ok(Classification {
            is_irreducible,
            is_primitive,
        })
    }
}

fn block_matrix(m: usize, n: usize, field: &Field, last_col: &[Matrix]) -> Matrix {
    let size = m * n;
    let mut t = Matrix::zero(field.clone(), size, size);
    for blk in 1..n {
        for i in 0..m {
            t.set(blk * m + i, (blk - 1) * m + i, Fe::ONE);
        }
    }
    for (blk, b) in last_col.iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                t.set(blk * m + i, (n - 1) * m + j, b.get(i, j));
            }
        }
    }
    t
}

impl TsrStar {
    pub fn new(m: usize, n: usize, g: Poly, a: Matrix) -> Result<TsrStar> {
        check_shape(m, n)?;
        if g.field() != a.field() {
            return Err(Error::CtxMismatch);
        }
        check_g(&g, n)?;
        if a.rows() != m || a.cols() != m {
            return Err(Error::DimMismatch(format!(
                "A must be {m}x{m}, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if !a.is_invertible()? {
            return Err(Error::DomainBound("A must be invertible".into()));
        }
        Ok(TsrStar { m, n, g, a })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        self.g.field()
    }

    /// `g_T`.
    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `T_(m)`, the top-right block.
    pub fn block(&self) -> &Matrix {
        &self.a
    }

    pub fn assemble(&self) -> Matrix {
        let col: Vec<Matrix> = (0..self.n).map(|i| self.a.scale(self.g.coeff(i))).collect();
        block_matrix(self.m, self.n, self.field(), &col)
    }

    /// `g^m * phi_A(X^n / g)`, without forming the `mn x mn` matrix.
    pub fn char_poly(&self) -> Result<Poly> {
        mn_compose(&self.g, &self.a.char_poly()?, self.m, self.n)
    }

    pub fn classify(&self) -> Result<Classification> {
        Classification::of(&self.char_poly()?)
    }

    /// Next state `T * state`.
    pub fn step(&self, state: &[Fe]) -> Result<Vec<Fe>> {
        self.assemble().mul_vec(state)
    }

    /// `length` successive states starting with `seed`.
    pub fn sequence(&self, seed: &[Fe], length: usize) -> Result<Vec<Vec<Fe>>> {
        let t = self.assemble();
        if seed.len() != t.cols() {
            return Err(Error::DimMismatch(format!(
                "seed of length {} for state size {}",
                seed.len(),
                t.cols()
            )));
        }
        let mut out = Vec::with_capacity(length);
        let mut s = seed.to_vec();
        for _ in 0..length {
            let next = t.mul_vec(&s)?;
            out.push(std::mem::replace(&mut s, next));
        }
        Ok(out)
    }

    /// Least `k >= 1` with `T^k seed = seed`; finite since `T` is invertible.
    pub fn period(&self, seed: &[Fe]) -> Result<u64> {
        let t = self.assemble();
        let mut s = t.mul_vec(seed)?;
        let mut k = 1u64;
        while s != seed {
            s = t.mul_vec(&s)?;
            k += 1;
        }
        Ok(k)
    }
}

impl TsrGeneral {
    pub fn new(m: usize, n: usize, c: Vec<Fe>, b: Matrix) -> Result<TsrGeneral> {
        if m == 0 || n == 0 {
            return Err(Error::DomainBound("m and n must be positive".into()));
        }
        if c.len() != n || b.rows() != m || b.cols() != m {
            return Err(Error::DimMismatch(format!(
                "need {n} scalars and an {m}x{m} block"
            )));
        }
        Ok(TsrGeneral { m, n, c, b })
    }

    pub fn assemble(&self) -> Matrix {
        let col: Vec<Matrix> = self.c.iter().map(|&ci| self.b.scale(ci)).collect();
        block_matrix(self.m, self.n, self.b.field(), &col)
    }

    /// The `(g, A)` form with `A = c_0 B` and `g_i = c_i / c_0`, or `None`
    /// when the matrix is singular.
    pub fn to_star(&self) -> Result<Option<TsrStar>> {
        let f = self.b.field();
        let c0 = self.c[0];
        if c0.is_zero() || !self.b.is_invertible()? {
            return Ok(None);
        }
        let inv = f.inv(c0)?;
        let g = Poly::new(f.clone(), self.c.iter().map(|&ci| f.mul(ci, inv)).collect());
        TsrStar::new(self.m, self.n, g, self.b.scale(c0)).map(Some)
    }
}
