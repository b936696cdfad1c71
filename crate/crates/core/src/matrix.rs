//! Dense matrices over a [`Field`].

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

/// Default bound on enumeration sizes.
pub const DEFAULT_CEILING: u64 = 10_000_000;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of element indices.
    pub fn from_indices(field: &Field, rows: &[&[u64]]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&v| field.element(v))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(field.clone(), rows.len(), cols, data)
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::CtxMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Matrix::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let mut acc = Matrix::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Fe> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Fe::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv)?;
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(!self.det()?.is_zero())
    }

    /// `det(X I - A)`, via reduction to upper Hessenberg form followed by
    /// the Hessenberg determinant recurrence.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.data.clone();
        let at = |r: usize, c: usize| r * n + c;
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[at(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.swap(at(i, j), at(m, j));
                }
                for j in 0..n {
                    h.swap(at(j, i), at(j, m));
                }
            }
            let inv = f.inv(h[at(m, m - 1)])?;
            for i in m + 1..n {
                let u = f.mul(h[at(i, m - 1)], inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    h[at(i, j)] = f.sub(h[at(i, j)], f.mul(u, h[at(m, j)]));
                }
                for j in 0..n {
                    h[at(j, m)] = f.add(h[at(j, m)], f.mul(u, h[at(j, i)]));
                }
            }
        }
        let x = Poly::x(f.clone());
        let mut p: Vec<Poly> = vec![Poly::one(f.clone())];
        for m in 1..=n {
            let lin = x.sub(&Poly::constant(f.clone(), h[at(m - 1, m - 1)]))?;
            let mut pm = lin.mul(&p[m - 1])?;
            let mut t = Fe::ONE;
            for i in 1..m {
                t = f.mul(t, h[at(m - i, m - i - 1)]);
                let c = f.mul(t, h[at(m - i - 1, m - 1)]);
                if !c.is_zero() {
                    pm = pm.sub(&p[m - i - 1].scale(c))?;
                }
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }

    /// Companion matrix: ones on the subdiagonal, last column `-f_i`.
    pub fn companion(f: &Poly) -> Result<Matrix> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolynomial),
        };
        let field = f.field().clone();
        let mut m = Matrix::zero(field.clone(), d, d);
        for i in 1..d {
            m.set(i, i - 1, Fe::ONE);
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(f.coeff(i)));
        }
        Ok(m)
    }

    /// Text form `[[a,b],[c,d]]` with field element strings.
    pub fn format_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&a| self.field.format(a)).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {:?}", self.format_rows(), self.field)
    }
}

/// `|GL_m(GF(q))| = prod_{i<m} (q^m - q^i)`.
pub fn gl_order(m: u32, q: u64) -> Result<u64> {
    let qm = arith::checked_pow(q, m as u64)?;
    let mut acc: u64 = 1;
    for i in 0..m {
        let term = qm - arith::checked_pow(q, i as u64)?;
        acc = acc.checked_mul(term).ok_or(Error::Overflow)?;
    }
    if acc >= 1 << 63 {
        return Err(Error::Overflow);
    }
    Ok(acc)
}

/// Every invertible `m x m` matrix, filtered from the lexicographic scan of
/// all matrices (first entry varying fastest).
pub fn enumerate_gl(m: usize, field: &Field, ceiling: u64) -> Result<impl Iterator<Item = Matrix>> {
    if m == 0 {
        return Err(Error::DomainBound("matrix size must be >= 1".into()));
    }
    let q = field.card();
    let order = gl_order(m as u32, q)?;
    if order > ceiling {
        return Err(Error::CeilingExceeded {
            needed: order as u128,
            ceiling: ceiling as u128,
        });
    }
    let total = arith::checked_pow(q, (m * m) as u64)?;
    let field = field.clone();
    Ok((0..total).filter_map(move |mut idx| {
        let data: Vec<Fe> = (0..m * m)
            .map(|_| {
                let d = Fe(idx % q);
                idx /= q;
                d
            })
            .collect();
        let a = Matrix::new(field.clone(), m, m, data).expect("sized");
        a.is_invertible().expect("square").then_some(a)
    }))
}
