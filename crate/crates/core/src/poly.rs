//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Polynomial with ascending coefficients and no trailing zeros; the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

fn trim(v: &mut Vec<Fe>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Fe>) -> Poly {
        debug_assert!(coeffs.iter().all(|c| c.index() < field.card()));
        trim(&mut coeffs);
        Poly { field, coeffs }
    }

    /// Builds a polynomial from ascending coefficient indices.
    pub fn from_indices(field: &Field, coeffs: &[u64]) -> Result<Poly> {
        let coeffs = coeffs
            .iter()
            .map(|&c| field.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field.clone(), coeffs))
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn x(field: Field) -> Poly {
        Poly::monomial(field, Fe::ONE, 1)
    }

    pub fn constant(field: Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: Field, c: Fe, exp: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; exp + 1];
        coeffs[exp] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    fn with(&self, coeffs: Vec<Fe>) -> Poly {
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(self.with(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.with(self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe) -> Poly {
        self.with(self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field.clone()));
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(self.with(out))
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let inv_lead = f.inv(divisor.leading())?;
        let mut q = vec![Fe::ZERO; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = f.mul(r[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[i - db] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                r[i - db + j] = f.sub(r[i - db + j], f.mul(c, d));
            }
        }
        r.truncate(db);
        Ok((self.with(q), self.with(r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub(crate) fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InternalInconsistency("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Result<Poly> {
        let inv = self.field.inv(self.leading()).map_err(|_| Error::ZeroPolynomial)?;
        Ok(self.scale(inv))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(self.field.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(other)?.rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.field.clone()).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            base = base.mul_mod(&base, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
                .collect(),
        )
    }

    /// `f(X + c)`.
    pub fn shift_compose(&self, c: Fe) -> Poly {
        let f = &self.field;
        let mut acc: Vec<Fe> = Vec::with_capacity(self.coeffs.len());
        for &a in self.coeffs.iter().rev() {
            // acc <- acc * (X + c) + a
            acc.insert(0, Fe::ZERO);
            for i in 0..acc.len() - 1 {
                acc[i] = f.add(acc[i], f.mul(acc[i + 1], c));
            }
            acc[0] = f.add(acc[0], a);
        }
        self.with(acc)
    }

    /// `X^deg f * f(1/X)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.with(self.coeffs.iter().rev().copied().collect()))
    }

    pub fn is_self_reciprocal(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(self.reciprocal()? == *self)
    }

    /// The same polynomial viewed over a tower containing this field.
    pub fn embed_into(&self, ext: &Field) -> Result<Poly> {
        if !ext.has_level(&self.field) {
            return Err(Error::CtxMismatch);
        }
        Ok(Poly::new(ext.clone(), self.coeffs.clone()))
    }

    /// Re-expresses the polynomial over a tower level `sub`, checking that
    /// every coefficient lies there.
    pub fn restrict_to(&self, sub: &Field) -> Result<Poly> {
        if !self.field.has_level(sub) {
            return Err(Error::CtxMismatch);
        }
        if self.coeffs.iter().any(|c| c.index() >= sub.card()) {
            return Err(Error::CoefficientNotInBase);
        }
        Ok(Poly::new(sub.clone(), self.coeffs.clone()))
    }

    /// Canonical order: by degree, then coefficients from the top down by
    /// element index. Agrees with [`Poly::monic_iter`] order.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// All monic polynomials of degree `d`, lower coefficients varying
    /// fastest.
    pub fn monic_iter(field: &Field, d: usize) -> Result<impl Iterator<Item = Poly>> {
        let q = field.card();
        let count = crate::arith::checked_pow(q, d as u64)?;
        let field = field.clone();
        Ok((0..count).map(move |mut i| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(Fe(i % q));
                i /= q;
            }
            coeffs.push(Fe::ONE);
            Poly::new(field.clone(), coeffs)
        }))
    }
}

/// `g^m * h(X^n / g)`, i.e. `sum_j h_j g^(m-j) X^(nj)`.
pub fn mn_compose(g: &Poly, h: &Poly, m: usize, n: usize) -> Result<Poly> {
    g.same_field(h)?;
    if g.coeff(0) != Fe::ONE || g.degree().is_some_and(|d| d >= n) {
        return Err(Error::BadG);
    }
    if h.degree() != Some(m) || !h.is_monic() || h.coeff(0).is_zero() {
        return Err(Error::BadH);
    }
    let field = g.field().clone();
    let mut gpow = vec![Poly::one(field.clone())];
    for j in 1..=m {
        gpow.push(gpow[j - 1].mul(g)?);
    }
    let mut acc = Poly::zero(field.clone());
    for j in 0..=m {
        let hj = h.coeff(j);
        if hj.is_zero() {
            continue;
        }
        let term = gpow[m - j].mul(&Poly::monomial(field.clone(), hj, n * j))?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, bool, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, &c)| (self.field.format(c), c == Fe::ONE, e))
            .collect();
        f.write_str(&crate::text::format_terms(&terms, "x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}
