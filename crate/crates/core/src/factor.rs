//! Irreducibility, factorization and multiplicative order of polynomials.
//!
//! Factorization runs squarefree decomposition, then distinct-degree
//! splitting, then equal-degree splitting. Equal-degree parts are split by
//! trial division against the monic candidates of that degree while there
//! are at most [`TRIAL_EDF_LIMIT`] of them, and by Cantor-Zassenhaus with a
//! fixed-seed generator beyond that. Factors are returned in canonical
//! order, so the output never depends on the random choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

pub const TRIAL_EDF_LIMIT: u64 = 1 << 16;
const EDF_SEED: u64 = 0x0073_5246_4f52_4745;

impl Poly {
    fn x_like(&self) -> Poly {
        Poly::x(self.field().clone())
    }

    /// `X^(q^k) mod self`, by repeated q-th powering of `start`.
    fn frobenius_iterate(&self, start: &Poly, k: usize) -> Result<Poly> {
        let q = self.field().card() as u128;
        let mut h = start.clone();
        for _ in 0..k {
            h = h.pow_mod(q, self)?;
        }
        Ok(h)
    }

    /// Rabin's test.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic()?;
        let x = f.x_like();
        if !f.frobenius_iterate(&x, d)?.sub(&x)?.rem(&f)?.is_zero() {
            return Ok(false);
        }
        for (r, _) in arith::factor_integer(d as u128)? {
            let h = f.frobenius_iterate(&x, d / r as usize)?;
            if !h.sub(&x)?.gcd(&f)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Factorization into monic irreducibles with multiplicities, sorted by
    /// degree then coefficients.
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.degree() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
        let mut out = Vec::new();
        for (part, mult) in squarefree(self)? {
            for (d, block) in distinct_degree(&part)? {
                for irr in equal_degree(&block, d)? {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        // merge equal factors from different squarefree layers
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (f, e) in out {
            match merged.last_mut() {
                Some((g, k)) if *g == f => *k += e,
                _ => merged.push((f, e)),
            }
        }
        Ok(merged)
    }

    /// Multiplicative order of `X` modulo `self`.
    pub fn order(&self) -> Result<u64> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.degree() == Some(0) {
            return Err(Error::ConstantPolynomial);
        }
        if self.coeff(0).is_zero() {
            return Err(Error::VanishesAtZero);
        }
        let factors = self.factor()?;
        let mut ord = 1u64;
        let mut max_mult = 1u32;
        for (f, e) in &factors {
            ord = arith::lcm(ord, f.irreducible_order()?)?;
            max_mult = max_mult.max(*e);
        }
        // smallest p^t >= max multiplicity
        let p = self.field().characteristic();
        let mut pt = 1u64;
        while pt < max_mult as u64 {
            pt *= p;
        }
        ord.checked_mul(pt).ok_or(Error::Overflow)
    }

    fn irreducible_order(&self) -> Result<u64> {
        let d = self.degree().expect("nonconstant") as u32;
        let n = (self.field().card() as u128)
            .checked_pow(d)
            .map(|v| v - 1)
            .ok_or(Error::FactorizationOverflow(u128::MAX))?;
        let primes = arith::factor_integer(n)?;
        let x = self.x_like();
        let mut ord = n as u64;
        for (r, _) in primes {
            while ord.is_multiple_of(r) && x.pow_mod((ord / r) as u128, self)?.is_one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Irreducible with order `q^d - 1`.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.coeff(0).is_zero() {
            return Err(Error::VanishesAtZero);
        }
        if !self.is_irreducible()? {
            return Ok(false);
        }
        let d = self.degree().unwrap() as u32;
        let full = (self.field().card() as u128).pow(d) - 1;
        Ok(self.irreducible_order()? as u128 == full)
    }

    /// Monic irreducibles of degree `d` in enumeration order.
    pub fn monic_irreducible_iter(field: &Field, d: usize) -> Result<impl Iterator<Item = Poly>> {
        if d == 0 {
            return Err(Error::DomainBound("degree must be >= 1".into()));
        }
        Ok(Poly::monic_iter(field, d)?.filter(|f| f.is_irreducible().expect("degree >= 1")))
    }
}

/// Squarefree layers `(g, i)` with `f = prod g^i`.
fn squarefree(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let field = f.field().clone();
    let p = field.characteristic() as u32;
    let d = f.derivative();
    let mut c = f.gcd(&d)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_one() {
        // c is a polynomial in X^p
        let deg = c.degree().unwrap();
        let root: Vec<Fe> = (0..=deg / p as usize)
            .map(|j| field.pth_root(c.coeff(j * p as usize)))
            .collect();
        let root = Poly::new(field.clone(), root);
        for (g, j) in squarefree(&root)? {
            out.push((g, j * p));
        }
    }
    Ok(out)
}

fn distinct_degree(f: &Poly) -> Result<Vec<(usize, Poly)>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = f.x_like();
    let mut h = x.clone();
    let mut d = 0;
    let q = f.field().card() as u128;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest)?;
        let g = h.sub(&x)?.gcd(&rest)?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((d, g));
        }
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((deg, rest));
    }
    Ok(out)
}

fn equal_degree(f: &Poly, d: usize) -> Result<Vec<Poly>> {
    let deg = f.degree().unwrap();
    if deg == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let candidates = (field.card() as u128).checked_pow(d as u32);
    if candidates.is_some_and(|c| c <= TRIAL_EDF_LIMIT as u128) {
        let mut rest = f.clone();
        let mut out = Vec::new();
        for c in Poly::monic_iter(field, d)? {
            if rest.degree() == Some(d) {
                break;
            }
            let (quot, r) = rest.divrem(&c)?;
            if r.is_zero() {
                out.push(c);
                rest = quot;
            }
        }
        if rest.degree() != Some(d) {
            return Err(Error::InternalInconsistency("equal-degree split failed".into()));
        }
        out.push(rest);
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    cantor_zassenhaus(f, d, &mut rng, &mut out)?;
    Ok(out)
}

fn cantor_zassenhaus(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.clone());
        return Ok(());
    }
    let field = f.field().clone();
    let q = field.card();
    loop {
        let a = Poly::new(
            field.clone(),
            (0..deg).map(|_| Fe(rng.gen_range(0..q))).collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            let e = ((q as u128).pow(d as u32) - 1) / 2;
            a.pow_mod(e, f)?.sub(&Poly::one(field.clone()))?
        } else {
            // absolute trace down to GF(2)
            let k = field.degree() as usize * d;
            let mut t = a.rem(f)?;
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul_mod(&t, f)?;
                acc = acc.add(&t)?;
            }
            acc
        };
        let g = b.gcd(f)?;
        if g.degree().is_some_and(|k| k > 0 && k < deg) {
            cantor_zassenhaus(&g, d, rng, out)?;
            cantor_zassenhaus(&f.div_exact(&g)?, d, rng, out)?;
            return Ok(());
        }
    }
}

/// `(1/r) sum_{d | r} mu(d) q^(r/d)`.
pub fn count_irreducible(r: u64, q: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::DomainBound("degree must be >= 1".into()));
    }
    arith::checked_pow(q, r)?;
    let mut sum: i128 = 0;
    for d in arith::divisors(r) {
        sum += arith::mobius(d) as i128 * arith::checked_pow(q, r / d)? as i128;
    }
    if sum % r as i128 != 0 {
        return Err(Error::NonIntegerResult);
    }
    Ok((sum / r as i128) as u64)
}

/// `phi(q^r - 1) / r`.
pub fn count_primitive(r: u64, q: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::DomainBound("degree must be >= 1".into()));
    }
    let phi = arith::euler_phi(arith::checked_pow(q, r)? - 1)?;
    if phi % r != 0 {
        return Err(Error::NonIntegerResult);
    }
    Ok(phi / r)
}
