//! Self-reciprocal irreducible monic (srim) polynomials and their
//! realization as characteristic polynomials of order-two TSRs.

use std::collections::BTreeSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::tsr::{enumerate_tsr, Filter, TsrStar};

/// Largest number of palindromic candidates scanned by [`enumerate_srim`].
pub const SRIM_CANDIDATE_LIMIT: u64 = 100_000;

/// A srim polynomial `f` of degree `2m` together with the order-two TSR
/// whose characteristic polynomial is `f(X + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrimRecord {
    pub f: Poly,
    /// Monic of degree `m` with `f = X^m h1(X + 1/X)`.
    pub h1: Poly,
    /// `h1(X + 2)`, the characteristic polynomial of the block.
    pub h: Poly,
    /// `g = 1 + X`, `A = companion(h)`.
    pub tsr: TsrStar,
}

/// All srim polynomials of degree `two_m`, in canonical order.
pub fn enumerate_srim(two_m: usize, field: &Field) -> Result<Vec<Poly>> {
    if two_m % 2 == 1 {
        return Err(Error::OddDegree);
    }
    if two_m == 0 {
        return Err(Error::DomainBound("degree must be >= 2".into()));
    }
    let m = two_m / 2;
    let q = field.card();
    let total = arith::checked_pow(q, m as u64)?;
    if total > SRIM_CANDIDATE_LIMIT {
        return Err(Error::CeilingExceeded {
            needed: total as u128,
            ceiling: SRIM_CANDIDATE_LIMIT as u128,
        });
    }
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut coeffs = vec![Fe::ZERO; two_m + 1];
        coeffs[0] = Fe::ONE;
        coeffs[two_m] = Fe::ONE;
        for i in 1..=m {
            let c = Fe(idx % q);
            idx /= q;
            coeffs[i] = c;
            coeffs[two_m - i] = c;
        }
        let f = Poly::new(field.clone(), coeffs);
        if f.is_irreducible()? {
            out.push(f);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// `X^m h1(X + 1/X)` for monic `h1` of degree `m`.
pub fn q_transform_expand(h1: &Poly) -> Result<Poly> {
    let field = h1.field();
    let m = h1.degree().ok_or(Error::ZeroPolynomial)?;
    let x2p1 = Poly::new(field.clone(), vec![Fe::ONE, Fe::ZERO, Fe::ONE]);
    let mut acc = Poly::zero(field.clone());
    for j in 0..=m {
        let c = h1.coeff(j);
        if !c.is_zero() {
            let term = x2p1.pow(j as u64).mul(&Poly::monomial(field.clone(), c, m - j))?;
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// The monic `h1` of degree `m` with `f = X^m h1(X + 1/X)`. The summand
/// `h1_j X^(m-j) (X^2 + 1)^j` has top degree `m + j`, so the coefficients
/// are read off from the top.
pub fn q_transform_decompose(f: &Poly) -> Result<Poly> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap_or(0);
    if d % 2 == 1 {
        return Err(Error::OddDegree);
    }
    if !f.is_self_reciprocal()? {
        return Err(Error::NotSelfReciprocal);
    }
    let field = f.field();
    let m = d / 2;
    let x2p1 = Poly::new(field.clone(), vec![Fe::ONE, Fe::ZERO, Fe::ONE]);
    let mut r = f.clone();
    let mut h1 = vec![Fe::ZERO; m + 1];
    for j in (0..=m).rev() {
        let c = r.coeff(m + j);
        h1[j] = c;
        if !c.is_zero() {
            let term = x2p1.pow(j as u64).mul(&Poly::monomial(field.clone(), c, m - j))?;
            r = r.sub(&term)?;
        }
    }
    if !r.is_zero() {
        return Err(Error::NoRepresentation);
    }
    let h1 = Poly::new(field.clone(), h1);
    if q_transform_expand(&h1)? != *f {
        return Err(Error::InternalInconsistency("q-transform failed to verify".into()));
    }
    Ok(h1)
}

/// Builds the TSR in `TSRI(m, 2; q)` attached to a srim `f`.
pub fn srim_to_tsr(f: &Poly) -> Result<SrimRecord> {
    let h1 = q_transform_decompose(f)?;
    if !f.is_irreducible()? {
        let witness = f.factor()?.swap_remove(0).0;
        return Err(Error::Reducible { witness });
    }
    let field = f.field();
    let m = h1.degree().unwrap();
    let h = h1.shift_compose(field.from_int(2));
    let g = Poly::new(field.clone(), vec![Fe::ONE, Fe::ONE]);
    let tsr = TsrStar::new(m, 2, g, Matrix::companion(&h)?)?;
    if tsr.char_poly()? != f.shift_compose(Fe::ONE) {
        return Err(Error::InternalInconsistency("char poly is not f(X+1)".into()));
    }
    Ok(SrimRecord {
        f: f.clone(),
        h1,
        h,
        tsr,
    })
}

/// Over `GF(2)`: whether the irreducible characteristic polynomials of
/// `TSRI(m, 2; 2)` are exactly the `f(X + 1)` for srim `f` of degree `2m`.
pub fn delta_srim_check(m: usize, ceiling: u64) -> Result<bool> {
    let f2 = Field::prime(2)?;
    let mut delta = BTreeSet::new();
    for r in enumerate_tsr(m, 2, &f2, Filter::Irreducible, ceiling)? {
        delta.insert(poly_key(&r?.char_poly));
    }
    let shifted: BTreeSet<Vec<u64>> = enumerate_srim(2 * m, &f2)?
        .iter()
        .map(|f| poly_key(&f.shift_compose(Fe::ONE)))
        .collect();
    Ok(delta == shifted)
}

fn poly_key(f: &Poly) -> Vec<u64> {
    f.coeffs().iter().map(|c| c.index()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::carlitz_srim;
    use crate::matrix::DEFAULT_CEILING;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    /// Every monic irreducible of the degree that equals its reciprocal.
    fn srim_oracle(two_m: usize, field: &Field) -> Vec<Poly> {
        Poly::monic_iter(field, two_m)
            .unwrap()
            .filter(|f| f.is_self_reciprocal().unwrap() && f.is_irreducible().unwrap())
            .collect()
    }

    #[test]
    fn examples() {
        let f2 = gf(2);
        let got: Vec<String> = enumerate_srim(4, &f2).unwrap().iter().map(|f| f.to_string()).collect();
        assert_eq!(got, ["x^4+x^3+x^2+x+1"]);
        let f3 = gf(3);
        let got: Vec<String> = enumerate_srim(2, &f3).unwrap().iter().map(|f| f.to_string()).collect();
        assert_eq!(got, ["x^2+1"]);
        assert_eq!(enumerate_srim(3, &f3), Err(Error::OddDegree));
    }

    #[test]
    fn scan_matches_oracle_and_carlitz() {
        for q in [2u64, 3, 4, 5] {
            let field = gf(q);
            for m in 1..=4usize {
                let got = enumerate_srim(2 * m, &field).unwrap();
                if arith::checked_pow(q, 2 * m as u64).unwrap() <= 70_000 {
                    assert_eq!(got, srim_oracle(2 * m, &field), "q={q} m={m}");
                }
                assert_eq!(got.len() as u64, carlitz_srim(m as u32, q).unwrap(), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn transform_round_trip() {
        let f3 = gf(3);
        let f = Poly::parse(&f3, "x^2+1").unwrap();
        assert_eq!(q_transform_decompose(&f).unwrap().to_string(), "x");
        let f2 = gf(2);
        let f = Poly::parse(&f2, "x^4+x^3+x^2+x+1").unwrap();
        assert_eq!(q_transform_decompose(&f).unwrap().to_string(), "x^2+x+1");

        // every monic h1 gives a palindrome and comes back
        for q in [2, 3, 4] {
            let field = gf(q);
            for m in 1..=3 {
                for h1 in Poly::monic_iter(&field, m).unwrap() {
                    let f = q_transform_expand(&h1).unwrap();
                    assert!(f.is_self_reciprocal().unwrap());
                    assert_eq!(q_transform_decompose(&f).unwrap(), h1);
                }
            }
        }
    }

    #[test]
    fn transform_errors() {
        let f3 = gf(3);
        let p = |s| Poly::parse(&f3, s).unwrap();
        assert_eq!(q_transform_decompose(&p("x^3+1")), Err(Error::OddDegree));
        assert_eq!(q_transform_decompose(&p("x^2+x+2")), Err(Error::NotSelfReciprocal));
        assert_eq!(q_transform_decompose(&p("2*x^2+2")), Err(Error::NotMonic));
        // the anti-palindrome X^2 - 1 is not of the form
        assert_eq!(q_transform_decompose(&p("x^2-1")), Err(Error::NotSelfReciprocal));
    }

    #[test]
    fn to_tsr() {
        let f2 = gf(2);
        let r = srim_to_tsr(&Poly::parse(&f2, "x^4+x^3+x^2+x+1").unwrap()).unwrap();
        assert_eq!(r.tsr.g().to_string(), "x+1");
        assert_eq!(r.h.to_string(), "x^2+x+1");
        assert_eq!(r.tsr.char_poly().unwrap().to_string(), "x^4+x^3+1");

        let f3 = gf(3);
        let r = srim_to_tsr(&Poly::parse(&f3, "x^2+1").unwrap()).unwrap();
        assert_eq!(r.h.to_string(), "x+2");
        assert_eq!(r.tsr.block(), &Matrix::from_indices(&f3, &[&[1]]).unwrap());
        assert_eq!(r.tsr.char_poly().unwrap().to_string(), "x^2+2*x+2");

        assert!(matches!(
            srim_to_tsr(&Poly::parse(&f2, "x^2+1").unwrap()),
            Err(Error::Reducible { .. })
        ));
    }

    #[test]
    fn every_srim_lands_in_tsri() {
        for q in [2, 3] {
            let field = gf(q);
            for m in 1..=4 {
                let mut seen = BTreeSet::new();
                for f in enumerate_srim(2 * m, &field).unwrap() {
                    let r = srim_to_tsr(&f).unwrap();
                    let phi = r.tsr.char_poly().unwrap();
                    assert!(r.tsr.classify().unwrap().is_irreducible);
                    assert_eq!(phi.shift_compose(field.from_int(-1)), f);
                    assert!(seen.insert(poly_key(&phi)));
                }
            }
        }
    }

    #[test]
    fn delta_matches_shifted_srim() {
        for m in 1..=3 {
            assert!(delta_srim_check(m, DEFAULT_CEILING).unwrap(), "m={m}");
        }
    }
}
