use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

use super::{check_g, check_shape, enumerate_g};

/// Largest `q^m` accepted by [`enumerate_s`].
pub const S_ELEMENT_LIMIT: u64 = 4096;
/// Largest `q^(n-1)` accepted by [`enumerate_s`].
pub const S_G_LIMIT: u64 = 10_000;

/// `X^n - lambda g` over `ext`.
fn binomial_form(ext: &Field, lambda: Fe, g: &Poly, n: usize) -> Result<Poly> {
    let g = g.embed_into(ext)?;
    let x_n = Poly::monomial(ext.clone(), Fe::ONE, n);
    x_n.sub(&g.scale(lambda))
}

/// `prod_{i<m} (X^n - lambda^(q^i) g)`, re-expressed over the field of `g`.
/// `ext` must be a tower over that field of relative degree `m`, and
/// `lambda` must generate `ext` over it.
pub fn gamma(ext: &Field, lambda: Fe, g: &Poly, n: usize) -> Result<Poly> {
    let base = g.field();
    if !ext.has_level(base) {
        return Err(Error::CtxMismatch);
    }
    check_g(g, n)?;
    let m = ext.degree() / base.degree();
    let q = base.card();
    let d = ext.degree_over(ext.element(lambda.index())?, q)?;
    if d != m {
        return Err(Error::WrongDegreeElement { expected: m, got: d });
    }
    let mut prod = Poly::one(ext.clone());
    let mut conj = lambda;
    for _ in 0..m {
        prod = prod.mul(&binomial_form(ext, conj, g, n)?)?;
        conj = ext.pow(conj, q as u128);
    }
    prod.restrict_to(base)
}

/// `S_q(m, n)`: pairs `(lambda, g)` with `lambda` of degree `m` over
/// `GF(q)` and `X^n - lambda g` irreducible over `GF(q^m)`.
#[derive(Clone, Debug)]
pub struct SSet {
    /// `GF(q^m)` as the default extension of the base field.
    pub ext: Field,
    /// Ordered by `lambda` index, then by `g`.
    pub pairs: Vec<(Fe, Poly)>,
}

pub fn enumerate_s(m: usize, n: usize, field: &Field) -> Result<SSet> {
    check_shape(m, n)?;
    let q = field.card();
    let qm = arith::checked_pow(q, m as u64)?;
    if qm > S_ELEMENT_LIMIT {
        return Err(Error::CeilingExceeded {
            needed: qm as u128,
            ceiling: S_ELEMENT_LIMIT as u128,
        });
    }
    let qg = arith::checked_pow(q, (n - 1) as u64)?;
    if qg > S_G_LIMIT {
        return Err(Error::CeilingExceeded {
            needed: qg as u128,
            ceiling: S_G_LIMIT as u128,
        });
    }
    let ext = Field::default_extension(field, m as u32)?;
    let gs: Vec<Poly> = enumerate_g(field, n)?.collect();
    let mut pairs = Vec::new();
    for lambda in ext.elements() {
        if ext.degree_over(lambda, q)? != m as u32 {
            continue;
        }
        for g in &gs {
            if binomial_form(&ext, lambda, g, n)?.is_irreducible()? {
                pairs.push((lambda, g.clone()));
            }
        }
    }
    Ok(SSet { ext, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DEFAULT_CEILING;
    use crate::tsr::{enumerate_tsr, Filter};
    use std::collections::{BTreeMap, BTreeSet};

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let f2 = gf(2);
        let f4 = Field::default_extension(&f2, 2).unwrap();
        let g = Poly::from_indices(&f2, &[1, 1]).unwrap();
        let t = f4.parse_elem("t").unwrap();
        assert_eq!(gamma(&f4, t, &g, 2).unwrap().to_string(), "x^4+x^3+1");
        assert_eq!(
            gamma(&f4, Fe::ONE, &g, 2),
            Err(Error::WrongDegreeElement { expected: 2, got: 1 })
        );

        // m = 1 is the single factor
        let f3 = gf(3);
        let g = Poly::from_indices(&f3, &[1, 2]).unwrap();
        let got = gamma(&f3, Fe(2), &g, 2).unwrap();
        let expected = Poly::parse(&f3, "x^2 - 2*(1+2*x)").unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn s_sizes() {
        assert_eq!(enumerate_s(2, 2, &gf(2)).unwrap().pairs.len(), 2);
        assert_eq!(enumerate_s(2, 2, &gf(3)).unwrap().pairs.len(), 12);
        assert!(matches!(enumerate_s(7, 2, &gf(4)), Err(Error::CeilingExceeded { .. })));
    }

    #[test]
    fn gamma_image_is_irreducible_tsr_set() {
        for q in [2, 3] {
            let field = gf(q);
            for (m, n) in [(1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (2, 3), (3, 2)] {
                let s = enumerate_s(m, n, &field).unwrap();
                let mut hits: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
                for (lambda, g) in &s.pairs {
                    let f = gamma(&s.ext, *lambda, g, n).unwrap();
                    assert!(f.is_irreducible().unwrap());
                    let key = f.coeffs().iter().map(|c| c.index()).collect();
                    *hits.entry(key).or_default() += 1;
                }
                assert!(hits.values().all(|&k| k == m), "({m},{n},{q})");
                let delta: BTreeSet<Vec<u64>> = enumerate_tsr(m, n, &field, Filter::Irreducible, DEFAULT_CEILING)
                    .unwrap()
                    .map(|r| r.unwrap().char_poly.coeffs().iter().map(|c| c.index()).collect())
                    .collect();
                assert_eq!(hits.keys().cloned().collect::<BTreeSet<_>>(), delta, "({m},{n},{q})");
            }
        }
    }
}
