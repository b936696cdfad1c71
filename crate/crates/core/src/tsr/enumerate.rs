use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::{enumerate_gl, gl_order, Matrix};
use crate::poly::{mn_compose, Poly};

use super::{check_shape, Classification, TsrStar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    All,
    Irreducible,
    Primitive,
}

impl Filter {
    pub fn accepts(self, c: Classification) -> bool {
        match self {
            Filter::All => true,
            Filter::Irreducible => c.is_irreducible,
            Filter::Primitive => c.is_primitive,
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Filter> {
        match s {
            "all" => Ok(Filter::All),
            "irreducible" => Ok(Filter::Irreducible),
            "primitive" => Ok(Filter::Primitive),
            _ => Err(Error::Parse(format!("unknown filter {s:?}"))),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::All => "all",
            Filter::Irreducible => "irreducible",
            Filter::Primitive => "primitive",
        })
    }
}

/// Polynomials `1 + c_1 X + ... + c_{n-1} X^{n-1}`, `c_1` varying fastest.
pub fn enumerate_g(field: &Field, n: usize) -> Result<impl Iterator<Item = Poly>> {
    if n == 0 {
        return Err(Error::DomainBound("n must be positive".into()));
    }
    let q = field.card();
    let total = arith::checked_pow(q, (n - 1) as u64)?;
    let field = field.clone();
    Ok((0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(Fe::ONE);
        for _ in 1..n {
            coeffs.push(Fe(idx % q));
            idx /= q;
        }
        Poly::new(field.clone(), coeffs)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsrRecord {
    pub tsr: TsrStar,
    pub char_poly: Poly,
    pub class: Classification,
}

/// Stream over `TSR*(m, n; q)` in `(g, A)` order: `g` outer, `GL_m` inner.
pub struct TsrIter {
    m: usize,
    n: usize,
    filter: Filter,
    gs: Vec<Poly>,
    gl: Vec<(Matrix, Poly)>,
    gi: usize,
    ai: usize,
    cache: HashMap<Poly, Classification>,
}

impl TsrIter {
    fn classify(&mut self, f: &Poly) -> Result<Classification> {
        if let Some(c) = self.cache.get(f) {
            return Ok(*c);
        }
        let c = Classification::of(f)?;
        self.cache.insert(f.clone(), c);
        Ok(c)
    }
}

impl Iterator for TsrIter {
    type Item = Result<TsrRecord>;

    fn next(&mut self) -> Option<Result<TsrRecord>> {
        while self.gi < self.gs.len() {
            if self.ai == self.gl.len() {
                self.ai = 0;
                self.gi += 1;
                continue;
            }
            let g = &self.gs[self.gi];
            let (a, h) = &self.gl[self.ai];
            self.ai += 1;
            let f = match mn_compose(g, h, self.m, self.n) {
                Ok(f) => f,
                Err(e) => return Some(Err(e)),
            };
            let (g, a) = (g.clone(), a.clone());
            let class = match self.classify(&f) {
                Ok(c) => c,
                Err(e) => return Some(Err(e)),
            };
            if self.filter.accepts(class) {
                let tsr = TsrStar {
                    m: self.m,
                    n: self.n,
                    g,
                    a,
                };
                return Some(Ok(TsrRecord {
                    tsr,
                    char_poly: f,
                    class,
                }));
            }
        }
        None
    }
}

/// Every `(g, A)` pair with its characteristic polynomial, subject to
/// `|GL_m| * q^(n-1) <= ceiling`.
pub fn enumerate_tsr(m: usize, n: usize, field: &Field, filter: Filter, ceiling: u64) -> Result<TsrIter> {
    check_shape(m, n)?;
    let q = field.card();
    let needed = (gl_order(m as u32, q)? as u128) * (arith::checked_pow(q, (n - 1) as u64)? as u128);
    if needed > ceiling as u128 {
        return Err(Error::CeilingExceeded {
            needed,
            ceiling: ceiling as u128,
        });
    }
    let gs: Vec<Poly> = enumerate_g(field, n)?.collect();
    let gl = enumerate_gl(m, field, ceiling)?
        .map(|a| {
            let h = a.char_poly()?;
            Ok((a, h))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TsrIter {
        m,
        n,
        filter,
        gs,
        gl,
        gi: 0,
        ai: 0,
        cache: HashMap::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DEFAULT_CEILING;

    fn count(m: usize, n: usize, q: u64, filter: Filter) -> usize {
        let f = Field::with_order(q).unwrap();
        enumerate_tsr(m, n, &f, filter, DEFAULT_CEILING)
            .unwrap()
            .filter(|r| r.as_ref().map(|_| true).unwrap())
            .count()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(2, 2, 2, Filter::All), 12);
        assert_eq!(count(2, 2, 2, Filter::Irreducible), 2);
        assert_eq!(count(2, 2, 3, Filter::All), 144);
        assert_eq!(count(2, 2, 3, Filter::Irreducible), 36);
        // m = 1: one TSR per monic polynomial with nonzero constant term
        assert_eq!(count(1, 4, 2, Filter::Irreducible), 3);
        assert_eq!(count(1, 2, 3, Filter::Primitive), 2);
    }

    #[test]
    fn order_is_g_outer() {
        let f2 = Field::with_order(2).unwrap();
        let recs: Vec<TsrRecord> = enumerate_tsr(2, 2, &f2, Filter::All, DEFAULT_CEILING)
            .unwrap()
            .map(|r| r.unwrap())
            .collect();
        assert!(recs[..6].iter().all(|r| r.tsr.g().is_one()));
        assert!(recs[6..].iter().all(|r| r.tsr.g().degree() == Some(1)));
        assert_eq!(recs[0].tsr.block(), recs[6].tsr.block());
    }

    #[test]
    fn fast_char_poly_matches_assembled() {
        for q in [2, 3, 4] {
            let f = Field::with_order(q).unwrap();
            for (m, n) in [(1, 2), (2, 1), (1, 3), (2, 2), (3, 1)] {
                if m == 3 && q == 4 {
                    continue;
                }
                for r in enumerate_tsr(m, n, &f, Filter::All, 20_000).unwrap() {
                    let r = r.unwrap();
                    assert_eq!(r.char_poly, r.tsr.assemble().char_poly().unwrap());
                }
            }
        }
    }

    #[test]
    fn boundary_and_ceiling() {
        let f2 = Field::with_order(2).unwrap();
        assert!(matches!(
            enumerate_tsr(1, 1, &f2, Filter::All, DEFAULT_CEILING),
            Err(Error::DomainBound(_))
        ));
        assert_eq!(
            enumerate_tsr(2, 2, &f2, Filter::All, 11).err(),
            Some(Error::CeilingExceeded {
                needed: 12,
                ceiling: 11
            })
        );
        assert_eq!("primitive".parse::<Filter>().unwrap(), Filter::Primitive);
        assert!("prime".parse::<Filter>().is_err());
    }

    #[test]
    fn g_enumeration() {
        let f3 = Field::with_order(3).unwrap();
        let gs: Vec<String> = enumerate_g(&f3, 2).unwrap().map(|g| g.to_string()).collect();
        assert_eq!(gs, ["1", "x+1", "2*x+1"]);
        assert_eq!(enumerate_g(&f3, 3).unwrap().count(), 9);
    }
}
