use std::fmt;
use std::str::FromStr;

use crate::counting::n_chi;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::poly::{mn_compose, Poly};

use super::{check_shape, enumerate_g, enumerate_tsr, Filter};

/// A pair `(g, h)` with `f = g^m h(X^n / g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub g: Poly,
    pub h: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberMode {
    Bruteforce,
    Formula,
}

impl FromStr for FiberMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<FiberMode> {
        match s {
            "bruteforce" => Ok(FiberMode::Bruteforce),
            "formula" => Ok(FiberMode::Formula),
            _ => Err(Error::Parse(format!("unknown fiber mode {s:?}"))),
        }
    }
}

impl fmt::Display for FiberMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberMode::Bruteforce => "bruteforce",
            FiberMode::Formula => "formula",
        })
    }
}

fn check_target(f: &Poly, m: usize, n: usize) -> Result<()> {
    check_shape(m, n)?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap_or(0);
    if d != m * n {
        return Err(Error::WrongDegree {
            expected: m * n,
            got: d,
        });
    }
    Ok(())
}

/// Solves for `h` given `g`. The summand `h_j g^(m-j) X^(nj)` has lowest
/// term `h_j X^(nj)`, so the `h_j` are read off in increasing `j`.
fn solve_for_h(f: &Poly, g: &Poly, m: usize, n: usize) -> Result<Option<Poly>> {
    let field = f.field();
    let mut r = f.sub(&Poly::monomial(field.clone(), Fe::ONE, m * n))?;
    let mut h = vec![Fe::ZERO; m + 1];
    h[m] = Fe::ONE;
    for (j, slot) in h.iter_mut().enumerate().take(m) {
        let hj = r.coeff(n * j);
        *slot = hj;
        if !hj.is_zero() {
            let term = g.pow((m - j) as u64).mul(&Poly::monomial(field.clone(), hj, n * j))?;
            r = r.sub(&term)?;
        }
    }
    if !r.is_zero() {
        return Ok(None);
    }
    let h = Poly::new(field.clone(), h);
    if mn_compose(g, &h, m, n)? != *f {
        return Err(Error::InternalInconsistency("decomposition failed to verify".into()));
    }
    Ok(Some(h))
}

/// All `(m, n)`-decompositions of `f`, in `g` enumeration order.
pub fn decompose(f: &Poly, m: usize, n: usize) -> Result<Vec<Decomposition>> {
    check_target(f, m, n)?;
    if f.coeff(0).is_zero() {
        return Err(Error::VanishesAtZero);
    }
    let mut out = Vec::new();
    for g in enumerate_g(f.field(), n)? {
        if let Some(h) = solve_for_h(f, &g, m, n)? {
            out.push(Decomposition { g, h });
        }
    }
    Ok(out)
}

/// Number of TSRs in `TSR*(m, n; q)` with characteristic polynomial `f`.
pub fn fiber_count(f: &Poly, m: usize, n: usize, mode: FiberMode, ceiling: u64) -> Result<u64> {
    check_target(f, m, n)?;
    match mode {
        FiberMode::Bruteforce => {
            let mut count = 0;
            for r in enumerate_tsr(m, n, f.field(), Filter::All, ceiling)? {
                if r?.char_poly == *f {
                    count += 1;
                }
            }
            Ok(count)
        }
        FiberMode::Formula => {
            let ds = decompose(f, m, n)?;
            if ds.len() != 1 {
                return Err(Error::NotUniquelyDecomposable(ds.len()));
            }
            n_chi(&ds[0].h)
        }
    }
}
