//! Closed-form counts for TSRs, decompositions and self-reciprocal
//! polynomials, in exact integer arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, checked_pow};
use crate::error::{Error, Result};
use crate::factor::{count_irreducible, count_primitive};
use crate::field::Field;
use crate::matrix::gl_order;
use crate::poly::Poly;
use crate::tsr::enumerate_s;

/// A closed-form value, optionally paired with an enumerated one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub label: String,
    pub m: u32,
    pub n: u32,
    pub q: u64,
    pub closed_form: u64,
    pub enumerated: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl CountReport {
    pub fn closed(label: &str, m: u32, n: u32, q: u64, closed_form: u64) -> CountReport {
        CountReport {
            label: label.to_string(),
            m,
            n,
            q,
            closed_form,
            enumerated: None,
            matches: None,
        }
    }

    pub fn with_enumerated(mut self, enumerated: u64) -> CountReport {
        self.enumerated = Some(enumerated);
        self.matches = Some(enumerated == self.closed_form);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Tsri,
    Tsrp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaKind {
    Primitive,
    Irreducible,
}

impl FromStr for SigmaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SigmaKind> {
        match s {
            "primitive" => Ok(SigmaKind::Primitive),
            "irreducible" => Ok(SigmaKind::Irreducible),
            _ => Err(Error::Parse(format!("unknown kind {s:?}"))),
        }
    }
}

impl fmt::Display for SigmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaKind::Primitive => "primitive",
            SigmaKind::Irreducible => "irreducible",
        })
    }
}

const LIMIT: u128 = 1 << 63;

fn fit(v: u128) -> Result<u64> {
    if v >= LIMIT {
        return Err(Error::Overflow);
    }
    Ok(v as u64)
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn exact_div(a: u128, b: u128) -> Result<u128> {
    if b == 0 || !a.is_multiple_of(b) {
        return Err(Error::NonIntegerResult);
    }
    Ok(a / b)
}

fn check_q(q: u64) -> Result<()> {
    if arith::prime_power(q).is_none() {
        return Err(Error::DomainBound(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// `sum_{d | r} mu(d) q^(r/d)`, which is `r * |I(r; q)|`.
fn necklace(r: u64, q: u64) -> Result<u64> {
    let mut acc: i128 = 0;
    for d in arith::divisors(r) {
        let mu = arith::mobius(d);
        if mu != 0 {
            acc += mu as i128 * checked_pow(q, r / d)? as i128;
        }
    }
    fit(acc as u128)
}

/// `m = 2^k * l` with `l` odd.
fn split_two(m: u64) -> (u32, u64) {
    let k = m.trailing_zeros();
    (k, m >> k)
}

/// `sum_{d | l} mu(d) q^(m/d) - floor(1/l)(1 + (-1)^(q-1))/2`, i.e.
/// `l|I(l; q^(2^k))|` less the odd-`q` correction when `l = 1`.
fn srim_core(m: u64, q: u64) -> Result<u128> {
    let (k, l) = split_two(m);
    let big_q = checked_pow(q, 1u64 << k)?;
    Ok(necklace(l, big_q)? as u128 - odd_correction(l, q) as u128)
}

/// `q - (1 + (-1)^q) / 2`: `q - 1` for even `q`, else `q`.
fn parity_factor(q: u64) -> u64 {
    if q.is_multiple_of(2) {
        q - 1
    } else {
        q
    }
}

/// `floor(1/l) * (1 + (-1)^(q-1)) / 2`.
fn odd_correction(l: u64, q: u64) -> u64 {
    u64::from(l == 1 && q % 2 == 1)
}

/// `|GL_m| / (q^m - 1)`: the fiber size over an irreducible polynomial.
fn gl_ratio(m: u32, q: u64) -> Result<u64> {
    fit(exact_div(
        gl_order(m, q)? as u128,
        (checked_pow(q, m as u64)? - 1) as u128,
    )?)
}

/// Number of matrices over `GF(q)` with characteristic polynomial `f`:
/// `q^E prod_{i<=n}(q^i - 1) / prod_i prod_{j<=m_i}(q^(d_i j) - 1)` with
/// `E = n(n-3)/2 + sum_i d_i m_i (m_i + 1)/2`, for `f = prod_i f_i^(m_i)`
/// and `deg f_i = d_i`.
pub fn n_chi(f: &Poly) -> Result<u64> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap_or(0) as i64;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let q = f.field().card();
    let mut exp = n * (n - 3) / 2;
    let mut den: u128 = 1;
    for (g, mult) in f.factor()? {
        let d = g.degree().unwrap() as u64;
        let mult = mult as u64;
        exp += (d * mult * (mult + 1) / 2) as i64;
        for j in 1..=mult {
            den = mul(den, (checked_pow(q, d * j)? - 1) as u128)?;
        }
    }
    let mut num = checked_pow(q, exp as u64)? as u128;
    for i in 1..=n as u64 {
        num = mul(num, (checked_pow(q, i)? - 1) as u128)?;
    }
    fit(exact_div(num, den)?)
}

/// `|TSRI|` or `|TSRP|` when `m = 1` or `n = 1`.
pub fn edge_counts(m: u32, n: u32, q: u64, which: Which) -> Result<u64> {
    check_q(q)?;
    if m == 0 || n == 0 || m.max(n) == 1 || m.min(n) != 1 {
        return Err(Error::DomainBound("edge counts need exactly one of m, n equal to 1".into()));
    }
    let count = |r: u64| match which {
        Which::Tsri => count_irreducible(r, q),
        Which::Tsrp => count_primitive(r, q),
    };
    if m == 1 {
        count(n as u64)
    } else {
        fit(mul(gl_ratio(m, q)? as u128, count(m as u64)? as u128)?)
    }
}

/// `|TSRI(m, n; q)| = |S_q(m, n)| / m * |GL_m| / (q^m - 1)` with `S`
/// enumerated.
pub fn tsri_via_s(m: u32, n: u32, field: &Field) -> Result<u64> {
    let s = enumerate_s(m as usize, n as usize, field)?;
    let len = s.pairs.len() as u128;
    if !len.is_multiple_of(m as u128) {
        return Err(Error::InternalInconsistency(format!(
            "|S| = {len} is not divisible by m = {m}"
        )));
    }
    fit(mul(len / m as u128, gl_ratio(m, field.card())? as u128)?)
}

fn check_m2(m: u32, q: u64) -> Result<()> {
    check_q(q)?;
    if m < 2 {
        return Err(Error::DomainBound("need m > 1".into()));
    }
    Ok(())
}

/// `N_q(m, 2) = |S_q(m, 2)|` in the compact form
/// `(q - (1+(-1)^q)/2)(l|I(l; q^(2^k))| - floor(1/l)(1+(-1)^(q-1))/2) / 2`.
pub fn n_q_m2(m: u32, q: u64) -> Result<u64> {
    check_m2(m, q)?;
    let inner = srim_core(m as u64, q)?;
    fit(exact_div(mul(parity_factor(q) as u128, inner)?, 2)?)
}

/// `N_q(m, 2)` by the two cases `l = 1` and `l > 1`.
pub fn n_q_m2_cases(m: u32, q: u64) -> Result<u64> {
    check_m2(m, q)?;
    let (k, l) = split_two(m as u64);
    let qm = checked_pow(q, m as u64)? as u128;
    let v = if l == 1 {
        if q.is_multiple_of(2) {
            exact_div(mul(q as u128 - 1, qm)?, 2)?
        } else {
            exact_div(mul(q as u128, qm - 1)?, 2)?
        }
    } else {
        let big_q = checked_pow(q, 1u64 << k)?;
        let li = mul(l as u128, count_irreducible(l, big_q)? as u128)?;
        mul(exact_div(li, 2)?, parity_factor(q) as u128)?
    };
    fit(v)
}

/// `|V_m(a)|` for any `a` making it nonempty.
pub fn v_count(m: u32, q: u64) -> Result<u64> {
    fit(exact_div(n_q_m2(m, q)? as u128, parity_factor(q) as u128)?)
}

/// `|TSRI(m, 2; q)|`, with the division performed last.
pub fn tsri_m2(m: u32, q: u64) -> Result<u64> {
    check_m2(m, q)?;
    let inner = srim_core(m as u64, q)?;
    let num = mul(mul(parity_factor(q) as u128, inner)?, gl_order(m, q)? as u128)?;
    let den = 2 * m as u128 * (checked_pow(q, m as u64)? as u128 - 1);
    fit(exact_div(num, den)?)
}

/// Number of self-reciprocal irreducible monic polynomials of degree `2m`.
pub fn carlitz_srim(m: u32, q: u64) -> Result<u64> {
    check_q(q)?;
    if m == 0 {
        return Err(Error::DomainBound("need m >= 1".into()));
    }
    if m == 1 {
        // the quadratic case from the proof, not the general display
        return Ok(if q % 2 == 1 { (q - 1) / 2 } else { q / 2 });
    }
    let inner = srim_core(m as u64, q)?;
    fit(exact_div(inner, 2 * m as u128)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub tsri_upper: u64,
    pub tsrp_upper: u64,
}

/// `|GL_m|/(q^m - 1) * |I(m; q)| * q^(n-1)` and its primitive analogue.
pub fn bounds(m: u32, n: u32, q: u64) -> Result<Bounds> {
    check_q(q)?;
    if m == 0 || n == 0 {
        return Err(Error::DomainBound("m and n must be positive".into()));
    }
    let base = mul(gl_ratio(m, q)? as u128, checked_pow(q, (n - 1) as u64)? as u128)?;
    Ok(Bounds {
        tsri_upper: fit(mul(base, count_irreducible(m as u64, q)? as u128)?)?,
        tsrp_upper: fit(mul(base, count_primitive(m as u64, q)? as u128)?)?,
    })
}

/// The sigma-LFSR counts. The irreducible one is evaluated as displayed,
/// without the `1/mn` that the primitive one carries.
pub fn sigma_lfsr_counts(m: u32, n: u32, q: u64, which: SigmaKind) -> Result<u64> {
    check_q(q)?;
    if m == 0 || n == 0 {
        return Err(Error::DomainBound("m and n must be positive".into()));
    }
    let mn = (m as u64) * (n as u64);
    let head = match which {
        SigmaKind::Primitive => {
            let qmn = checked_pow(q, mn)?;
            exact_div(arith::euler_phi(qmn - 1)? as u128, mn as u128)?
        }
        SigmaKind::Irreducible => necklace(mn, q)? as u128,
    };
    let qm = checked_pow(q, m as u64)? as u128;
    let mut acc = mul(head, checked_pow(q, (m as u64) * (m as u64 - 1) * (n as u64 - 1))? as u128)?;
    for i in 1..m as u64 {
        acc = mul(acc, qm - checked_pow(q, i)? as u128)?;
    }
    fit(acc)
}
