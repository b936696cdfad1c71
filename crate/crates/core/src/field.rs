//! Finite fields GF(p^k) as extension towers over a prime field.
//!
//! An element is stored as its canonical index: the coordinate vector over
//! the base field, read as a mixed-radix number with the lowest coordinate
//! varying fastest (recursively down the tower). Index order is therefore
//! the lexicographic enumeration order, and an element of any tower level
//! keeps the same index when viewed in a higher level.
//!
//! Fields of at most [`TABLE_LIMIT`] elements carry exp/log/Zech tables
//! built at construction; larger extensions fall back to coordinate
//! arithmetic.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Extensions up to this cardinality get log tables.
pub const TABLE_LIMIT: u64 = 1 << 16;

const PRIME_LIMIT: u64 = 1 << 31;
const CARD_LIMIT: u128 = 1 << 63;
const NO_LOG: u32 = u32::MAX;

/// Generator symbols, one per tower level above the prime field.
pub(crate) const SYMBOLS: [&str; 6] = ["t", "u", "v", "w", "y", "z"];

/// A field element in canonical index form. Only meaningful together with
/// the [`Field`] it was produced by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub(crate) u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Shared handle to a field context.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u64,
    degree: u32,
    card: u64,
    level: Level,
    tables: Option<Tables>,
    default_modulus: bool,
}

enum Level {
    Prime,
    Ext {
        base: Field,
        k: u32,
        /// Monic, ascending, length k + 1.
        modulus: Vec<Fe>,
    },
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    order: u64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.card != other.0.card {
            return false;
        }
        match (&self.0.level, &other.0.level) {
            (Level::Prime, Level::Prime) => self.0.p == other.0.p,
            (
                Level::Ext { base: b1, modulus: m1, .. },
                Level::Ext { base: b2, modulus: m2, .. },
            ) => m1 == m2 && b1 == b2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.card.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn split(mut v: u64, radix: u64, k: usize) -> Vec<Fe> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(Fe(v % radix));
        v /= radix;
    }
    out
}

fn join(coords: &[Fe], radix: u64) -> Fe {
    Fe(coords.iter().rev().fold(0, |acc, c| acc * radix + c.0))
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        if p >= PRIME_LIMIT {
            return Err(Error::TooLarge(format!("prime {p} must be below 2^31")));
        }
        if !arith::is_prime_trial(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(Inner {
            p,
            degree: 1,
            card: p,
            level: Level::Prime,
            tables: None,
            default_modulus: false,
        })))
    }

    /// GF(q) for a prime power `q`, using the default modulus.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, k) = arith::prime_power(q).ok_or(Error::NotPrime(q))?;
        Field::default_extension(&Field::prime(p)?, k)
    }

    /// Extension of `base` by a monic irreducible `modulus` over `base`.
    pub fn extend(base: &Field, modulus: &Poly) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::CtxMismatch);
        }
        let k = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if k == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if !modulus.is_irreducible()? {
            let witness = modulus.factor()?.remove(0).0;
            return Err(Error::Reducible { witness });
        }
        let is_default = Self::default_modulus(base, k as u32)? == *modulus;
        Self::build_extension(base, modulus.coeffs().to_vec(), is_default)
    }

    /// Extension by the smallest monic irreducible of degree `k` in
    /// enumeration order; `k = 1` returns `base` itself.
    pub fn default_extension(base: &Field, k: u32) -> Result<Field> {
        if k == 0 {
            return Err(Error::DomainBound("extension degree must be >= 1".into()));
        }
        if k == 1 {
            return Ok(base.clone());
        }
        let modulus = Self::default_modulus(base, k)?;
        Self::build_extension(base, modulus.coeffs().to_vec(), true)
    }

    fn default_modulus(base: &Field, k: u32) -> Result<Poly> {
        for f in Poly::monic_iter(base, k as usize)? {
            if f.is_irreducible()? {
                return Ok(f);
            }
        }
        unreachable!("an irreducible of every degree exists")
    }

    fn build_extension(base: &Field, modulus: Vec<Fe>, is_default: bool) -> Result<Field> {
        let k = (modulus.len() - 1) as u32;
        let card = (base.card() as u128).pow(k);
        if card >= CARD_LIMIT {
            return Err(Error::TooLarge(format!(
                "field of {}^{k} elements exceeds 2^63",
                base.card()
            )));
        }
        let mut inner = Inner {
            p: base.0.p,
            degree: base.0.degree * k,
            card: card as u64,
            level: Level::Ext {
                base: base.clone(),
                k,
                modulus,
            },
            tables: None,
            default_modulus: is_default,
        };
        if inner.card <= TABLE_LIMIT {
            let plain = Field(Arc::new(inner));
            let tables = plain.build_tables()?;
            inner = Arc::try_unwrap(plain.0).ok().expect("sole owner");
            inner.tables = Some(tables);
        }
        Ok(Field(Arc::new(inner)))
    }

    fn build_tables(&self) -> Result<Tables> {
        let q = self.card();
        let order = q - 1;
        let primes = arith::factor_integer(order as u128)?;
        let gen = (1..q)
            .map(Fe)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&(r, _)| self.pow(g, (order / r) as u128) != Fe::ONE)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut x = Fe::ONE;
        for i in 0..order {
            exp[i as usize] = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = self.mul(x, gen);
        }
        let zech = (0..order)
            .map(|i| {
                let s = self.add(Fe::ONE, Fe(exp[i as usize] as u64));
                if s.is_zero() {
                    NO_LOG
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        Ok(Tables {
            exp,
            log,
            zech,
            order,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Number of elements.
    pub fn card(&self) -> u64 {
        self.0.card
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.level, Level::Prime)
    }

    /// The field directly below this one, if any.
    pub fn base(&self) -> Option<&Field> {
        match &self.0.level {
            Level::Prime => None,
            Level::Ext { base, .. } => Some(base),
        }
    }

    /// Defining polynomial over [`Field::base`].
    pub fn modulus(&self) -> Option<Poly> {
        match &self.0.level {
            Level::Prime => None,
            Level::Ext { base, modulus, .. } => Some(Poly::new(base.clone(), modulus.clone())),
        }
    }

    /// Tower levels from the prime field up to `self`.
    pub fn levels(&self) -> Vec<Field> {
        let mut out = vec![self.clone()];
        while let Some(b) = out.last().unwrap().base() {
            out.push(b.clone());
        }
        out.reverse();
        out
    }

    /// Depth in the tower (0 for the prime field).
    pub fn depth(&self) -> usize {
        self.levels().len() - 1
    }

    /// The tower level with `q` elements.
    pub fn level_with_card(&self, q: u64) -> Option<Field> {
        self.levels().into_iter().find(|f| f.card() == q)
    }

    /// Whether `sub` is one of the levels of this tower.
    pub fn has_level(&self, sub: &Field) -> bool {
        self.levels().iter().any(|f| f == sub)
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Element with the given canonical index.
    pub fn element(&self, index: u64) -> Result<Fe> {
        if index < self.card() {
            Ok(Fe(index))
        } else {
            Err(Error::TooLarge(format!(
                "index {index} outside field of {} elements",
                self.card()
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// All elements in canonical order, starting at 0.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.card()).map(Fe)
    }

    /// Generator of this level over its base (`t` in `GF(p)[t]/(m(t))`).
    pub fn generator(&self) -> Option<Fe> {
        match &self.0.level {
            Level::Prime => None,
            Level::Ext { base, k, modulus } => Some(if *k == 1 {
                base.neg(modulus[0])
            } else {
                Fe(base.card())
            }),
        }
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match (&self.0.level, &self.0.tables) {
            (Level::Prime, _) => {
                let s = a.0 + b.0;
                Fe(if s >= p { s - p } else { s })
            }
            (_, Some(t)) => {
                if a.is_zero() {
                    return b;
                }
                if b.is_zero() {
                    return a;
                }
                let la = t.log[a.0 as usize] as u64;
                let lb = t.log[b.0 as usize] as u64;
                let z = t.zech[((lb + t.order - la) % t.order) as usize];
                if z == NO_LOG {
                    Fe::ZERO
                } else {
                    Fe(t.exp[((la + z as u64) % t.order) as usize] as u64)
                }
            }
            _ => self.digitwise(a, b, |x, y| (x + y) % p),
        }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if p == 2 || a.is_zero() {
            return a;
        }
        match (&self.0.level, &self.0.tables) {
            (Level::Prime, _) => Fe(p - a.0),
            (_, Some(t)) => {
                let l = t.log[a.0 as usize] as u64;
                Fe(t.exp[((l + t.order / 2) % t.order) as usize] as u64)
            }
            _ => self.digitwise(a, Fe::ZERO, |x, _| (p - x) % p),
        }
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    fn digitwise(&self, a: Fe, b: Fe, op: impl Fn(u64, u64) -> u64) -> Fe {
        let p = self.0.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += op(x % p, y % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        match (&self.0.level, &self.0.tables) {
            (Level::Prime, _) => Fe(a.0 * b.0 % self.0.p),
            (_, Some(t)) => {
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                Fe(t.exp[(s % t.order) as usize] as u64)
            }
            (Level::Ext { base, k, modulus }, None) => {
                let k = *k as usize;
                let q = base.card();
                let (x, y) = (split(a.0, q, k), split(b.0, q, k));
                let mut prod = vec![Fe::ZERO; 2 * k - 1];
                for (i, &xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(xi, yj));
                    }
                }
                for i in (k..2 * k - 1).rev() {
                    let c = prod[i];
                    if c.is_zero() {
                        continue;
                    }
                    for (j, &mj) in modulus[..k].iter().enumerate() {
                        prod[i - k + j] = base.sub(prod[i - k + j], base.mul(c, mj));
                    }
                }
                join(&prod[..k], q)
            }
        }
    }

    pub fn pow(&self, a: Fe, mut e: u128) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.0.level, &self.0.tables) {
            (Level::Prime, _) => {
                let p = self.0.p as i64;
                let (mut r0, mut r1) = (p, a.0 as i64);
                let (mut s0, mut s1) = (0i64, 1i64);
                while r1 != 0 {
                    let qt = r0 / r1;
                    (r0, r1) = (r1, r0 - qt * r1);
                    (s0, s1) = (s1, s0 - qt * s1);
                }
                Fe(s0.rem_euclid(p) as u64)
            }
            (_, Some(t)) => {
                let l = t.log[a.0 as usize] as u64;
                Fe(t.exp[((t.order - l) % t.order) as usize] as u64)
            }
            _ => self.pow(a, self.card() as u128 - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Inverse of the absolute Frobenius `x -> x^p`.
    pub(crate) fn pth_root(&self, a: Fe) -> Fe {
        self.pow(a, (self.card() / self.0.p) as u128)
    }

    fn subfield_exponent(&self, q: u64) -> Result<u32> {
        match arith::prime_power(q) {
            Some((p, j)) if p == self.0.p && self.0.degree.is_multiple_of(j) => Ok(j),
            _ => Err(Error::NotASubfield(q)),
        }
    }

    /// Smallest `d >= 1` with `a^(q^d) = a`, i.e. `[GF(q)(a) : GF(q)]`.
    pub fn degree_over(&self, a: Fe, q: u64) -> Result<u32> {
        let j = self.subfield_exponent(q)?;
        let mut x = self.pow(a, q as u128);
        let mut d = 1;
        while x != a {
            x = self.pow(x, q as u128);
            d += 1;
        }
        debug_assert_eq!((self.0.degree / j) % d, 0);
        Ok(d)
    }

    /// Minimal polynomial of `a` over the tower level with `q` elements,
    /// as the product of the distinct Frobenius conjugates of `a`.
    pub fn minimal_poly_over(&self, a: Fe, q: u64) -> Result<Poly> {
        let d = self.degree_over(a, q)?;
        let sub = self.level_with_card(q).ok_or(Error::SubfieldNotInTower(q))?;
        let mut prod = Poly::one(self.clone());
        let mut conj = a;
        for _ in 0..d {
            let lin = Poly::new(self.clone(), vec![self.neg(conj), Fe::ONE]);
            prod = prod.mul(&lin)?;
            conj = self.pow(conj, q as u128);
        }
        prod.restrict_to(&sub)
    }

    /// Order of `a` in the multiplicative group.
    pub fn multiplicative_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.card() - 1;
        let mut ord = n;
        for (r, _) in arith::factor_integer(n as u128)? {
            while ord.is_multiple_of(r) && self.pow(a, (ord / r) as u128) == Fe::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn is_primitive_element(&self, a: Fe) -> Result<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        Ok(self.multiplicative_order(a)? == self.card() - 1)
    }

    /// Text form of an element, as a polynomial in the level generators.
    pub fn format(&self, a: Fe) -> String {
        match &self.0.level {
            Level::Prime => a.0.to_string(),
            Level::Ext { base, k, .. } => {
                let coords = split(a.0, base.card(), *k as usize);
                let terms: Vec<(String, bool, usize)> = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, &c)| (base.format(c), c == Fe::ONE, e))
                    .collect();
                crate::text::format_terms(&terms, SYMBOLS[self.depth() - 1])
            }
        }
    }

    /// Field descriptor: `p`, `p^k`, `p^k:modulus`, with `/k` or
    /// `/modulus` for further tower levels.
    pub fn descriptor(&self) -> String {
        match &self.0.level {
            Level::Prime => self.0.p.to_string(),
            Level::Ext { base, k, .. } => {
                let modulus = self.modulus().expect("extension");
                if base.is_prime_field() {
                    if self.0.default_modulus {
                        format!("{}^{k}", self.0.p)
                    } else {
                        format!("{}^{k}:{modulus}", self.0.p)
                    }
                } else if self.0.default_modulus {
                    format!("{}/{k}", base.descriptor())
                } else {
                    format!("{}/{modulus}", base.descriptor())
                }
            }
        }
    }

    /// Bundles an element with this field.
    pub fn elem(&self, a: Fe) -> FieldElem {
        FieldElem {
            field: self.clone(),
            value: a,
        }
    }
}

/// An element together with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: Field,
    value: Fe,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    fn binary(&self, other: &FieldElem, op: impl Fn(&Field, Fe, Fe) -> Result<Fe>) -> Result<FieldElem> {
        if self.field != other.field {
            return Err(Error::CtxMismatch);
        }
        Ok(self.field.elem(op(&self.field, self.value, other.value)?))
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binary(other, |f, a, b| Ok(f.add(a, b)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binary(other, |f, a, b| Ok(f.sub(a, b)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binary(other, |f, a, b| Ok(f.mul(a, b)))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binary(other, |f, a, b| f.div(a, b))
    }

    pub fn neg(&self) -> FieldElem {
        self.field.elem(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(self.field.elem(self.field.inv(self.value)?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        Ok(self.field.elem(self.field.pow(b.value, e.unsigned_abs() as u128)))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        assert_eq!(Field::prime(2).unwrap().card(), 2);
        assert_eq!(Field::prime(3).unwrap().card(), 3);
        assert_eq!(Field::prime(4), Err(Error::NotPrime(4)));
        assert!(matches!(Field::prime(1 << 31), Err(Error::TooLarge(_))));
    }

    #[test]
    fn extension_construction() {
        let f2 = gf(2);
        let gf4 = Field::extend(&f2, &Poly::from_indices(&f2, &[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(gf4.card(), 4);
        assert_eq!(gf4.descriptor(), "2^2");

        let err = Field::extend(&f2, &Poly::from_indices(&f2, &[1, 0, 1]).unwrap()).unwrap_err();
        assert_eq!(
            err,
            Error::Reducible {
                witness: Poly::from_indices(&f2, &[1, 1]).unwrap()
            }
        );
        let constant = Poly::from_indices(&f2, &[1]).unwrap();
        assert_eq!(Field::extend(&f2, &constant), Err(Error::ConstantPolynomial));

        let f3 = gf(3);
        let gf9 = Field::extend(&f3, &Poly::from_indices(&f3, &[1, 0, 1]).unwrap()).unwrap();
        assert_eq!(gf9.card(), 9);
        // -1 is a non-square mod 3: squares are {0, 1, 1}
        let squares: Vec<u64> = (0..3).map(|x| x * x % 3).collect();
        assert!(!squares.contains(&2));
    }

    #[test]
    fn non_monic_modulus_rejected() {
        let f3 = gf(3);
        let m = Poly::from_indices(&f3, &[1, 0, 2]).unwrap();
        assert_eq!(Field::extend(&f3, &m), Err(Error::NotMonic));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(Field::default_extension(&gf(2), 1).unwrap(), gf(2));
        let gf4 = gf(4);
        assert_eq!(gf4.modulus().unwrap().to_string(), "x^2+x+1");
        // exhaust the 9 monic quadratics over GF(3) in enumeration order
        let f3 = gf(3);
        let first = (0..9u64)
            .map(|i| Poly::from_indices(&f3, &[i % 3, i / 3, 1]).unwrap())
            .find(|f| (0..3).all(|x| !f.eval(Fe(x)).is_zero()))
            .unwrap();
        assert_eq!(first.to_string(), "x^2+1");
        assert_eq!(gf(9).modulus().unwrap(), first);
        assert_eq!(gf(16).modulus().unwrap().to_string(), "x^4+x+1");
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = gf(3);
        assert_eq!(f3.add(Fe(2), Fe(2)), Fe(1));
        let gf4 = gf(4);
        let t = gf4.generator().unwrap();
        assert_eq!(gf4.format(gf4.mul(t, t)), "t+1");
        let f5 = gf(5);
        assert_eq!(f5.inv(Fe(2)).unwrap(), Fe(3));
        assert_eq!(f5.inv(Fe(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn checked_elements() {
        let f5 = gf(5);
        let f3 = gf(3);
        let a = f5.elem(Fe(2));
        assert_eq!(a.inv().unwrap().value(), Fe(3));
        assert_eq!(a.pow(-1).unwrap().value(), Fe(3));
        assert_eq!(a.add(&f3.elem(Fe(1))), Err(Error::CtxMismatch));
        assert_eq!(a.div(&f5.elem(Fe(0))), Err(Error::DivisionByZero));
        assert_eq!(a.mul(&a).unwrap().to_string(), "4");
    }

    #[test]
    fn enumeration_order() {
        let names: Vec<String> = gf(4).elements().map(|a| gf(4).format(a)).collect();
        assert_eq!(names, ["0", "1", "t", "t+1"]);
        assert_eq!(gf(2).elements().count(), 2);
        let nine: Vec<Fe> = gf(9).elements().collect();
        assert_eq!(nine.len(), 9);
        assert_eq!(nine[0], Fe::ZERO);
        assert_eq!(nine[1], Fe::ONE);
    }

    #[test]
    fn degrees_and_minimal_polys() {
        let gf16 = gf(16);
        assert_eq!(gf16.degree_over(Fe::ONE, 2).unwrap(), 1);
        let gf4 = gf(4);
        assert_eq!(gf4.degree_over(gf4.generator().unwrap(), 2).unwrap(), 2);
        let full = gf16.elements().filter(|&a| gf16.degree_over(a, 2).unwrap() == 4).count();
        assert_eq!(full, 12);
        assert_eq!(gf16.degree_over(Fe::ONE, 8), Err(Error::NotASubfield(8)));
        assert_eq!(gf16.degree_over(Fe::ONE, 3), Err(Error::NotASubfield(3)));
        // GF(4) is a subfield of GF(16) but not a level of the default tower
        assert_eq!(
            gf16.minimal_poly_over(Fe::ONE, 4),
            Err(Error::SubfieldNotInTower(4))
        );

        assert_eq!(gf16.minimal_poly_over(Fe::ONE, 2).unwrap().to_string(), "x+1");
        let t = gf4.generator().unwrap();
        assert_eq!(gf4.minimal_poly_over(t, 2).unwrap().to_string(), "x^2+x+1");
        let gf9 = gf(9);
        for a in gf9.elements() {
            let mp = gf9.minimal_poly_over(a, 3).unwrap();
            assert_eq!(mp.degree().unwrap() as u32, gf9.degree_over(a, 3).unwrap());
            assert!(mp.is_irreducible().unwrap());
            assert!(mp.embed_into(&gf9).unwrap().eval(a).is_zero());
        }
    }

    #[test]
    fn orders() {
        assert_eq!(gf(7).multiplicative_order(Fe::ONE).unwrap(), 1);
        let gf4 = gf(4);
        assert_eq!(gf4.multiplicative_order(gf4.generator().unwrap()).unwrap(), 3);
        assert_eq!(gf(5).multiplicative_order(Fe(2)).unwrap(), 4);
        assert_eq!(gf(5).multiplicative_order(Fe(0)), Err(Error::ZeroElement));
        assert!(!gf(3).is_primitive_element(Fe(1)).unwrap());
        assert!(gf(3).is_primitive_element(Fe(2)).unwrap());
        let gf9 = gf(9);
        let prim = gf9.elements().filter(|&a| gf9.is_primitive_element(a).unwrap()).count();
        assert_eq!(prim, 4);
    }

    #[test]
    fn tower_levels_and_embedding() {
        let gf4 = gf(4);
        let gf16 = Field::default_extension(&gf4, 2).unwrap();
        assert_eq!(gf16.card(), 16);
        assert_eq!(gf16.descriptor(), "2^2/2");
        assert!(gf16.has_level(&gf4));
        assert_eq!(gf16.level_with_card(4).unwrap(), gf4);
        // base elements keep their index and their arithmetic
        for a in gf4.elements() {
            for b in gf4.elements() {
                assert_eq!(gf16.mul(a, b), gf4.mul(a, b));
                assert_eq!(gf16.add(a, b), gf4.add(a, b));
            }
        }
        let u = gf16.generator().unwrap();
        assert_eq!(gf16.format(u), "u");
        assert_eq!(gf16.minimal_poly_over(u, 4).unwrap(), gf16.modulus().unwrap());
    }

    #[test]
    fn generic_and_table_arithmetic_agree() {
        // build GF(3^2) twice: with tables, and force the coordinate path
        let f3 = gf(3);
        let m = Poly::from_indices(&f3, &[2, 2, 1]).unwrap();
        let tabled = Field::extend(&f3, &m).unwrap();
        let plain = Field(Arc::new(Inner {
            p: 3,
            degree: 2,
            card: 9,
            level: Level::Ext {
                base: f3.clone(),
                k: 2,
                modulus: m.coeffs().to_vec(),
            },
            tables: None,
            default_modulus: false,
        }));
        for a in plain.elements() {
            assert_eq!(tabled.neg(a), plain.neg(a));
            if !a.is_zero() {
                assert_eq!(tabled.inv(a), plain.inv(a));
            }
            for b in plain.elements() {
                assert_eq!(tabled.add(a, b), plain.add(a, b));
                assert_eq!(tabled.mul(a, b), plain.mul(a, b));
                assert_eq!(tabled.sub(a, b), plain.sub(a, b));
            }
        }
    }
}
