use std::collections::BTreeSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

/// Largest `q^t` accepted by [`enumerate_v`] and [`proof_partitions`].
pub const V_ELEMENT_LIMIT: u64 = 1 << 16;

/// The sets of the quadratic-transform argument for a fixed `a` in `GF(q)`,
/// as element lists of `GF(q^t)` sorted by index.
#[derive(Clone, Debug)]
pub struct Partitions {
    pub ext: Field,
    /// Elements of degree `t`.
    pub z: Vec<Fe>,
    /// `alpha` in `z` with `alpha^2 + a*alpha` also of degree `t`.
    pub x: Vec<Fe>,
    /// The rest of `z`.
    pub y: Vec<Fe>,
    /// Values `alpha^2 + a*alpha` for `alpha` in `x`.
    pub u: Vec<Fe>,
    /// `alpha` in `z` with `X^2 + aX - alpha` irreducible over `GF(q^t)`.
    pub v: Vec<Fe>,
}

struct Setup {
    ext: Field,
    q: u64,
    a: Fe,
    t: u32,
}

fn setup(t: u32, a: Fe, field: &Field) -> Result<Setup> {
    if t < 2 {
        return Err(Error::DomainBound("t must be > 1".into()));
    }
    let q = field.card();
    field.element(a.index())?;
    let qt = arith::checked_pow(q, t as u64)?;
    if qt > V_ELEMENT_LIMIT {
        return Err(Error::CeilingExceeded {
            needed: qt as u128,
            ceiling: V_ELEMENT_LIMIT as u128,
        });
    }
    let ext = Field::default_extension(field, t)?;
    Ok(Setup { ext, q, a, t })
}

impl Setup {
    fn full_degree(&self, alpha: Fe) -> Result<bool> {
        Ok(self.ext.degree_over(alpha, self.q)? == self.t)
    }

    fn in_v(&self, alpha: Fe) -> Result<bool> {
        let e = &self.ext;
        Poly::new(e.clone(), vec![e.neg(alpha), self.a, Fe::ONE]).is_irreducible()
    }

    fn v(&self) -> Result<Vec<Fe>> {
        let mut out = Vec::new();
        for alpha in self.ext.elements() {
            if self.full_degree(alpha)? && self.in_v(alpha)? {
                out.push(alpha);
            }
        }
        Ok(out)
    }
}

/// `V_t(a)`.
pub fn enumerate_v(t: u32, a: Fe, field: &Field) -> Result<(Field, Vec<Fe>)> {
    let s = setup(t, a, field)?;
    let v = s.v()?;
    Ok((s.ext, v))
}

/// Computes `Z, X, Y, U, V` and checks `Z = X ⊔ Y = U ⊔ V`.
pub fn proof_partitions(t: u32, a: Fe, field: &Field) -> Result<Partitions> {
    let s = setup(t, a, field)?;
    let e = &s.ext;
    let (mut z, mut x, mut y) = (Vec::new(), Vec::new(), Vec::new());
    let mut u = BTreeSet::new();
    for alpha in e.elements() {
        if !s.full_degree(alpha)? {
            continue;
        }
        z.push(alpha);
        let image = e.add(e.mul(alpha, alpha), e.mul(s.a, alpha));
        if s.full_degree(image)? {
            x.push(alpha);
            u.insert(image);
        } else {
            y.push(alpha);
        }
    }
    let u: Vec<Fe> = u.into_iter().collect();
    let v = s.v()?;

    let zs: BTreeSet<Fe> = z.iter().copied().collect();
    let us: BTreeSet<Fe> = u.iter().copied().collect();
    let vs: BTreeSet<Fe> = v.iter().copied().collect();
    if !us.is_disjoint(&vs) || us.union(&vs).copied().collect::<BTreeSet<_>>() != zs {
        return Err(Error::InternalInconsistency("Z is not U ⊔ V".into()));
    }
    if x.len() + y.len() != z.len() {
        return Err(Error::InternalInconsistency("Z is not X ⊔ Y".into()));
    }
    Ok(Partitions {
        ext: s.ext,
        z,
        x,
        y,
        u,
        v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn v_empty_exactly_for_even_q_and_zero_a() {
        for q in [2, 3, 4, 5] {
            let field = gf(q);
            for t in 2..=3 {
                for a in field.elements() {
                    let (_, v) = enumerate_v(t, a, &field).unwrap();
                    assert_eq!(v.is_empty(), q % 2 == 0 && a.is_zero(), "q={q} t={t} a={a:?}");
                }
            }
        }
    }

    #[test]
    fn small_v() {
        let f2 = gf(2);
        let (ext, v) = enumerate_v(2, Fe::ONE, &f2).unwrap();
        let names: Vec<String> = v.iter().map(|&a| ext.format(a)).collect();
        assert_eq!(names, ["t", "t+1"]);
        let p = proof_partitions(2, Fe::ONE, &f2).unwrap();
        assert_eq!(v.len(), (4 - 2 + p.y.len()) / 2);
    }

    #[test]
    fn two_to_one_relations() {
        for q in [2, 3] {
            let field = gf(q);
            for t in 2..=4 {
                // h(x) = x^2 + ax is 2-to-1 only when a != 0 or q is odd
                for a in field.elements().filter(|a| q % 2 == 1 || !a.is_zero()) {
                    let p = proof_partitions(t, a, &field).unwrap();
                    let p2 = proof_partitions(2 * t, a, &field).unwrap();
                    assert_eq!(p.x.len(), 2 * p.u.len(), "q={q} t={t}");
                    assert_eq!(p2.y.len(), 2 * p.v.len(), "q={q} t={t}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(enumerate_v(1, Fe::ONE, &gf(2)), Err(Error::DomainBound(_))));
        assert!(enumerate_v(2, Fe(5), &gf(2)).is_err());
        assert!(matches!(
            enumerate_v(17, Fe::ONE, &gf(2)),
            Err(Error::CeilingExceeded { .. })
        ));
    }
}
