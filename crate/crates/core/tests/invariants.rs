use std::collections::HashMap;

use tsrforge::counting::{n_q_m2, tsri_m2, tsri_via_s};
use tsrforge::tsr::{decompose, enumerate_tsr, fiber_count, FiberMode, Filter};
use tsrforge::{Fe, Field, Poly, DEFAULT_CEILING};

fn gf(q: u64) -> Field {
    Field::with_order(q).unwrap()
}

#[test]
fn fibers_partition_the_enumeration() {
    for q in [2, 3] {
        let field = gf(q);
        for (m, n) in [(2, 2), (1, 3), (2, 1)] {
            let mut hist: HashMap<Poly, u64> = HashMap::new();
            let mut total = 0;
            for r in enumerate_tsr(m, n, &field, Filter::All, DEFAULT_CEILING).unwrap() {
                *hist.entry(r.unwrap().char_poly).or_default() += 1;
                total += 1;
            }
            let mut summed = 0;
            for f in Poly::monic_iter(&field, m * n).unwrap() {
                if f.coeff(0).is_zero() {
                    continue;
                }
                summed += fiber_count(&f, m, n, FiberMode::Bruteforce, DEFAULT_CEILING).unwrap();
            }
            assert_eq!(summed, total);
            assert_eq!(hist.values().sum::<u64>(), total);
        }
    }
}

#[test]
fn irreducible_images_decompose_uniquely() {
    let field = gf(3);
    for r in enumerate_tsr(2, 2, &field, Filter::Irreducible, DEFAULT_CEILING).unwrap() {
        let r = r.unwrap();
        let ds = decompose(&r.char_poly, 2, 2).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(&ds[0].g, r.tsr.g());
        assert_eq!(ds[0].h, r.tsr.block().char_poly().unwrap());
        assert!(ds[0].h.is_irreducible().unwrap());
    }
}

#[test]
fn period_equals_order_for_irreducible() {
    let field = gf(2);
    for r in enumerate_tsr(2, 2, &field, Filter::Irreducible, DEFAULT_CEILING).unwrap() {
        let r = r.unwrap();
        let mut seed = vec![Fe::ZERO; 4];
        seed[0] = Fe::ONE;
        assert_eq!(r.tsr.period(&seed).unwrap(), r.char_poly.order().unwrap());
    }
}

#[test]
fn order_two_routes_agree() {
    for q in [2, 3, 4, 5] {
        for m in 2..=3u32 {
            if q == 5 && m == 3 {
                continue;
            }
            assert_eq!(tsri_m2(m, q).unwrap(), tsri_via_s(m, 2, &gf(q)).unwrap(), "m={m} q={q}");
        }
    }
    // beyond enumeration reach the closed forms still evaluate exactly
    assert!(n_q_m2(20, 3).is_ok());
    assert!(tsri_m2(6, 2).is_ok());
}
