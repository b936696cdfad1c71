//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fail.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use tsrforge::counting::{
    bounds, carlitz_srim, edge_counts, n_chi, n_q_m2, sigma_lfsr_counts, tsri_m2, SigmaKind, Which,
};
use tsrforge::factor::count_primitive;
use tsrforge::srim::{delta_srim_check, enumerate_srim, srim_to_tsr};
use tsrforge::tsr::{decompose, enumerate_s, enumerate_tsr, fiber_count, proof_partitions, FiberMode, Filter, TsrRecord};
use tsrforge::{gl_order, Fe, Field, Poly, DEFAULT_CEILING};

type Check = Result<String, String>;

const GRID: [(usize, usize); 7] = [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2)];

fn gf(q: u64) -> Field {
    Field::with_order(q).expect("prime power")
}

fn grid_cells() -> Vec<(usize, usize, u64)> {
    let mut cells: Vec<_> = [2u64, 3]
        .iter()
        .flat_map(|&q| GRID.iter().map(move |&(m, n)| (m, n, q)))
        .collect();
    cells.push((2, 2, 4));
    cells
}

fn records(m: usize, n: usize, q: u64, filter: Filter) -> Result<Vec<TsrRecord>, String> {
    enumerate_tsr(m, n, &gf(q), filter, DEFAULT_CEILING)
        .map_err(|e| e.to_string())?
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: tsrforge::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1_non_attainability() -> Check {
    let f = e2s(Poly::parse(&gf(2), "x^4+x+1"))?;
    let fiber = e2s(fiber_count(&f, 2, 2, FiberMode::Bruteforce, DEFAULT_CEILING))?;
    let decs = e2s(decompose(&f, 2, 2))?;
    ensure(fiber == 0 && decs.is_empty(), || format!("fiber {fiber}, {} decompositions", decs.len()))?;
    Ok("x^4+x+1 has empty (2,2) fiber".into())
}

fn c2_fiber_size() -> Check {
    let mut polys = 0;
    for (m, n, q) in grid_cells() {
        let expected = e2s(gl_order(m as u32, q))? / (q.pow(m as u32) - 1);
        let mut fibers: HashMap<Poly, u64> = HashMap::new();
        for r in records(m, n, q, Filter::All)? {
            if r.class.is_irreducible {
                *fibers.entry(r.char_poly).or_default() += 1;
            }
        }
        for (f, size) in &fibers {
            ensure(*size == expected, || format!("({m},{n},{q}) {f}: fiber {size} != {expected}"))?;
        }
        polys += fibers.len();
    }
    Ok(format!("{polys} irreducible characteristic polynomials checked"))
}

fn c3_matrix_census() -> Check {
    for q in [2u64, 3] {
        let field = gf(q);
        let mut census: HashMap<Poly, u64> = HashMap::new();
        for a in field.elements() {
            for b in field.elements() {
                for c in field.elements() {
                    for d in field.elements() {
                        let tr = field.add(a, d);
                        let det = field.sub(field.mul(a, d), field.mul(b, c));
                        let f = Poly::new(field.clone(), vec![det, field.neg(tr), Fe::ONE]);
                        *census.entry(f).or_default() += 1;
                    }
                }
            }
        }
        for f in e2s(Poly::monic_iter(&field, 2))? {
            let got = e2s(n_chi(&f))?;
            let want = census.get(&f).copied().unwrap_or(0);
            ensure(got == want, || format!("GF({q}) {f}: n_chi {got} != {want}"))?;
        }
    }
    Ok("all monic quadratics over GF(2), GF(3)".into())
}

fn c4_order_two() -> Check {
    ensure(e2s(tsri_m2(2, 2))? == 2, || "tsri_m2(2,2) != 2".into())?;
    ensure(e2s(tsri_m2(2, 3))? == 36, || "tsri_m2(2,3) != 36".into())?;
    for (m, q) in [(3usize, 2u64), (2, 4)] {
        let closed = e2s(tsri_m2(m as u32, q))?;
        let brute = records(m, 2, q, Filter::Irreducible)?.len() as u64;
        ensure(closed == brute, || format!("tsri_m2({m},{q}) = {closed}, enumerated {brute}"))?;
    }
    Ok("(2,2)=2, (2,3)=36, (3,2) and (2,4) match enumeration".into())
}

fn c5_n_q_m2() -> Check {
    for (m, q) in [(2u32, 2u64), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4), (2, 5)] {
        let closed = e2s(n_q_m2(m, q))?;
        let brute = e2s(enumerate_s(m as usize, 2, &gf(q)))?.pairs.len() as u64;
        ensure(closed == brute, || format!("N_{q}({m},2) = {closed}, |S| = {brute}"))?;
    }
    Ok("7 cells".into())
}

fn c6_carlitz() -> Check {
    for q in [2u64, 3, 4, 5] {
        for m in 1..=4u32 {
            let closed = e2s(carlitz_srim(m, q))?;
            let brute = e2s(enumerate_srim(2 * m as usize, &gf(q)))?.len() as u64;
            ensure(closed == brute, || format!("q={q} m={m}: {closed} != {brute}"))?;
        }
    }
    Ok("2m <= 8, q in {2,3,4,5}".into())
}

fn c7_srim_to_tsr() -> Check {
    let mut built = 0;
    for q in [2u64, 3] {
        let field = gf(q);
        for m in 1..=4 {
            for f in e2s(enumerate_srim(2 * m, &field))? {
                let rec = e2s(srim_to_tsr(&f))?;
                let phi = e2s(rec.tsr.char_poly())?;
                ensure(phi == f.shift_compose(Fe::ONE), || format!("{f}: phi_T = {phi}"))?;
                ensure(e2s(phi.is_irreducible())?, || format!("{f}: phi_T reducible"))?;
                built += 1;
            }
        }
    }
    for m in 1..=4 {
        ensure(e2s(delta_srim_check(m, DEFAULT_CEILING))?, || format!("delta check fails at m={m}"))?;
    }
    Ok(format!("{built} TSRs built; GF(2) sets agree for m <= 4"))
}

/// `(-1)^(m(n+1)) h((-1)^(n+1) X)` for monic `h` of degree `m`.
fn sign_twist(h: &Poly, n: usize) -> Poly {
    if n % 2 == 1 {
        return h.clone();
    }
    let field = h.field();
    let m = h.degree().unwrap();
    let minus = field.from_int(-1);
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| if (m - i) % 2 == 1 { field.mul(minus, c) } else { c })
        .collect();
    Poly::new(field.clone(), coeffs)
}

fn c8_primitive_blocks() -> Check {
    let mut seen = 0;
    for (m, n, q) in grid_cells() {
        for r in records(m, n, q, Filter::Primitive)? {
            let h = e2s(r.tsr.block().char_poly())?;
            let twisted = sign_twist(&h, n);
            ensure(e2s(twisted.is_primitive())?, || format!("({m},{n},{q}): twisted {twisted} not primitive"))?;
            if q % 2 == 0 || n % 2 == 1 {
                ensure(e2s(h.is_primitive())?, || format!("({m},{n},{q}): block poly {h} not primitive"))?;
            }
            seen += 1;
        }
    }
    Ok(format!("{seen} primitive TSRs"))
}

fn c9_fast_char_poly() -> Check {
    let mut seen = 0;
    for (m, n, q) in grid_cells() {
        for r in records(m, n, q, Filter::All)? {
            let slow = e2s(r.tsr.assemble().char_poly())?;
            ensure(slow == r.char_poly, || format!("({m},{n},{q}): {slow} != {}", r.char_poly))?;
            seen += 1;
        }
    }
    Ok(format!("{seen} TSRs"))
}

fn c10_partitions() -> Check {
    for q in [2u64, 3] {
        let field = gf(q);
        for t in 2..=4u32 {
            for a in field.elements() {
                let p = e2s(proof_partitions(t, a, &field))?;
                let z: BTreeSet<Fe> = p.z.iter().copied().collect();
                let x: BTreeSet<Fe> = p.x.iter().copied().collect();
                let y: BTreeSet<Fe> = p.y.iter().copied().collect();
                let u: BTreeSet<Fe> = p.u.iter().copied().collect();
                let v: BTreeSet<Fe> = p.v.iter().copied().collect();
                let tag = || format!("q={q} t={t} a={}", field.format(a));
                ensure(x.is_disjoint(&y) && &x | &y == z, || format!("{}: Z != X ⊔ Y", tag()))?;
                ensure(u.is_disjoint(&v) && &u | &v == z, || format!("{}: Z != U ⊔ V", tag()))?;
                let even_zero = q % 2 == 0 && a.is_zero();
                ensure(v.is_empty() == even_zero, || format!("{}: V emptiness", tag()))?;
                if even_zero {
                    continue;
                }
                ensure(x.len() == 2 * u.len(), || format!("{}: x != 2u", tag()))?;
                let p2 = e2s(proof_partitions(2 * t, a, &field))?;
                ensure(p2.y.len() == 2 * v.len(), || format!("{}: y_2t != 2v", tag()))?;
            }
        }
    }
    Ok("q in {2,3}, t in {2,3,4}".into())
}

fn c11_bounds() -> Check {
    for (m, n, q) in grid_cells() {
        let b = e2s(bounds(m as u32, n as u32, q))?;
        let recs = records(m, n, q, Filter::Irreducible)?;
        let tsri = recs.len() as u64;
        let tsrp = recs.iter().filter(|r| r.class.is_primitive).count() as u64;
        ensure(tsri <= b.tsri_upper && tsrp <= b.tsrp_upper, || {
            format!("({m},{n},{q}): {tsri}/{tsrp} vs {}/{}", b.tsri_upper, b.tsrp_upper)
        })?;
    }
    Ok("15 cells".into())
}

fn c12_edges_and_sigma() -> Check {
    let mut shapes: Vec<(usize, usize)> = (2..=4).map(|n| (1, n)).collect();
    shapes.extend((2..=3).map(|m| (m, 1)));
    for q in [2u64, 3] {
        for &(m, n) in &shapes {
            let recs = records(m, n, q, Filter::Irreducible)?;
            let tsri = recs.len() as u64;
            let tsrp = recs.iter().filter(|r| r.class.is_primitive).count() as u64;
            let ci = e2s(edge_counts(m as u32, n as u32, q, Which::Tsri))?;
            let cp = e2s(edge_counts(m as u32, n as u32, q, Which::Tsrp))?;
            ensure(ci == tsri && cp == tsrp, || format!("({m},{n},{q}): {ci}/{cp} vs {tsri}/{tsrp}"))?;
        }
    }
    let s14 = e2s(sigma_lfsr_counts(1, 4, 2, SigmaKind::Primitive))?;
    ensure(s14 == 2 && s14 == e2s(count_primitive(4, 2))?, || format!("sigma(1,4,2) = {s14}"))?;
    // 2x2 matrices over GF(2) with primitive characteristic polynomial
    let f2 = gf(2);
    let mut prim = 0;
    for idx in 0..16u64 {
        let e = |i: u32| f2.element((idx >> i) & 1).expect("bit");
        let (a, b, c, d) = (e(0), e(1), e(2), e(3));
        let det = f2.sub(f2.mul(a, d), f2.mul(b, c));
        let f = Poly::new(f2.clone(), vec![det, f2.add(a, d), Fe::ONE]);
        if !det.is_zero() && e2s(f.is_primitive())? {
            prim += 1;
        }
    }
    let s21 = e2s(sigma_lfsr_counts(2, 1, 2, SigmaKind::Primitive))?;
    ensure(s21 == 2 && s21 == prim, || format!("sigma(2,1,2) = {s21}, census {prim}"))?;
    Ok("edge counts and sigma-LFSR spot values".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let checks: [Criterion; 12] = [
        ("non-attainability of x^4+x+1", c1_non_attainability),
        ("irreducible fiber size", c2_fiber_size),
        ("characteristic polynomial census", c3_matrix_census),
        ("order-two TSR count", c4_order_two),
        ("N_q(m,2) against S", c5_n_q_m2),
        ("srim counts", c6_carlitz),
        ("srim to TSR construction", c7_srim_to_tsr),
        ("primitive block structure", c8_primitive_blocks),
        ("fast characteristic polynomial", c9_fast_char_poly),
        ("partition recurrences", c10_partitions),
        ("upper bounds", c11_bounds),
        ("edge and sigma-LFSR counts", c12_edges_and_sigma),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
