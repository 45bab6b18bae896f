//! Acceptance criteria. Runs without the default harness and prints one
//! PASS/FAIL line per criterion.

use std::path::Path;
use std::time::{Duration, Instant};

use comax_cli::codec::{parse_element, parse_ideals, parse_ring};
use comax_cli::{render_json, run_batch, run_str, Overrides};
use comax_core::arith::{poly, Poly};
use comax_core::decomp::{self, Verdict};
use comax_core::nilary;
use comax_core::oracle::{Budget, FiniteModel};
use comax_core::rings::check_prime_comaximality_equivalence;
use comax_core::torsion;
use comax_core::{sample, FPModule, Ideal, ModuleHom, PartitionOfUnity, RingDescriptor, RingElement, Scalar};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn z() -> RingDescriptor {
    RingDescriptor::Integers
}

fn zmod(m: u64) -> RingDescriptor {
    RingDescriptor::Modular(m)
}

fn tri(n: usize, base: RingDescriptor) -> RingDescriptor {
    RingDescriptor::triangular(n, base).unwrap()
}

fn cyclics(ring: &RingDescriptor, gens: &[i64]) -> FPModule {
    let ideals: Vec<Ideal> = gens.iter().map(|&g| ring.basic_ideal(&Scalar::int(g))).collect();
    FPModule::direct_sum_of_cyclics(ring.clone(), &ideals).unwrap()
}

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::int(x)).collect()
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let m = cyclics(&z(), &[2, 3]);
    let xs = [Ideal::gen(2), Ideal::gen(3), Ideal::gen(5)];
    let d = e(decomp::decompose(&m, &xs, 1))?;
    ensure!(d.verified, "decomposition not verified");
    let orders: Vec<BigInt> = d.parts.iter().map(|p| p.invariants.cardinality.clone().unwrap()).collect();
    ensure!(orders == [2.into(), 3.into(), 1.into()], "orders {orders:?}");
    let certs = e(decomp::nontrivial_components(&m, &xs))?;
    ensure!(certs[2].verdict == Verdict::Zero, "5Z part not certified zero");
    ensure!(
        certs[..2].iter().all(|c| matches!(c.verdict, Verdict::Nonzero { .. })),
        "2Z and 3Z parts not certified nonzero"
    );
    Ok("orders 2, 3, 1; C(5Z) certified zero".into())
}

fn criterion_2() -> Outcome {
    let r = z();
    let m = cyclics(&r, &[4, 6]);
    let xs = [Ideal::gen(4), Ideal::gen(3)];
    let ann = e(m.annihilator(None))?;
    ensure!(ann == Ideal::gen(12), "r(M) = {ann}");
    ensure!(ann == r.intersect_all(&xs), "r(M) differs from X1 ∩ X2");
    ensure!(r.is_unit_ideal(&e(r.ideal_sum(&xs[0], &xs[1]))?), "X1 + X2 is proper");
    let d = e(decomp::decompose(&m, &xs, decomp::DEFAULT_MAX_EXPONENT))?;
    ensure!(d.verified && e(m.is_internal_direct_sum(&d.components()))?, "not a direct sum");
    ensure!(d.parts[0].invariants.divisors == ints(&[2, 4]), "C(X1) divisors {:?}", d.parts[0].invariants.divisors);
    ensure!(d.parts[1].invariants.divisors == ints(&[3]), "C(X2) divisors {:?}", d.parts[1].invariants.divisors);
    Ok("r(M) = 12Z, divisors [2,4] and [3]".into())
}

fn criterion_3() -> Outcome {
    let ps = [2i64, 3, 5, 7];
    let powers: Vec<i64> = ps.iter().enumerate().map(|(i, &p)| p.pow(i as u32 + 1)).collect();
    let m = cyclics(&z(), &powers);
    let xs: Vec<Ideal> = ps.iter().map(|&p| Ideal::gen(p)).collect();
    let d = e(decomp::decompose(&m, &xs, decomp::DEFAULT_MAX_EXPONENT))?;
    ensure!(d.verified, "decomposition not verified");
    for (i, part) in d.parts.iter().enumerate() {
        ensure!(part.invariants.divisors == ints(&[powers[i]]), "C({}Z) has divisors {:?}", ps[i], part.invariants.divisors);
    }
    Ok("C(p_i Z) = Z/p_i^i for p = 2, 3, 5, 7".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [2usize, 3] {
        let t = tri(n, zmod(4));
        let xs = e(t.diagonal_vanishing_ideals())?;
        let a = t.intersect_all(&xs);
        for k in 1..=(n as u32 + 2) {
            let zero = t.is_zero_ideal(&e(t.ideal_power(&a, k))?);
            ensure!(zero == (k as usize >= n), "n = {n}: (∩X)^{k} zero = {zero}");
        }
        for _ in 0..5 {
            let g = rng.gen_range(1..=2);
            let m = sample::module(&t, g, 3, &mut rng);
            let rho = e(torsion::rho(&m, &xs))?;
            ensure!(m.sub_is_whole(&rho), "n = {n}: rho(M) != M for relations {:?}", m.relations());
            if n == 2 {
                let model = e(FiniteModel::new(&m, &Budget::default()))?;
                let sets: Vec<_> = xs.iter().map(|x| model.ring().ideal_set(x)).collect();
                ensure!(model.rho(&sets) == model.whole(), "enumerated rho(M) != M");
            }
        }
    }
    Ok("nilpotency index n for n = 2, 3; rho(M) = M on 10 modules".into())
}

fn criterion_5() -> Outcome {
    let r = z();
    let xs = [Ideal::gen(2), Ideal::gen(3)];
    for rank in 0..=3usize {
        let m = cyclics(&r, &[8, 9]).direct_sum(&FPModule::free(r.clone(), rank).unwrap()).unwrap();
        let g = e(torsion::gamma(&m, &xs))?;
        let inv = m.invariants(&g);
        ensure!(inv.divisors == ints(&[72]) && inv.free_rank == 0, "r = {rank}: gamma invariants {inv:?}");
        let (t, f) = e(torsion::torsion_split(&m, &xs))?;
        ensure!(t == g, "r = {rank}: split torsion part differs from gamma");
        let fi = m.invariants(&f);
        ensure!(fi.free_rank == rank && fi.divisors.is_empty(), "r = {rank}: complement {fi:?}");
        ensure!(e(m.is_internal_direct_sum(&[t, f.clone()]))?, "r = {rank}: not a direct sum");
        let (pf, _) = e(m.presentation(&f))?;
        ensure!(pf.sub_is_zero(&e(torsion::gamma(&pf, &xs))?), "r = {rank}: gamma(F) != 0");
    }
    Ok("gamma = Z/8 + Z/9 and free complement of rank r for r = 0..3".into())
}

fn check_against_oracle(m: &FPModule, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ring = m.ring().clone();
    let model = e(FiniteModel::new(m, &Budget::default()))?;
    let x = sample::ideal(&ring, rng);
    let xs = model.ring().ideal_set(&x);
    ensure!(
        model.submodule_set(m, &e(m.left_annihilator(&x))?).unwrap() == model.left_annihilator(&xs),
        "l_M({x}) differs"
    );
    ensure!(
        model.submodule_set(m, &e(m.component(&x))?.submodule).unwrap() == model.component(&xs).0,
        "C({x}) differs"
    );
    let n = rng.gen_range(2..=3);
    let fam = sample::comaximal_family(&ring, n, rng);
    let sets: Vec<_> = fam.iter().map(|x| model.ring().ideal_set(x)).collect();
    let gamma = e(torsion::gamma(m, &fam))?;
    let og = model.gamma(&sets);
    ensure!(model.submodule_set(m, &gamma).unwrap() == og, "gamma differs");
    ensure!(model.submodule_set(m, &e(torsion::rho(m, &fam))?).unwrap() == model.rho(&sets), "rho differs");
    match decomp::decompose(m, &fam, decomp::DEFAULT_MAX_EXPONENT) {
        Ok(d) => {
            ensure!(og == model.whole(), "decomposition exists but enumerated gamma(M) != M");
            let parts: Vec<_> = d.parts.iter().map(|p| model.submodule_set(m, &p.component).unwrap()).collect();
            for (p, s) in sets.iter().zip(&parts) {
                ensure!(model.component(p).0 == *s, "decomposition component differs");
            }
            ensure!(model.is_direct_sum(&parts), "enumerated parts do not split M");
        }
        Err(comax_core::Error::ConditionNotEstablished { .. }) => {
            ensure!(og != model.whole(), "decomposition refused but enumerated gamma(M) = M");
        }
        Err(err) => return Err(err.to_string()),
    }
    Ok(())
}

fn nontrivial(r: &RingDescriptor, max_gens: usize, rng: &mut ChaCha8Rng) -> FPModule {
    loop {
        let m = sample::module(r, rng.gen_range(1..=max_gens), 3, rng);
        if m.cardinality().is_some_and(|c| c > BigInt::from(1)) {
            return m;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut count = 0;
    for _ in 0..500 {
        let r = zmod(rng.gen_range(2..=64));
        let m = nontrivial(&r, 2, &mut rng);
        check_against_oracle(&m, &mut rng).map_err(|s| format!("{r}, relations {:?}: {s}", m.relations()))?;
        count += 1;
    }
    let tris = [tri(2, zmod(2)), tri(2, zmod(4))];
    for i in 0..60 {
        let r = &tris[i % 2];
        let m = nontrivial(r, if i % 2 == 0 { 3 } else { 2 }, &mut rng);
        check_against_oracle(&m, &mut rng).map_err(|s| format!("{r}, relations {:?}: {s}", m.relations()))?;
        count += 1;
    }
    Ok(format!("{count} modules, 0 mismatches"))
}

fn family_ring(rng: &mut ChaCha8Rng) -> RingDescriptor {
    let basic = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => z(),
        1 => zmod(rng.gen_range(2..=64)),
        _ => RingDescriptor::Poly(*[2u64, 3, 5, 7].choose(rng).unwrap()),
    };
    if rng.gen_bool(0.25) {
        RingDescriptor::product(vec![basic(rng), basic(rng)]).unwrap()
    } else {
        basic(rng)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn in_product(r: &RingDescriptor, x: &RingElement, ideals: &[Ideal]) -> Result<bool, String> {
    let mut prod = r.unit_ideal();
    for i in ideals {
        prod = e(r.ideal_product(&prod, i))?;
    }
    Ok(r.ideal_member(&prod, x))
}

fn lemma_checks(r: &RingDescriptor, xs: &[Ideal], rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = xs.len();
    let unit = |i: &Ideal| r.is_unit_ideal(i);
    let others = |i: usize| xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect::<Vec<_>>();
    // (1)
    let meets: Vec<Ideal> = (0..n).map(|i| r.intersect_all(&others(i))).collect();
    let prods: Vec<Ideal> = (0..n).map(|i| r.product_all(&others(i))).collect();
    ensure!(unit(&r.sum_all(&meets)), "sum of co-intersections is proper");
    ensure!(unit(&r.sum_all(&prods)), "sum of co-products is proper");
    // (2)
    for (x, m) in xs.iter().zip(&meets) {
        ensure!(unit(&e(r.ideal_sum(x, m))?), "X_i + ∩ others is proper");
    }
    // (4)
    for i in 0..n {
        for j in (i + 1)..n {
            for a in 1..=4 {
                for b in 1..=4 {
                    let s = e(r.ideal_sum(&e(r.ideal_power(&xs[i], a))?, &e(r.ideal_power(&xs[j], b))?))?;
                    ensure!(unit(&s), "X_{i}^{a} + X_{j}^{b} is proper");
                }
            }
        }
    }
    // partition of unity, rechecked by hand
    let ks: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let w = e(r.partition_of_unity(xs, &ks))?;
    ensure!(r.sum(&w.witnesses) == r.one(), "witnesses do not sum to 1");
    for (i, wi) in w.witnesses.iter().enumerate() {
        let targets: Vec<Ideal> = (0..n)
            .filter(|&j| j != i)
            .map(|j| r.ideal_power(&xs[j], ks[j]).unwrap())
            .collect();
        ensure!(in_product(r, wi, &targets)?, "witness {i} outside the product of the other powers");
    }
    Ok(())
}

fn lemma_part_3(r: &RingDescriptor, n: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut ys: Vec<Ideal> = (0..n).map(|_| sample::ideal(r, rng)).collect();
    let mut tries = 0;
    while !r.is_unit_ideal(&r.sum_all(&ys)) {
        ys[tries % n] = sample::ideal(r, rng);
        tries += 1;
        if tries > 64 {
            ys[0] = r.unit_ideal();
        }
    }
    let xs: Vec<Ideal> = (0..n)
        .map(|i| r.sum_all(&ys.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, y)| y.clone()).collect::<Vec<_>>()))
        .collect();
    let terms: Vec<Ideal> = permutations(n)
        .iter()
        .map(|p| r.product_all(&p.iter().map(|&i| xs[i].clone()).collect::<Vec<_>>()))
        .collect();
    let lhs = r.intersect_all(&xs);
    let rhs = r.sum_all(&terms);
    ensure!(
        e(r.ideal_contains(&lhs, &rhs))? && e(r.ideal_contains(&rhs, &lhs))?,
        "∩X_i = {lhs} but the symmetric product sum is {rhs}"
    );
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut families = 0;
    while families < 1000 {
        let r = family_ring(&mut rng);
        let n = rng.gen_range(2..=4);
        let xs = sample::comaximal_family(&r, n, &mut rng);
        lemma_checks(&r, &xs, &mut rng).map_err(|s| format!("{r} {xs:?}: {s}"))?;
        lemma_part_3(&r, n, &mut rng).map_err(|s| format!("{r}: {s}"))?;
        families += 1;
    }
    Ok(format!("{families} families, parts (1)-(4) and witnesses hold"))
}

// row-vector convention: x acts as v -> vA
fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j] % p).sum::<u64>() % p).collect())
        .collect()
}

fn poly_at(f: &Poly, a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut acc = vec![vec![0u64; n]; n];
    for &c in f.coeffs().iter().rev() {
        acc = mat_mul(&acc, a, p);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = (row[i] + c) % p;
        }
    }
    acc
}

fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = poly::inv_mod(m[rank][c], p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn vec_times(v: &[u64], a: &[Vec<u64>], p: u64) -> Vec<u64> {
    (0..a.len()).map(|j| v.iter().zip(a).map(|(x, row)| x * row[j] % p).sum::<u64>() % p).collect()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..100 {
        let p = *[2u64, 3, 5, 7].choose(&mut rng).unwrap();
        let n = rng.gen_range(1..=8usize);
        let a: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        let ring = RingDescriptor::Poly(p);
        let rels: Vec<Vec<RingElement>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = (p - a[i][j]) % p;
                        let coeffs = if i == j { vec![c, 1] } else { vec![c] };
                        RingElement::Poly(Poly::new(coeffs, p))
                    })
                    .collect()
            })
            .collect();
        let m = FPModule::new(ring.clone(), n, rels).unwrap();
        let ann = e(m.annihilator(None))?;
        let minpoly = ann.generator().as_poly().clone();
        let factors = e(poly::factor(&minpoly, p))?;
        let xs: Vec<Ideal> = factors
            .iter()
            .map(|(f, k)| ring.basic_ideal(&Scalar::Poly(f.pow(*k as u64, p))))
            .collect();
        let d = e(decomp::decompose(&m, &xs, decomp::DEFAULT_MAX_EXPONENT))?;
        let mut total = 0;
        for ((f, k), part) in factors.iter().zip(&d.parts) {
            let fa = poly_at(&f.pow(*k as u64, p), &a, p);
            let kernel_dim = n - rank_mod(fa.clone(), p);
            let card = part.invariants.cardinality.clone().unwrap();
            ensure!(card == BigInt::from(p).pow(kernel_dim as u32), "trial {trial}: dimension mismatch for {f:?}");
            for g in m.submodule_generators(&part.component) {
                let mut v = vec![0u64; n];
                for (j, c) in g.coords.iter().enumerate() {
                    let RingElement::Poly(c) = c else { unreachable!() };
                    let row = &poly_at(c, &a, p)[j];
                    for (t, x) in row.iter().enumerate() {
                        v[t] = (v[t] + x) % p;
                    }
                }
                ensure!(vec_times(&v, &fa, p).iter().all(|&x| x == 0), "trial {trial}: generator outside the kernel");
            }
            total += kernel_dim;
        }
        ensure!(total == n, "trial {trial}: dimensions sum to {total}, not {n}");
    }
    Ok("100 matrices, 0 mismatches".into())
}

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let r = z();
    for _ in 0..500 {
        let n: u64 = rng.gen_range(2..=1_000_000);
        let ideal = Ideal::gen(n as i64);
        let nd = e(nilary::minimal_nilary_decomposition(&r, &ideal))?;
        ensure!(r.intersect_all(&nd.factors) == ideal, "{n}: factors do not re-intersect");
        ensure!(nd.minimal && e(nilary::check_minimality(&r, &ideal, &nd.factors))?, "{n}: not minimal");
        for q in &nd.pseudo_radicals {
            ensure!(e(nilary::is_prime_ideal(&r, q))?, "{n}: pseudo-radical {q} is not prime");
        }
        for q in &nd.factors {
            ensure!(e(nilary::is_strongly_p_nilary(&r, q))?, "{n}: factor {q} is not strongly p-nilary");
        }
        let mut expect: Vec<Ideal> = trial_factor(n).iter().map(|&(p, k)| Ideal::gen(p.pow(k) as i64)).collect();
        let mut got = nd.factors.clone();
        expect.sort_by_key(|i| i.to_string());
        got.sort_by_key(|i| i.to_string());
        ensure!(got == expect, "{n}: factors {got:?}");
    }
    let m = cyclics(&r, &[360]);
    let nm = e(nilary::nilary_module_decompose(&m))?;
    let nonzero: Vec<Vec<Scalar>> = nm
        .decomposition
        .parts
        .iter()
        .filter(|p| !p.zero)
        .map(|p| p.invariants.divisors.clone())
        .collect();
    ensure!(nonzero == [ints(&[8]), ints(&[9]), ints(&[5])], "Z/360 parts {nonzero:?}");
    Ok("500 integers decomposed minimally; Z/360 = Z/8 + Z/9 + Z/5".into())
}

fn random_hom(m: &FPModule, n: &FPModule, rng: &mut ChaCha8Rng) -> Result<ModuleHom, String> {
    let gens = e(m.hom_generators(n))?;
    let coeffs: Vec<RingElement> = gens.iter().map(|_| sample::element(m.ring(), rng)).collect();
    let images = (0..m.num_generators())
        .map(|k| {
            let terms: Vec<_> = gens
                .iter()
                .zip(&coeffs)
                .map(|(h, c)| n.act(&h.images[k], c))
                .collect();
            n.sum_elements(&terms)
        })
        .collect();
    let f = ModuleHom { images };
    e(f.check(m, n))?;
    Ok(f)
}

fn finite_module(r: &RingDescriptor, rng: &mut ChaCha8Rng) -> FPModule {
    match r {
        RingDescriptor::Integers => {
            let g = rng.gen_range(1..=2);
            let mut rels: Vec<Vec<RingElement>> = (0..g)
                .map(|i| (0..g).map(|j| r.from_i64(if i == j { rng.gen_range(1..=36) } else { 0 })).collect())
                .collect();
            rels.push((0..g).map(|_| sample::element(r, rng)).collect());
            FPModule::new(r.clone(), g, rels).unwrap()
        }
        _ => sample::module(r, rng.gen_range(1..=2), 3, rng),
    }
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut homs = 0;
    let mut quotients = 0;
    while homs < 200 {
        let r = if rng.gen_bool(0.3) { z() } else { zmod(*[6u64, 12, 30, 36, 60].choose(&mut rng).unwrap()) };
        let xs = match &r {
            RingDescriptor::Integers => vec![Ideal::gen(2), Ideal::gen(3)],
            _ => {
                let full = sample::comaximal_family(&r, 3, &mut rng);
                let keep = rng.gen_range(1..=2);
                full[..keep].to_vec()
            }
        };
        let m = finite_module(&r, &mut rng);
        let n = finite_module(&r, &mut rng);
        let f = random_hom(&m, &n, &mut rng)?;
        let gm = e(torsion::gamma(&m, &xs))?;
        let gn = e(torsion::gamma(&n, &xs))?;
        ensure!(n.sub_contains(&gn, &f.image(&m, &n, &gm)), "f(gamma(M)) not inside gamma(N) over {r}");
        let k = {
            let count = rng.gen_range(0..=2);
            let gens: Vec<_> = (0..count)
                .map(|_| m.element((0..m.num_generators()).map(|_| sample::element(&r, &mut rng)).collect()).unwrap())
                .collect();
            m.submodule(&gens)
        };
        let (pk, incl) = e(m.presentation(&k))?;
        let gk = incl.image(&pk, &m, &e(torsion::gamma(&pk, &xs))?);
        ensure!(gk == m.sub_intersect(&k, &gm), "gamma(K) != K ∩ gamma(M) over {r}");
        homs += 1;
        for module in [&m, &n] {
            let rho = e(torsion::rho(module, &xs))?;
            let q = e(module.quotient(&rho))?;
            ensure!(q.sub_is_zero(&e(torsion::rho(&q, &xs))?), "rho(M/rho(M)) != 0 over {r}");
            quotients += 1;
        }
    }
    let t = tri(2, zmod(4));
    let xs = e(t.diagonal_vanishing_ideals())?;
    for _ in 0..20 {
        let m = sample::module(&t, 1, 3, &mut rng);
        let rho = e(torsion::rho(&m, &xs[..1]))?;
        let q = e(m.quotient(&rho))?;
        ensure!(q.sub_is_zero(&e(torsion::rho(&q, &xs[..1]))?), "rho(M/rho(M)) != 0 over {t}");
        quotients += 1;
    }
    Ok(format!("{homs} homomorphisms, {quotients} quotients"))
}

fn criterion_11() -> Outcome {
    let budget = Budget::default();
    let mut rings: Vec<RingDescriptor> = (2..=64).map(zmod).collect();
    rings.push(tri(2, zmod(2)));
    rings.push(tri(2, zmod(3)));
    for (a, b) in [(2, 2), (2, 3), (4, 6), (8, 9), (12, 5), (9, 27)] {
        rings.push(RingDescriptor::product(vec![zmod(a), zmod(b)]).unwrap());
    }
    rings.push(RingDescriptor::product(vec![zmod(4), tri(2, zmod(2))]).unwrap());
    rings.push(RingDescriptor::product(vec![tri(2, zmod(2)), tri(2, zmod(2))]).unwrap());
    for r in &rings {
        let rep = e(check_prime_comaximality_equivalence(r, &budget))?;
        ensure!(rep.equivalent, "counterexample: {r}");
        ensure!(rep.structured_agrees, "structured minimal primes differ from enumeration for {r}");
    }
    Ok(format!("{} rings, 0 counterexamples", rings.len()))
}

fn reverify_witnesses(v: &Value, ring: &RingDescriptor, checked: &mut usize) -> Result<(), String> {
    match v {
        Value::Object(o) => {
            if let Some(w) = o.get("partition_of_unity") {
                let xs = e(parse_ideals(ring, &w["ideals"]))?;
                let exponents: Vec<u32> = serde_json::from_value(w["exponents"].clone()).map_err(|e| e.to_string())?;
                let witnesses = w["witnesses"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| e(parse_element(ring, x)))
                    .collect::<Result<Vec<_>, _>>()?;
                let pu = PartitionOfUnity { ideals: xs, exponents, witnesses };
                e(pu.verify(ring))?;
                *checked += 1;
            }
            for x in o.values() {
                reverify_witnesses(x, ring, checked)?;
            }
        }
        Value::Array(xs) => {
            for x in xs {
                reverify_witnesses(x, ring, checked)?;
            }
        }
        _ => {}
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut jobs: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    jobs.retain(|p| p.extension().is_some_and(|x| x == "json"));
    jobs.sort();
    let mut witnesses = 0;
    for job in &jobs {
        let text = std::fs::read_to_string(job).unwrap();
        let out = if job.to_string_lossy().ends_with(".jobs.json") {
            run_batch(&text, &Overrides::default())
        } else {
            run_str(&text, &Overrides::default())
        };
        let golden = std::fs::read_to_string(job.with_extension("golden")).map_err(|e| e.to_string())?;
        ensure!(render_json(&out.report) == golden, "{} differs from its golden file", job.display());
        let parsed: Value = serde_json::from_str(&text).unwrap_or(Value::Null);
        let job_list = match parsed {
            Value::Array(v) => v,
            v => vec![v],
        };
        let reports = match &out.report {
            Value::Array(v) => v.clone(),
            v => vec![v.clone()],
        };
        for (j, rep) in job_list.iter().zip(&reports) {
            if let Ok(ring) = parse_ring(&j["ring"]) {
                reverify_witnesses(rep, &ring, &mut witnesses)?;
            }
        }
    }
    ensure!(witnesses > 0, "no partition-of-unity witnesses were found");
    Ok(format!("{} fixtures byte-identical, {witnesses} witness sets re-verified", jobs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("counterexample Z/2 + Z/3 with {2Z, 3Z, 5Z}", criterion_1, 1),
        ("Z/4 + Z/6 with X = {4Z, 3Z}", criterion_2, 1),
        ("sum of Z/p_i^i", criterion_3, 1),
        ("triangular T_n(Z/4) nilpotency and rho(M) = M", criterion_4, 5),
        ("torsion splitting of Z/8 + Z/9 + Z^r", criterion_5, 1),
        ("oracle equivalence", criterion_6, 60),
        ("comaximality identities", criterion_7, 30),
        ("generalized eigenspaces", criterion_8, 30),
        ("nilary decompositions", criterion_9, 10),
        ("preradical properties", criterion_10, 30),
        ("minimal prime comaximality equivalence", criterion_11, 60),
        ("CLI golden files", criterion_12, 5),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{msg}, but took {:.2}s (limit {limit}s)", elapsed.as_secs_f64()))
            }
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({:.2}s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
