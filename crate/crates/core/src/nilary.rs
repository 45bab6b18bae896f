//! Pseudo-radicals, strongly p-nilary ideals and the module decomposition
//! they induce.

use crate::arith::{int, poly};
use crate::decomp::{self, prime_factors, Decomposition};
use crate::error::{Error, Result};
use crate::modules::FPModule;
use crate::oracle::{Budget, FiniteRing};
use crate::ring::{Ideal, RingDescriptor};
use crate::scalar::{Pid, Scalar};

const MAX_NILPOTENCY: u32 = 1024;
const MAX_SUBSET_FACTORS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilaryDecomposition {
    pub ideal: Ideal,
    pub factors: Vec<Ideal>,
    /// `√Q_i`, each prime.
    pub pseudo_radicals: Vec<Ideal>,
    /// Least `k_i` with `(√Q_i)^{k_i} ⊆ Q_i`.
    pub exponents: Vec<u32>,
    pub minimal: bool,
    pub radicals_comaximal: bool,
}

fn basic_radical(pid: Pid, g: &Scalar) -> Result<Scalar> {
    Ok(match (pid, g) {
        (_, g) if g.is_zero() => g.clone(),
        (Pid::Integers, Scalar::Int(v)) => Scalar::Int(int::radical(v)?),
        (Pid::Poly(p), Scalar::Poly(f)) => Scalar::Poly(poly::radical(f, p)?),
        _ => return Err(Error::MalformedIdeal(format!("{g} does not belong to the domain"))),
    })
}

/// `√I = Σ {V : V^n ⊆ I for some n}`.
pub fn pseudo_radical(ring: &RingDescriptor, ideal: &Ideal) -> Result<Ideal> {
    ring.check_ideal(ideal)?;
    radical_u(ring, ideal)
}

fn radical_u(ring: &RingDescriptor, ideal: &Ideal) -> Result<Ideal> {
    match (ring, ideal) {
        (RingDescriptor::Product(fs), Ideal::Product(xs)) => Ok(Ideal::Product(
            fs.iter().zip(xs).map(|(f, x)| radical_u(f, x)).collect::<Result<_>>()?,
        )),
        (RingDescriptor::Triangular { base, .. }, Ideal::Triangular(_)) => {
            // diagonal entries lose their nilpotent part; off-diagonal entries are nilpotent mod I
            let mut diag = Vec::new();
            let RingDescriptor::Triangular { n, .. } = ring else { unreachable!() };
            for i in 0..*n {
                diag.push(radical_u(base, ideal.entry(i, i))?);
            }
            Ok(ring.triangular_ideal(|i, j| if i == j { diag[i].clone() } else { base.unit_ideal() }))
        }
        (_, Ideal::Principal(g)) => {
            let (pid, _) = ring.basic().expect("principal ideals live in basic rings");
            let g = match ring {
                RingDescriptor::Modular(m) if g.is_zero() => Scalar::int(*m),
                _ => g.clone(),
            };
            Ok(ring.basic_ideal(&basic_radical(pid, &g)?))
        }
        _ => Err(Error::MalformedIdeal(format!("{ideal} in {ring}"))),
    }
}

/// The pseudo-radical computed from its definition on the enumerated ring.
pub fn pseudo_radical_enumerated(ring: &RingDescriptor, ideal: &Ideal, budget: &Budget) -> Result<Ideal> {
    ring.check_ideal(ideal)?;
    let fr = FiniteRing::new(ring, None, budget)?;
    let set = fr.pseudo_radical(&fr.ideal_set(ideal));
    let gens: Vec<_> = fr.basis(&set).into_iter().map(|x| fr.decode(x)).collect();
    Ok(ring.ideal_generated(&gens))
}

/// Structural primality test.
pub fn is_prime_ideal(ring: &RingDescriptor, p: &Ideal) -> Result<bool> {
    ring.check_ideal(p)?;
    Ok(prime_u(ring, p))
}

fn prime_u(ring: &RingDescriptor, p: &Ideal) -> bool {
    match (ring, p) {
        (RingDescriptor::Product(fs), Ideal::Product(xs)) => {
            let proper: Vec<usize> = (0..fs.len()).filter(|&i| !fs[i].is_unit_ideal(&xs[i])).collect();
            proper.len() == 1 && prime_u(&fs[proper[0]], &xs[proper[0]])
        }
        (RingDescriptor::Triangular { n, base }, Ideal::Triangular(_)) => {
            let proper: Vec<usize> = (0..*n).filter(|&i| !base.is_unit_ideal(p.entry(i, i))).collect();
            if proper.len() != 1 || !prime_u(base, p.entry(proper[0], proper[0])) {
                return false;
            }
            (0..*n).all(|i| (i + 1..*n).all(|j| base.is_unit_ideal(p.entry(i, j))))
        }
        (RingDescriptor::Integers, Ideal::Principal(Scalar::Int(v))) => {
            v.sign() == num_bigint::Sign::NoSign || int::is_prime_bigint(v)
        }
        (RingDescriptor::Poly(q), Ideal::Principal(Scalar::Poly(f))) => {
            f.is_zero() || poly::is_irreducible(f, *q).unwrap_or(false)
        }
        (RingDescriptor::Modular(m), Ideal::Principal(Scalar::Int(v))) => {
            let g = if v.sign() == num_bigint::Sign::NoSign { num_bigint::BigInt::from(*m) } else { v.clone() };
            int::is_prime_bigint(&g)
        }
        _ => false,
    }
}

pub fn is_strongly_p_nilary(ring: &RingDescriptor, ideal: &Ideal) -> Result<bool> {
    Ok(prime_u(ring, &pseudo_radical(ring, ideal)?))
}

fn strongly_p_nilary_u(ring: &RingDescriptor, ideal: &Ideal) -> Result<bool> {
    Ok(prime_u(ring, &radical_u(ring, ideal)?))
}

fn factor_u(ring: &RingDescriptor, ideal: &Ideal) -> Result<Vec<Ideal>> {
    match (ring, ideal) {
        (RingDescriptor::Product(fs), Ideal::Product(xs)) => {
            let mut out = Vec::new();
            for (i, (f, x)) in fs.iter().zip(xs).enumerate() {
                if f.is_unit_ideal(x) {
                    continue;
                }
                for q in factor_u(f, x)? {
                    let parts = fs
                        .iter()
                        .enumerate()
                        .map(|(j, h)| if i == j { q.clone() } else { h.unit_ideal() })
                        .collect();
                    out.push(Ideal::Product(parts));
                }
            }
            Ok(out)
        }
        (RingDescriptor::Triangular { .. }, _) => Err(Error::Unsupported(
            "minimal nilary decompositions are computed over commutative rings only".into(),
        )),
        (_, Ideal::Principal(g)) => {
            let (pid, _) = ring.basic().expect("basic ring");
            let g = match ring {
                RingDescriptor::Modular(m) if g.is_zero() => Scalar::int(*m),
                _ => g.clone(),
            };
            if g.is_zero() {
                return Ok(vec![ideal.clone()]);
            }
            Ok(prime_factors(pid, &g)?
                .into_iter()
                .map(|(p, e)| ring.basic_ideal(&pid.pow(&p, e)))
                .collect())
        }
        _ => Err(Error::MalformedIdeal(format!("{ideal} in {ring}"))),
    }
}

fn nilpotency_exponent(ring: &RingDescriptor, p: &Ideal, q: &Ideal) -> Result<u32> {
    (1..=MAX_NILPOTENCY)
        .find(|&k| ring.contains_u(q, &ring.power_u(p, k)))
        .ok_or_else(|| Error::VerificationFailed(format!("no power of {p} lies in {q}")))
}

/// `I = ∩ Q_i` with each `Q_i` strongly p-nilary; both minimality
/// conditions are checked before return.
pub fn minimal_nilary_decomposition(ring: &RingDescriptor, ideal: &Ideal) -> Result<NilaryDecomposition> {
    ring.check_ideal(ideal)?;
    if ring.is_unit_ideal(ideal) {
        return Err(Error::UnitIdeal);
    }
    let factors = factor_u(ring, ideal)?;
    if ring.intersect_all(&factors) != *ideal {
        return Err(Error::VerificationFailed("factors do not intersect to the ideal".into()));
    }
    let mut pseudo_radicals = Vec::new();
    let mut exponents = Vec::new();
    for q in &factors {
        let p = radical_u(ring, q)?;
        if !prime_u(ring, &p) {
            return Err(Error::VerificationFailed(format!("{q} is not strongly p-nilary")));
        }
        exponents.push(nilpotency_exponent(ring, &p, q)?);
        pseudo_radicals.push(p);
    }
    let minimal = check_minimality(ring, ideal, &factors)?;
    if !minimal {
        return Err(Error::VerificationFailed("decomposition is not minimal".into()));
    }
    let radicals_comaximal = ring.is_pairwise_comaximal(&pseudo_radicals)?;
    Ok(NilaryDecomposition {
        ideal: ideal.clone(),
        factors,
        pseudo_radicals,
        exponents,
        minimal,
        radicals_comaximal,
    })
}

/// Irredundancy, and no sub-intersection of two or more factors is
/// strongly p-nilary.
pub fn check_minimality(ring: &RingDescriptor, ideal: &Ideal, factors: &[Ideal]) -> Result<bool> {
    let n = factors.len();
    if n > MAX_SUBSET_FACTORS {
        return Err(Error::BudgetExceeded(format!("{n} factors exceed the subset check cap")));
    }
    if n > 1 {
        for i in 0..n {
            let others: Vec<Ideal> = (0..n).filter(|&j| j != i).map(|j| factors[j].clone()).collect();
            if ring.intersect_all(&others) == *ideal {
                return Ok(false);
            }
        }
    }
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let sub: Vec<Ideal> = (0..n).filter(|&j| mask & (1 << j) != 0).map(|j| factors[j].clone()).collect();
        if strongly_p_nilary_u(ring, &ring.intersect_all(&sub))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `k ≤ max_k` with `A^k ∩ B^k ⊆ AB`.
pub fn intersection_power_condition(ring: &RingDescriptor, a: &Ideal, b: &Ideal, max_k: u32) -> Result<Option<u32>> {
    ring.check_ideal(a)?;
    ring.check_ideal(b)?;
    let ab = ring.product_u(a, b);
    Ok((1..=max_k).find(|&k| ring.contains_u(&ab, &ring.intersect_u(&ring.power_u(a, k), &ring.power_u(b, k)))))
}

/// The primes and exponents used for a module decomposition.
#[derive(Clone, Debug)]
pub struct NilaryModuleDecomposition {
    pub primes: Vec<Ideal>,
    pub exponents: Vec<u32>,
    pub generator_decompositions: Vec<NilaryDecomposition>,
    pub decomposition: Decomposition,
}

/// Decomposes a module whose generators all have nonzero annihilators,
/// using the pseudo-radicals of the minimal strongly p-nilary
/// decompositions of those annihilators.
pub fn nilary_module_decompose(m: &FPModule) -> Result<NilaryModuleDecomposition> {
    let ring = m.ring();
    let mut primes: Vec<Ideal> = Vec::new();
    let mut exponents: Vec<u32> = Vec::new();
    let mut per_gen = Vec::new();
    for k in 0..m.num_generators() {
        let ann = m.annihilator(Some(&[m.generator(k)]))?;
        if ring.is_zero_ideal(&ann) {
            return Err(Error::ZeroAnnihilator(k));
        }
        if ring.is_unit_ideal(&ann) {
            continue;
        }
        let nd = minimal_nilary_decomposition(ring, &ann)?;
        for (p, &e) in nd.pseudo_radicals.iter().zip(&nd.exponents) {
            match primes.iter().position(|q| q == p) {
                Some(i) => exponents[i] = exponents[i].max(e),
                None => {
                    primes.push(p.clone());
                    exponents.push(e);
                }
            }
        }
        per_gen.push(nd);
    }
    if primes.is_empty() {
        return Err(Error::Unsupported("the zero module has no nilary decomposition".into()));
    }
    let bound = exponents.iter().copied().max().unwrap_or(1);
    let decomposition = decomp::decompose(m, &primes, bound)?;
    if let Some(i) = decomposition.parts.iter().position(|p| p.zero) {
        return Err(Error::VerificationFailed(format!("component {i} is zero")));
    }
    Ok(NilaryModuleDecomposition {
        primes,
        exponents,
        generator_decompositions: per_gen,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;

    fn z() -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn px(coeffs: &[u64], p: u64) -> Ideal {
        Ideal::Principal(Scalar::Poly(Poly::new(coeffs.to_vec(), p)))
    }

    #[test]
    fn radicals() {
        assert_eq!(pseudo_radical(&z(), &Ideal::gen(12)).unwrap(), Ideal::gen(6));
        assert_eq!(pseudo_radical(&z(), &Ideal::gen(0)).unwrap(), Ideal::gen(0));
        let f2 = RingDescriptor::Poly(2);
        assert_eq!(pseudo_radical(&f2, &px(&[0, 0, 1], 2)).unwrap(), px(&[0, 1], 2));
        let z12 = RingDescriptor::Modular(12);
        assert_eq!(pseudo_radical(&z12, &z12.zero_ideal()).unwrap(), Ideal::gen(6));
    }

    #[test]
    fn nilary_predicates() {
        assert!(is_strongly_p_nilary(&z(), &Ideal::gen(8)).unwrap());
        assert!(!is_strongly_p_nilary(&z(), &Ideal::gen(12)).unwrap());
        assert!(is_strongly_p_nilary(&z(), &Ideal::gen(0)).unwrap());
    }

    #[test]
    fn decompositions() {
        let d = minimal_nilary_decomposition(&z(), &Ideal::gen(360)).unwrap();
        assert_eq!(d.factors, vec![Ideal::gen(8), Ideal::gen(9), Ideal::gen(5)]);
        assert_eq!(d.exponents, vec![3, 2, 1]);
        assert!(d.minimal && d.radicals_comaximal);
        let d = minimal_nilary_decomposition(&z(), &Ideal::gen(7)).unwrap();
        assert_eq!(d.factors, vec![Ideal::gen(7)]);
        let f2 = RingDescriptor::Poly(2);
        let d = minimal_nilary_decomposition(&f2, &px(&[0, 0, 1, 1], 2)).unwrap();
        assert_eq!(d.factors, vec![px(&[0, 0, 1], 2), px(&[1, 1], 2)]);
        assert_eq!(minimal_nilary_decomposition(&z(), &Ideal::gen(1)).unwrap_err(), Error::UnitIdeal);
    }

    #[test]
    fn power_condition() {
        let k = |a, b| intersection_power_condition(&z(), &Ideal::gen(a), &Ideal::gen(b), 8).unwrap();
        assert_eq!(k(2, 3), Some(1));
        assert_eq!(k(2, 2), Some(2));
        assert_eq!(k(4, 6), Some(2));
    }

    #[test]
    fn module_decomposition() {
        let m = FPModule::cyclic(z(), &Ideal::gen(360)).unwrap();
        let nd = nilary_module_decompose(&m).unwrap();
        assert_eq!(nd.primes, vec![Ideal::gen(2), Ideal::gen(3), Ideal::gen(5)]);
        assert_eq!(nd.exponents, vec![3, 2, 1]);
        let orders: Vec<_> = nd
            .decomposition
            .parts
            .iter()
            .map(|p| p.invariants.cardinality.clone().unwrap())
            .collect();
        assert_eq!(orders, vec![8.into(), 9.into(), 5.into()]);
        let f3 = RingDescriptor::Poly(3);
        // x^2 (x - 1) = x^3 + 2x^2
        let m = FPModule::cyclic(f3.clone(), &px(&[0, 0, 2, 1], 3)).unwrap();
        let nd = nilary_module_decompose(&m).unwrap();
        let dims: Vec<_> = nd.decomposition.parts.iter().map(|p| p.invariants.cardinality.clone().unwrap()).collect();
        assert_eq!(dims, vec![9.into(), 3.into()]);
        assert_eq!(
            nilary_module_decompose(&FPModule::free(z(), 1).unwrap()).unwrap_err(),
            Error::ZeroAnnihilator(0)
        );
    }

    #[test]
    fn triangular_radical_matches_enumeration() {
        let b = Budget::default();
        for t in [
            RingDescriptor::triangular(2, RingDescriptor::Modular(4)).unwrap(),
            RingDescriptor::triangular(2, RingDescriptor::Modular(6)).unwrap(),
            RingDescriptor::triangular(3, RingDescriptor::Modular(2)).unwrap(),
        ] {
            let fr = FiniteRing::new(&t, None, &b).unwrap();
            for set in fr.ideals() {
                let gens: Vec<_> = fr.basis(set).into_iter().map(|x| fr.decode(x)).collect();
                let i = t.ideal_generated(&gens);
                assert_eq!(pseudo_radical(&t, &i).unwrap(), pseudo_radical_enumerated(&t, &i, &b).unwrap(), "{t} {i}");
                let structured = is_prime_ideal(&t, &i).unwrap();
                assert_eq!(structured, fr.is_prime(set).unwrap(), "{t} {i}");
            }
        }
    }
}
