//! Seeded random instances for property suites and benchmarks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::Poly;
use crate::modules::FPModule;
use crate::ring::{Ideal, RingDescriptor, RingElement};

/// A uniform element for finite rings; small entries for infinite ones.
pub fn element<R: Rng>(ring: &RingDescriptor, rng: &mut R) -> RingElement {
    match ring {
        RingDescriptor::Integers => RingElement::Int(BigInt::from(rng.gen_range(-12i64..=12))),
        RingDescriptor::Modular(m) => RingElement::Mod(rng.gen_range(0..*m)),
        RingDescriptor::Poly(p) => {
            let deg = rng.gen_range(0..3usize);
            RingElement::Poly(Poly::new((0..=deg).map(|_| rng.gen_range(0..*p)).collect(), *p))
        }
        RingDescriptor::Product(fs) => RingElement::Tuple(fs.iter().map(|f| element(f, rng)).collect()),
        RingDescriptor::Triangular { n, base } => {
            let mut m = vec![vec![base.zero(); *n]; *n];
            for (i, row) in m.iter_mut().enumerate() {
                for x in row.iter_mut().skip(i) {
                    *x = element(base, rng);
                }
            }
            RingElement::Matrix(m)
        }
    }
}

/// An element biased towards sparse and structured values.
pub fn sparse_element<R: Rng>(ring: &RingDescriptor, rng: &mut R) -> RingElement {
    match ring {
        RingDescriptor::Triangular { n, base } => {
            let i = rng.gen_range(0..*n);
            let j = rng.gen_range(i..*n);
            ring.matrix_unit(i, j, sparse_element(base, rng))
        }
        RingDescriptor::Product(fs) => RingElement::Tuple(
            fs.iter()
                .map(|f| if rng.gen_bool(0.3) { f.zero() } else { sparse_element(f, rng) })
                .collect(),
        ),
        RingDescriptor::Modular(m) => {
            let divs: Vec<u64> = (1..=*m).filter(|d| m % d == 0).collect();
            let d = *divs.choose(rng).unwrap();
            RingElement::Mod(d * rng.gen_range(0..m / d).max(1) % m)
        }
        _ => element(ring, rng),
    }
}

/// A module with `g` generators and up to `max_rel` random relations.
pub fn module<R: Rng>(ring: &RingDescriptor, g: usize, max_rel: usize, rng: &mut R) -> FPModule {
    let count = rng.gen_range(0..=max_rel);
    let rels = (0..count)
        .map(|_| {
            (0..g)
                .map(|_| if rng.gen_bool(0.5) { sparse_element(ring, rng) } else { element(ring, rng) })
                .collect()
        })
        .collect();
    FPModule::new(ring.clone(), g, rels).expect("sampled relations lie in the ring")
}

/// The two-sided ideal generated by one or two random elements.
pub fn ideal<R: Rng>(ring: &RingDescriptor, rng: &mut R) -> Ideal {
    let count = rng.gen_range(1..=2);
    let gens: Vec<RingElement> = (0..count).map(|_| sparse_element(ring, rng)).collect();
    ring.ideal_generated(&gens)
}

/// A pairwise comaximal family of `n` proper ideals of a basic ring, built
/// from distinct primes (or irreducible polynomials) raised to powers.
pub fn comaximal_family<R: Rng>(ring: &RingDescriptor, n: usize, rng: &mut R) -> Vec<Ideal> {
    match ring {
        RingDescriptor::Integers => {
            let mut primes = [2i64, 3, 5, 7, 11, 13];
            primes.shuffle(rng);
            primes[..n]
                .iter()
                .map(|&p| Ideal::gen(p.pow(rng.gen_range(1..=2))))
                .collect()
        }
        RingDescriptor::Modular(m) => {
            let primes: Vec<u64> = crate::arith::int::factor_u64(*m).into_iter().map(|(p, _)| p).collect();
            let mut out: Vec<Ideal> = primes
                .iter()
                .take(n)
                .map(|&p| ring.basic_ideal(&crate::scalar::Scalar::int(p as i64)))
                .collect();
            while out.len() < n {
                out.push(ring.unit_ideal());
            }
            out
        }
        RingDescriptor::Poly(p) => {
            let mut cands: Vec<Poly> = (0..*p).map(|a| Poly::new(vec![a, 1], *p)).collect();
            cands.shuffle(rng);
            cands[..n.min(cands.len())]
                .iter()
                .map(|f| ring.basic_ideal(&crate::scalar::Scalar::Poly(f.pow(rng.gen_range(1..=2), *p))))
                .chain(std::iter::repeat_with(|| ring.unit_ideal()))
                .take(n)
                .collect()
        }
        RingDescriptor::Product(fs) => {
            let per: Vec<Vec<Ideal>> = fs.iter().map(|f| comaximal_family(f, n, rng)).collect();
            (0..n)
                .map(|i| Ideal::Product(per.iter().map(|fam| fam[i].clone()).collect()))
                .collect()
        }
        RingDescriptor::Triangular { .. } => {
            let xs = ring.diagonal_vanishing_ideals().expect("triangular ring");
            let mut out: Vec<Ideal> = xs.into_iter().take(n).collect();
            while out.len() < n {
                out.push(ring.unit_ideal());
            }
            out
        }
    }
}
