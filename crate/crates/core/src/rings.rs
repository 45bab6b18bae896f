//! Structural queries on the concrete ring family: minimal primes and the
//! diagonal-vanishing ideals of triangular matrix rings.

use crate::arith::int::factor_u64;
use crate::error::{Error, Result};
use crate::oracle::{Budget, FiniteRing};
use crate::ring::{Ideal, RingDescriptor};
use crate::scalar::Scalar;

/// The minimal prime ideals of a ring together with their comaximality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPrimeSet {
    pub ring: RingDescriptor,
    pub primes: Vec<Ideal>,
    pub pairwise_comaximal: bool,
}

/// Validates a descriptor and returns it unchanged.
pub fn make_ring(desc: RingDescriptor) -> Result<RingDescriptor> {
    desc.validate()?;
    Ok(desc)
}

/// Minimal primes of a supported ring.
pub fn minimal_primes(ring: &RingDescriptor) -> Result<MinimalPrimeSet> {
    ring.validate()?;
    let primes = minimal_prime_list(ring);
    let pairwise_comaximal = ring.is_pairwise_comaximal(&primes)?;
    Ok(MinimalPrimeSet {
        ring: ring.clone(),
        primes,
        pairwise_comaximal,
    })
}

fn minimal_prime_list(ring: &RingDescriptor) -> Vec<Ideal> {
    match ring {
        RingDescriptor::Integers | RingDescriptor::Poly(_) => vec![ring.zero_ideal()],
        RingDescriptor::Modular(m) => factor_u64(*m)
            .into_iter()
            .map(|(p, _)| ring.basic_ideal(&Scalar::int(p as i64)))
            .collect(),
        RingDescriptor::Product(fs) => {
            let mut out = Vec::new();
            for (i, f) in fs.iter().enumerate() {
                for p in minimal_prime_list(f) {
                    let parts = fs
                        .iter()
                        .enumerate()
                        .map(|(j, h)| if i == j { p.clone() } else { h.unit_ideal() })
                        .collect();
                    out.push(Ideal::Product(parts));
                }
            }
            out
        }
        RingDescriptor::Triangular { n, base } => {
            let base_primes = minimal_prime_list(base);
            let mut out = Vec::new();
            for alpha in 0..*n {
                for p in &base_primes {
                    out.push(diagonal_slot(ring, alpha, p));
                }
            }
            out
        }
    }
}

// Full ring except for the diagonal entry `alpha`, which is `slot`.
fn diagonal_slot(ring: &RingDescriptor, alpha: usize, slot: &Ideal) -> Ideal {
    let RingDescriptor::Triangular { base, .. } = ring else {
        unreachable!()
    };
    ring.triangular_ideal(|i, j| {
        if i == alpha && j == alpha {
            slot.clone()
        } else {
            base.unit_ideal()
        }
    })
}

impl RingDescriptor {
    /// The ideals `X_a = {(a_ij) : a_aa = 0}` of a triangular matrix ring.
    pub fn diagonal_vanishing_ideals(&self) -> Result<Vec<Ideal>> {
        let RingDescriptor::Triangular { n, base } = self else {
            return Err(Error::Unsupported(format!("{self} is not a triangular matrix ring")));
        };
        let zero = base.zero_ideal();
        Ok((0..*n).map(|a| diagonal_slot(self, a, &zero)).collect())
    }
}

/// Outcome of the brute-force comparison between "every prime contains a
/// unique minimal prime" and "minimal primes are pairwise comaximal".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeComaximalityReport {
    pub ring: RingDescriptor,
    pub prime_count: usize,
    pub minimal_prime_count: usize,
    pub unique_minimal_below_each_prime: bool,
    pub minimal_primes_comaximal: bool,
    pub equivalent: bool,
    /// Whether the structured minimal primes coincide with the enumerated ones.
    pub structured_agrees: bool,
}

/// Enumerates the prime ideals of a finite ring and compares both conditions.
pub fn check_prime_comaximality_equivalence(
    ring: &RingDescriptor,
    budget: &Budget,
) -> Result<PrimeComaximalityReport> {
    ring.validate()?;
    if !ring.is_finite() {
        return Err(Error::Unsupported(format!("{ring} is not finite")));
    }
    let fr = FiniteRing::new(ring, None, budget)?;
    let primes = fr.prime_ideals()?;
    let minimal = fr.minimal_among(&primes);
    let unique = primes
        .iter()
        .all(|p| minimal.iter().filter(|q| q.is_subset(p)).count() == 1);
    let whole = fr.whole();
    let mut comaximal = true;
    for (i, p) in minimal.iter().enumerate() {
        for q in &minimal[i + 1..] {
            if fr.ideal_sum(p, q) != whole {
                comaximal = false;
            }
        }
    }
    let mut structured: Vec<_> = minimal_prime_list(ring).iter().map(|p| fr.ideal_set(p)).collect();
    let mut enumerated = minimal.clone();
    structured.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    enumerated.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    Ok(PrimeComaximalityReport {
        ring: ring.clone(),
        prime_count: primes.len(),
        minimal_prime_count: minimal.len(),
        unique_minimal_below_each_prime: unique,
        minimal_primes_comaximal: comaximal,
        equivalent: unique == comaximal,
        structured_agrees: structured == enumerated,
    })
}
