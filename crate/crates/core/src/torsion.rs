//! The preradical `γ` attached to a comaximal ideal family, its radical
//! closure and torsion splittings.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::linalg::{echelon, smith_normal_form};
use crate::modules::{FPModule, Invariants, Submodule};
use crate::oracle::{Budget, FiniteRing};
use crate::ring::{Ideal, RingDescriptor};

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub ideals: Vec<Ideal>,
    pub gamma: Submodule,
    pub rho: Submodule,
    pub gamma_invariants: Invariants,
    pub rho_invariants: Invariants,
    pub pretorsion_free: bool,
    /// `(γ(M), F)` with `M = γ(M) ⊕ F`, when a complement was computed.
    pub split: Option<(Submodule, Submodule)>,
}

fn validate(m: &FPModule, xs: &[Ideal]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptyIdealList);
    }
    for x in xs {
        m.ring().check_ideal(x)?;
    }
    m.ring().require_comaximal(xs)
}

/// `γ(M) = ⊕ C(X_i)`; the directness of the sum is checked.
pub fn gamma(m: &FPModule, xs: &[Ideal]) -> Result<Submodule> {
    validate(m, xs)?;
    let comps = xs
        .iter()
        .map(|x| Ok(m.component(x)?.submodule))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..comps.len() {
        let others = m.sub_sum_all(comps.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c));
        if !m.sub_is_zero(&m.sub_intersect(&comps[i], &others)) {
            return Err(Error::VerificationFailed(format!("component {i} meets the others")));
        }
    }
    Ok(m.sub_sum_all(&comps))
}

/// `C(∩ X_i)`.
pub fn rho(m: &FPModule, xs: &[Ideal]) -> Result<Submodule> {
    validate(m, xs)?;
    Ok(m.component(&m.ring().intersect_all(xs))?.submodule)
}

pub fn torsion_report(m: &FPModule, xs: &[Ideal], with_split: bool) -> Result<TorsionReport> {
    let g = gamma(m, xs)?;
    let r = rho(m, xs)?;
    if !m.sub_contains(&r, &g) {
        return Err(Error::VerificationFailed("γ(M) is not inside ρ(M)".into()));
    }
    let split = if with_split {
        let (t, f) = torsion_split(m, xs)?;
        Some((t, f))
    } else {
        None
    };
    Ok(TorsionReport {
        ideals: xs.to_vec(),
        pretorsion_free: m.sub_is_zero(&g),
        gamma_invariants: m.invariants(&g),
        rho_invariants: m.invariants(&r),
        gamma: g,
        rho: r,
        split,
    })
}

/// `M = γ(M) ⊕ F` for a module over `Z` or `F_p[x]`: `F` collects the
/// primary components outside the family and a free complement of the
/// torsion submodule.
pub fn torsion_split(m: &FPModule, xs: &[Ideal]) -> Result<(Submodule, Submodule)> {
    let ring = m.ring();
    let pid = match ring {
        RingDescriptor::Integers | RingDescriptor::Poly(_) => ring.basic().unwrap().0,
        _ => return Err(Error::Unsupported(format!("torsion splitting needs Z or F_p[x], got {ring}"))),
    };
    let g = gamma(m, xs)?;
    let g_count = m.num_generators();
    let rel = &m.relation_lattices()[0];

    // torsion part and free complement from the Smith form of the relations
    let mut free_gens = Vec::new();
    let mut exponent = pid.one();
    if g_count > 0 {
        let snf = smith_normal_form(pid, rel.basis(), g_count)?;
        let inv = echelon(pid, &snf.v, g_count, true)
            .transform
            .expect("transform requested");
        for (j, row) in inv.iter().enumerate() {
            match snf.d.get(j) {
                Some(d) if !d.is_zero() => exponent = pid.lcm(&exponent, d),
                _ => {
                    let coords = row.iter().map(|s| ring.from_scalar(s)).collect::<Vec<_>>();
                    free_gens.push(m.reduce(&coords));
                }
            }
        }
    }
    let free = m.submodule(&free_gens);

    // primary parts of the torsion not captured by the family
    let mut rest = m.zero_submodule();
    if !pid.is_unit(&exponent) {
        for (p, _) in crate::decomp::prime_factors(pid, &exponent)? {
            let covered = xs.iter().any(|x| !x.generator().is_zero() && pid.divides(&p, x.generator()));
            if !covered {
                let c = m.component(&ring.basic_ideal(&p))?.submodule;
                rest = m.sub_sum(&rest, &c);
            }
        }
    }
    let f = m.sub_sum(&free, &rest);
    if xs.iter().any(|x| x.generator().is_zero()) {
        // C(0) = M
        return Ok((g, m.zero_submodule()));
    }
    if !m.is_internal_direct_sum(&[g.clone(), f.clone()])? {
        return Err(Error::VerificationFailed("γ(M) and F do not split M".into()));
    }
    let (pf, _) = m.presentation(&f)?;
    if !pf.sub_is_zero(&gamma(&pf, xs)?) {
        return Err(Error::VerificationFailed("γ(F) is nonzero".into()));
    }
    Ok((g, f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub right_ideal_count: usize,
    pub essential_count: usize,
    pub exponent_bound: u32,
    /// `L · ∩_{j in J} X_j^{k_j} = ∩_{j in J} X_j^{k_j}` for all essential
    /// `L`, nonempty `J` and exponents up to the bound.
    pub holds: bool,
    pub failure: Option<(Vec<usize>, Vec<u32>)>,
    /// `Soc(R_R) · A = A` for `A = ∩ X_i`.
    pub socle_condition: bool,
    /// `A = A^2 ⊆ Soc(R_R)`.
    pub idempotent_in_socle: bool,
}

/// Enumerates the right ideals of a finite ring and tests the stability
/// hypothesis for the family.
pub fn stability_condition_check(
    ring: &RingDescriptor,
    xs: &[Ideal],
    exponent_bound: u32,
    budget: &Budget,
) -> Result<StabilityReport> {
    if xs.is_empty() {
        return Err(Error::EmptyIdealList);
    }
    if exponent_bound < 1 {
        return Err(Error::InvalidExponent);
    }
    for x in xs {
        ring.check_ideal(x)?;
    }
    let fr = FiniteRing::new(ring, None, budget)?;
    let sets: Vec<FixedBitSet> = xs.iter().map(|x| fr.ideal_set(x)).collect();
    let essential = fr.essential_right_ideals();
    let n = xs.len();
    let mut failure = None;
    'outer: for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        let mut exps = vec![1u32; subset.len()];
        loop {
            let mut a = fr.whole();
            for (&j, &k) in subset.iter().zip(&exps) {
                a.intersect_with(&fr.ideal_power(&sets[j], k));
            }
            if essential.iter().any(|l| fr.set_product(l, &a) != a) {
                failure = Some((subset.clone(), exps.clone()));
                break 'outer;
            }
            let Some(t) = exps.iter().position(|&k| k < exponent_bound) else { break };
            exps[t] += 1;
            for e in exps.iter_mut().take(t) {
                *e = 1;
            }
        }
    }
    let mut a = fr.whole();
    for s in &sets {
        a.intersect_with(s);
    }
    let soc = fr.socle();
    Ok(StabilityReport {
        right_ideal_count: fr.right_ideals().len(),
        essential_count: essential.len(),
        exponent_bound,
        holds: failure.is_none(),
        failure,
        socle_condition: fr.set_product(&soc, &a) == a,
        idempotent_in_socle: fr.set_product(&a, &a) == a && a.is_subset(&soc),
    })
}
