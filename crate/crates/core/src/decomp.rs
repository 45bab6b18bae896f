//! Decomposition of a module into the components `C(X_i)` of a pairwise
//! comaximal ideal family.

use crate::arith::{int, poly};
use crate::error::{Error, Result};
use crate::modules::{FPModule, Invariants, ModuleElement, Submodule};
use crate::ring::{Ideal, PartitionOfUnity, RingDescriptor};
use crate::scalar::{Pid, Scalar};

/// Exponent cap used when the caller does not choose one.
pub const DEFAULT_MAX_EXPONENT: u32 = 32;

/// For one generator `y`: a nonempty index set `J` and exponents with
/// `∩_{j in J} X_j^{k_j} ⊆ r_R(yR)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionEntry {
    pub generator: usize,
    pub annihilator: Ideal,
    pub subset: Vec<usize>,
    /// One exponent per index of `subset`.
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub ideal: Ideal,
    /// Exponent `k_i` of the partition of unity.
    pub exponent: u32,
    pub component: Submodule,
    /// Least `k` with `l_M(X^k) = C(X)`.
    pub stabilization: u32,
    pub invariants: Invariants,
    pub zero: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: FPModule,
    pub parts: Vec<Part>,
    pub witness: PartitionOfUnity,
    pub condition_table: Vec<ConditionEntry>,
    /// `projections[k][i] = y_k e_i`; these sum to the generator `y_k`.
    pub projections: Vec<Vec<ModuleElement>>,
    pub verified: bool,
}

impl Decomposition {
    pub fn components(&self) -> Vec<Submodule> {
        self.parts.iter().map(|p| p.component.clone()).collect()
    }

    /// Rederives, for every generator, the index set and exponents from the
    /// pieces `y e_i` and checks `∩ X_i^{k_i} ⊆ r_R(yR)`.
    pub fn reverse_condition(&self) -> Result<Vec<ConditionEntry>> {
        let m = &self.module;
        let ring = m.ring();
        let mut out = Vec::new();
        for (k, pieces) in self.projections.iter().enumerate() {
            let mut subset = Vec::new();
            let mut exponents = Vec::new();
            for (i, piece) in pieces.iter().enumerate() {
                if m.is_zero(piece) {
                    continue;
                }
                let s = m.submodule(std::slice::from_ref(piece));
                let c = m.component(&self.parts[i].ideal)?;
                if !m.sub_contains(&c.submodule, &s) {
                    return Err(Error::VerificationFailed(format!("piece {i} of generator {k} is outside C(X_{i})")));
                }
                let mut e = 1;
                while !m.sub_contains(&m.left_annihilator(&ring.power_u(&self.parts[i].ideal, e))?, &s) {
                    e += 1;
                }
                subset.push(i);
                exponents.push(e);
            }
            if subset.is_empty() {
                subset.push(0);
                exponents.push(1);
            }
            let ann = m.annihilator(Some(&[m.generator(k)]))?;
            let meet = meet_powers(ring, &self.parts.iter().map(|p| p.ideal.clone()).collect::<Vec<_>>(), &subset, &exponents);
            if !ring.contains_u(&ann, &meet) {
                return Err(Error::VerificationFailed(format!("generator {k} fails the reverse condition")));
            }
            out.push(ConditionEntry {
                generator: k,
                annihilator: ann,
                subset,
                exponents,
            });
        }
        Ok(out)
    }
}

fn meet_powers(ring: &RingDescriptor, xs: &[Ideal], subset: &[usize], exps: &[u32]) -> Ideal {
    let powers: Vec<Ideal> = subset.iter().zip(exps).map(|(&j, &k)| ring.power_u(&xs[j], k)).collect();
    ring.intersect_all(&powers)
}

fn validate_family(m: &FPModule, xs: &[Ideal], max_exponent: u32) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptyIdealList);
    }
    if max_exponent < 1 {
        return Err(Error::InvalidExponent);
    }
    for x in xs {
        m.ring().check_ideal(x)?;
    }
    m.ring().require_comaximal(xs)
}

// Least (J, k) for one annihilator ideal, or None when even the full family
// at the maximal exponent is not inside it.
fn condition_for(ring: &RingDescriptor, ann: &Ideal, xs: &[Ideal], max_exponent: u32) -> Option<(Vec<usize>, Vec<u32>)> {
    let n = xs.len();
    let mut subset: Vec<usize> = (0..n).collect();
    let mut exps = vec![max_exponent; n];
    if !ring.contains_u(ann, &meet_powers(ring, xs, &subset, &exps)) {
        return None;
    }
    let mut t = 0;
    while t < subset.len() && subset.len() > 1 {
        let mut s = subset.clone();
        let mut e = exps.clone();
        s.remove(t);
        e.remove(t);
        if ring.contains_u(ann, &meet_powers(ring, xs, &s, &e)) {
            subset = s;
            exps = e;
        } else {
            t += 1;
        }
    }
    for t in 0..subset.len() {
        for k in 1..exps[t] {
            let mut e = exps.clone();
            e[t] = k;
            if ring.contains_u(ann, &meet_powers(ring, xs, &subset, &e)) {
                exps = e;
                break;
            }
        }
    }
    Some((subset, exps))
}

/// Per-generator index sets and least exponents with
/// `∩_{j in J} X_j^{k_j} ⊆ r_R(yR)`.
pub fn check_condition(m: &FPModule, xs: &[Ideal], max_exponent: u32) -> Result<Vec<ConditionEntry>> {
    validate_family(m, xs, max_exponent)?;
    let mut table = Vec::with_capacity(m.num_generators());
    for k in 0..m.num_generators() {
        let ann = m.annihilator(Some(&[m.generator(k)]))?;
        let (subset, exponents) =
            condition_for(m.ring(), &ann, xs, max_exponent).ok_or_else(|| Error::ConditionNotEstablished {
                generator: k,
                reason: format!(
                    "r_R(yR) = {ann} does not contain the intersection of the family at exponent {max_exponent}"
                ),
            })?;
        table.push(ConditionEntry {
            generator: k,
            annihilator: ann,
            subset,
            exponents,
        });
    }
    Ok(table)
}

/// `M = ⊕ C(X_i)`, built from a partition of unity and verified.
pub fn decompose(m: &FPModule, xs: &[Ideal], max_exponent: u32) -> Result<Decomposition> {
    let table = check_condition(m, xs, max_exponent)?;
    let mut exps = vec![1u32; xs.len()];
    for entry in &table {
        for (&j, &k) in entry.subset.iter().zip(&entry.exponents) {
            exps[j] = exps[j].max(k);
        }
    }
    assemble(m, xs, &exps, table)
}

/// The exponent-one case: `M = ⊕ l_M(X_i)`.
pub fn decompose_exponent_one(m: &FPModule, xs: &[Ideal]) -> Result<Decomposition> {
    decompose(m, xs, 1)
}

fn assemble(m: &FPModule, xs: &[Ideal], exps: &[u32], table: Vec<ConditionEntry>) -> Result<Decomposition> {
    let ring = m.ring();
    let witness = ring.partition_of_unity(xs, exps)?;
    let mut parts = Vec::with_capacity(xs.len());
    for (x, &k) in xs.iter().zip(exps) {
        let c = m.component(x)?;
        parts.push(Part {
            ideal: x.clone(),
            exponent: k,
            zero: m.sub_is_zero(&c.submodule),
            invariants: m.invariants(&c.submodule),
            component: c.submodule,
            stabilization: c.exponent,
        });
    }
    let mut projections = Vec::with_capacity(m.num_generators());
    for y in m.generators() {
        let pieces: Vec<ModuleElement> = witness.witnesses.iter().map(|e| m.act(&y, e)).collect();
        for (i, piece) in pieces.iter().enumerate() {
            if !m.sub_contains_element(&parts[i].component, piece) {
                return Err(Error::VerificationFailed(format!("projection onto part {i} left the component")));
            }
        }
        if m.sum_elements(&pieces) != y {
            return Err(Error::VerificationFailed("projections do not sum to the generator".into()));
        }
        projections.push(pieces);
    }
    let comps: Vec<Submodule> = parts.iter().map(|p| p.component.clone()).collect();
    if !m.is_internal_direct_sum(&comps)? {
        return Err(Error::VerificationFailed("components do not form a direct sum".into()));
    }
    Ok(Decomposition {
        module: m.clone(),
        parts,
        witness,
        condition_table: table,
        projections,
        verified: true,
    })
}

/// A decomposition of `M`, or of `M / MA` when `A = ∩ X_i` does not
/// annihilate `M`.
#[derive(Clone, Debug)]
pub struct QuotientDecomposition {
    pub intersection: Ideal,
    /// `MA` when the quotient was taken.
    pub reduced_by: Option<Submodule>,
    pub decomposition: Decomposition,
}

pub fn decompose_crt(m: &FPModule, xs: &[Ideal]) -> Result<QuotientDecomposition> {
    if xs.len() < 2 {
        return Err(Error::TooFewIdeals {
            required: 2,
            got: xs.len(),
        });
    }
    validate_family(m, xs, 1)?;
    reduce_and_decompose(m, xs)
}

fn reduce_and_decompose(m: &FPModule, xs: &[Ideal]) -> Result<QuotientDecomposition> {
    let ring = m.ring();
    let a = ring.intersect_all(xs);
    let ann = m.annihilator(None)?;
    if ring.contains_u(&ann, &a) {
        return Ok(QuotientDecomposition {
            intersection: a,
            reduced_by: None,
            decomposition: decompose(m, xs, 1)?,
        });
    }
    let ma = m.times_ideal(&m.whole(), &a)?;
    let q = m.quotient(&ma)?;
    Ok(QuotientDecomposition {
        intersection: a,
        reduced_by: Some(ma),
        decomposition: decompose(&q, xs, 1)?,
    })
}

/// `K / KA` over a triangular ring, decomposed by the diagonal-vanishing
/// ideals with `A` their intersection.
pub fn triangular_quotient_decompose(k: &FPModule) -> Result<QuotientDecomposition> {
    let ring = k.ring();
    if !matches!(ring, RingDescriptor::Triangular { .. }) {
        return Err(Error::Unsupported(format!("{ring} is not a triangular matrix ring")));
    }
    let ps = ring.diagonal_vanishing_ideals()?;
    reduce_and_decompose(k, &ps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Nonzero {
        witness: ModuleElement,
        subset: Vec<usize>,
    },
    Zero,
}

/// Whether `l_M(X_j)` is nonzero, with a checked witness `m` and a set
/// `J ∋ j` such that `∩_J X_i ⊆ r_R(mR)` but `∩_{J - j} X_i ⊄ r_R(mR)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NontrivialityCertificate {
    pub index: usize,
    pub verdict: Verdict,
}

pub fn nontrivial_components(m: &FPModule, xs: &[Ideal]) -> Result<Vec<NontrivialityCertificate>> {
    let d = decompose(m, xs, 1)?;
    let ring = m.ring();
    let ones = vec![1u32; xs.len()];
    let mut out = Vec::with_capacity(xs.len());
    for (j, part) in d.parts.iter().enumerate() {
        if part.zero {
            out.push(NontrivialityCertificate { index: j, verdict: Verdict::Zero });
            continue;
        }
        let witness = m
            .submodule_generators(&part.component)
            .into_iter()
            .find(|g| !m.is_zero(g))
            .ok_or_else(|| Error::VerificationFailed(format!("part {j} is nonzero but has no nonzero generator")))?;
        let ann = m.annihilator(Some(std::slice::from_ref(&witness)))?;
        let (subset, _) = condition_for(ring, &ann, xs, 1)
            .ok_or_else(|| Error::VerificationFailed(format!("witness for part {j} violates the condition")))?;
        let without: Vec<usize> = subset.iter().copied().filter(|&i| i != j).collect();
        let inside = ring.contains_u(&ann, &meet_powers(ring, xs, &subset, &ones[..subset.len()]));
        let outside = !ring.contains_u(&ann, &meet_powers(ring, xs, &without, &ones[..without.len()]));
        if !subset.contains(&j) || !inside || !outside {
            return Err(Error::VerificationFailed(format!("certificate for part {j} does not check")));
        }
        out.push(NontrivialityCertificate {
            index: j,
            verdict: Verdict::Nonzero { witness, subset },
        });
    }
    Ok(out)
}

/// Irreducible factors (with multiplicity) of a nonzero nonunit basic-ring
/// generator.
pub(crate) fn prime_factors(pid: Pid, g: &Scalar) -> Result<Vec<(Scalar, u32)>> {
    match (pid, g) {
        (Pid::Integers, Scalar::Int(v)) => Ok(int::factor_bigint(v)?
            .into_iter()
            .map(|(p, e)| (Scalar::Int(p), e))
            .collect()),
        (Pid::Poly(p), Scalar::Poly(f)) => Ok(poly::factor(f, p)?
            .into_iter()
            .map(|(q, e)| (Scalar::Poly(q), e))
            .collect()),
        _ => Err(Error::MalformedElement(format!("{g} does not belong to the domain"))),
    }
}

/// The decomposition into primary components `C(pR)` over the primes
/// dividing `r_R(M)`.
pub fn p_component_decompose(m: &FPModule) -> Result<Decomposition> {
    let ring = m.ring();
    let Some((pid, _)) = ring.basic() else {
        return Err(Error::Unsupported(format!("primary components need a principal ideal ring, got {ring}")));
    };
    let ann = m.annihilator(None)?;
    let g = ann.generator().clone();
    if g.is_zero() {
        return Err(Error::NotTorsion);
    }
    if pid.is_unit(&g) {
        return Ok(empty_decomposition(m));
    }
    let factors = prime_factors(pid, &g)?;
    let xs: Vec<Ideal> = factors.iter().map(|(p, _)| ring.basic_ideal(p)).collect();
    let bound = factors.iter().map(|&(_, e)| e).max().unwrap_or(1);
    decompose(m, &xs, bound)
}

fn empty_decomposition(m: &FPModule) -> Decomposition {
    Decomposition {
        module: m.clone(),
        parts: Vec::new(),
        witness: PartitionOfUnity {
            ideals: Vec::new(),
            exponents: Vec::new(),
            witnesses: Vec::new(),
        },
        condition_table: Vec::new(),
        projections: vec![Vec::new(); m.num_generators()],
        verified: true,
    }
}
