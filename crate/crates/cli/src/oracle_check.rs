//! Cross-checks of structured results against brute-force enumeration.

use comax_core::nilary::{pseudo_radical_enumerated, NilaryDecomposition};
use comax_core::oracle::{Budget, FiniteModel, FixedBitSet};
use comax_core::{Decomposition, FPModule, Ideal, RingDescriptor, Submodule};
use serde_json::{json, Value};

use crate::CliError;

pub struct Checker<'a> {
    module: &'a FPModule,
    model: FiniteModel,
}

fn mismatch(msg: String) -> CliError {
    CliError::OracleMismatch(msg)
}

impl Checker<'_> {
    fn set(&self, s: &Submodule) -> Result<FixedBitSet, CliError> {
        Ok(self.model.submodule_set(self.module, s)?)
    }

    fn ideal_sets(&self, xs: &[Ideal]) -> Result<Vec<FixedBitSet>, CliError> {
        xs.iter()
            .map(|x| Ok(self.model.ring().try_ideal_set(x)?))
            .collect()
    }

    pub fn check_decomposition(&self, d: &Decomposition) -> Result<(), CliError> {
        let mut parts = Vec::with_capacity(d.parts.len());
        for (i, p) in d.parts.iter().enumerate() {
            let x = self.model.ring().try_ideal_set(&p.ideal)?;
            let (expected, _) = self.model.component(&x);
            let got = self.set(&p.component)?;
            if got != expected {
                return Err(mismatch(format!(
                    "component {i}: {} elements computed, {} enumerated",
                    got.count_ones(..),
                    expected.count_ones(..)
                )));
            }
            parts.push(got);
        }
        if !parts.is_empty() && !self.model.is_direct_sum(&parts) {
            return Err(mismatch("the enumerated components do not split the module".into()));
        }
        Ok(())
    }

    pub fn check_gamma(&self, xs: &[Ideal], gamma: &Submodule, rho: &Submodule) -> Result<(), CliError> {
        let sets = self.ideal_sets(xs)?;
        if self.set(gamma)? != self.model.gamma(&sets) {
            return Err(mismatch("gamma differs from enumeration".into()));
        }
        if self.set(rho)? != self.model.rho(&sets) {
            return Err(mismatch("rho differs from enumeration".into()));
        }
        Ok(())
    }

    pub fn check_split(&self, xs: &[Ideal], t: &Submodule, f: &Submodule) -> Result<(), CliError> {
        let sets = self.ideal_sets(xs)?;
        let t = self.set(t)?;
        if t != self.model.gamma(&sets) {
            return Err(mismatch("torsion part differs from enumerated gamma".into()));
        }
        if !self.model.is_direct_sum(&[t, self.set(f)?]) {
            return Err(mismatch("torsion part and complement do not split the module".into()));
        }
        Ok(())
    }
}

/// Builds a finite model of `m` and runs `f` on it. Modules over `Z` or
/// `F_p[x]` are read modulo their annihilator; other infinite modules are
/// skipped.
pub fn run(m: &FPModule, f: impl FnOnce(&Checker) -> Result<(), CliError>) -> Result<Value, CliError> {
    let ring = m.ring();
    let residue = if ring.is_finite() {
        None
    } else if ring.basic().is_some() {
        let ann = m.annihilator(None)?;
        if ann.generator().is_zero() {
            return Ok(json!({"status": "skipped", "reason": "module is infinite"}));
        }
        Some(ann.generator().clone())
    } else {
        return Ok(json!({"status": "skipped", "reason": "ring is infinite"}));
    };
    let model = FiniteModel::with_residue(m, residue.as_ref(), &Budget::from_env())?;
    let checker = Checker { module: m, model };
    f(&checker)?;
    Ok(json!({"status": "agrees", "elements": checker.model.size()}))
}

/// Compares each pseudo-radical with the sum of ideals nilpotent modulo
/// the factor, found by enumeration.
pub fn check_radicals(ring: &RingDescriptor, nd: &NilaryDecomposition) -> Result<Value, CliError> {
    if !ring.is_finite() {
        return Ok(json!({"status": "skipped", "reason": "ring is infinite"}));
    }
    let budget = Budget::from_env();
    for (i, (q, r)) in nd.factors.iter().zip(&nd.pseudo_radicals).enumerate() {
        let e = pseudo_radical_enumerated(ring, q, &budget)?;
        if !(ring.ideal_contains(&e, r)? && ring.ideal_contains(r, &e)?) {
            return Err(mismatch(format!("pseudo-radical of factor {i} differs from enumeration")));
        }
    }
    Ok(json!({"status": "agrees", "factors": nd.factors.len()}))
}
