use fixedbitset::FixedBitSet;

use super::{additive_basis, extend_span, Budget, FiniteRing};
use crate::error::{Error, Result};
use crate::modules::{FPModule, ModuleElement, Submodule};
use crate::ring::{Ideal, RingElement};
use crate::scalar::Scalar;

/// Definitional queries answered by exhaustive enumeration.
#[derive(Clone, Debug)]
pub enum Query {
    ElementAnnihilator(ModuleElement),
    LeftAnnihilator(Ideal),
    Component(Ideal),
    Gamma(Vec<Ideal>),
    Rho(Vec<Ideal>),
    RightIdeals,
    EssentialRightIdeals,
    SingularSubmodule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryResult {
    /// A set of ring elements.
    Ring(FixedBitSet),
    /// A set of module elements.
    Module(FixedBitSet),
    /// A family of right ideals.
    RightIdeals(Vec<FixedBitSet>),
}

/// The elements of `R^g / Rel` as cosets of the relation submodule.
#[derive(Debug)]
pub struct FiniteModel {
    ring: FiniteRing,
    g: usize,
    label: Vec<u32>,
    reps: Vec<usize>,
}

impl FiniteModel {
    /// Enumerates a module over a finite ring.
    pub fn new(module: &FPModule, budget: &Budget) -> Result<FiniteModel> {
        FiniteModel::with_residue(module, None, budget)
    }

    /// Enumerates a module over a ring with infinite basic pieces by
    /// reading it over the residue ring modulo `residue`, which must kill
    /// the module.
    pub fn with_residue(module: &FPModule, residue: Option<&Scalar>, budget: &Budget) -> Result<FiniteModel> {
        let ring = FiniteRing::new(module.ring(), residue, budget)?;
        let g = module.num_generators();
        let raw_size = ring
            .size()
            .checked_pow(g as u32)
            .filter(|&s| s <= budget.elements)
            .ok_or_else(|| Error::BudgetExceeded(format!("R^{g} over {} is too large", module.ring())))?;
        let mut model = FiniteModel {
            ring,
            g,
            label: Vec::new(),
            reps: Vec::new(),
        };
        let rels = module
            .relations()
            .iter()
            .map(|r| model.raw_encode(r))
            .collect::<Result<Vec<_>>>()?;
        let units = model.ring.additive_generators();
        let mut rel = FixedBitSet::with_capacity(raw_size);
        rel.insert(0);
        for &r in &rels {
            for &u in &units {
                let y = model.raw_act(r, u);
                extend_span(&mut rel, y, |a, b| model.raw_add(a, b));
            }
        }
        let rel_list: Vec<usize> = rel.ones().collect();
        let mut label = vec![u32::MAX; raw_size];
        let mut reps = Vec::new();
        for x in 0..raw_size {
            if label[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &r in &rel_list {
                label[model.raw_add(x, r)] = id;
            }
        }
        model.label = label;
        model.reps = reps;
        Ok(model)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    fn raw_coords(&self, mut x: usize) -> Vec<usize> {
        let n = self.ring.size();
        (0..self.g)
            .map(|_| {
                let c = x % n;
                x /= n;
                c
            })
            .collect()
    }

    fn raw_index(&self, coords: &[usize]) -> usize {
        let n = self.ring.size();
        coords.iter().rev().fold(0, |acc, &c| acc * n + c)
    }

    fn raw_add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.raw_coords(a), self.raw_coords(b));
        let sum: Vec<usize> = ca.iter().zip(&cb).map(|(&x, &y)| self.ring.add(x, y)).collect();
        self.raw_index(&sum)
    }

    fn raw_act(&self, a: usize, r: usize) -> usize {
        let prod: Vec<usize> = self.raw_coords(a).iter().map(|&x| self.ring.mul(x, r)).collect();
        self.raw_index(&prod)
    }

    fn raw_encode(&self, coords: &[RingElement]) -> Result<usize> {
        if coords.len() != self.g {
            return Err(Error::AmbientMismatch);
        }
        let idx = coords
            .iter()
            .map(|c| self.ring.encode(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.raw_index(&idx))
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.label[self.raw_add(self.reps[a], self.reps[b])] as usize
    }

    pub fn act(&self, m: usize, r: usize) -> usize {
        self.label[self.raw_act(self.reps[m], r)] as usize
    }

    pub fn encode(&self, m: &ModuleElement) -> Result<usize> {
        Ok(self.label[self.raw_encode(&m.coords)?] as usize)
    }

    /// Canonical representative coordinates of an element.
    pub fn decode(&self, m: usize) -> Vec<RingElement> {
        self.raw_coords(self.reps[m])
            .into_iter()
            .map(|c| self.ring.decode(c))
            .collect()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.size())
    }

    pub fn whole(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn zero_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert(0);
        s
    }

    fn basis(&self, s: &FixedBitSet) -> Vec<usize> {
        additive_basis(s, 0, |a, b| self.add(a, b))
    }

    /// Submodule generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> FixedBitSet {
        let units = self.ring.additive_generators();
        let mut s = self.zero_set();
        for &m in gens {
            for &u in &units {
                extend_span(&mut s, self.act(m, u), |a, b| self.add(a, b));
            }
        }
        s
    }

    /// The element set of a structured submodule of `module`.
    pub fn submodule_set(&self, module: &FPModule, s: &Submodule) -> Result<FixedBitSet> {
        let gens = module
            .submodule_generators(s)
            .iter()
            .map(|m| self.encode(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.span(&gens))
    }

    pub fn element_annihilator(&self, m: usize) -> FixedBitSet {
        let mut s = self.ring.empty_set();
        for r in 0..self.ring.size() {
            if self.act(m, r) == 0 {
                s.insert(r);
            }
        }
        s
    }

    /// `{r : n r = 0 for all n in set}`.
    pub fn right_annihilator(&self, set: &FixedBitSet) -> FixedBitSet {
        let gens = self.basis(set);
        let mut s = self.ring.empty_set();
        for r in 0..self.ring.size() {
            if gens.iter().all(|&n| self.act(n, r) == 0) {
                s.insert(r);
            }
        }
        s
    }

    /// `{m : m x = 0 for all x in xs}`.
    pub fn left_annihilator(&self, xs: &FixedBitSet) -> FixedBitSet {
        let gens = self.ring.basis(xs);
        self.colon(&gens, &self.zero_set())
    }

    // {m : m x in target for every x in gens}
    fn colon(&self, gens: &[usize], target: &FixedBitSet) -> FixedBitSet {
        let mut s = self.empty_set();
        for m in 0..self.size() {
            if gens.iter().all(|&x| target.contains(self.act(m, x))) {
                s.insert(m);
            }
        }
        s
    }

    /// Elements killed by some power of `x`, with the exponent at which
    /// the chain `l(x^k)` stops growing.
    pub fn component(&self, x: &FixedBitSet) -> (FixedBitSet, u32) {
        let gens = self.ring.basis(x);
        let mut cur = self.colon(&gens, &self.zero_set());
        let mut k = 1;
        loop {
            let next = self.colon(&gens, &cur);
            if next == cur {
                return (cur, k);
            }
            cur = next;
            k += 1;
        }
    }

    fn subset_intersections(&self, xs: &[FixedBitSet]) -> Vec<FixedBitSet> {
        let powers: Vec<FixedBitSet> = xs.iter().map(|x| self.ring.stable_power(x).0).collect();
        let mut out = Vec::new();
        for mask in 1u32..(1 << xs.len()) {
            let mut a = self.ring.whole();
            for (j, p) in powers.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    a.intersect_with(p);
                }
            }
            out.push(a);
        }
        out
    }

    /// Elements `m` with `r(mR)` containing `∩_{j in J} X_j^{k_j}` for some
    /// nonempty `J` and exponents.
    pub fn gamma(&self, xs: &[FixedBitSet]) -> FixedBitSet {
        let mut s = self.zero_set();
        for a in self.subset_intersections(xs) {
            s.union_with(&self.left_annihilator(&a));
        }
        s
    }

    /// As `gamma`, with the intersections also raised to arbitrary powers.
    pub fn rho(&self, xs: &[FixedBitSet]) -> FixedBitSet {
        let mut s = self.zero_set();
        for a in self.subset_intersections(xs) {
            s.union_with(&self.component(&a).0);
        }
        s
    }

    /// Elements whose annihilator is an essential right ideal.
    pub fn singular_submodule(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        for m in 0..self.size() {
            if self.ring.is_essential_right(&self.element_annihilator(m)) {
                s.insert(m);
            }
        }
        s
    }

    /// Whether the listed submodules form an internal direct sum of the
    /// whole module.
    pub fn is_direct_sum(&self, parts: &[FixedBitSet]) -> bool {
        let mut total = self.zero_set();
        let mut product: u128 = 1;
        for p in parts {
            product = product.saturating_mul(p.count_ones(..) as u128);
            for y in self.basis(p) {
                extend_span(&mut total, y, |a, b| self.add(a, b));
            }
        }
        product == self.size() as u128 && total.count_ones(..) == self.size()
    }

    fn ideal_sets(&self, xs: &[Ideal]) -> Result<Vec<FixedBitSet>> {
        xs.iter().map(|x| self.ring.try_ideal_set(x)).collect()
    }

    pub fn brute_eval(&self, query: &Query) -> Result<QueryResult> {
        Ok(match query {
            Query::ElementAnnihilator(m) => QueryResult::Ring(self.element_annihilator(self.encode(m)?)),
            Query::LeftAnnihilator(x) => QueryResult::Module(self.left_annihilator(&self.ring.try_ideal_set(x)?)),
            Query::Component(x) => QueryResult::Module(self.component(&self.ring.try_ideal_set(x)?).0),
            Query::Gamma(xs) => QueryResult::Module(self.gamma(&self.ideal_sets(xs)?)),
            Query::Rho(xs) => QueryResult::Module(self.rho(&self.ideal_sets(xs)?)),
            Query::RightIdeals => QueryResult::RightIdeals(self.ring.right_ideals().to_vec()),
            Query::EssentialRightIdeals => QueryResult::RightIdeals(self.ring.essential_right_ideals()),
            Query::SingularSubmodule => QueryResult::Module(self.singular_submodule()),
        })
    }
}
