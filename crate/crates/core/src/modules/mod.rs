//! Finitely presented right modules `R^g / Rel`, submodules, annihilators
//! and components.

mod hom;
pub mod layout;

pub use hom::ModuleHom;
pub use layout::{Layout, Vertex};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::{left_kernel, smith_normal_form, zero_row, Lattice, Row};
use crate::ring::{Ideal, RingDescriptor, RingElement};
use crate::scalar::Scalar;

/// Chain bound for components over infinite modules.
pub const DEFAULT_CHAIN_BOUND: u64 = 64;

/// Coset representative in reduced form; coordinates are one ring element
/// per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement {
    pub coords: Vec<RingElement>,
}

/// A submodule `N` of an ambient module, stored as the per-vertex lattices
/// of its preimage in the free module (each containing the relations).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    lattices: Vec<Lattice>,
}

impl Submodule {
    pub fn lattices(&self) -> &[Lattice] {
        &self.lattices
    }
}

/// Isomorphism invariants of a submodule viewed as an abelian group (or
/// `F_p[x]`-module): invariant factors in divisibility order, free rank and
/// the element count when finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub divisors: Vec<Scalar>,
    pub free_rank: usize,
    pub cardinality: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub submodule: Submodule,
    /// Least `k` with `l_M(X^k) = l_M(X^{k+1})`.
    pub exponent: u32,
}

#[derive(Clone, Debug)]
pub struct FPModule {
    ring: RingDescriptor,
    g: usize,
    relations: Vec<Vec<RingElement>>,
    layout: Layout,
    rel: Vec<Lattice>,
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.g == other.g && self.rel == other.rel
    }
}

impl FPModule {
    /// Validates the presentation and precomputes the relation lattices.
    pub fn new(ring: RingDescriptor, g: usize, relations: Vec<Vec<RingElement>>) -> Result<FPModule> {
        ring.validate()?;
        for (i, row) in relations.iter().enumerate() {
            if row.len() != g {
                return Err(Error::MalformedElement(format!(
                    "relation {i} has {} entries, expected {g}",
                    row.len()
                )));
            }
            for x in row {
                ring.check_element(x)?;
            }
        }
        let layout = Layout::new(&ring, g);
        let base: Vec<Lattice> = (0..layout.len()).map(|v| layout.modulus_lattice(v)).collect();
        let rel = span_into(&ring, &layout, &base, &relations);
        Ok(FPModule {
            ring,
            g,
            relations,
            layout,
            rel,
        })
    }

    pub fn free(ring: RingDescriptor, g: usize) -> Result<FPModule> {
        FPModule::new(ring, g, Vec::new())
    }

    /// The cyclic module `R / I`.
    pub fn cyclic(ring: RingDescriptor, ideal: &Ideal) -> Result<FPModule> {
        ring.check_ideal(ideal)?;
        let gens = right_ideal_generators(&ring, ideal);
        FPModule::new(ring, 1, gens.into_iter().map(|e| vec![e]).collect())
    }

    /// `R/I_1 + ... + R/I_k`.
    pub fn direct_sum_of_cyclics(ring: RingDescriptor, ideals: &[Ideal]) -> Result<FPModule> {
        let g = ideals.len();
        let mut relations = Vec::new();
        for (k, ideal) in ideals.iter().enumerate() {
            ring.check_ideal(ideal)?;
            for e in right_ideal_generators(&ring, ideal) {
                let mut row = vec![ring.zero(); g];
                row[k] = e;
                relations.push(row);
            }
        }
        FPModule::new(ring, g, relations)
    }

    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let g = self.g + other.g;
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut row = r.clone();
            row.extend((0..other.g).map(|_| self.ring.zero()));
            relations.push(row);
        }
        for r in &other.relations {
            let mut row: Vec<RingElement> = (0..self.g).map(|_| self.ring.zero()).collect();
            row.extend(r.iter().cloned());
            relations.push(row);
        }
        FPModule::new(self.ring.clone(), g, relations)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn num_generators(&self) -> usize {
        self.g
    }

    pub fn relations(&self) -> &[Vec<RingElement>] {
        &self.relations
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn relation_lattices(&self) -> &[Lattice] {
        &self.rel
    }

    pub fn cardinality(&self) -> Option<BigInt> {
        self.invariants(&self.whole()).cardinality
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    fn flatten(&self, coords: &[RingElement]) -> Vec<Row> {
        self.layout.flatten(&self.ring, coords)
    }

    fn unflatten(&self, rows: &[Row]) -> Vec<RingElement> {
        self.layout.unflatten(&self.ring, rows)
    }

    fn reduce_rows(&self, rows: &[Row]) -> Vec<RingElement> {
        let reduced: Vec<Row> = rows.iter().zip(&self.rel).map(|(x, l)| l.reduce(x)).collect();
        self.unflatten(&reduced)
    }

    /// Builds a reduced element from raw coordinates.
    pub fn element(&self, coords: Vec<RingElement>) -> Result<ModuleElement> {
        if coords.len() != self.g {
            return Err(Error::MalformedElement(format!(
                "element has {} coordinates, expected {}",
                coords.len(),
                self.g
            )));
        }
        for x in &coords {
            self.ring.check_element(x)?;
        }
        Ok(self.reduce(&coords))
    }

    pub fn reduce(&self, coords: &[RingElement]) -> ModuleElement {
        ModuleElement {
            coords: self.reduce_rows(&self.flatten(coords)),
        }
    }

    pub fn check_member(&self, m: &ModuleElement) -> Result<()> {
        if m.coords.len() != self.g {
            return Err(Error::AmbientMismatch);
        }
        for x in &m.coords {
            self.ring.check_element(x).map_err(|_| Error::AmbientMismatch)?;
        }
        Ok(())
    }

    pub fn generator(&self, k: usize) -> ModuleElement {
        let mut coords = vec![self.ring.zero(); self.g];
        coords[k] = self.ring.one();
        self.reduce(&coords)
    }

    pub fn generators(&self) -> Vec<ModuleElement> {
        (0..self.g).map(|k| self.generator(k)).collect()
    }

    pub fn zero_element(&self) -> ModuleElement {
        ModuleElement {
            coords: vec![self.ring.zero(); self.g],
        }
    }

    pub fn is_zero(&self, m: &ModuleElement) -> bool {
        self.reduce(&m.coords) == self.zero_element()
    }

    pub fn add(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        let coords: Vec<RingElement> = a.coords.iter().zip(&b.coords).map(|(x, y)| self.ring.add(x, y)).collect();
        self.reduce(&coords)
    }

    pub fn neg(&self, a: &ModuleElement) -> ModuleElement {
        let coords: Vec<RingElement> = a.coords.iter().map(|x| self.ring.neg(x)).collect();
        self.reduce(&coords)
    }

    pub fn sub(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        self.add(a, &self.neg(b))
    }

    /// Right action `m * r`.
    pub fn act(&self, m: &ModuleElement, r: &RingElement) -> ModuleElement {
        let coords: Vec<RingElement> = m.coords.iter().map(|x| self.ring.mul(x, r)).collect();
        self.reduce(&coords)
    }

    pub fn sum_elements<'a, I>(&self, items: I) -> ModuleElement
    where
        I: IntoIterator<Item = &'a ModuleElement>,
    {
        items.into_iter().fold(self.zero_element(), |acc, x| self.add(&acc, x))
    }

    // Submodules.

    pub fn whole(&self) -> Submodule {
        Submodule {
            lattices: (0..self.layout.len())
                .map(|v| Lattice::full(self.layout.pid(v), self.layout.dim(v)))
                .collect(),
        }
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule {
            lattices: self.rel.clone(),
        }
    }

    pub fn check_submodule(&self, s: &Submodule) -> Result<()> {
        if s.lattices.len() != self.rel.len()
            || s.lattices.iter().zip(&self.rel).any(|(w, r)| w.dim() != r.dim() || !w.contains_lattice(r))
        {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Submodule generated by the given elements.
    pub fn submodule(&self, gens: &[ModuleElement]) -> Submodule {
        let rows: Vec<Vec<RingElement>> = gens.iter().map(|m| m.coords.clone()).collect();
        Submodule {
            lattices: span_into(&self.ring, &self.layout, &self.rel, &rows),
        }
    }

    /// A generating set read off the lattice bases (elements supported on a
    /// single vertex).
    pub fn submodule_generators(&self, s: &Submodule) -> Vec<ModuleElement> {
        let mut out = Vec::new();
        for (v, (w, rel)) in s.lattices.iter().zip(&self.rel).enumerate() {
            for b in w.basis() {
                let b = rel.reduce(b);
                if b.iter().all(Scalar::is_zero) {
                    continue;
                }
                let rows: Vec<Row> = (0..self.layout.len())
                    .map(|u| {
                        if u == v {
                            b.clone()
                        } else {
                            zero_row(self.layout.pid(u), self.layout.dim(u))
                        }
                    })
                    .collect();
                let m = ModuleElement {
                    coords: self.unflatten(&rows),
                };
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        out
    }

    pub fn sub_sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule {
            lattices: a.lattices.iter().zip(&b.lattices).map(|(x, y)| x.sum(y)).collect(),
        }
    }

    pub fn sub_sum_all<'a, I>(&self, parts: I) -> Submodule
    where
        I: IntoIterator<Item = &'a Submodule>,
    {
        parts
            .into_iter()
            .fold(self.zero_submodule(), |acc, p| self.sub_sum(&acc, p))
    }

    pub fn sub_intersect(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule {
            lattices: a.lattices.iter().zip(&b.lattices).map(|(x, y)| x.intersect(y)).collect(),
        }
    }

    /// Whether `b` is contained in `a`.
    pub fn sub_contains(&self, a: &Submodule, b: &Submodule) -> bool {
        a.lattices.iter().zip(&b.lattices).all(|(x, y)| x.contains_lattice(y))
    }

    pub fn sub_contains_element(&self, a: &Submodule, m: &ModuleElement) -> bool {
        a.lattices.iter().zip(self.flatten(&m.coords)).all(|(l, x)| l.contains(&x))
    }

    pub fn sub_is_zero(&self, s: &Submodule) -> bool {
        s.lattices == self.rel
    }

    pub fn sub_is_whole(&self, s: &Submodule) -> bool {
        s.lattices.iter().all(Lattice::is_full)
    }

    /// Invariant factors, free rank and cardinality of `s` as a group
    /// (over the PID of each vertex).
    pub fn invariants(&self, s: &Submodule) -> Invariants {
        let mut tors: Vec<Scalar> = Vec::new();
        let mut free = 0;
        let mut card = Some(BigInt::one());
        for (w, r) in s.lattices.iter().zip(&self.rel) {
            let (t, f) = w.quotient_invariants(r);
            free += f;
            if f > 0 {
                card = None;
            }
            if let Some(c) = card.as_mut() {
                for d in &t {
                    *c *= crate::linalg::scalar_norm(w.pid(), d);
                }
            }
            tors.extend(t);
        }
        let pids: Vec<_> = s.lattices.iter().map(Lattice::pid).collect();
        let divisors = if pids.windows(2).all(|w| w[0] == w[1]) && !tors.is_empty() {
            let pid = pids[0];
            let n = tors.len();
            let diag: Vec<Row> = (0..n)
                .map(|i| {
                    let mut r = zero_row(pid, n);
                    r[i] = tors[i].clone();
                    r
                })
                .collect();
            smith_normal_form(pid, &diag, n)
                .expect("smith form of a diagonal matrix")
                .d
                .into_iter()
                .filter(|d| !pid.is_unit(d))
                .collect()
        } else {
            tors
        };
        Invariants {
            divisors,
            free_rank: free,
            cardinality: card,
        }
    }

    // Annihilators.

    /// `r_R(N)` for the submodule `N`.
    pub fn annihilator_of(&self, s: &Submodule) -> Ideal {
        let n = self.layout.len();
        let mut gens = vec![vec![None; n]; n];
        for u in 0..n {
            for v in 0..n {
                if !self.layout.connected(u, v) {
                    continue;
                }
                let moved = Lattice::span(
                    self.layout.pid(v),
                    self.layout.dim(v),
                    s.lattices[u].basis().iter().map(|b| self.layout.phi(u, v, b)),
                )
                .sum(&self.rel[v]);
                gens[u][v] = Some(moved.quotient_exponent(&self.rel[v]));
            }
        }
        self.layout.ideal_from_gens(&self.ring, &gens)
    }

    /// `r_R(NR)` for the submodule generated by `gens` (all generators of
    /// the module when `None`).
    pub fn annihilator(&self, gens: Option<&[ModuleElement]>) -> Result<Ideal> {
        let s = match gens {
            Some(g) => {
                for m in g {
                    self.check_member(m)?;
                }
                self.submodule(g)
            }
            None => self.whole(),
        };
        Ok(self.annihilator_of(&s))
    }

    /// `l_M(X) = {m : m X = 0}`.
    pub fn left_annihilator(&self, x: &Ideal) -> Result<Submodule> {
        self.ring.check_ideal(x)?;
        Ok(self.left_annihilator_u(x))
    }

    fn left_annihilator_u(&self, x: &Ideal) -> Submodule {
        let n = self.layout.len();
        let gens = self.layout.ideal_gens(&self.ring, x);
        let lattices = (0..n)
            .map(|u| {
                let mut w = Lattice::full(self.layout.pid(u), self.layout.dim(u));
                for v in 0..n {
                    let Some(a) = &gens[u][v] else { continue };
                    if a.is_zero() {
                        continue;
                    }
                    let target = self.rel[v].colon(a);
                    if target.is_full() {
                        continue;
                    }
                    let pre = Lattice::preimage(self.layout.pid(u), self.layout.dim(u), &self.layout.phi_matrix(u, v), &target);
                    w = w.intersect(&pre);
                }
                w
            })
            .collect();
        Submodule { lattices }
    }

    /// The submodule `N X`.
    pub fn times_ideal(&self, s: &Submodule, x: &Ideal) -> Result<Submodule> {
        self.ring.check_ideal(x)?;
        let n = self.layout.len();
        let gens = self.layout.ideal_gens(&self.ring, x);
        let lattices = (0..n)
            .map(|v| {
                let pid = self.layout.pid(v);
                let mut rows: Vec<Row> = self.rel[v].basis().to_vec();
                for u in 0..n {
                    let Some(a) = &gens[u][v] else { continue };
                    for b in s.lattices[u].basis() {
                        let moved = self.layout.phi(u, v, b);
                        rows.push(moved.iter().map(|c| pid.mul(a, c)).collect());
                    }
                }
                Lattice::span(pid, self.layout.dim(v), rows)
            })
            .collect();
        Ok(Submodule { lattices })
    }

    /// Default bound on the chain `l_M(X^k)`: `|M|` for finite modules,
    /// [`DEFAULT_CHAIN_BOUND`] otherwise.
    pub fn default_chain_bound(&self) -> u64 {
        match self.cardinality() {
            Some(c) => c.to_u64().unwrap_or(u64::MAX).max(1),
            None => DEFAULT_CHAIN_BOUND,
        }
    }

    /// `C(X) = sum_k l_M(X^k)` with its stabilization exponent.
    pub fn component(&self, x: &Ideal) -> Result<Component> {
        self.component_bounded(x, self.default_chain_bound())
    }

    pub fn component_bounded(&self, x: &Ideal, bound: u64) -> Result<Component> {
        self.ring.check_ideal(x)?;
        let mut power = x.clone();
        let mut current = self.left_annihilator_u(&power);
        let mut k: u64 = 1;
        while k <= bound {
            let next_power = self.ring.product_u(&power, x);
            let next = if next_power == power {
                current.clone()
            } else {
                self.left_annihilator_u(&next_power)
            };
            if next == current {
                return Ok(Component {
                    submodule: current,
                    exponent: k as u32,
                });
            }
            power = next_power;
            current = next;
            k += 1;
        }
        Err(Error::NoStabilization(bound))
    }

    /// Whether `M` is the internal direct sum of the given submodules.
    pub fn is_internal_direct_sum(&self, parts: &[Submodule]) -> Result<bool> {
        for p in parts {
            self.check_submodule(p)?;
        }
        if !self.sub_is_whole(&self.sub_sum_all(parts)) {
            return Ok(false);
        }
        for i in 0..parts.len() {
            let others = self.sub_sum_all(parts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p));
            if !self.sub_is_zero(&self.sub_intersect(&parts[i], &others)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `M / N`.
    pub fn quotient(&self, s: &Submodule) -> Result<FPModule> {
        self.check_submodule(s)?;
        let mut relations = self.relations.clone();
        relations.extend(self.submodule_generators(s).into_iter().map(|m| m.coords));
        let q = FPModule::new(self.ring.clone(), self.g, relations)?;
        if q.rel != s.lattices {
            return Err(Error::VerificationFailed("quotient relations differ from the submodule".into()));
        }
        Ok(q)
    }

    /// Image of a submodule of `self` in the quotient `self / t`, where `q`
    /// is that quotient.
    pub fn project_submodule(&self, q: &FPModule, s: &Submodule) -> Submodule {
        Submodule {
            lattices: s.lattices.iter().zip(&q.rel).map(|(w, r)| w.sum(r)).collect(),
        }
    }

    /// Preimage in `self` of a submodule of the quotient `q = self / t`.
    pub fn lift_submodule(&self, q: &FPModule, s: &Submodule) -> Submodule {
        debug_assert_eq!(s.lattices.len(), q.rel.len());
        Submodule {
            lattices: s.lattices.clone(),
        }
    }

    /// A presentation of the submodule as a module in its own right,
    /// together with the inclusion map.
    pub fn presentation(&self, s: &Submodule) -> Result<(FPModule, ModuleHom)> {
        self.check_submodule(s)?;
        let gens = self.submodule_generators(s);
        let h = gens.len();
        let free = Layout::new(&self.ring, h);
        let flat: Vec<Vec<Row>> = gens.iter().map(|m| self.flatten(&m.coords)).collect();
        let n = self.layout.len();
        let mut relations: Vec<Vec<RingElement>> = Vec::new();
        for v in 0..n {
            let vx = &free.vertices[v];
            let dim_t = self.layout.dim(v);
            let pid = self.layout.pid(v);
            let mut map: Vec<Row> = Vec::with_capacity(free.dim(v));
            for f in &flat {
                for r in 0..vx.rows {
                    let u = self.vertex_at(r, vx.group);
                    map.push(self.layout.phi(u, v, &f[u]));
                }
            }
            let ncols = dim_t;
            let mut stacked = map.clone();
            stacked.extend(self.rel[v].basis().iter().cloned());
            let dim_f = free.dim(v);
            let kernel = left_kernel(pid, &stacked, ncols);
            let mut kl = Lattice::span(pid, dim_f, kernel.into_iter().map(|k| k[..dim_f].to_vec()));
            kl = kl.sum(&free.modulus_lattice(v));
            for b in kl.basis() {
                let rows: Vec<Row> = (0..n)
                    .map(|u| if u == v { b.clone() } else { zero_row(free.pid(u), free.dim(u)) })
                    .collect();
                relations.push(free.unflatten(&self.ring, &rows));
            }
        }
        let module = FPModule::new(self.ring.clone(), h, relations)?;
        let inclusion = ModuleHom { images: gens };
        inclusion.check(&module, self)?;
        Ok((module, inclusion))
    }

    fn vertex_at(&self, pos: usize, group: usize) -> usize {
        self.layout
            .vertices
            .iter()
            .position(|x| x.pos == pos && x.group == group)
            .expect("vertex exists")
    }
}

// Per-vertex lattices of `base + sum_x x R` for elements `x` of `R^g`.
fn span_into(ring: &RingDescriptor, layout: &Layout, base: &[Lattice], elems: &[Vec<RingElement>]) -> Vec<Lattice> {
    let flat: Vec<Vec<Row>> = elems.iter().map(|e| layout.flatten(ring, e)).collect();
    (0..layout.len())
        .map(|v| {
            let mut rows: Vec<Row> = base[v].basis().to_vec();
            for f in &flat {
                for u in 0..layout.len() {
                    if layout.connected(u, v) {
                        rows.push(layout.phi(u, v, &f[u]));
                    }
                }
            }
            Lattice::span(layout.pid(v), layout.dim(v), rows)
        })
        .collect()
}

/// Elements generating the two-sided ideal `I` as a right ideal.
pub(crate) fn right_ideal_generators(ring: &RingDescriptor, ideal: &Ideal) -> Vec<RingElement> {
    match ring {
        RingDescriptor::Triangular { n, base } => {
            let mut out = Vec::new();
            for i in 0..*n {
                for j in i..*n {
                    for e in layout::base_ideal_elements(base, ideal.entry(i, j)) {
                        if !base.is_zero(&e) {
                            out.push(ring.matrix_unit(i, j, e));
                        }
                    }
                }
            }
            out
        }
        _ => layout::base_ideal_elements(ring, ideal)
            .into_iter()
            .filter(|e| !ring.is_zero(e))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_module(rows: &[&[i64]], g: usize) -> FPModule {
        let z = RingDescriptor::Integers;
        FPModule::new(
            z.clone(),
            g,
            rows.iter().map(|r| r.iter().map(|&v| z.from_i64(v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn presentation_and_invariants() {
        let m = z_module(&[&[2, 0], &[0, 3]], 2);
        let inv = m.invariants(&m.whole());
        assert_eq!(inv.divisors, vec![Scalar::int(6)]);
        assert_eq!(inv.cardinality, Some(BigInt::from(6)));
        let free = z_module(&[], 1);
        assert_eq!(free.invariants(&free.whole()).free_rank, 1);
    }

    #[test]
    fn annihilators_over_integers() {
        let m = z_module(&[&[2, 0], &[0, 3]], 2);
        assert_eq!(m.annihilator(None).unwrap(), Ideal::gen(6));
        let m = z_module(&[&[4, 0], &[0, 6]], 2);
        assert_eq!(m.annihilator(None).unwrap(), Ideal::gen(12));
        let l = m.left_annihilator(&Ideal::gen(4)).unwrap();
        let inv = m.invariants(&l);
        assert_eq!(inv.divisors, vec![Scalar::int(2), Scalar::int(4)]);
        let l = m.left_annihilator(&Ideal::gen(3)).unwrap();
        assert_eq!(m.invariants(&l).divisors, vec![Scalar::int(3)]);
        let l = z_module(&[&[2, 0], &[0, 3]], 2);
        assert!(l.sub_is_zero(&l.left_annihilator(&Ideal::gen(5)).unwrap()));
    }

    #[test]
    fn component_of_z12() {
        let m = z_module(&[&[12]], 1);
        let c = m.component(&Ideal::gen(2)).unwrap();
        assert_eq!(c.exponent, 2);
        assert_eq!(m.invariants(&c.submodule).divisors, vec![Scalar::int(4)]);
        let free = z_module(&[], 1);
        let c = free.component(&Ideal::gen(2)).unwrap();
        assert_eq!(c.exponent, 1);
        assert!(free.sub_is_zero(&c.submodule));
    }

    #[test]
    fn direct_sum_checks() {
        let m = z_module(&[&[6]], 1);
        let a = m.left_annihilator(&Ideal::gen(2)).unwrap();
        let b = m.left_annihilator(&Ideal::gen(3)).unwrap();
        assert!(m.is_internal_direct_sum(&[a, b]).unwrap());
        let m = z_module(&[&[4]], 1);
        let half = m.submodule(&[m.reduce(&[RingElement::Int(2.into())])]);
        assert!(!m.is_internal_direct_sum(&[half.clone(), half]).unwrap());
    }

    #[test]
    fn quotient_and_presentation_round_trip() {
        let m = z_module(&[&[4, 0], &[0, 6]], 2);
        let l = m.left_annihilator(&Ideal::gen(2)).unwrap();
        let q = m.quotient(&l).unwrap();
        assert_eq!(q.cardinality(), Some(BigInt::from(6)));
        let (p, _) = m.presentation(&l).unwrap();
        assert_eq!(p.cardinality(), Some(BigInt::from(4)));
        assert_eq!(p.invariants(&p.whole()).divisors, m.invariants(&l).divisors);
    }

    #[test]
    fn triangular_cyclic_module() {
        let t = RingDescriptor::triangular(2, RingDescriptor::Modular(2)).unwrap();
        let m = FPModule::free(t.clone(), 1).unwrap();
        assert_eq!(m.cardinality(), Some(BigInt::from(8)));
        let ps = t.diagonal_vanishing_ideals().unwrap();
        let a = t.intersect_all(&ps);
        let ma = m.times_ideal(&m.whole(), &a).unwrap();
        let q = m.quotient(&ma).unwrap();
        assert_eq!(q.cardinality(), Some(BigInt::from(4)));
        assert_eq!(m.annihilator(None).unwrap(), t.zero_ideal());
        let (p, _) = m.presentation(&ma).unwrap();
        assert_eq!(p.cardinality(), Some(BigInt::from(2)));
    }
}
