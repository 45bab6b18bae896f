use super::{FPModule, ModuleElement, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{zero_row, Lattice, Row};
use crate::ring::RingElement;

/// A module homomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    pub images: Vec<ModuleElement>,
}

impl ModuleHom {
    /// Checks that every source relation maps to zero.
    pub fn check(&self, source: &FPModule, target: &FPModule) -> Result<()> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", source.ring(), target.ring())));
        }
        if self.images.len() != source.num_generators() {
            return Err(Error::AmbientMismatch);
        }
        for m in &self.images {
            target.check_member(m)?;
        }
        for (i, rel) in source.relations().iter().enumerate() {
            let image = self.apply_coords(target, rel);
            if !target.is_zero(&image) {
                return Err(Error::VerificationFailed(format!("relation {i} does not map to zero")));
            }
        }
        Ok(())
    }

    fn apply_coords(&self, target: &FPModule, coords: &[RingElement]) -> ModuleElement {
        let terms: Vec<ModuleElement> = self
            .images
            .iter()
            .zip(coords)
            .map(|(y, x)| target.act(y, x))
            .collect();
        target.sum_elements(&terms)
    }

    /// `f(x) = sum_k f(e_k) x_k`.
    pub fn apply(&self, target: &FPModule, x: &ModuleElement) -> ModuleElement {
        self.apply_coords(target, &x.coords)
    }

    pub fn image(&self, source: &FPModule, target: &FPModule, s: &Submodule) -> Submodule {
        let imgs: Vec<ModuleElement> = source
            .submodule_generators(s)
            .iter()
            .map(|m| self.apply(target, m))
            .collect();
        target.submodule(&imgs)
    }

    pub fn compose(&self, after: &ModuleHom, middle: &FPModule) -> ModuleHom {
        ModuleHom {
            images: self.images.iter().map(|y| after.apply(middle, y)).collect(),
        }
    }
}

impl FPModule {
    /// A generating set of `Hom_R(self, target)` as a module over the base
    /// PID, for modules over a basic ring.
    pub fn hom_generators(&self, target: &FPModule) -> Result<Vec<ModuleHom>> {
        if self.ring() != target.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring(), target.ring())));
        }
        let Some((pid, _)) = self.ring().basic() else {
            return Err(Error::Unsupported("homomorphism lattices need a basic ring".into()));
        };
        let g = self.num_generators();
        let d = target.num_generators();
        let rels = self.relations();
        let rcount = rels.len();
        let trel = &target.relation_lattices()[0];
        // unknowns: the images y_k in D^d; constraint: sum_k rho_jk y_k in Rel_N
        let source_dim = g * d;
        let target_dim = rcount * d;
        let mut map: Vec<Row> = vec![zero_row(pid, target_dim); source_dim];
        for (k, row) in map.chunks_mut(d).enumerate() {
            for (c, r) in row.iter_mut().enumerate() {
                for (j, rel) in rels.iter().enumerate() {
                    r[j * d + c] = self.ring().to_scalar(&rel[k]);
                }
            }
        }
        let block = Lattice::span(
            pid,
            target_dim,
            (0..rcount).flat_map(|j| {
                trel.basis().iter().map(move |b| {
                    let mut r = zero_row(pid, target_dim);
                    r[j * d..(j + 1) * d].clone_from_slice(b);
                    r
                })
            }),
        );
        let sols = Lattice::preimage(pid, source_dim, &map, &block);
        let mut out = Vec::new();
        for b in sols.basis() {
            let images: Vec<ModuleElement> = (0..g)
                .map(|k| {
                    let coords: Vec<RingElement> =
                        b[k * d..(k + 1) * d].iter().map(|s| self.ring().from_scalar(s)).collect();
                    target.reduce(&coords)
                })
                .collect();
            let f = ModuleHom { images };
            f.check(self, target)?;
            out.push(f);
        }
        Ok(out)
    }
}
