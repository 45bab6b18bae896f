//! Flattening of `R^g` into lattices over the underlying PIDs.
//!
//! A right module over a triangular ring `T_n(B)` splits along the diagonal
//! idempotents into pieces `M e_cc`, and right multiplication by `e_uv`
//! (`u <= v`) maps piece `u` into piece `v`. For the free module `T^g` piece
//! `c` is column `c` of each generator, i.e. `B^{(c+1) g}`. Products split
//! into their factors and basic rings are a single piece. Each piece over a
//! basic base ring is a *vertex*; all module computations run vertex by
//! vertex on lattices in `D^dim`, where `D` is the integers or `F_p[x]` and
//! residue rings are lifted by including `m D^dim` in every lattice.

use crate::linalg::{zero_row, Lattice, Row};
use crate::ring::{Ideal, RingDescriptor, RingElement};
use crate::scalar::{Pid, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub pid: Pid,
    pub modulus: Option<Scalar>,
    /// Rows per generator: `c + 1` for column `c` of a triangular ring.
    pub rows: usize,
    /// Index of the basic base ring this vertex lives over.
    pub group: usize,
    /// Diagonal position (column) inside a triangular ring.
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub g: usize,
    pub vertices: Vec<Vertex>,
}

fn base_vertices(ring: &RingDescriptor) -> Vec<(Pid, Option<Scalar>)> {
    match ring {
        RingDescriptor::Product(fs) => fs.iter().flat_map(base_vertices).collect(),
        RingDescriptor::Triangular { .. } => panic!("triangular ring used as a base"),
        _ => vec![ring.basic().unwrap()],
    }
}

fn base_count(ring: &RingDescriptor) -> usize {
    match ring {
        RingDescriptor::Product(fs) => fs.iter().map(base_count).sum(),
        _ => 1,
    }
}

// One row per base vertex, one entry per element.
fn base_flatten(ring: &RingDescriptor, elems: &[&RingElement]) -> Vec<Row> {
    match ring {
        RingDescriptor::Product(fs) => fs
            .iter()
            .enumerate()
            .flat_map(|(l, f)| {
                let comps: Vec<&RingElement> = elems
                    .iter()
                    .map(|e| match e {
                        RingElement::Tuple(xs) => &xs[l],
                        _ => panic!("expected a tuple element"),
                    })
                    .collect();
                base_flatten(f, &comps)
            })
            .collect(),
        _ => vec![elems.iter().map(|e| ring.to_scalar(e)).collect()],
    }
}

fn base_unflatten(ring: &RingDescriptor, rows: &[Row]) -> Vec<RingElement> {
    match ring {
        RingDescriptor::Product(fs) => {
            let len = rows[0].len();
            let mut parts: Vec<Vec<RingElement>> = Vec::with_capacity(fs.len());
            let mut at = 0;
            for f in fs {
                let k = base_count(f);
                parts.push(base_unflatten(f, &rows[at..at + k]));
                at += k;
            }
            (0..len)
                .map(|i| RingElement::Tuple(parts.iter().map(|p| p[i].clone()).collect()))
                .collect()
        }
        _ => rows[0].iter().map(|s| ring.from_scalar(s)).collect(),
    }
}

fn base_ideal_gens(ring: &RingDescriptor, ideal: &Ideal) -> Vec<Scalar> {
    match (ring, ideal) {
        (RingDescriptor::Product(fs), Ideal::Product(parts)) => {
            fs.iter().zip(parts).flat_map(|(f, p)| base_ideal_gens(f, p)).collect()
        }
        (_, Ideal::Principal(g)) => vec![g.clone()],
        _ => panic!("ideal representation does not match ring {ring}"),
    }
}

fn base_ideal_from_gens(ring: &RingDescriptor, gens: &[Scalar]) -> Ideal {
    match ring {
        RingDescriptor::Product(fs) => {
            let mut at = 0;
            let mut parts = Vec::with_capacity(fs.len());
            for f in fs {
                let k = base_count(f);
                parts.push(base_ideal_from_gens(f, &gens[at..at + k]));
                at += k;
            }
            Ideal::Product(parts)
        }
        _ => ring.basic_ideal(&gens[0]),
    }
}

/// Ring elements generating an ideal of a commutative base as a module.
pub(crate) fn base_ideal_elements(ring: &RingDescriptor, ideal: &Ideal) -> Vec<RingElement> {
    match (ring, ideal) {
        (RingDescriptor::Product(fs), Ideal::Product(parts)) => {
            let mut out = Vec::new();
            for (l, (f, p)) in fs.iter().zip(parts).enumerate() {
                for e in base_ideal_elements(f, p) {
                    let mut t: Vec<RingElement> = fs.iter().map(|h| h.zero()).collect();
                    t[l] = e;
                    out.push(RingElement::Tuple(t));
                }
            }
            out
        }
        (_, Ideal::Principal(g)) => vec![ring.from_scalar(g)],
        _ => panic!("ideal representation does not match ring {ring}"),
    }
}

impl Layout {
    pub fn new(ring: &RingDescriptor, g: usize) -> Layout {
        let vertices = match ring {
            RingDescriptor::Triangular { n, base } => {
                let bases = base_vertices(base);
                (0..*n)
                    .flat_map(|c| {
                        bases.iter().enumerate().map(move |(b, (pid, m))| Vertex {
                            pid: *pid,
                            modulus: m.clone(),
                            rows: c + 1,
                            group: b,
                            pos: c,
                        })
                    })
                    .collect()
            }
            _ => base_vertices(ring)
                .into_iter()
                .enumerate()
                .map(|(b, (pid, m))| Vertex {
                    pid,
                    modulus: m,
                    rows: 1,
                    group: b,
                    pos: 0,
                })
                .collect(),
        };
        Layout { g, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self, v: usize) -> usize {
        self.vertices[v].rows * self.g
    }

    pub fn pid(&self, v: usize) -> Pid {
        self.vertices[v].pid
    }

    /// Whether right multiplication by ring elements maps vertex `u` into `v`.
    pub fn connected(&self, u: usize, v: usize) -> bool {
        let (a, b) = (&self.vertices[u], &self.vertices[v]);
        a.group == b.group && a.pos <= b.pos
    }

    /// The embedding `phi_uv` applied to one vector.
    pub fn phi(&self, u: usize, v: usize, x: &[Scalar]) -> Row {
        let (ru, rv) = (self.vertices[u].rows, self.vertices[v].rows);
        let mut out = zero_row(self.pid(v), self.dim(v));
        for k in 0..self.g {
            for r in 0..ru {
                out[k * rv + r] = x[k * ru + r].clone();
            }
        }
        out
    }

    pub fn phi_matrix(&self, u: usize, v: usize) -> Vec<Row> {
        let pid = self.pid(u);
        (0..self.dim(u))
            .map(|i| {
                let mut e = zero_row(pid, self.dim(u));
                e[i] = pid.one();
                self.phi(u, v, &e)
            })
            .collect()
    }

    pub fn modulus_lattice(&self, v: usize) -> Lattice {
        let vx = &self.vertices[v];
        let d = self.dim(v);
        match &vx.modulus {
            None => Lattice::zero(vx.pid, d),
            Some(m) => Lattice::span(
                vx.pid,
                d,
                (0..d).map(|i| {
                    let mut r = zero_row(vx.pid, d);
                    r[i] = m.clone();
                    r
                }),
            ),
        }
    }

    /// Per-vertex coordinate vectors of an element of `R^g`.
    pub fn flatten(&self, ring: &RingDescriptor, elems: &[RingElement]) -> Vec<Row> {
        debug_assert_eq!(elems.len(), self.g);
        match ring {
            RingDescriptor::Triangular { n, base } => {
                let mut out = Vec::with_capacity(self.vertices.len());
                for c in 0..*n {
                    let entries: Vec<&RingElement> = elems
                        .iter()
                        .flat_map(|e| match e {
                            RingElement::Matrix(m) => (0..=c).map(move |r| &m[r][c]),
                            _ => panic!("expected a matrix element"),
                        })
                        .collect();
                    out.extend(base_flatten(base, &entries));
                }
                out
            }
            _ => {
                let refs: Vec<&RingElement> = elems.iter().collect();
                base_flatten(ring, &refs)
            }
        }
    }

    pub fn unflatten(&self, ring: &RingDescriptor, rows: &[Row]) -> Vec<RingElement> {
        if self.g == 0 {
            return Vec::new();
        }
        match ring {
            RingDescriptor::Triangular { n, base } => {
                let nb = base_count(base);
                let mut mats: Vec<Vec<Vec<RingElement>>> = vec![vec![vec![base.zero(); *n]; *n]; self.g];
                for c in 0..*n {
                    let entries = base_unflatten(base, &rows[c * nb..(c + 1) * nb]);
                    for (k, mat) in mats.iter_mut().enumerate() {
                        for r in 0..=c {
                            mat[r][c] = entries[k * (c + 1) + r].clone();
                        }
                    }
                }
                mats.into_iter().map(RingElement::Matrix).collect()
            }
            _ => base_unflatten(ring, rows),
        }
    }

    /// Generators of the ideal's entries between connected vertices,
    /// indexed `[u][v]`.
    pub fn ideal_gens(&self, ring: &RingDescriptor, ideal: &Ideal) -> Vec<Vec<Option<Scalar>>> {
        let n = self.vertices.len();
        let mut out = vec![vec![None; n]; n];
        match ring {
            RingDescriptor::Triangular { base, .. } => {
                for u in 0..n {
                    for v in 0..n {
                        if self.connected(u, v) {
                            let (a, b) = (&self.vertices[u], &self.vertices[v]);
                            let gens = base_ideal_gens(base, ideal.entry(a.pos, b.pos));
                            out[u][v] = Some(gens[a.group].clone());
                        }
                    }
                }
            }
            _ => {
                for (v, g) in base_ideal_gens(ring, ideal).into_iter().enumerate() {
                    out[v][v] = Some(g);
                }
            }
        }
        out
    }

    /// Inverse of [`Layout::ideal_gens`]; entries must be supplied for every
    /// connected pair.
    pub fn ideal_from_gens(&self, ring: &RingDescriptor, gens: &[Vec<Option<Scalar>>]) -> Ideal {
        match ring {
            RingDescriptor::Triangular { base, .. } => {
                let nb = base_count(base);
                ring.triangular_ideal(|i, j| {
                    let entry: Vec<Scalar> = (0..nb)
                        .map(|b| gens[i * nb + b][j * nb + b].clone().expect("missing ideal entry"))
                        .collect();
                    base_ideal_from_gens(base, &entry)
                })
            }
            _ => {
                let diag: Vec<Scalar> = (0..self.vertices.len())
                    .map(|v| gens[v][v].clone().expect("missing ideal entry"))
                    .collect();
                base_ideal_from_gens(ring, &diag)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_flatten_round_trip() {
        let t = RingDescriptor::triangular(3, RingDescriptor::Modular(4)).unwrap();
        let layout = Layout::new(&t, 2);
        assert_eq!(layout.len(), 3);
        assert_eq!(layout.dim(2), 6);
        let a = RingElement::Matrix(vec![
            vec![RingElement::Mod(1), RingElement::Mod(2), RingElement::Mod(3)],
            vec![RingElement::Mod(0), RingElement::Mod(1), RingElement::Mod(0)],
            vec![RingElement::Mod(0), RingElement::Mod(0), RingElement::Mod(2)],
        ]);
        let elems = vec![a, t.one()];
        let rows = layout.flatten(&t, &elems);
        assert_eq!(rows[1], vec![Scalar::int(2), Scalar::int(1), Scalar::int(0), Scalar::int(1)]);
        assert_eq!(layout.unflatten(&t, &rows), elems);
    }

    #[test]
    fn product_ideal_gens_round_trip() {
        let r = RingDescriptor::product(vec![RingDescriptor::Modular(4), RingDescriptor::Integers]).unwrap();
        let layout = Layout::new(&r, 1);
        let i = Ideal::Product(vec![Ideal::gen(2), Ideal::gen(5)]);
        let gens = layout.ideal_gens(&r, &i);
        assert_eq!(layout.ideal_from_gens(&r, &gens), i);
    }

    #[test]
    fn triangular_ideal_gens_round_trip() {
        let t = RingDescriptor::triangular(2, RingDescriptor::Integers).unwrap();
        let layout = Layout::new(&t, 1);
        let i = t.triangular_ideal(|a, b| Ideal::gen(if a == b { 6 } else { 2 }));
        let gens = layout.ideal_gens(&t, &i);
        assert!(gens[1][0].is_none());
        assert_eq!(layout.ideal_from_gens(&t, &gens), i);
    }
}
