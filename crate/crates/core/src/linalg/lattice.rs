use num_bigint::BigInt;
use num_traits::One;

use super::{echelon, is_zero_row, left_kernel, row_scale, row_sub, smith_normal_form, vec_mat, zero_row, Row};
use crate::scalar::{Pid, Scalar};

/// A submodule of `D^dim` for a PID `D`, stored by its canonical Hermite
/// basis. Two lattices are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pid: Pid,
    dim: usize,
    basis: Vec<Row>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn span<I>(pid: Pid, dim: usize, gens: I) -> Lattice
    where
        I: IntoIterator<Item = Row>,
    {
        let rows: Vec<Row> = gens.into_iter().filter(|r| !is_zero_row(r)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == dim));
        let e = echelon(pid, &rows, dim, false);
        Lattice {
            pid,
            dim,
            basis: e.basis,
            pivots: e.pivots,
        }
    }

    pub fn zero(pid: Pid, dim: usize) -> Lattice {
        Lattice {
            pid,
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(pid: Pid, dim: usize) -> Lattice {
        Lattice::span(pid, dim, super::identity(pid, dim))
    }

    pub fn pid(&self) -> Pid {
        self.pid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && self.basis.iter().enumerate().all(|(i, r)| self.pid.is_one(&r[i]))
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[Scalar]) -> Row {
        let mut v = v.to_vec();
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let (q, _) = self.pid.div_rem(&v[c], &b[c]);
            if !q.is_zero() {
                v = row_sub(self.pid, &v, &row_scale(self.pid, &q, b));
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_row(&self.reduce(v))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[Scalar]) -> Option<Row> {
        let mut v = v.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = self.pid.div_rem(&v[c], &b[c]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                v = row_sub(self.pid, &v, &row_scale(self.pid, &q, b));
            }
            out.push(q);
        }
        is_zero_row(&v).then_some(out)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::span(
            self.pid,
            self.dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.pid, self.dim);
        }
        let stacked: Vec<Row> = self.basis.iter().chain(&other.basis).cloned().collect();
        let n = self.basis.len();
        let gens = left_kernel(self.pid, &stacked, self.dim)
            .into_iter()
            .map(|k| vec_mat(self.pid, &k[..n], &self.basis, self.dim));
        Lattice::span(self.pid, self.dim, gens)
    }

    /// Image under the linear map `x -> x * map`, `map` being `dim x target_dim`.
    pub fn image(&self, map: &[Row], target_dim: usize) -> Lattice {
        Lattice::span(
            self.pid,
            target_dim,
            self.basis.iter().map(|b| vec_mat(self.pid, b, map, target_dim)),
        )
    }

    /// `{x in D^source_dim : x * map in target}`.
    pub fn preimage(pid: Pid, source_dim: usize, map: &[Row], target: &Lattice) -> Lattice {
        let stacked: Vec<Row> = map.iter().chain(&target.basis).cloned().collect();
        let gens = left_kernel(pid, &stacked, target.dim)
            .into_iter()
            .map(|k| k[..source_dim].to_vec());
        Lattice::span(pid, source_dim, gens)
    }

    pub fn scale(&self, a: &Scalar) -> Lattice {
        Lattice::span(
            self.pid,
            self.dim,
            self.basis.iter().map(|b| row_scale(self.pid, a, b)),
        )
    }

    /// `{x : a x in self}`.
    pub fn colon(&self, a: &Scalar) -> Lattice {
        if a.is_zero() {
            return Lattice::full(self.pid, self.dim);
        }
        let map: Vec<Row> = (0..self.dim)
            .map(|i| {
                let mut r = zero_row(self.pid, self.dim);
                r[i] = a.clone();
                r
            })
            .collect();
        Lattice::preimage(self.pid, self.dim, &map, self)
    }

    /// Invariant factors of `self / sub`: nonunit elementary divisors in
    /// divisibility order and the free rank.
    pub fn quotient_invariants(&self, sub: &Lattice) -> (Vec<Scalar>, usize) {
        assert!(self.contains_lattice(sub), "quotient of a lattice by a non-sublattice");
        let r = self.rank();
        let rows: Vec<Row> = sub
            .basis
            .iter()
            .map(|b| self.coords(b).expect("sublattice coordinates"))
            .collect();
        if rows.is_empty() {
            return (Vec::new(), r);
        }
        let snf = smith_normal_form(self.pid, &rows, r).expect("smith normal form verification");
        let nonzero: Vec<&Scalar> = snf.d.iter().filter(|d| !d.is_zero()).collect();
        let free = r - nonzero.len();
        let tors = nonzero
            .into_iter()
            .filter(|d| !self.pid.is_unit(d))
            .cloned()
            .collect();
        (tors, free)
    }

    /// Number of elements of `self / sub`, `None` when infinite.
    pub fn quotient_size(&self, sub: &Lattice) -> Option<BigInt> {
        let (tors, free) = self.quotient_invariants(sub);
        if free > 0 {
            return None;
        }
        let mut total = BigInt::one();
        for d in tors {
            total *= scalar_norm(self.pid, &d);
        }
        Some(total)
    }

    /// Exponent of `self / sub` (canonical generator of its annihilator);
    /// zero when the quotient is infinite.
    pub fn quotient_exponent(&self, sub: &Lattice) -> Scalar {
        let (tors, free) = self.quotient_invariants(sub);
        if free > 0 {
            return self.pid.zero();
        }
        tors.last().cloned().unwrap_or_else(|| self.pid.one())
    }
}

/// `|D / dD|` for nonzero `d`.
pub(crate) fn scalar_norm(pid: Pid, d: &Scalar) -> BigInt {
    match (pid, d) {
        (Pid::Integers, Scalar::Int(n)) => num_traits::Signed::abs(n),
        (Pid::Poly(p), Scalar::Poly(f)) => {
            let deg = f.degree().expect("norm of the zero polynomial");
            num_traits::pow(BigInt::from(p), deg)
        }
        _ => panic!("scalar does not belong to the given domain"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Row {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn intersection_and_sum_of_cyclic_lattices() {
        let z = Pid::Integers;
        let a = Lattice::span(z, 1, [row(&[4])]);
        let b = Lattice::span(z, 1, [row(&[6])]);
        assert_eq!(a.intersect(&b), Lattice::span(z, 1, [row(&[12])]));
        assert_eq!(a.sum(&b), Lattice::span(z, 1, [row(&[2])]));
    }

    #[test]
    fn quotient_invariants_of_diagonal() {
        let z = Pid::Integers;
        let full = Lattice::full(z, 3);
        let sub = Lattice::span(z, 3, [row(&[4, 0, 0]), row(&[0, 6, 0])]);
        let (tors, free) = full.quotient_invariants(&sub);
        assert_eq!(tors, vec![Scalar::int(2), Scalar::int(12)]);
        assert_eq!(free, 1);
        assert_eq!(full.quotient_size(&sub), None);
        let sub = sub.sum(&Lattice::span(z, 3, [row(&[0, 0, 5])]));
        assert_eq!(full.quotient_size(&sub), Some(BigInt::from(120)));
        assert_eq!(full.quotient_exponent(&sub), Scalar::int(60));
    }

    #[test]
    fn preimage_and_colon() {
        let z = Pid::Integers;
        let l = Lattice::span(z, 2, [row(&[12, 0]), row(&[0, 12])]);
        assert_eq!(l.colon(&Scalar::int(4)), Lattice::span(z, 2, [row(&[3, 0]), row(&[0, 3])]));
        let map = vec![row(&[1, 1])];
        let pre = Lattice::preimage(z, 1, &map, &l);
        assert_eq!(pre, Lattice::span(z, 1, [row(&[12])]));
        assert!(l.contains(&row(&[24, -12])));
        assert_eq!(l.coords(&row(&[24, -12])), Some(row(&[2, -1])));
        assert!(Lattice::full(z, 2).is_full());
        assert!(!l.is_full());
    }
}
