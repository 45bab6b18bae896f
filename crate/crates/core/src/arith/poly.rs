//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are stored little-endian, reduced into `[0, p)` and trimmed so
//! that the leading coefficient is nonzero. The zero polynomial has no
//! coefficients. The prime is passed explicitly to every operation.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest degree accepted by [`factor`].
pub const MAX_FACTOR_DEGREE: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    add_mod(a, p - b % p, p)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero in F_{p}");
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Poly {
    pub fn new(coeffs: Vec<u64>, p: u64) -> Self {
        let mut poly = Poly {
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Builds a polynomial from signed coefficients.
    pub fn from_signed(coeffs: &[i64], p: u64) -> Self {
        let pm = p as i128;
        Poly::new(
            coeffs
                .iter()
                .map(|&c| ((c as i128 % pm + pm) % pm) as u64)
                .collect(),
            p,
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Poly::new(vec![c], p)
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, other: &Poly, p: u64) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                add_mod(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                    p,
                )
            })
            .collect();
        Poly::new(coeffs, p)
    }

    pub fn neg(&self, p: u64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect(), p)
    }

    pub fn sub(&self, other: &Poly, p: u64) -> Poly {
        self.add(&other.neg(p), p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect(), p)
    }

    pub fn mul(&self, other: &Poly, p: u64) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        Poly::new(out, p)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly, p: u64) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = inv_mod(divisor.lead(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv, p);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, b, p), p);
            }
        }
        rem.truncate(dd);
        (Poly::new(quot, p), Poly::new(rem, p))
    }

    pub fn rem(&self, divisor: &Poly, p: u64) -> Poly {
        self.div_rem(divisor, p).1
    }

    /// Monic associate together with the unit it was scaled by.
    pub fn monic(&self, p: u64) -> (Poly, u64) {
        if self.is_zero() {
            return (Poly::zero(), 1);
        }
        let inv = inv_mod(self.lead(), p);
        (self.scale(inv, p), inv)
    }

    pub fn pow(&self, mut exp: u64, p: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base, p);
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly, p: u64) -> Poly {
        let mut base = self.rem(modulus, p);
        let mut acc = Poly::one().rem(modulus, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base, p).rem(modulus, p);
            }
        }
        acc
    }

    pub fn derivative(&self, p: u64) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect();
        Poly::new(coeffs, p)
    }

    /// Evaluates at a point of F_p.
    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }
}

/// Monic gcd.
pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y, p);
        x = std::mem::replace(&mut y, r);
    }
    x.monic(p).0
}

/// Returns `(g, s, t)` with `g` monic (or zero) and `s*a + t*b = g`.
pub fn ext_gcd(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly, Poly) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (Poly::one(), Poly::zero());
    let (mut old_t, mut t) = (Poly::zero(), Poly::one());
    while !r.is_zero() {
        let (q, rem) = old_r.div_rem(&r, p);
        old_r = std::mem::replace(&mut r, rem);
        let next_s = old_s.sub(&q.mul(&s, p), p);
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t.sub(&q.mul(&t, p), p);
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_zero() {
        return (old_r, old_s, old_t);
    }
    let inv = inv_mod(old_r.lead(), p);
    (old_r.scale(inv, p), old_s.scale(inv, p), old_t.scale(inv, p))
}

// Input monic with nonzero degree; output squarefree parts g_i with multiplicity i.
fn squarefree_factorization(f: &Poly, p: u64) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let mut c = gcd(f, &f.derivative(p), p);
    let mut w = f.div_rem(&c, p).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd(&w, &c, p);
        let fac = w.div_rem(&y, p).0;
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_rem(&w, p).0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power; F_p is fixed by Frobenius so the root keeps coefficients.
        let root_coeffs: Vec<u64> = c.coeffs.iter().step_by(p as usize).copied().collect();
        let root = Poly::new(root_coeffs, p);
        for (g, e) in squarefree_factorization(&root, p) {
            out.push((g, e * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = Poly::x().rem(&g, p);
    let mut i = 1usize;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(p, &g, p);
        let d = gcd(&g, &h.sub(&Poly::x(), p), p);
        if !d.is_one() {
            g = g.div_rem(&d, p).0;
            h = h.rem(&g, p);
            out.push((d, i));
        }
        i += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let deg = g.degree().unwrap();
        out.push((g, deg));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.degree().unwrap_or(0);
    if n == d {
        out.push(f.clone());
        return;
    }
    loop {
        let a = Poly::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace of a from F_{2^d} down to F_2.
            let mut term = a.rem(f, p);
            let mut acc = term.clone();
            for _ in 1..d {
                term = term.mul(&term, p).rem(f, p);
                acc = acc.add(&term, p);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            let mut frob = a.rem(f, p);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.pow_mod(p, f, p);
                norm = norm.mul(&frob, p).rem(f, p);
            }
            norm.pow_mod((p - 1) / 2, f, p).sub(&Poly::one(), p)
        };
        let g = gcd(&b, f, p);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&h.monic(p).0, d, p, rng, out);
            return;
        }
    }
}

/// Factorization into monic irreducibles with multiplicities, sorted by
/// degree then coefficients. The leading coefficient is discarded.
pub fn factor(f: &Poly, p: u64) -> Result<Vec<(Poly, u32)>> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::Unsupported("cannot factor the zero polynomial".into()))?;
    if deg > MAX_FACTOR_DEGREE {
        return Err(Error::Unsupported(format!(
            "polynomial degree {deg} exceeds the factorization cap {MAX_FACTOR_DEGREE}"
        )));
    }
    let monic = f.monic(p).0;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let seed = monic
        .coeffs
        .iter()
        .fold(p, |acc, &c| acc.wrapping_mul(1_000_003).wrapping_add(c));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(Poly, u32)> = Vec::new();
    for (sf, mult) in squarefree_factorization(&monic, p) {
        for (block, d) in distinct_degree(&sf, p) {
            let mut irreducibles = Vec::new();
            equal_degree(&block, d, p, &mut rng, &mut irreducibles);
            all.extend(irreducibles.into_iter().map(|g| (g, mult)));
        }
    }
    all.sort();
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, e) in all {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(merged)
}

pub fn is_irreducible(f: &Poly, p: u64) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fs = factor(f, p)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// Product of the distinct monic irreducible factors; zero maps to zero.
pub fn radical(f: &Poly, p: u64) -> Result<Poly> {
    if f.is_zero() {
        return Ok(Poly::zero());
    }
    Ok(factor(f, p)?
        .into_iter()
        .fold(Poly::one(), |acc, (g, _)| acc.mul(&g, p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &Poly, p: u64) -> bool {
        // Trial division by every monic polynomial of degree 1..=deg/2.
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut v = idx;
                for _ in 0..d {
                    coeffs.push(v % p);
                    v /= p;
                }
                coeffs.push(1);
                let g = Poly::new(coeffs, p);
                if f.rem(&g, p).is_zero() {
                    return false;
                }
            }
        }
        n >= 1
    }

    #[test]
    fn division_identity() {
        let p = 7;
        let a = Poly::from_signed(&[3, 0, 5, 1, 2], p);
        let b = Poly::from_signed(&[1, 4, 1], p);
        let (q, r) = a.div_rem(&b, p);
        assert_eq!(q.mul(&b, p).add(&r, p), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 5;
        let a = Poly::from_signed(&[1, 0, 1], p);
        let b = Poly::from_signed(&[-1, 1], p);
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(s.mul(&a, p).add(&t.mul(&b, p), p), g);
        assert!(g.is_monic());
    }

    #[test]
    fn factors_of_small_polys() {
        let p = 2;
        // x^2 (x + 1)
        let f = Poly::new(vec![0, 0, 1, 1], p);
        assert_eq!(
            factor(&f, p).unwrap(),
            vec![(Poly::x(), 2), (Poly::new(vec![1, 1], p), 1)]
        );
        // x^4 + x = x (x + 1) (x^2 + x + 1)
        let f = Poly::new(vec![0, 1, 0, 0, 1], p);
        let fs = factor(&f, p).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(radical(&Poly::new(vec![0, 0, 1], p), p).unwrap(), Poly::x());
    }

    #[test]
    fn factorization_matches_brute_force() {
        for &p in &[2u64, 3, 5] {
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..60 {
                let deg = rng.gen_range(1..7);
                let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                coeffs.push(1);
                let f = Poly::new(coeffs, p);
                let fs = factor(&f, p).unwrap();
                let back = fs
                    .iter()
                    .fold(Poly::one(), |acc, (g, e)| acc.mul(&g.pow(*e as u64, p), p));
                assert_eq!(back, f);
                for (g, _) in &fs {
                    assert!(g.is_monic());
                    assert!(brute_irreducible(g, p), "{g:?} reducible mod {p}");
                }
            }
        }
    }

    #[test]
    fn pth_power_inputs() {
        let p = 3;
        // (x + 1)^3 (x^2 + 1)^2 over F_3
        let f = Poly::new(vec![1, 1], p)
            .pow(3, p)
            .mul(&Poly::new(vec![1, 0, 1], p).pow(2, p), p);
        let fs = factor(&f, p).unwrap();
        assert_eq!(fs, vec![(Poly::new(vec![1, 1], p), 3), (Poly::new(vec![1, 0, 1], p), 2)]);
    }
}
