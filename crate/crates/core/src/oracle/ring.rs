use std::collections::HashSet;
use std::ops::Range;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{additive_basis, extend_span, Budget};
use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::ring::{Ideal, RingDescriptor, RingElement};
use crate::scalar::Scalar;

const TABLE_LIMIT: usize = 512;

#[derive(Clone, Debug)]
enum Shape {
    Mod(u64),
    // F_p[x] modulo a monic polynomial, stored low degree first
    Quot { p: u64, modulus: Vec<u64> },
    Tri { n: usize, base: Box<Shape> },
    Prod(Vec<Shape>),
}

fn tri_block(n: usize, i: usize, j: usize, bw: usize) -> Range<usize> {
    let k = i * (2 * n - i + 1) / 2 + (j - i);
    k * bw..(k + 1) * bw
}

impl Shape {
    fn build(desc: &RingDescriptor, residue: Option<&Scalar>) -> Result<Shape> {
        let missing = || Error::Unsupported(format!("{desc} is infinite; a residue is needed to enumerate it"));
        Ok(match desc {
            RingDescriptor::Modular(m) => Shape::Mod(*m),
            RingDescriptor::Integers => match residue {
                Some(Scalar::Int(n)) => {
                    let n = n.magnitude().to_u64().filter(|&n| n >= 1).ok_or_else(missing)?;
                    Shape::Mod(n)
                }
                _ => return Err(missing()),
            },
            RingDescriptor::Poly(p) => match residue {
                Some(Scalar::Poly(f)) if !f.is_zero() => Shape::Quot {
                    p: *p,
                    modulus: f.monic(*p).0.coeffs().to_vec(),
                },
                _ => return Err(missing()),
            },
            RingDescriptor::Product(fs) => Shape::Prod(
                fs.iter()
                    .map(|f| Shape::build(f, residue))
                    .collect::<Result<_>>()?,
            ),
            RingDescriptor::Triangular { n, base } => Shape::Tri {
                n: *n,
                base: Box::new(Shape::build(base, residue)?),
            },
        })
    }

    fn radices(&self, out: &mut Vec<u64>) {
        match self {
            Shape::Mod(m) => out.push(*m),
            Shape::Quot { p, modulus } => out.extend(std::iter::repeat_n(*p, modulus.len() - 1)),
            Shape::Tri { n, base } => {
                for _ in 0..n * (n + 1) / 2 {
                    base.radices(out);
                }
            }
            Shape::Prod(fs) => fs.iter().for_each(|f| f.radices(out)),
        }
    }

    fn width(&self) -> usize {
        match self {
            Shape::Mod(_) => 1,
            Shape::Quot { modulus, .. } => modulus.len() - 1,
            Shape::Tri { n, base } => n * (n + 1) / 2 * base.width(),
            Shape::Prod(fs) => fs.iter().map(Shape::width).sum(),
        }
    }

    fn one(&self, out: &mut [u64]) {
        match self {
            Shape::Mod(m) => out[0] = 1 % m,
            Shape::Quot { p, .. } => {
                if !out.is_empty() {
                    out[0] = 1 % p;
                }
            }
            Shape::Tri { n, base } => {
                let bw = base.width();
                for i in 0..*n {
                    base.one(&mut out[tri_block(*n, i, i, bw)]);
                }
            }
            Shape::Prod(fs) => {
                let mut off = 0;
                for f in fs {
                    let w = f.width();
                    f.one(&mut out[off..off + w]);
                    off += w;
                }
            }
        }
    }

    fn add(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        match self {
            Shape::Mod(m) => out[0] = ((a[0] as u128 + b[0] as u128) % *m as u128) as u64,
            Shape::Quot { p, .. } => {
                for i in 0..out.len() {
                    out[i] = (a[i] + b[i]) % p;
                }
            }
            Shape::Tri { base, .. } => {
                let bw = base.width();
                for k in 0..out.len() / bw.max(1) {
                    let r = k * bw..(k + 1) * bw;
                    base.add(&a[r.clone()], &b[r.clone()], &mut out[r]);
                }
            }
            Shape::Prod(fs) => {
                let mut off = 0;
                for f in fs {
                    let r = off..off + f.width();
                    f.add(&a[r.clone()], &b[r.clone()], &mut out[r.clone()]);
                    off = r.end;
                }
            }
        }
    }

    fn mul(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        match self {
            Shape::Mod(m) => out[0] = ((a[0] as u128 * b[0] as u128) % *m as u128) as u64,
            Shape::Quot { p, modulus } => {
                let d = modulus.len() - 1;
                if d == 0 {
                    return;
                }
                let mut conv = vec![0u64; 2 * d - 1];
                for (i, &x) in a.iter().enumerate() {
                    for (j, &y) in b.iter().enumerate() {
                        conv[i + j] = (conv[i + j] + x * y % p) % p;
                    }
                }
                for t in (d..conv.len()).rev() {
                    let c = conv[t];
                    if c == 0 {
                        continue;
                    }
                    for s in 0..d {
                        let sub = c * modulus[s] % p;
                        conv[t - d + s] = (conv[t - d + s] + p - sub) % p;
                    }
                    conv[t] = 0;
                }
                out.copy_from_slice(&conv[..d]);
            }
            Shape::Tri { n, base } => {
                let bw = base.width();
                let mut tmp = vec![0u64; bw];
                let mut acc = vec![0u64; bw];
                for i in 0..*n {
                    for k in i..*n {
                        acc.iter_mut().for_each(|x| *x = 0);
                        for j in i..=k {
                            base.mul(&a[tri_block(*n, i, j, bw)], &b[tri_block(*n, j, k, bw)], &mut tmp);
                            let prev = acc.clone();
                            base.add(&prev, &tmp, &mut acc);
                        }
                        out[tri_block(*n, i, k, bw)].copy_from_slice(&acc);
                    }
                }
            }
            Shape::Prod(fs) => {
                let mut off = 0;
                for f in fs {
                    let r = off..off + f.width();
                    f.mul(&a[r.clone()], &b[r.clone()], &mut out[r.clone()]);
                    off = r.end;
                }
            }
        }
    }

    fn put_scalar(&self, s: &Scalar, out: &mut [u64]) -> Result<()> {
        match (self, s) {
            (Shape::Mod(m), Scalar::Int(v)) => {
                out[0] = v.mod_floor(&BigInt::from(*m)).to_u64().expect("residue fits");
                Ok(())
            }
            (Shape::Quot { p, modulus }, Scalar::Poly(f)) => {
                let r = reduce_poly(f.coeffs(), *p, modulus);
                out.copy_from_slice(&r);
                Ok(())
            }
            _ => Err(Error::MalformedElement(format!("scalar {s} does not fit the enumerated ring"))),
        }
    }

    fn put(&self, desc: &RingDescriptor, e: &RingElement, out: &mut [u64]) -> Result<()> {
        let bad = || Error::MalformedElement(format!("{e} is not an element of {desc}"));
        match (self, desc, e) {
            (Shape::Mod(_), RingDescriptor::Integers, RingElement::Int(v)) => self.put_scalar(&Scalar::Int(v.clone()), out),
            (Shape::Mod(_), RingDescriptor::Modular(_), RingElement::Mod(v)) => {
                self.put_scalar(&Scalar::Int(BigInt::from(*v)), out)
            }
            (Shape::Quot { .. }, RingDescriptor::Poly(_), RingElement::Poly(f)) => {
                self.put_scalar(&Scalar::Poly(f.clone()), out)
            }
            (Shape::Prod(ss), RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                if xs.len() != fs.len() {
                    return Err(bad());
                }
                let mut off = 0;
                for ((s, f), x) in ss.iter().zip(fs).zip(xs) {
                    let w = s.width();
                    s.put(f, x, &mut out[off..off + w])?;
                    off += w;
                }
                Ok(())
            }
            (Shape::Tri { n, base }, RingDescriptor::Triangular { base: bd, .. }, RingElement::Matrix(rows)) => {
                if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                    return Err(bad());
                }
                let bw = base.width();
                for i in 0..*n {
                    for j in i..*n {
                        base.put(bd, &rows[i][j], &mut out[tri_block(*n, i, j, bw)])?;
                    }
                }
                Ok(())
            }
            _ => Err(bad()),
        }
    }

    fn get(&self, desc: &RingDescriptor, digits: &[u64]) -> RingElement {
        match (self, desc) {
            (Shape::Mod(_), RingDescriptor::Integers) => RingElement::Int(BigInt::from(digits[0])),
            (Shape::Mod(_), _) => RingElement::Mod(digits[0]),
            (Shape::Quot { p, .. }, _) => RingElement::Poly(Poly::new(digits.to_vec(), *p)),
            (Shape::Prod(ss), RingDescriptor::Product(fs)) => {
                let mut off = 0;
                let mut out = Vec::new();
                for (s, f) in ss.iter().zip(fs) {
                    let w = s.width();
                    out.push(s.get(f, &digits[off..off + w]));
                    off += w;
                }
                RingElement::Tuple(out)
            }
            (Shape::Tri { n, base }, RingDescriptor::Triangular { base: bd, .. }) => {
                let bw = base.width();
                let mut m = vec![vec![bd.zero(); *n]; *n];
                for i in 0..*n {
                    for j in i..*n {
                        m[i][j] = base.get(bd, &digits[tri_block(*n, i, j, bw)]);
                    }
                }
                RingElement::Matrix(m)
            }
            _ => unreachable!("shape built from this descriptor"),
        }
    }

    // Digit vectors of the listed generators of a structured ideal.
    fn ideal_gens(&self, ideal: &Ideal, out: &mut Vec<Vec<u64>>) -> Result<()> {
        let w = self.width();
        match (self, ideal) {
            (Shape::Mod(_) | Shape::Quot { .. }, Ideal::Principal(s)) => {
                let mut d = vec![0; w];
                self.put_scalar(s, &mut d)?;
                out.push(d);
            }
            (Shape::Prod(ss), Ideal::Product(xs)) if ss.len() == xs.len() => {
                let mut off = 0;
                for (s, x) in ss.iter().zip(xs) {
                    let mut inner = Vec::new();
                    s.ideal_gens(x, &mut inner)?;
                    for g in inner {
                        let mut d = vec![0; w];
                        d[off..off + g.len()].copy_from_slice(&g);
                        out.push(d);
                    }
                    off += s.width();
                }
            }
            (Shape::Tri { n, base }, Ideal::Triangular(rows)) if rows.len() == *n => {
                let bw = base.width();
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != n - i {
                        return Err(Error::MalformedIdeal(format!("{ideal}")));
                    }
                    for (t, x) in row.iter().enumerate() {
                        let mut inner = Vec::new();
                        base.ideal_gens(x, &mut inner)?;
                        for g in inner {
                            let mut d = vec![0; w];
                            d[tri_block(*n, i, i + t, bw)].copy_from_slice(&g);
                            out.push(d);
                        }
                    }
                }
            }
            _ => return Err(Error::MalformedIdeal(format!("{ideal} does not fit the enumerated ring"))),
        }
        Ok(())
    }
}

fn reduce_poly(c: &[u64], p: u64, modulus: &[u64]) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut v: Vec<u64> = c.iter().map(|x| x % p).collect();
    if v.len() < d {
        v.resize(d, 0);
    }
    for t in (d..v.len()).rev() {
        let coef = v[t];
        if coef == 0 {
            continue;
        }
        for s in 0..d {
            v[t - d + s] = (v[t - d + s] + p - coef * modulus[s] % p) % p;
        }
        v[t] = 0;
    }
    v.truncate(d);
    v
}

/// A finite ring with elements numbered `0..size`; element `0` is zero.
#[derive(Debug)]
pub struct FiniteRing {
    desc: RingDescriptor,
    shape: Shape,
    radices: Vec<u64>,
    size: usize,
    one: usize,
    pairs: usize,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    principal_right: OnceLock<Vec<FixedBitSet>>,
    ideals: OnceLock<Vec<FixedBitSet>>,
    right_ideals: OnceLock<Vec<FixedBitSet>>,
}

impl FiniteRing {
    /// Tabulates `desc`, or `desc` modulo `residue` for its infinite basic
    /// pieces (integers modulo `N`, `F_p[x]` modulo `f`).
    pub fn new(desc: &RingDescriptor, residue: Option<&Scalar>, budget: &Budget) -> Result<FiniteRing> {
        desc.validate()?;
        let shape = Shape::build(desc, residue)?;
        let mut radices = Vec::new();
        shape.radices(&mut radices);
        let mut size: usize = 1;
        for &r in &radices {
            size = size
                .checked_mul(r as usize)
                .filter(|&s| s <= budget.elements)
                .ok_or_else(|| Error::BudgetExceeded(format!("{desc} has more than {} elements", budget.elements)))?;
        }
        let mut ring = FiniteRing {
            desc: desc.clone(),
            shape,
            radices,
            size,
            one: 0,
            pairs: budget.pairs,
            add_table: None,
            mul_table: None,
            principal_right: OnceLock::new(),
            ideals: OnceLock::new(),
            right_ideals: OnceLock::new(),
        };
        let mut one = vec![0; ring.radices.len()];
        ring.shape.one(&mut one);
        ring.one = ring.index(&one);
        if size <= TABLE_LIMIT {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    add.push(ring.add_raw(a, b) as u32);
                    mul.push(ring.mul_raw(a, b) as u32);
                }
            }
            ring.add_table = Some(add);
            ring.mul_table = Some(mul);
        }
        Ok(ring)
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn digits(&self, mut x: usize) -> Vec<u64> {
        self.radices
            .iter()
            .map(|&r| {
                let d = (x % r as usize) as u64;
                x /= r as usize;
                d
            })
            .collect()
    }

    pub fn index(&self, digits: &[u64]) -> usize {
        let mut x = 0usize;
        for (&d, &r) in digits.iter().zip(&self.radices).rev() {
            x = x * r as usize + d as usize;
        }
        x
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = vec![0; da.len()];
        self.shape.add(&da, &db, &mut out);
        self.index(&out)
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = vec![0; da.len()];
        self.shape.mul(&da, &db, &mut out);
        self.index(&out)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.add_raw(a, b),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.mul_raw(a, b),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        let d: Vec<u64> = self
            .digits(a)
            .iter()
            .zip(&self.radices)
            .map(|(&x, &r)| (r - x) % r)
            .collect();
        self.index(&d)
    }

    /// Unit digit vectors; they generate the additive group.
    pub fn additive_generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut place = 1usize;
        for &r in &self.radices {
            if r > 1 {
                out.push(place);
            }
            place *= r as usize;
        }
        out
    }

    pub fn encode(&self, e: &RingElement) -> Result<usize> {
        let mut d = vec![0; self.radices.len()];
        self.shape.put(&self.desc, e, &mut d)?;
        Ok(self.index(&d))
    }

    pub fn decode(&self, x: usize) -> RingElement {
        self.shape.get(&self.desc, &self.digits(x))
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.size)
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

    pub fn is_zero_set(&self, s: &FixedBitSet) -> bool {
        s.count_ones(..) == 1 && s.contains(0)
    }

    /// Additive subgroup generated by `gens`.
    pub fn span<I: IntoIterator<Item = usize>>(&self, gens: I) -> FixedBitSet {
        let mut s = self.zero_set();
        for g in gens {
            extend_span(&mut s, g, |a, b| self.add(a, b));
        }
        s
    }

    pub fn basis(&self, s: &FixedBitSet) -> Vec<usize> {
        additive_basis(s, 0, |a, b| self.add(a, b))
    }

    /// Two-sided ideal generated by `gens`.
    pub fn two_sided(&self, gens: &[usize]) -> FixedBitSet {
        let units = self.additive_generators();
        let mut prods = Vec::new();
        for &g in gens {
            for &u in &units {
                let ug = self.mul(u, g);
                for &v in &units {
                    prods.push(self.mul(ug, v));
                }
            }
        }
        self.span(prods)
    }

    /// Right ideal generated by `gens`.
    pub fn right_ideal(&self, gens: &[usize]) -> FixedBitSet {
        let units = self.additive_generators();
        self.span(gens.iter().flat_map(|&g| units.iter().map(move |&u| (g, u))).map(|(g, u)| self.mul(g, u)))
    }

    /// The set of a structured ideal, closed independently.
    pub fn ideal_set(&self, ideal: &Ideal) -> FixedBitSet {
        self.try_ideal_set(ideal).expect("ideal matches the enumerated ring")
    }

    pub fn try_ideal_set(&self, ideal: &Ideal) -> Result<FixedBitSet> {
        let mut gens = Vec::new();
        self.shape.ideal_gens(ideal, &mut gens)?;
        let gens: Vec<usize> = gens.iter().map(|d| self.index(d)).collect();
        Ok(self.two_sided(&gens))
    }

    pub fn ideal_sum(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut s = a.clone();
        for y in self.basis(b) {
            extend_span(&mut s, y, |u, v| self.add(u, v));
        }
        s
    }

    /// Additive span of all products `x y`, `x` in `a`, `y` in `b`.
    pub fn set_product(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let (ba, bb) = (self.basis(a), self.basis(b));
        let mut prods = Vec::with_capacity(ba.len() * bb.len());
        for &x in &ba {
            for &y in &bb {
                prods.push(self.mul(x, y));
            }
        }
        self.span(prods)
    }

    pub fn ideal_power(&self, a: &FixedBitSet, k: u32) -> FixedBitSet {
        let mut acc = a.clone();
        for _ in 1..k {
            let next = self.set_product(&acc, a);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// The eventual value of `a^k` and the least exponent reaching it.
    pub fn stable_power(&self, a: &FixedBitSet) -> (FixedBitSet, u32) {
        let mut acc = a.clone();
        let mut k = 1;
        loop {
            let next = self.set_product(&acc, a);
            if next == acc {
                return (acc, k);
            }
            acc = next;
            k += 1;
        }
    }

    pub fn principal_right_ideals(&self) -> &[FixedBitSet] {
        self.principal_right
            .get_or_init(|| (0..self.size).map(|a| self.right_ideal(&[a])).collect())
    }

    fn closure_of_sums(&self, principal: &[FixedBitSet]) -> Vec<FixedBitSet> {
        let mut distinct: Vec<&FixedBitSet> = Vec::new();
        let mut seen_p = HashSet::new();
        for p in principal {
            if seen_p.insert(p) {
                distinct.push(p);
            }
        }
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut queue = vec![self.zero_set()];
        seen.insert(self.zero_set());
        while let Some(i) = queue.pop() {
            for p in &distinct {
                if p.is_subset(&i) {
                    continue;
                }
                let j = self.ideal_sum(&i, p);
                if seen.insert(j.clone()) {
                    queue.push(j);
                }
            }
        }
        let mut out: Vec<FixedBitSet> = seen.into_iter().collect();
        out.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.as_slice().cmp(b.as_slice())));
        out
    }

    /// All two-sided ideals, smallest first.
    pub fn ideals(&self) -> &[FixedBitSet] {
        self.ideals.get_or_init(|| {
            let principal: Vec<FixedBitSet> = (0..self.size).map(|a| self.two_sided(&[a])).collect();
            self.closure_of_sums(&principal)
        })
    }

    /// All right ideals, smallest first.
    pub fn right_ideals(&self) -> &[FixedBitSet] {
        self.right_ideals
            .get_or_init(|| self.closure_of_sums(self.principal_right_ideals()))
    }

    /// Essential when it meets every nonzero right ideal nontrivially.
    pub fn is_essential_right(&self, l: &FixedBitSet) -> bool {
        self.principal_right_ideals()
            .iter()
            .skip(1)
            .all(|p| p.intersection(l).any(|x| x != 0))
    }

    pub fn essential_right_ideals(&self) -> Vec<FixedBitSet> {
        self.right_ideals()
            .iter()
            .filter(|l| self.is_essential_right(l))
            .cloned()
            .collect()
    }

    /// Sum of the minimal right ideals.
    pub fn socle(&self) -> FixedBitSet {
        let pr = self.principal_right_ideals();
        let mut s = self.zero_set();
        for (a, p) in pr.iter().enumerate().skip(1) {
            let minimal = p
                .ones()
                .filter(|&b| b != 0)
                .all(|b| pr[b] == *p);
            if minimal {
                s = self.ideal_sum(&s, &pr[a]);
            }
        }
        s
    }

    fn check_pairs(&self) -> Result<()> {
        match self.size.checked_mul(self.size) {
            Some(n) if n <= self.pairs => Ok(()),
            _ => Err(Error::BudgetExceeded(format!(
                "primality scan of {} needs more than {} pairs",
                self.desc, self.pairs
            ))),
        }
    }

    /// `aRb` inside `P` forces `a` or `b` into `P`.
    pub fn is_prime(&self, p: &FixedBitSet) -> Result<bool> {
        self.check_pairs()?;
        if p.contains(self.one) {
            return Ok(false);
        }
        let units = self.additive_generators();
        let outside: Vec<usize> = (0..self.size).filter(|&x| !p.contains(x)).collect();
        for &a in &outside {
            let au: Vec<usize> = units.iter().map(|&u| self.mul(a, u)).collect();
            for &b in &outside {
                if au.iter().all(|&x| p.contains(self.mul(x, b))) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn prime_ideals(&self) -> Result<Vec<FixedBitSet>> {
        self.check_pairs()?;
        let mut out = Vec::new();
        for i in self.ideals() {
            if self.is_prime(i)? {
                out.push(i.clone());
            }
        }
        Ok(out)
    }

    /// Members of `sets` containing no other member strictly.
    pub fn minimal_among(&self, sets: &[FixedBitSet]) -> Vec<FixedBitSet> {
        sets.iter()
            .filter(|p| !sets.iter().any(|q| q != *p && q.is_subset(p)))
            .cloned()
            .collect()
    }

    pub fn minimal_primes(&self) -> Result<Vec<FixedBitSet>> {
        Ok(self.minimal_among(&self.prime_ideals()?))
    }

    /// Sum of all ideals some power of which lies in `i`.
    pub fn pseudo_radical(&self, i: &FixedBitSet) -> FixedBitSet {
        let mut s = i.clone();
        for j in self.ideals() {
            if self.stable_power(j).0.is_subset(i) {
                s = self.ideal_sum(&s, j);
            }
        }
        s
    }
}
