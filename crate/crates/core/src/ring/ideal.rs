use std::fmt;

use super::{RingDescriptor, RingElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Canonical two-sided ideal of a supported ring.
///
/// Basic rings use a principal generator: a nonnegative integer for the
/// integers, a divisor of the modulus for residues (the modulus itself is the
/// zero ideal), a monic polynomial or zero for polynomial rings. Products are
/// componentwise and triangular rings store the upper array `(I_ij)` with row
/// `i` holding the entries `i..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    Principal(Scalar),
    Product(Vec<Ideal>),
    Triangular(Vec<Vec<Ideal>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
}

impl Ideal {
    /// The ideal `n Z` (or `n Z/m` after canonicalization by the ring).
    pub fn gen(n: i64) -> Ideal {
        Ideal::Principal(Scalar::int(n.abs()))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Ideal {
        match self {
            Ideal::Triangular(rows) => &rows[i][j - i],
            _ => panic!("entry access on a non-triangular ideal"),
        }
    }

    pub fn generator(&self) -> &Scalar {
        match self {
            Ideal::Principal(g) => g,
            _ => panic!("generator of a non-principal ideal representation"),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Principal(g) => write!(f, "({g})"),
            Ideal::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(" x "))
            }
            Ideal::Triangular(rows) => {
                let s: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                        format!("[{}]", cells.join(" "))
                    })
                    .collect();
                write!(f, "[{}]", s.join(" "))
            }
        }
    }
}

impl RingDescriptor {
    fn basic_canon(&self, g: &Scalar) -> Scalar {
        let (pid, modulus) = self.basic().expect("basic ring");
        match modulus {
            Some(m) => pid.gcd(g, &m),
            None => pid.canonical(g),
        }
    }

    /// Canonical ideal generated by a PID element in a basic ring.
    pub fn basic_ideal(&self, g: &Scalar) -> Ideal {
        Ideal::Principal(self.basic_canon(g))
    }

    pub fn unit_ideal(&self) -> Ideal {
        match self {
            RingDescriptor::Product(fs) => Ideal::Product(fs.iter().map(|f| f.unit_ideal()).collect()),
            RingDescriptor::Triangular { n, base } => {
                Ideal::Triangular((0..*n).map(|i| vec![base.unit_ideal(); n - i]).collect())
            }
            _ => Ideal::Principal(self.basic().unwrap().0.one()),
        }
    }

    pub fn zero_ideal(&self) -> Ideal {
        match self {
            RingDescriptor::Product(fs) => Ideal::Product(fs.iter().map(|f| f.zero_ideal()).collect()),
            RingDescriptor::Triangular { n, base } => {
                Ideal::Triangular((0..*n).map(|i| vec![base.zero_ideal(); n - i]).collect())
            }
            _ => self.basic_ideal(&self.basic().unwrap().0.zero()),
        }
    }

    /// Triangular ideal built from an entry function `(i, j) -> I_ij`,
    /// followed by closure normalization.
    pub fn triangular_ideal<F>(&self, mut entry: F) -> Ideal
    where
        F: FnMut(usize, usize) -> Ideal,
    {
        let RingDescriptor::Triangular { n, .. } = self else {
            panic!("triangular_ideal on {self}");
        };
        let rows = (0..*n).map(|i| (i..*n).map(|j| entry(i, j)).collect()).collect();
        self.close_triangular(Ideal::Triangular(rows))
    }

    // Enlarges each entry by its inner neighbours so that
    // I_ij is contained in I_hk whenever h <= i and k >= j.
    fn close_triangular(&self, ideal: Ideal) -> Ideal {
        let RingDescriptor::Triangular { n, base } = self else {
            unreachable!()
        };
        let Ideal::Triangular(mut rows) = ideal else {
            unreachable!()
        };
        for width in 1..*n {
            for i in 0..n - width {
                let j = i + width;
                let inner_left = rows[i][width - 1].clone();
                let inner_down = rows[i + 1][width - 1].clone();
                let cur = rows[i][width].clone();
                rows[i][width] = base.sum_u(&base.sum_u(&cur, &inner_left), &inner_down);
                debug_assert!(j < *n);
            }
        }
        Ideal::Triangular(rows)
    }

    /// Two-sided ideal generated by one element.
    pub fn principal_ideal(&self, a: &RingElement) -> Ideal {
        match (self, a) {
            (RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                Ideal::Product(fs.iter().zip(xs).map(|(f, x)| f.principal_ideal(x)).collect())
            }
            (RingDescriptor::Triangular { base, .. }, RingElement::Matrix(m)) => {
                self.triangular_ideal(|i, j| base.principal_ideal(&m[i][j]))
            }
            _ => self.basic_ideal(&self.to_scalar(a)),
        }
    }

    /// Two-sided ideal generated by a list of elements.
    pub fn ideal_generated(&self, gens: &[RingElement]) -> Ideal {
        gens.iter()
            .fold(self.zero_ideal(), |acc, g| self.sum_u(&acc, &self.principal_ideal(g)))
    }

    pub fn check_ideal(&self, ideal: &Ideal) -> Result<()> {
        let bad = |what: String| Err(Error::MalformedIdeal(format!("{what} in ring {self}")));
        match (self, ideal) {
            (RingDescriptor::Product(fs), Ideal::Product(parts)) => {
                if fs.len() != parts.len() {
                    return bad("component count mismatch".into());
                }
                fs.iter().zip(parts).try_for_each(|(f, p)| f.check_ideal(p))
            }
            (RingDescriptor::Triangular { n, base }, Ideal::Triangular(rows)) => {
                if rows.len() != *n || rows.iter().enumerate().any(|(i, r)| r.len() != n - i) {
                    return bad("triangular array shape mismatch".into());
                }
                for r in rows {
                    for e in r {
                        base.check_ideal(e)?;
                    }
                }
                for i in 0..*n {
                    for j in i..*n {
                        let e = ideal.entry(i, j);
                        if i > 0 && !base.contains_u(ideal.entry(i - 1, j), e) {
                            return bad(format!("entry ({i},{j}) is not inside entry ({},{j})", i - 1));
                        }
                        if j + 1 < *n && !base.contains_u(ideal.entry(i, j + 1), e) {
                            return bad(format!("entry ({i},{j}) is not inside entry ({i},{})", j + 1));
                        }
                    }
                }
                Ok(())
            }
            (RingDescriptor::Integers, Ideal::Principal(Scalar::Int(g))) if g.sign() != num_bigint::Sign::Minus => Ok(()),
            (RingDescriptor::Modular(m), Ideal::Principal(Scalar::Int(d))) => {
                let m = num_bigint::BigInt::from(*m);
                if d.sign() == num_bigint::Sign::Plus && (&m % d).sign() == num_bigint::Sign::NoSign {
                    Ok(())
                } else {
                    bad(format!("{d} is not a positive divisor of the modulus"))
                }
            }
            (RingDescriptor::Poly(p), Ideal::Principal(Scalar::Poly(f))) => {
                let c = f.coeffs();
                if c.iter().any(|x| x >= p) || !(f.is_zero() || f.is_monic()) {
                    bad("polynomial generator is not monic".into())
                } else {
                    Ok(())
                }
            }
            _ => bad(format!("representation {ideal} does not match the ring")),
        }
    }

    pub(crate) fn sum_u(&self, a: &Ideal, b: &Ideal) -> Ideal {
        match (self, a, b) {
            (RingDescriptor::Product(fs), Ideal::Product(x), Ideal::Product(y)) => {
                Ideal::Product(fs.iter().zip(x.iter().zip(y)).map(|(f, (x, y))| f.sum_u(x, y)).collect())
            }
            (RingDescriptor::Triangular { base, .. }, Ideal::Triangular(x), Ideal::Triangular(y)) => Ideal::Triangular(
                x.iter()
                    .zip(y)
                    .map(|(xr, yr)| xr.iter().zip(yr).map(|(u, v)| base.sum_u(u, v)).collect())
                    .collect(),
            ),
            (_, Ideal::Principal(x), Ideal::Principal(y)) => {
                let pid = self.basic().unwrap().0;
                self.basic_ideal(&pid.gcd(x, y))
            }
            _ => panic!("ideal representation does not match ring {self}"),
        }
    }

    pub(crate) fn intersect_u(&self, a: &Ideal, b: &Ideal) -> Ideal {
        match (self, a, b) {
            (RingDescriptor::Product(fs), Ideal::Product(x), Ideal::Product(y)) => Ideal::Product(
                fs.iter().zip(x.iter().zip(y)).map(|(f, (x, y))| f.intersect_u(x, y)).collect(),
            ),
            (RingDescriptor::Triangular { base, .. }, Ideal::Triangular(x), Ideal::Triangular(y)) => Ideal::Triangular(
                x.iter()
                    .zip(y)
                    .map(|(xr, yr)| xr.iter().zip(yr).map(|(u, v)| base.intersect_u(u, v)).collect())
                    .collect(),
            ),
            (_, Ideal::Principal(x), Ideal::Principal(y)) => {
                let pid = self.basic().unwrap().0;
                self.basic_ideal(&pid.lcm(x, y))
            }
            _ => panic!("ideal representation does not match ring {self}"),
        }
    }

    pub(crate) fn product_u(&self, a: &Ideal, b: &Ideal) -> Ideal {
        match (self, a, b) {
            (RingDescriptor::Product(fs), Ideal::Product(x), Ideal::Product(y)) => Ideal::Product(
                fs.iter().zip(x.iter().zip(y)).map(|(f, (x, y))| f.product_u(x, y)).collect(),
            ),
            (RingDescriptor::Triangular { base, .. }, Ideal::Triangular(_), Ideal::Triangular(_)) => {
                self.triangular_ideal(|i, k| {
                    (i..=k).fold(base.zero_ideal(), |acc, j| {
                        base.sum_u(&acc, &base.product_u(a.entry(i, j), b.entry(j, k)))
                    })
                })
            }
            (_, Ideal::Principal(x), Ideal::Principal(y)) => {
                let pid = self.basic().unwrap().0;
                self.basic_ideal(&pid.mul(x, y))
            }
            _ => panic!("ideal representation does not match ring {self}"),
        }
    }

    // Whether `b` is contained in `a`.
    pub(crate) fn contains_u(&self, a: &Ideal, b: &Ideal) -> bool {
        match (self, a, b) {
            (RingDescriptor::Product(fs), Ideal::Product(x), Ideal::Product(y)) => {
                fs.iter().zip(x.iter().zip(y)).all(|(f, (x, y))| f.contains_u(x, y))
            }
            (RingDescriptor::Triangular { base, .. }, Ideal::Triangular(x), Ideal::Triangular(y)) => x
                .iter()
                .zip(y)
                .all(|(xr, yr)| xr.iter().zip(yr).all(|(u, v)| base.contains_u(u, v))),
            (_, Ideal::Principal(x), Ideal::Principal(y)) => self.basic().unwrap().0.divides(x, y),
            _ => panic!("ideal representation does not match ring {self}"),
        }
    }

    pub(crate) fn power_u(&self, a: &Ideal, k: u32) -> Ideal {
        let mut acc = a.clone();
        for _ in 1..k {
            let next = self.product_u(&acc, a);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    fn check_pair(&self, a: &Ideal, b: &Ideal) -> Result<()> {
        self.check_ideal(a).map_err(|e| Error::RingMismatch(e.to_string()))?;
        self.check_ideal(b).map_err(|e| Error::RingMismatch(e.to_string()))
    }

    pub fn ideal_combine(&self, op: IdealOp, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.check_pair(a, b)?;
        Ok(match op {
            IdealOp::Sum => self.sum_u(a, b),
            IdealOp::Product => self.product_u(a, b),
            IdealOp::Intersect => self.intersect_u(a, b),
        })
    }

    pub fn ideal_sum(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.ideal_combine(IdealOp::Sum, a, b)
    }

    pub fn ideal_product(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.ideal_combine(IdealOp::Product, a, b)
    }

    pub fn ideal_intersect(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.ideal_combine(IdealOp::Intersect, a, b)
    }

    pub fn ideal_power(&self, a: &Ideal, k: u32) -> Result<Ideal> {
        if k < 1 {
            return Err(Error::InvalidExponent);
        }
        self.check_ideal(a)?;
        Ok(self.power_u(a, k))
    }

    /// Whether `b` is contained in `a`.
    pub fn ideal_contains(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        self.check_pair(a, b)?;
        Ok(self.contains_u(a, b))
    }

    pub fn is_unit_ideal(&self, a: &Ideal) -> bool {
        *a == self.unit_ideal()
    }

    pub fn is_zero_ideal(&self, a: &Ideal) -> bool {
        *a == self.zero_ideal()
    }

    pub fn ideal_member(&self, a: &Ideal, x: &RingElement) -> bool {
        self.contains_u(a, &self.principal_ideal(x))
    }

    /// Intersection of a list; the empty intersection is the whole ring.
    pub fn intersect_all(&self, ideals: &[Ideal]) -> Ideal {
        ideals.iter().fold(self.unit_ideal(), |acc, i| self.intersect_u(&acc, i))
    }

    /// Ordered product `I_0 I_1 ... I_k`; the empty product is the whole ring.
    pub fn product_all(&self, ideals: &[Ideal]) -> Ideal {
        ideals.iter().fold(self.unit_ideal(), |acc, i| self.product_u(&acc, i))
    }

    pub fn sum_all(&self, ideals: &[Ideal]) -> Ideal {
        ideals.iter().fold(self.zero_ideal(), |acc, i| self.sum_u(&acc, i))
    }

    /// First pair `(i, j)` with `X_i + X_j != R`.
    pub fn comaximal_violation(&self, ideals: &[Ideal]) -> Result<Option<(usize, usize)>> {
        if ideals.is_empty() {
            return Err(Error::EmptyIdealList);
        }
        for x in ideals {
            self.check_ideal(x)?;
        }
        for i in 0..ideals.len() {
            for j in i + 1..ideals.len() {
                if !self.is_unit_ideal(&self.sum_u(&ideals[i], &ideals[j])) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_pairwise_comaximal(&self, ideals: &[Ideal]) -> Result<bool> {
        Ok(self.comaximal_violation(ideals)?.is_none())
    }

    pub fn require_comaximal(&self, ideals: &[Ideal]) -> Result<()> {
        match self.comaximal_violation(ideals)? {
            Some((i, j)) => Err(Error::NotComaximal(i, j)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;

    fn tri_ideal(r: &RingDescriptor, entries: &[&[i64]]) -> Ideal {
        let RingDescriptor::Triangular { base, .. } = r else { unreachable!() };
        Ideal::Triangular(
            entries
                .iter()
                .map(|row| row.iter().map(|&g| base.basic_ideal(&Scalar::int(g))).collect())
                .collect(),
        )
    }

    #[test]
    fn integer_ideal_arithmetic() {
        let z = RingDescriptor::Integers;
        let s = z.ideal_sum(&Ideal::gen(6), &Ideal::gen(10)).unwrap();
        assert_eq!(s, Ideal::gen(2));
        assert_eq!(z.ideal_product(&Ideal::gen(6), &Ideal::gen(1)).unwrap(), Ideal::gen(6));
        assert_eq!(z.ideal_power(&Ideal::gen(2), 3).unwrap(), Ideal::gen(8));
        assert!(z.ideal_power(&Ideal::gen(2), 0).is_err());
        assert!(z.ideal_contains(&Ideal::gen(2), &Ideal::gen(6)).unwrap());
        assert!(!z.ideal_contains(&Ideal::gen(6), &Ideal::gen(2)).unwrap());
    }

    #[test]
    fn modular_ideal_arithmetic() {
        let r = RingDescriptor::Modular(12);
        let i = r.basic_ideal(&Scalar::int(2));
        let j = r.basic_ideal(&Scalar::int(3));
        assert_eq!(r.ideal_intersect(&i, &j).unwrap(), Ideal::gen(6));
        assert_eq!(r.ideal_power(&i, 2).unwrap(), Ideal::gen(4));
        assert_eq!(r.ideal_power(&i, 3).unwrap(), Ideal::gen(4));
        assert_eq!(r.zero_ideal(), Ideal::gen(12));
        assert!(r.check_ideal(&Ideal::gen(5)).is_err());
    }

    #[test]
    fn polynomial_ideals_are_monic() {
        let r = RingDescriptor::Poly(3);
        let f = Scalar::Poly(Poly::new(vec![2, 2], 3));
        let i = r.basic_ideal(&f);
        assert_eq!(i, Ideal::Principal(Scalar::Poly(Poly::new(vec![1, 1], 3))));
        assert!(r.check_ideal(&Ideal::Principal(f)).is_err());
    }

    #[test]
    fn triangular_strict_upper_power() {
        let t = RingDescriptor::triangular(3, RingDescriptor::Modular(4)).unwrap();
        let n = tri_ideal(&t, &[&[4, 1, 1], &[4, 1], &[4]]);
        t.check_ideal(&n).unwrap();
        let n2 = t.ideal_power(&n, 2).unwrap();
        assert_eq!(n2, tri_ideal(&t, &[&[4, 4, 1], &[4, 4], &[4]]));
        assert!(t.is_zero_ideal(&t.ideal_power(&n, 3).unwrap()));
    }

    #[test]
    fn triangular_closure_is_enforced() {
        let t = RingDescriptor::triangular(2, RingDescriptor::Integers).unwrap();
        let bad = tri_ideal(&t, &[&[1, 2], &[0]]);
        assert!(t.check_ideal(&bad).is_err());
        let x1 = tri_ideal(&t, &[&[0, 1], &[1]]);
        let x2 = tri_ideal(&t, &[&[1, 1], &[0]]);
        let prod = t.ideal_product(&x1, &x2).unwrap();
        assert!(t.ideal_contains(&x1, &prod).unwrap());
        assert!(t.is_pairwise_comaximal(&[x1, x2]).unwrap());
    }

    #[test]
    fn principal_ideal_of_matrix() {
        let t = RingDescriptor::triangular(2, RingDescriptor::Integers).unwrap();
        let a = t.matrix_unit(1, 1, RingElement::Int(3.into()));
        assert_eq!(t.principal_ideal(&a), tri_ideal(&t, &[&[0, 3], &[3]]));
    }
}
