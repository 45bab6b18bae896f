//! Ring descriptors, elements and their arithmetic.
//!
//! Elements carry only their payload; every operation goes through the
//! [`RingDescriptor`] that owns them.

mod ideal;
mod unity;

pub use ideal::{Ideal, IdealOp};
pub use unity::PartitionOfUnity;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::int::is_prime_u64;
use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::scalar::{Pid, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Modular(u64),
    Poly(u64),
    Product(Vec<RingDescriptor>),
    Triangular { n: usize, base: Box<RingDescriptor> },
}

/// Payload of a ring element. Residues lie in `[0, m)`, polynomials are
/// trimmed, triangular matrices are stored as full `n x n` arrays with zero
/// entries below the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Int(BigInt),
    Mod(u64),
    Poly(Poly),
    Tuple(Vec<RingElement>),
    Matrix(Vec<Vec<RingElement>>),
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Modular(m) => write!(f, "Z/{m}"),
            RingDescriptor::Poly(p) => write!(f, "F_{p}[x]"),
            RingDescriptor::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|r| format!("{r}")).collect();
                write!(f, "({})", parts.join(" x "))
            }
            RingDescriptor::Triangular { n, base } => write!(f, "T_{n}({base})"),
        }
    }
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl RingDescriptor {
    pub fn modular(m: u64) -> Result<Self> {
        let r = RingDescriptor::Modular(m);
        r.validate()?;
        Ok(r)
    }

    pub fn poly(p: u64) -> Result<Self> {
        let r = RingDescriptor::Poly(p);
        r.validate()?;
        Ok(r)
    }

    pub fn product(factors: Vec<RingDescriptor>) -> Result<Self> {
        let r = RingDescriptor::Product(factors);
        r.validate()?;
        Ok(r)
    }

    pub fn triangular(n: usize, base: RingDescriptor) -> Result<Self> {
        let r = RingDescriptor::Triangular {
            n,
            base: Box::new(base),
        };
        r.validate()?;
        Ok(r)
    }

    /// Checks the descriptor invariants: modulus at least 2, prime field
    /// characteristic, nonempty products, no triangular ring inside a
    /// triangular base.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Integers => Ok(()),
            RingDescriptor::Modular(m) if *m < 2 => {
                Err(Error::InvalidRing(format!("modulus {m} is below 2")))
            }
            RingDescriptor::Modular(_) => Ok(()),
            RingDescriptor::Poly(p) if !is_prime_u64(*p) => {
                Err(Error::InvalidRing(format!("{p} is not prime")))
            }
            RingDescriptor::Poly(p) if *p >= 1 << 31 => Err(Error::InvalidRing(format!(
                "field characteristic {p} exceeds the supported range"
            ))),
            RingDescriptor::Poly(_) => Ok(()),
            RingDescriptor::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::InvalidRing("product with no factors".into()));
                }
                fs.iter().try_for_each(|f| f.validate())
            }
            RingDescriptor::Triangular { n, base } => {
                if *n < 1 {
                    return Err(Error::InvalidRing("triangular size must be at least 1".into()));
                }
                if base.contains_triangular() {
                    return Err(Error::InvalidRing("nested triangular rings are not supported".into()));
                }
                base.validate()
            }
        }
    }

    fn contains_triangular(&self) -> bool {
        match self {
            RingDescriptor::Triangular { .. } => true,
            RingDescriptor::Product(fs) => fs.iter().any(|f| f.contains_triangular()),
            _ => false,
        }
    }

    /// The PID and modulus of a basic ring (integers, residues, polynomials).
    pub fn basic(&self) -> Option<(Pid, Option<Scalar>)> {
        match self {
            RingDescriptor::Integers => Some((Pid::Integers, None)),
            RingDescriptor::Modular(m) => Some((Pid::Integers, Some(Scalar::int(*m)))),
            RingDescriptor::Poly(p) => Some((Pid::Poly(*p), None)),
            _ => None,
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            RingDescriptor::Product(fs) => fs.iter().all(|f| f.is_commutative()),
            RingDescriptor::Triangular { n, .. } => *n == 1,
            _ => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    pub fn cardinality(&self) -> Option<BigInt> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Poly(_) => None,
            RingDescriptor::Modular(m) => Some(BigInt::from(*m)),
            RingDescriptor::Product(fs) => fs
                .iter()
                .map(|f| f.cardinality())
                .try_fold(BigInt::one(), |acc, c| c.map(|c| acc * c)),
            RingDescriptor::Triangular { n, base } => base
                .cardinality()
                .map(|c| num_traits::pow(c, n * (n + 1) / 2)),
        }
    }

    pub fn zero(&self) -> RingElement {
        match self {
            RingDescriptor::Integers => RingElement::Int(BigInt::zero()),
            RingDescriptor::Modular(_) => RingElement::Mod(0),
            RingDescriptor::Poly(_) => RingElement::Poly(Poly::zero()),
            RingDescriptor::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.zero()).collect()),
            RingDescriptor::Triangular { n, base } => {
                RingElement::Matrix(vec![vec![base.zero(); *n]; *n])
            }
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingElement {
        match self {
            RingDescriptor::Integers => RingElement::Int(BigInt::from(v)),
            RingDescriptor::Modular(m) => RingElement::Mod((v as i128).rem_euclid(*m as i128) as u64),
            RingDescriptor::Poly(p) => RingElement::Poly(Poly::from_signed(&[v], *p)),
            RingDescriptor::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.from_i64(v)).collect()),
            RingDescriptor::Triangular { n, base } => {
                let mut m = vec![vec![base.zero(); *n]; *n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = base.from_i64(v);
                }
                RingElement::Matrix(m)
            }
        }
    }

    /// Matrix unit `a * e_ij` of a triangular ring.
    pub fn matrix_unit(&self, i: usize, j: usize, a: RingElement) -> RingElement {
        let RingDescriptor::Triangular { n, base } = self else {
            panic!("matrix units exist only in triangular rings");
        };
        assert!(i <= j && j < *n);
        let mut m = vec![vec![base.zero(); *n]; *n];
        m[i][j] = a;
        RingElement::Matrix(m)
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        *a == self.zero()
    }

    pub fn check_element(&self, a: &RingElement) -> Result<()> {
        let bad = |what: &str| Err(Error::MalformedElement(format!("{what} for ring {self}")));
        match (self, a) {
            (RingDescriptor::Integers, RingElement::Int(_)) => Ok(()),
            (RingDescriptor::Modular(m), RingElement::Mod(r)) => {
                if r < m {
                    Ok(())
                } else {
                    bad("unreduced residue")
                }
            }
            (RingDescriptor::Poly(p), RingElement::Poly(f)) => {
                let c = f.coeffs();
                if c.iter().any(|x| x >= p) || c.last() == Some(&0) {
                    bad("unreduced polynomial")
                } else {
                    Ok(())
                }
            }
            (RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                if fs.len() != xs.len() {
                    return bad("tuple length mismatch");
                }
                fs.iter().zip(xs).try_for_each(|(f, x)| f.check_element(x))
            }
            (RingDescriptor::Triangular { n, base }, RingElement::Matrix(rows)) => {
                if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                    return bad("matrix shape mismatch");
                }
                for (i, row) in rows.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        base.check_element(x)?;
                        if j < i && !base.is_zero(x) {
                            return bad("nonzero entry below the diagonal");
                        }
                    }
                }
                Ok(())
            }
            _ => bad("payload variant mismatch"),
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self, a, b) {
            (RingDescriptor::Integers, RingElement::Int(x), RingElement::Int(y)) => RingElement::Int(x + y),
            (RingDescriptor::Modular(m), RingElement::Mod(x), RingElement::Mod(y)) => {
                RingElement::Mod(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (RingDescriptor::Poly(p), RingElement::Poly(x), RingElement::Poly(y)) => RingElement::Poly(x.add(y, *p)),
            (RingDescriptor::Product(fs), RingElement::Tuple(xs), RingElement::Tuple(ys)) => {
                RingElement::Tuple(fs.iter().zip(xs.iter().zip(ys)).map(|(f, (x, y))| f.add(x, y)).collect())
            }
            (RingDescriptor::Triangular { base, .. }, RingElement::Matrix(xs), RingElement::Matrix(ys)) => {
                RingElement::Matrix(
                    xs.iter()
                        .zip(ys)
                        .map(|(xr, yr)| xr.iter().zip(yr).map(|(x, y)| base.add(x, y)).collect())
                        .collect(),
                )
            }
            _ => mismatch(self),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match (self, a) {
            (RingDescriptor::Integers, RingElement::Int(x)) => RingElement::Int(-x),
            (RingDescriptor::Modular(m), RingElement::Mod(x)) => RingElement::Mod((m - x) % m),
            (RingDescriptor::Poly(p), RingElement::Poly(x)) => RingElement::Poly(x.neg(*p)),
            (RingDescriptor::Product(fs), RingElement::Tuple(xs)) => {
                RingElement::Tuple(fs.iter().zip(xs).map(|(f, x)| f.neg(x)).collect())
            }
            (RingDescriptor::Triangular { base, .. }, RingElement::Matrix(xs)) => {
                RingElement::Matrix(xs.iter().map(|r| r.iter().map(|x| base.neg(x)).collect()).collect())
            }
            _ => mismatch(self),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self, a, b) {
            (RingDescriptor::Integers, RingElement::Int(x), RingElement::Int(y)) => RingElement::Int(x * y),
            (RingDescriptor::Modular(m), RingElement::Mod(x), RingElement::Mod(y)) => RingElement::Mod(mod_mul(*x, *y, *m)),
            (RingDescriptor::Poly(p), RingElement::Poly(x), RingElement::Poly(y)) => RingElement::Poly(x.mul(y, *p)),
            (RingDescriptor::Product(fs), RingElement::Tuple(xs), RingElement::Tuple(ys)) => {
                RingElement::Tuple(fs.iter().zip(xs.iter().zip(ys)).map(|(f, (x, y))| f.mul(x, y)).collect())
            }
            (RingDescriptor::Triangular { n, base }, RingElement::Matrix(xs), RingElement::Matrix(ys)) => {
                let mut out = vec![vec![base.zero(); *n]; *n];
                for i in 0..*n {
                    for k in i..*n {
                        let mut acc = base.zero();
                        for j in i..=k {
                            acc = base.add(&acc, &base.mul(&xs[i][j], &ys[j][k]));
                        }
                        out[i][k] = acc;
                    }
                }
                RingElement::Matrix(out)
            }
            _ => mismatch(self),
        }
    }

    pub fn pow(&self, a: &RingElement, mut k: u64) -> RingElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn sum<'a, I>(&self, items: I) -> RingElement
    where
        I: IntoIterator<Item = &'a RingElement>,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Lifts an element of a basic ring to its PID (residues to their
    /// representative in `[0, m)`).
    pub fn to_scalar(&self, a: &RingElement) -> Scalar {
        match (self, a) {
            (RingDescriptor::Integers, RingElement::Int(x)) => Scalar::Int(x.clone()),
            (RingDescriptor::Modular(_), RingElement::Mod(x)) => Scalar::int(*x),
            (RingDescriptor::Poly(_), RingElement::Poly(x)) => Scalar::Poly(x.clone()),
            _ => mismatch(self),
        }
    }

    /// Image of a PID element in a basic ring.
    pub fn from_scalar(&self, s: &Scalar) -> RingElement {
        match (self, s) {
            (RingDescriptor::Integers, Scalar::Int(x)) => RingElement::Int(x.clone()),
            (RingDescriptor::Modular(m), Scalar::Int(x)) => {
                RingElement::Mod(x.mod_floor(&BigInt::from(*m)).to_u64().expect("reduced residue"))
            }
            (RingDescriptor::Poly(_), Scalar::Poly(x)) => RingElement::Poly(x.clone()),
            _ => mismatch(self),
        }
    }
}

fn mismatch(r: &RingDescriptor) -> ! {
    panic!("element does not belong to ring {r}")
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(x) => write!(f, "{x}"),
            RingElement::Mod(x) => write!(f, "{x}"),
            RingElement::Poly(p) => write!(f, "{}", Scalar::Poly(p.clone())),
            RingElement::Tuple(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            RingElement::Matrix(rows) => {
                let parts: Vec<String> = rows
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}
