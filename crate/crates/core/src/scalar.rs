//! The two principal ideal domains every supported ring is built from: the
//! integers and polynomials over a prime field. Linear algebra is written
//! once against [`Pid`] and dispatches on the variant.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, poly, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pid {
    Integers,
    Poly(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Poly(Poly),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Poly(p) => {
                if p.is_zero() {
                    return write!(f, "0");
                }
                let terms: Vec<String> = p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => format!("{c}"),
                        (1, 1) => "x".to_string(),
                        (1, c) => format!("{c}x"),
                        (i, 1) => format!("x^{i}"),
                        (i, c) => format!("{c}x^{i}"),
                    })
                    .collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}

impl Scalar {
    pub fn int(n: impl Into<BigInt>) -> Scalar {
        Scalar::Int(n.into())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn as_int(&self) -> &BigInt {
        match self {
            Scalar::Int(n) => n,
            Scalar::Poly(_) => panic!("expected an integer scalar"),
        }
    }

    pub fn as_poly(&self) -> &Poly {
        match self {
            Scalar::Poly(p) => p,
            Scalar::Int(_) => panic!("expected a polynomial scalar"),
        }
    }
}

impl Pid {
    pub fn zero(self) -> Scalar {
        match self {
            Pid::Integers => Scalar::Int(BigInt::zero()),
            Pid::Poly(_) => Scalar::Poly(Poly::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Pid::Integers => Scalar::Int(BigInt::one()),
            Pid::Poly(_) => Scalar::Poly(Poly::one()),
        }
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Pid::Integers => Scalar::Int(BigInt::from(v)),
            Pid::Poly(p) => Scalar::Poly(Poly::from_signed(&[v], p)),
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Pid::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Pid::Poly(p), Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.add(y, p)),
            _ => mismatch(),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Pid::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x - y),
            (Pid::Poly(p), Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.sub(y, p)),
            _ => mismatch(),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Pid::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (Pid::Poly(p), Scalar::Poly(x)) => Scalar::Poly(x.neg(p)),
            _ => mismatch(),
        }
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Pid::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Pid::Poly(p), Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.mul(y, p)),
            _ => mismatch(),
        }
    }

    pub fn pow(self, a: &Scalar, k: u32) -> Scalar {
        match (self, a) {
            (Pid::Integers, Scalar::Int(x)) => Scalar::Int(num_traits::pow(x.clone(), k as usize)),
            (Pid::Poly(p), Scalar::Poly(x)) => Scalar::Poly(x.pow(k as u64, p)),
            _ => mismatch(),
        }
    }

    /// Euclidean division with a canonical remainder: `0 <= r < |b|` for
    /// integers, `deg r < deg b` for polynomials.
    pub fn div_rem(self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (self, a, b) {
            (Pid::Integers, Scalar::Int(x), Scalar::Int(y)) => {
                let r = x.mod_floor(&y.abs());
                let q = (x - &r) / y;
                (Scalar::Int(q), Scalar::Int(r))
            }
            (Pid::Poly(p), Scalar::Poly(x), Scalar::Poly(y)) => {
                let (q, r) = x.div_rem(y, p);
                (Scalar::Poly(q), Scalar::Poly(r))
            }
            _ => mismatch(),
        }
    }

    /// Canonical associate (nonnegative / monic) and the unit `u` with `a*u`
    /// equal to it.
    pub fn normalize(self, a: &Scalar) -> (Scalar, Scalar) {
        match (self, a) {
            (Pid::Integers, Scalar::Int(x)) => {
                if x.is_negative() {
                    (Scalar::Int(-x), Scalar::Int(-BigInt::one()))
                } else {
                    (Scalar::Int(x.clone()), Scalar::Int(BigInt::one()))
                }
            }
            (Pid::Poly(p), Scalar::Poly(x)) => {
                let (m, u) = x.monic(p);
                (Scalar::Poly(m), Scalar::Poly(Poly::constant(u, p)))
            }
            _ => mismatch(),
        }
    }

    pub fn canonical(self, a: &Scalar) -> Scalar {
        self.normalize(a).0
    }

    pub fn is_unit(self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.abs().is_one(),
            Scalar::Poly(x) => x.degree() == Some(0),
        }
    }

    pub fn is_one(self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_one(),
            Scalar::Poly(x) => x.is_one(),
        }
    }

    /// `(g, s, t)` with `g` canonical and `s*a + t*b = g`.
    pub fn ext_gcd(self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar, Scalar) {
        match (self, a, b) {
            (Pid::Integers, Scalar::Int(x), Scalar::Int(y)) => {
                let (g, s, t) = int::ext_gcd(x, y);
                (Scalar::Int(g), Scalar::Int(s), Scalar::Int(t))
            }
            (Pid::Poly(p), Scalar::Poly(x), Scalar::Poly(y)) => {
                let (g, s, t) = poly::ext_gcd(x, y, p);
                (Scalar::Poly(g), Scalar::Poly(s), Scalar::Poly(t))
            }
            _ => mismatch(),
        }
    }

    pub fn gcd(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.ext_gcd(a, b).0
    }

    pub fn lcm(self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let g = self.gcd(a, b);
        self.canonical(&self.mul(&self.exact_div(a, &g), b))
    }

    /// Whether `a` divides `b`.
    pub fn divides(self, a: &Scalar, b: &Scalar) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        self.div_rem(b, a).1.is_zero()
    }

    /// `b / a`, assuming `a` divides `b`.
    pub fn exact_div(self, b: &Scalar, a: &Scalar) -> Scalar {
        let (q, r) = self.div_rem(b, a);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Compares Euclidean sizes (absolute value / degree).
    pub fn cmp_size(self, a: &Scalar, b: &Scalar) -> Ordering {
        match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => x.abs().cmp(&y.abs()),
            (Scalar::Poly(x), Scalar::Poly(y)) => x.degree().cmp(&y.degree()),
            _ => mismatch(),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn unit_inverse(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Pid::Integers, Scalar::Int(_)) => a.clone(),
            (Pid::Poly(p), Scalar::Poly(x)) => {
                Scalar::Poly(Poly::constant(poly::inv_mod(x.lead(), p), p))
            }
            _ => mismatch(),
        }
    }

    /// Squarefree radical of a nonzero element, canonical.
    pub fn radical(self, a: &Scalar) -> crate::Result<Scalar> {
        match (self, a) {
            (Pid::Integers, Scalar::Int(x)) => Ok(Scalar::Int(int::radical(x)?)),
            (Pid::Poly(p), Scalar::Poly(x)) => Ok(Scalar::Poly(poly::radical(x, p)?)),
            _ => mismatch(),
        }
    }

    /// Prime-power factorization `(prime, exponent)` of a nonzero element;
    /// primes are canonical and sorted.
    pub fn factor(self, a: &Scalar) -> crate::Result<Vec<(Scalar, u32)>> {
        match (self, a) {
            (Pid::Integers, Scalar::Int(x)) => Ok(int::factor_bigint(x)?
                .into_iter()
                .map(|(q, e)| (Scalar::Int(q), e))
                .collect()),
            (Pid::Poly(p), Scalar::Poly(x)) => Ok(poly::factor(x, p)?
                .into_iter()
                .map(|(q, e)| (Scalar::Poly(q), e))
                .collect()),
            _ => mismatch(),
        }
    }

    /// Whether the element generates a nonzero prime ideal.
    pub fn is_prime_element(self, a: &Scalar) -> crate::Result<bool> {
        match (self, a) {
            (Pid::Integers, Scalar::Int(x)) => Ok(int::is_prime_bigint(&x.abs())),
            (Pid::Poly(p), Scalar::Poly(x)) => poly::is_irreducible(x, p),
            _ => mismatch(),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar does not belong to the given domain")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_division_is_canonical() {
        let z = Pid::Integers;
        let (q, r) = z.div_rem(&Scalar::int(-7), &Scalar::int(3));
        assert_eq!((q, r), (Scalar::int(-3), Scalar::int(2)));
        let (q, r) = z.div_rem(&Scalar::int(7), &Scalar::int(-3));
        assert_eq!((q, r), (Scalar::int(-2), Scalar::int(1)));
    }

    #[test]
    fn lcm_and_divisibility() {
        let z = Pid::Integers;
        assert_eq!(z.lcm(&Scalar::int(4), &Scalar::int(6)), Scalar::int(12));
        assert!(z.divides(&Scalar::int(0), &Scalar::int(0)));
        assert!(!z.divides(&Scalar::int(0), &Scalar::int(3)));
        assert!(z.divides(&Scalar::int(3), &Scalar::int(0)));
    }
}
