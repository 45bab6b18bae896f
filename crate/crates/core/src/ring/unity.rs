use super::{Ideal, RingDescriptor, RingElement};
use crate::error::{Error, Result};

/// Elements `e_i` with `sum e_i = 1` and `e_i` in the ordered product of the
/// other targets `X_j^{k_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionOfUnity {
    pub ideals: Vec<Ideal>,
    pub exponents: Vec<u32>,
    pub witnesses: Vec<RingElement>,
}

impl PartitionOfUnity {
    pub fn targets(&self, ring: &RingDescriptor) -> Vec<Ideal> {
        self.ideals
            .iter()
            .zip(&self.exponents)
            .map(|(x, &k)| ring.power_u(x, k))
            .collect()
    }

    /// Rechecks both postconditions from scratch.
    pub fn verify(&self, ring: &RingDescriptor) -> Result<()> {
        if self.witnesses.len() != self.ideals.len() || self.exponents.len() != self.ideals.len() {
            return Err(Error::VerificationFailed("partition of unity has inconsistent lengths".into()));
        }
        for w in &self.witnesses {
            ring.check_element(w)?;
        }
        if ring.sum(&self.witnesses) != ring.one() {
            return Err(Error::VerificationFailed("witnesses do not sum to one".into()));
        }
        let targets = self.targets(ring);
        for (i, w) in self.witnesses.iter().enumerate() {
            let others: Vec<Ideal> = targets
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, t)| t.clone())
                .collect();
            if !ring.ideal_member(&ring.product_all(&others), w) {
                return Err(Error::VerificationFailed(format!(
                    "witness {i} is not in the product of the other ideals"
                )));
            }
        }
        Ok(())
    }
}

impl RingDescriptor {
    /// `(a, b)` with `a` in `x`, `b` in `y` and `a + b = 1`, or `None` when
    /// the ideals are not comaximal.
    pub fn bezout(&self, x: &Ideal, y: &Ideal) -> Option<(RingElement, RingElement)> {
        match (self, x, y) {
            (RingDescriptor::Product(fs), Ideal::Product(xs), Ideal::Product(ys)) => {
                let mut a = Vec::with_capacity(fs.len());
                let mut b = Vec::with_capacity(fs.len());
                for (f, (u, v)) in fs.iter().zip(xs.iter().zip(ys)) {
                    let (p, q) = f.bezout(u, v)?;
                    a.push(p);
                    b.push(q);
                }
                Some((RingElement::Tuple(a), RingElement::Tuple(b)))
            }
            (RingDescriptor::Triangular { n, base }, Ideal::Triangular(_), Ideal::Triangular(_)) => {
                let mut a = vec![vec![base.zero(); *n]; *n];
                let mut b = vec![vec![base.zero(); *n]; *n];
                for i in 0..*n {
                    let (p, q) = base.bezout(x.entry(i, i), y.entry(i, i))?;
                    a[i][i] = p;
                    b[i][i] = q;
                }
                Some((RingElement::Matrix(a), RingElement::Matrix(b)))
            }
            (_, Ideal::Principal(u), Ideal::Principal(v)) => {
                let pid = self.basic()?.0;
                let (g, s, t) = pid.ext_gcd(u, v);
                if !self.is_unit_ideal(&self.basic_ideal(&g)) {
                    return None;
                }
                let a = self.from_scalar(&pid.mul(&s, u));
                let b = self.from_scalar(&pid.mul(&t, v));
                // with a residue modulus the gcd may be a unit other than one
                let total = self.add(&a, &b);
                if total == self.one() {
                    Some((a, b))
                } else {
                    let inv = self.unit_inverse(&total)?;
                    Some((self.mul(&a, &inv), self.mul(&b, &inv)))
                }
            }
            _ => None,
        }
    }

    fn unit_inverse(&self, u: &RingElement) -> Option<RingElement> {
        match (self, u) {
            (RingDescriptor::Modular(m), RingElement::Mod(x)) => {
                let (g, s, _) = crate::arith::int::ext_gcd(&(*x).into(), &(*m).into());
                (g == 1.into()).then(|| self.from_scalar(&crate::scalar::Scalar::Int(s)))
            }
            (RingDescriptor::Integers, RingElement::Int(x)) => {
                (x.magnitude() == &1u32.into()).then(|| u.clone())
            }
            (RingDescriptor::Poly(p), RingElement::Poly(f)) => (f.degree() == Some(0)).then(|| {
                RingElement::Poly(crate::arith::Poly::constant(crate::arith::poly::inv_mod(f.lead(), *p), *p))
            }),
            _ => None,
        }
    }

    /// Witnesses for the pairwise comaximal family `{X_i^{k_i}}`, built by
    /// folding pairwise Bezout identities and verified before return.
    pub fn partition_of_unity(&self, ideals: &[Ideal], exponents: &[u32]) -> Result<PartitionOfUnity> {
        if ideals.len() != exponents.len() {
            return Err(Error::MalformedIdeal("ideal and exponent lists differ in length".into()));
        }
        if exponents.iter().any(|&k| k < 1) {
            return Err(Error::InvalidExponent);
        }
        self.require_comaximal(ideals)?;
        let targets: Vec<Ideal> = ideals
            .iter()
            .zip(exponents)
            .map(|(x, &k)| self.power_u(x, k))
            .collect();
        let mut witnesses = vec![self.one()];
        let mut prefix = targets[0].clone();
        for (t, target) in targets.iter().enumerate().skip(1) {
            let (a, b) = self
                .bezout(target, &prefix)
                .ok_or(Error::NotComaximal(t, t.saturating_sub(1)))?;
            for w in witnesses.iter_mut() {
                *w = self.mul(w, &a);
            }
            witnesses.push(b);
            prefix = self.product_u(&prefix, target);
        }
        let out = PartitionOfUnity {
            ideals: ideals.to_vec(),
            exponents: exponents.to_vec(),
            witnesses,
        };
        out.verify(self)?;
        Ok(out)
    }
}
