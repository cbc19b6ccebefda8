//! Finite abelian coefficient groups `Z_{m_1} x ... x Z_{m_t}`.
//!
//! Elements are packed into a single mixed-radix code in `0..order`, first
//! factor least significant. The zero element is code 0 and the canonical
//! generator of the first factor is code 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(u32);

impl GroupElement {
    pub const ZERO: GroupElement = GroupElement(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
    order: u32,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        let spec = || {
            factors
                .iter()
                .map(|m| format!("Z{m}"))
                .collect::<Vec<_>>()
                .join("x")
        };
        if factors.is_empty() {
            return Err(Error::InvalidGroup {
                spec: String::new(),
                reason: "no factors".into(),
            });
        }
        if let Some(m) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup {
                spec: spec(),
                reason: format!("factor order {m} < 2"),
            });
        }
        let order = factors
            .iter()
            .try_fold(1u32, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::InvalidGroup {
                spec: spec(),
                reason: "order does not fit in 32 bits".into(),
            })?;
        Ok(FiniteAbelianGroup { factors, order })
    }

    /// The cyclic group `Z_m`.
    pub fn cyclic(m: u32) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// `r = |R|`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Distinct primes dividing the order.
    pub fn prime_divisors(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .factors
            .iter()
            .flat_map(|&m| prime_factors(m as u64))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::ZERO
    }

    /// Generator of the first cyclic factor.
    pub fn one(&self) -> GroupElement {
        GroupElement(1)
    }

    pub fn element(&self, residues: &[u32]) -> Result<GroupElement> {
        if residues.len() != self.factors.len()
            || residues.iter().zip(&self.factors).any(|(a, m)| a >= m)
        {
            return Err(Error::InvalidElement(residues.to_vec()));
        }
        let mut code = 0u32;
        for (a, m) in residues.iter().zip(&self.factors).rev() {
            code = code * m + a;
        }
        Ok(GroupElement(code))
    }

    pub fn residues(&self, e: GroupElement) -> Vec<u32> {
        let mut c = e.0;
        self.factors
            .iter()
            .map(|m| {
                let a = c % m;
                c /= m;
                a
            })
            .collect()
    }

    pub fn from_code(&self, code: u32) -> Result<GroupElement> {
        if code >= self.order {
            return Err(Error::InvalidElement(vec![code]));
        }
        Ok(GroupElement(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    pub fn add(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        if let [m] = self.factors[..] {
            let s = a.0 + b.0;
            return GroupElement(if s >= m { s - m } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut code = 0u32;
        let mut place = 1u32;
        for &m in &self.factors {
            let s = (x % m + y % m) % m;
            code += s * place;
            place = place.wrapping_mul(m);
            x /= m;
            y /= m;
        }
        GroupElement(code)
    }

    pub fn neg(&self, a: GroupElement) -> GroupElement {
        if let [m] = self.factors[..] {
            return GroupElement(if a.0 == 0 { 0 } else { m - a.0 });
        }
        let mut x = a.0;
        let mut code = 0u32;
        let mut place = 1u32;
        for &m in &self.factors {
            let d = x % m;
            code += ((m - d) % m) * place;
            place = place.wrapping_mul(m);
            x /= m;
        }
        GroupElement(code)
    }

    pub fn sub(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.add(a, self.neg(b))
    }

    /// `a + sign * b` for a sign in `{+1, -1}`.
    #[inline]
    pub fn add_signed(&self, a: GroupElement, sign: i8, b: GroupElement) -> GroupElement {
        if sign >= 0 {
            self.add(a, b)
        } else {
            self.sub(a, b)
        }
    }

    #[inline]
    pub fn signed(&self, sign: i8, a: GroupElement) -> GroupElement {
        if sign >= 0 {
            a
        } else {
            self.neg(a)
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{m}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `"Z2"`, `"Z6"`, `"Z2xZ4"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidGroup {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let mut factors = Vec::new();
        for part in s.trim().split('x') {
            let digits = part
                .strip_prefix('Z')
                .ok_or_else(|| bad("each factor must look like Z<order>"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("factor order must be a decimal integer"));
            }
            let m: u32 = digits.parse().map_err(|_| bad("factor order too large"))?;
            factors.push(m);
        }
        FiniteAbelianGroup::new(factors).map_err(|e| match e {
            Error::InvalidGroup { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && prime_factors(p) == [p]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["Z2", "Z6", "Z2xZ4", "Z3xZ3xZ5"] {
            let g: FiniteAbelianGroup = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g: FiniteAbelianGroup = "Z2xZ4".parse().unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.factors(), &[2, 4]);
        for bad in ["", "Z", "Z1", "Z0", "2", "Z2x", "Z2*Z3", "Zx2", "Z-3", "z2"] {
            assert!(bad.parse::<FiniteAbelianGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn arithmetic_matches_residues() {
        let g: FiniteAbelianGroup = "Z2xZ3xZ4".parse().unwrap();
        for a in g.elements() {
            assert_eq!(g.add(a, g.neg(a)), g.zero());
            for b in g.elements() {
                let ra = g.residues(a);
                let rb = g.residues(b);
                let sum: Vec<u32> = ra
                    .iter()
                    .zip(&rb)
                    .zip(g.factors())
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                assert_eq!(g.residues(g.add(a, b)), sum);
                assert_eq!(g.add(g.sub(a, b), b), a);
            }
        }
        assert_eq!(g.element(&g.residues(g.one())).unwrap(), g.one());
        assert_eq!(g.residues(g.one()), vec![1, 0, 0]);
    }

    #[test]
    fn primes() {
        let g: FiniteAbelianGroup = "Z6xZ4xZ25".parse().unwrap();
        assert_eq!(g.prime_divisors(), vec![2, 3, 5]);
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
    }
}
