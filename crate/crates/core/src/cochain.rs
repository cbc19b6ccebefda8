//! Cochains on the full simplex `Δ_{n-1}` with values in a finite abelian
//! group, the augmented coboundary, and the combinatorial quantities
//! attached to a (k-1)-cochain: support, `b(φ)`, weight `w(φ)`, the vertex
//! contraction `φ_u` and membership in the class of minimal connected
//! cochains.
//!
//! Values are stored densely by colex rank. Degree -1 is the augmentation
//! term `C^{-1} = R`, a single value on the empty simplex.

use rand::Rng;

use crate::domination::{is_connected_family, UniformFamily};
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::simplex::{
    coface_ranks_with_signs, colex_rank, facet_rank, for_each_subset, simplex_count,
    sort_with_sign, unrank_unchecked, CanonicalSimplex, SimplexRank, VertexId,
};

/// Default bound on brute-force search spaces.
pub const DEFAULT_CAP: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    group: FiniteAbelianGroup,
    n: u32,
    degree: isize,
    values: Vec<GroupElement>,
}

impl Cochain {
    pub fn zero(group: &FiniteAbelianGroup, n: u32, degree: isize) -> Result<Self> {
        if degree < -1 || degree + 1 > n as isize {
            return Err(Error::InvalidDegree {
                degree,
                reason: "need -1 <= degree <= n - 1",
            });
        }
        Ok(Cochain {
            group: group.clone(),
            n,
            degree,
            values: vec![GroupElement::ZERO; simplex_count(n, degree)],
        })
    }

    /// Builds a cochain from its values on canonical simplices.
    pub fn from_fn<F>(group: &FiniteAbelianGroup, n: u32, degree: isize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[VertexId]) -> GroupElement,
    {
        let mut c = Cochain::zero(group, n, degree)?;
        for_each_subset(n, (degree + 1) as usize, |r, vs| c.values[r] = f(vs));
        Ok(c)
    }

    pub fn from_values(
        group: &FiniteAbelianGroup,
        n: u32,
        degree: isize,
        values: Vec<GroupElement>,
    ) -> Result<Self> {
        let mut c = Cochain::zero(group, n, degree)?;
        if values.len() != c.values.len() || values.iter().any(|v| v.code() >= group.order()) {
            return Err(Error::IncompatibleCochains);
        }
        c.values = values;
        Ok(c)
    }

    /// `value` on `simplex`, zero elsewhere.
    pub fn indicator(
        group: &FiniteAbelianGroup,
        n: u32,
        simplex: &CanonicalSimplex,
        value: GroupElement,
    ) -> Result<Self> {
        simplex.check_bound(n)?;
        let mut c = Cochain::zero(group, n, simplex.dim())?;
        c.values[colex_rank(simplex.vertices())] = value;
        Ok(c)
    }

    /// Independent uniform values.
    pub fn random<R: Rng + ?Sized>(
        group: &FiniteAbelianGroup,
        n: u32,
        degree: isize,
        rng: &mut R,
    ) -> Result<Self> {
        let mut c = Cochain::zero(group, n, degree)?;
        let r = group.order();
        for v in c.values.iter_mut() {
            *v = group.from_code(rng.random_range(0..r))?;
        }
        Ok(c)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn get(&self, rank: SimplexRank) -> GroupElement {
        self.values[rank]
    }

    pub fn set(&mut self, rank: SimplexRank, value: GroupElement) {
        self.values[rank] = value;
    }

    pub fn value(&self, simplex: &CanonicalSimplex) -> Result<GroupElement> {
        self.eval_ordered(simplex.vertices())
    }

    /// Skew-symmetric evaluation on an ordered simplex `[v_0, ..., v_d]`.
    pub fn eval_ordered(&self, vertices: &[VertexId]) -> Result<GroupElement> {
        if vertices.len() as isize != self.degree + 1 {
            return Err(Error::InvalidDegree {
                degree: vertices.len() as isize - 1,
                reason: "simplex dimension differs from cochain degree",
            });
        }
        let (sorted, sign) = sort_with_sign(vertices)?;
        if let Some(&v) = sorted.iter().find(|&&v| v < 1 || v > self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.group.signed(sign, self.values[colex_rank(&sorted)]))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Ranks of the simplices where the value is nonzero.
    pub fn support(&self) -> Vec<SimplexRank> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(r, _)| r)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.group != other.group || self.n != other.n || self.degree != other.degree {
            return Err(Error::IncompatibleCochains);
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, &b) in out.values.iter_mut().zip(&other.values) {
            *a = self.group.add(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, &b) in out.values.iter_mut().zip(&other.values) {
            *a = self.group.sub(*a, b);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Cochain {
        let mut out = self.clone();
        for a in out.values.iter_mut() {
            *a = self.group.neg(*a);
        }
        out
    }

    /// `(dφ)(τ) = Σ_i (-1)^i φ(τ_i)`; in degree -1, `(dφ)(v) = φ(∅)`.
    pub fn coboundary(&self) -> Result<Cochain> {
        if self.degree + 2 > self.n as isize {
            return Err(Error::InvalidDegree {
                degree: self.degree,
                reason: "coboundary would exceed dimension n - 1",
            });
        }
        let g = &self.group;
        let mut out = Cochain::zero(g, self.n, self.degree + 1)?;
        for_each_subset(self.n, (self.degree + 2) as usize, |r, vs| {
            let mut acc = GroupElement::ZERO;
            for i in 0..vs.len() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                acc = g.add_signed(acc, sign, self.values[facet_rank(vs, i)]);
            }
            out.values[r] = acc;
        });
        Ok(out)
    }

    /// `b(φ)`: the number of (d+1)-simplices of the full simplex on which
    /// `dφ` is nonzero.
    pub fn b_count(&self) -> Result<usize> {
        Ok(self.coboundary()?.support_size())
    }

    /// Minimum support size over the class `φ + d ψ`, with `ψ` ranging over
    /// all cochains one degree down (the constants when `φ` has degree 0).
    /// Fails when `r^{C(n, degree)}` exceeds `cap`.
    pub fn weight_bruteforce(&self, cap: u64) -> Result<usize> {
        if self.degree < 0 {
            return Err(Error::InvalidDegree {
                degree: self.degree,
                reason: "weight needs degree >= 0",
            });
        }
        let g = &self.group;
        let r = g.order() as u64;
        let lower: Vec<CanonicalSimplex> = (0..simplex_count(self.n, self.degree - 1))
            .map(|rank| unrank_unchecked(rank, self.degree as usize, self.n))
            .collect();
        let states = (r as f64).powi(lower.len() as i32);
        if states > cap as f64 {
            return Err(Error::CapExceeded {
                required: format!("{r}^{}", lower.len()),
                cap,
            });
        }
        let stars: Vec<Vec<(SimplexRank, i8)>> = lower
            .iter()
            .map(|s| coface_ranks_with_signs(s, self.n))
            .collect();

        let mut current = self.values.clone();
        let mut support = self.support_size();
        let mut best = support;
        let mut digits = vec![0u32; lower.len()];
        // odometer over ψ; each step changes one coordinate of ψ by a known
        // delta and patches dψ on that simplex's star
        'outer: loop {
            let mut j = 0;
            loop {
                if j == digits.len() {
                    break 'outer;
                }
                let old = g.from_code(digits[j])?;
                let next_code = (digits[j] + 1) % r as u32;
                let delta = g.sub(g.from_code(next_code)?, old);
                for &(t, sign) in &stars[j] {
                    let before = current[t];
                    let after = g.add_signed(before, sign, delta);
                    current[t] = after;
                    match (before.is_zero(), after.is_zero()) {
                        (true, false) => support += 1,
                        (false, true) => support -= 1,
                        _ => {}
                    }
                }
                digits[j] = next_code;
                if next_code != 0 {
                    break;
                }
                j += 1;
            }
            if support < best {
                best = support;
                if best == 0 {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// `φ_u(τ) = φ(uτ)` for `u ∉ τ` and 0 otherwise; one degree lower.
    pub fn contraction(&self, u: VertexId) -> Result<Cochain> {
        if self.degree < 0 {
            return Err(Error::InvalidDegree {
                degree: self.degree,
                reason: "contraction needs degree >= 0",
            });
        }
        if u < 1 || u > self.n {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
        }
        let mut out = Cochain::zero(&self.group, self.n, self.degree - 1)?;
        let mut ordered = Vec::with_capacity(self.degree as usize + 1);
        let mut err = None;
        for_each_subset(self.n, self.degree as usize, |r, tau| {
            if tau.contains(&u) {
                return;
            }
            ordered.clear();
            ordered.push(u);
            ordered.extend_from_slice(tau);
            match self.eval_ordered(&ordered) {
                Ok(v) => out.values[r] = v,
                Err(e) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// The support as a (degree+1)-uniform family on `[n]`.
    pub fn support_family(&self) -> Result<UniformFamily> {
        if self.degree < 0 {
            return Err(Error::InvalidDegree {
                degree: self.degree,
                reason: "support family needs degree >= 0",
            });
        }
        UniformFamily::new(self.n, (self.degree + 1) as u32, self.support())
    }

    pub fn is_connected_support(&self) -> Result<bool> {
        Ok(is_connected_family(&self.support_family()?))
    }

    /// Nonzero, connected support, and the support already has minimum size
    /// in its coboundary class.
    pub fn in_g_n(&self, cap: u64) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        if !self.is_connected_support()? {
            return Ok(false);
        }
        Ok(self.weight_bruteforce(cap)? == self.support_size())
    }
}

/// The extremal cochain for `b(φ) >= n w(φ) / (k+1)`: split `[n]` into
/// consecutive blocks `V_0, ..., V_k` of size `n/(k+1)` and put the
/// generator `1` of the first cyclic factor on every (k-1)-simplex whose
/// i-th smallest vertex lies in `V_i` for `i < k`.
pub fn partition_cochain(group: &FiniteAbelianGroup, n: u32, k: u32) -> Result<Cochain> {
    if k < 1 || k + 1 > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    if !n.is_multiple_of(k + 1) {
        return Err(Error::Indivisible { n, k });
    }
    let block = n / (k + 1);
    let one = group.one();
    Cochain::from_fn(group, n, k as isize - 1, |vs| {
        if vs
            .iter()
            .enumerate()
            .all(|(i, &v)| (v - 1) / block == i as u32)
        {
            one
        } else {
            GroupElement::ZERO
        }
    })
}
