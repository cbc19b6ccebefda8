//! k-uniform families `F ⊆ ([n] choose k)` and randomized partial
//! domination.
//!
//! For `σ ∈ F`, `β_F(σ)` counts the (k+1)-sets `τ` whose k-subsets meet `F`
//! in `{σ}` alone. `Γ(S)` is the set of members meeting some element of `S`
//! in exactly k-1 vertices. A member of `S` with no such partner is not in
//! `Γ(S)`.
//!
//! When `β(F) <= (1 - θ) m (n - k)`, keeping each member independently with
//! probability `c(ε)/(n - k)`, `c(ε) = 2 log(1/ε)`, yields with probability
//! above `ε(1-ε)θ` a set `S` with `|Γ(S)| >= (1-ε)θm` and
//! `|S| <= 20 log(1/ε) m/(n-k) + 2 log(1/(εθ))`.
//! [`find_partial_dominating_set`] retries until both hold.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::complex::RngSeed;
use crate::error::{Error, Result};
use crate::simplex::{colex_rank, simplex_count, unrank_unchecked, CanonicalSimplex, SimplexRank};
use crate::unionfind::DisjointSet;

/// A set of k-subsets of `[n]`, stored by colex rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformFamily {
    n: u32,
    k: u32,
    members: BTreeSet<SimplexRank>,
}

impl UniformFamily {
    pub fn new(n: u32, k: u32, members: impl IntoIterator<Item = SimplexRank>) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        let count = simplex_count(n, k as isize - 1);
        let members: BTreeSet<SimplexRank> = members.into_iter().collect();
        if let Some(&r) = members.iter().next_back() {
            if r >= count {
                return Err(Error::RankOutOfRange {
                    rank: r,
                    dim: k as isize - 1,
                    n,
                    count,
                });
            }
        }
        Ok(UniformFamily { n, k, members })
    }

    pub fn from_simplices(n: u32, k: u32, sets: &[CanonicalSimplex]) -> Result<Self> {
        let mut ranks = Vec::with_capacity(sets.len());
        for s in sets {
            if s.len() != k as usize {
                return Err(Error::InvalidDegree {
                    degree: s.dim(),
                    reason: "member size differs from k",
                });
            }
            s.check_bound(n)?;
            ranks.push(colex_rank(s.vertices()));
        }
        UniformFamily::new(n, k, ranks)
    }

    /// All k-subsets of `[n]`.
    pub fn full(n: u32, k: u32) -> Result<Self> {
        UniformFamily::new(n, k, 0..simplex_count(n, k as isize - 1))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `m = |F|`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &BTreeSet<SimplexRank> {
        &self.members
    }

    pub fn contains(&self, rank: SimplexRank) -> bool {
        self.members.contains(&rank)
    }

    pub fn simplex(&self, rank: SimplexRank) -> CanonicalSimplex {
        unrank_unchecked(rank, self.k as usize, self.n)
    }

    fn rank_of(&self, s: &CanonicalSimplex) -> Result<SimplexRank> {
        s.check_bound(self.n)?;
        let r = colex_rank(s.vertices());
        if s.len() != self.k as usize || !self.contains(r) {
            return Err(Error::NotAMember(s.vertices().to_vec()));
        }
        Ok(r)
    }

    /// Members of `F` meeting `σ` in exactly k-1 vertices.
    fn neighbors(&self, sigma: &[u32]) -> Vec<SimplexRank> {
        let mut out = Vec::new();
        let mut t = Vec::with_capacity(sigma.len());
        for drop in 0..sigma.len() {
            for v in (1..=self.n).filter(|v| !sigma.contains(v)) {
                t.clear();
                t.extend(sigma.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x));
                let pos = t.partition_point(|&x| x < v);
                t.insert(pos, v);
                let r = colex_rank(&t);
                if self.members.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    fn beta_of(&self, sigma: &[u32]) -> usize {
        let mut count = 0;
        let mut tau = Vec::with_capacity(sigma.len() + 1);
        let mut facet = Vec::with_capacity(sigma.len());
        for v in 1..=self.n {
            if sigma.contains(&v) {
                continue;
            }
            tau.clear();
            tau.extend_from_slice(sigma);
            let pos = tau.partition_point(|&x| x < v);
            tau.insert(pos, v);
            // every k-subset of τ other than σ omits some vertex of σ
            let lonely = (0..tau.len()).filter(|&i| i != pos).all(|i| {
                facet.clear();
                facet.extend(tau.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
                !self.members.contains(&colex_rank(&facet))
            });
            if lonely {
                count += 1;
            }
        }
        count
    }
}

/// `β_F(σ)`.
pub fn beta_sigma(family: &UniformFamily, sigma: &CanonicalSimplex) -> Result<usize> {
    family.rank_of(sigma)?;
    Ok(family.beta_of(sigma.vertices()))
}

/// `β(F) = Σ_{σ ∈ F} β_F(σ)`.
pub fn beta_total(family: &UniformFamily) -> usize {
    family
        .members
        .iter()
        .map(|&r| family.beta_of(family.simplex(r).vertices()))
        .sum()
}

/// `Γ(S)`. Errors if `S ⊄ F`.
pub fn gamma(family: &UniformFamily, selected: &BTreeSet<SimplexRank>) -> Result<BTreeSet<SimplexRank>> {
    if let Some(&r) = selected.iter().find(|r| !family.contains(**r)) {
        let s = if r < simplex_count(family.n, family.k as isize - 1) {
            family.simplex(r).vertices().to_vec()
        } else {
            vec![]
        };
        return Err(Error::NotAMember(s));
    }
    Ok(gamma_unchecked(family, selected))
}

fn gamma_unchecked(family: &UniformFamily, selected: &BTreeSet<SimplexRank>) -> BTreeSet<SimplexRank> {
    let mut out = BTreeSet::new();
    for &r in selected {
        let s = family.simplex(r);
        out.extend(family.neighbors(s.vertices()));
    }
    out
}

/// Connectivity under the relation "meet in k-1 vertices"; families of size
/// at most one are connected.
pub fn is_connected_family(family: &UniformFamily) -> bool {
    if family.len() <= 1 {
        return true;
    }
    let ranks: Vec<SimplexRank> = family.members.iter().copied().collect();
    let index = |r: SimplexRank| ranks.binary_search(&r).unwrap();
    let mut dsu = DisjointSet::new(ranks.len());
    for (i, &r) in ranks.iter().enumerate() {
        let s = family.simplex(r);
        for nb in family.neighbors(s.vertices()) {
            dsu.union(i, index(nb));
        }
    }
    dsu.components() == 1
}

/// `c(ε) = 2 log(1/ε)`.
pub fn c_epsilon(epsilon: f64) -> f64 {
    2.0 * (1.0 / epsilon).ln()
}

/// Required coverage `(1-ε)θm`.
pub fn coverage_target(epsilon: f64, theta: f64, m: usize) -> f64 {
    (1.0 - epsilon) * theta * m as f64
}

/// Size bound `20 log(1/ε) m/(n-k) + 2 log(1/(εθ))`.
pub fn size_bound(epsilon: f64, theta: f64, m: usize, n: u32, k: u32) -> f64 {
    20.0 * (1.0 / epsilon).ln() * m as f64 / (n - k) as f64 + 2.0 * (1.0 / (epsilon * theta)).ln()
}

/// Lower bound `ε(1-ε)θ` on the per-attempt success probability.
pub fn success_probability_bound(epsilon: f64, theta: f64) -> f64 {
    epsilon * (1.0 - epsilon) * theta
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Ok(())
}

fn check_size(family: &UniformFamily, epsilon: f64) -> Result<()> {
    let required = c_epsilon(epsilon) + family.k as f64;
    if (family.n as f64) <= required {
        return Err(Error::TooFewVertices {
            n: family.n,
            required,
        });
    }
    Ok(())
}

fn sample_with_probability(family: &UniformFamily, q: f64, seed: RngSeed) -> BTreeSet<SimplexRank> {
    let mut rng = seed.rng();
    family
        .members
        .iter()
        .copied()
        .filter(|_| rng.random::<f64>() < q)
        .collect()
}

/// Keeps each member independently with probability `c(ε)/(n-k)`. Requires
/// `0 < ε <= 1/2` and `n > 2 log(1/ε) + k`, which make that probability
/// less than one.
pub fn sample_partial_dominating_set(
    family: &UniformFamily,
    epsilon: f64,
    seed: RngSeed,
) -> Result<BTreeSet<SimplexRank>> {
    check_epsilon(epsilon)?;
    check_size(family, epsilon)?;
    let q = c_epsilon(epsilon) / (family.n - family.k) as f64;
    Ok(sample_with_probability(family, q, seed))
}

/// Same as [`sample_partial_dominating_set`] without the vertex-count check;
/// the inclusion probability is clamped to 1.
pub fn sample_partial_dominating_set_unchecked(
    family: &UniformFamily,
    epsilon: f64,
    seed: RngSeed,
) -> Result<BTreeSet<SimplexRank>> {
    check_epsilon(epsilon)?;
    let q = if family.n > family.k {
        (c_epsilon(epsilon) / (family.n - family.k) as f64).min(1.0)
    } else {
        1.0
    };
    Ok(sample_with_probability(family, q, seed))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominationOutcome {
    pub selected: BTreeSet<SimplexRank>,
    pub gamma_size: usize,
    /// Failed attempts before this one.
    pub retries: u64,
    pub epsilon: f64,
    pub theta: f64,
}

/// Whether `S` meets both conclusions: `|Γ(S)| >= (1-ε)θm` and the size
/// bound.
pub fn meets_domination_bounds(
    family: &UniformFamily,
    selected: &BTreeSet<SimplexRank>,
    gamma_size: usize,
    epsilon: f64,
    theta: f64,
) -> bool {
    let m = family.len();
    gamma_size as f64 >= coverage_target(epsilon, theta, m)
        && selected.len() as f64 <= size_bound(epsilon, theta, m, family.n, family.k)
}

/// Default retry budget `ceil(50 / (ε(1-ε)θ))`.
pub fn default_max_retries(epsilon: f64, theta: f64) -> u64 {
    (50.0 / success_probability_bound(epsilon, theta)).ceil() as u64
}

/// Checks `β(F) <= (1-θ) m (n-k)` with a relative slack for rounding in θ.
pub fn check_beta_hypothesis(family: &UniformFamily, theta: f64) -> Result<usize> {
    let beta = beta_total(family);
    let bound = (1.0 - theta) * family.len() as f64 * (family.n - family.k) as f64;
    if beta as f64 > bound + 1e-9 * bound.max(1.0) {
        return Err(Error::BetaHypothesis { beta, bound });
    }
    Ok(beta)
}

/// Las Vegas search: attempt `i` samples with seed `derive(seed, [i])` and
/// the first attempt meeting both bounds is returned.
pub fn find_partial_dominating_set(
    family: &UniformFamily,
    epsilon: f64,
    theta: f64,
    seed: RngSeed,
    max_retries: Option<u64>,
) -> Result<DominationOutcome> {
    check_epsilon(epsilon)?;
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    check_size(family, epsilon)?;
    check_beta_hypothesis(family, theta)?;
    let attempts = max_retries.unwrap_or_else(|| default_max_retries(epsilon, theta));
    for attempt in 0..attempts {
        let selected = sample_partial_dominating_set(family, epsilon, seed.derive(&[attempt]))?;
        let gamma_size = gamma_unchecked(family, &selected).len();
        if meets_domination_bounds(family, &selected, gamma_size, epsilon, theta) {
            return Ok(DominationOutcome {
                selected,
                gamma_size,
                retries: attempt,
                epsilon,
                theta,
            });
        }
    }
    Err(Error::RetriesExhausted(attempts))
}

/// `θ = 1 - β(F) / (m (n-k))`, the largest θ for which `F` satisfies the
/// hypothesis. `None` for empty families.
pub fn theta_of(family: &UniformFamily) -> Option<f64> {
    if family.is_empty() || family.n <= family.k {
        return None;
    }
    let cap = family.len() as f64 * (family.n - family.k) as f64;
    Some(1.0 - beta_total(family) as f64 / cap)
}

/// `m` distinct uniformly random k-subsets of `[n]`.
pub fn random_family(n: u32, k: u32, m: usize, seed: RngSeed) -> Result<UniformFamily> {
    let available = simplex_count(n, k as isize - 1);
    if m > available {
        return Err(Error::FamilyTooLarge { m, available });
    }
    let mut rng = seed.rng();
    let ranks = rand::seq::index::sample(&mut rng, available, m);
    UniformFamily::new(n, k, ranks)
}

/// A connected family grown from a random k-set by repeatedly swapping one
/// vertex of a random member for a vertex outside it.
pub fn random_connected_family(n: u32, k: u32, m: usize, seed: RngSeed) -> Result<UniformFamily> {
    let available = simplex_count(n, k as isize - 1);
    if m > available {
        return Err(Error::FamilyTooLarge { m, available });
    }
    if k < 1 || k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let mut rng = seed.rng();
    let mut members = BTreeSet::new();
    let mut order: Vec<SimplexRank> = Vec::with_capacity(m);
    if m == 0 {
        return UniformFamily::new(n, k, members);
    }
    let first = rng.random_range(0..available);
    members.insert(first);
    order.push(first);
    while members.len() < m {
        let &base = order.choose(&mut rng).expect("nonempty");
        let mut verts = unrank_unchecked(base, k as usize, n).vertices().to_vec();
        if verts.len() as u32 == n {
            break;
        }
        let drop = rng.random_range(0..verts.len());
        let outside: Vec<u32> = (1..=n).filter(|v| !verts.contains(v)).collect();
        let &add = outside.choose(&mut rng).expect("k < n");
        verts.remove(drop);
        let pos = verts.partition_point(|&x| x < add);
        verts.insert(pos, add);
        let r = colex_rank(&verts);
        if members.insert(r) {
            order.push(r);
        }
    }
    UniformFamily::new(n, k, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> CanonicalSimplex {
        CanonicalSimplex::new(v.to_vec()).unwrap()
    }

    fn fam(n: u32, k: u32, sets: &[&[u32]]) -> UniformFamily {
        let v: Vec<CanonicalSimplex> = sets.iter().map(|x| s(x)).collect();
        UniformFamily::from_simplices(n, k, &v).unwrap()
    }

    /// Oracle: enumerate all (k+1)-subsets of [n] and test the definition.
    fn beta_oracle(f: &UniformFamily, sigma: &[u32]) -> usize {
        let n = f.n();
        let k = f.k() as usize;
        let mut count = 0;
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != k + 1 {
                continue;
            }
            let tau: Vec<u32> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
            let inside: Vec<Vec<u32>> = (0..tau.len())
                .map(|i| {
                    let mut t = tau.clone();
                    t.remove(i);
                    t
                })
                .filter(|t| f.contains(colex_rank(t)))
                .collect();
            if inside.len() == 1 && inside[0] == sigma {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn beta_examples() {
        let f = fam(5, 2, &[&[2, 4]]);
        assert_eq!(beta_sigma(&f, &s(&[2, 4])).unwrap(), 3);
        assert_eq!(beta_total(&f), 3);
        let full = UniformFamily::full(5, 2).unwrap();
        assert_eq!(beta_sigma(&full, &s(&[1, 5])).unwrap(), 0);
        assert_eq!(beta_total(&full), 0);
        let f = fam(5, 2, &[&[1, 2], &[1, 3]]);
        assert_eq!(beta_oracle(&f, &[1, 2]), 2);
        assert_eq!(beta_sigma(&f, &s(&[1, 2])).unwrap(), 2);
        assert_eq!(beta_sigma(&f, &s(&[1, 3])).unwrap(), 2);
        assert_eq!(beta_total(&f), 4);
        assert!(matches!(
            beta_sigma(&f, &s(&[2, 3])),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn beta_matches_oracle_random() {
        for seed in 0..30 {
            let k = 2 + (seed % 3) as u32;
            let f = random_family(7, k, 6 + seed as usize % 5, RngSeed(seed)).unwrap();
            for &r in f.members() {
                let sigma = f.simplex(r);
                let b = beta_sigma(&f, &sigma).unwrap();
                assert_eq!(b, beta_oracle(&f, sigma.vertices()));
                assert!(b <= (f.n() - f.k()) as usize);
            }
            assert!(beta_total(&f) <= f.len() * (f.n() - f.k()) as usize);
        }
    }

    #[test]
    fn gamma_examples() {
        let f = fam(5, 2, &[&[1, 2], &[1, 3], &[4, 5]]);
        assert!(gamma(&f, &BTreeSet::new()).unwrap().is_empty());
        let sel: BTreeSet<_> = [colex_rank(&[1, 2])].into();
        let got = gamma(&f, &sel).unwrap();
        assert_eq!(got, [colex_rank(&[1, 3])].into());

        let full = UniformFamily::full(4, 2).unwrap();
        let got: Vec<Vec<u32>> = gamma(&full, &sel)
            .unwrap()
            .into_iter()
            .map(|r| full.simplex(r).vertices().to_vec())
            .collect();
        let mut expect: Vec<Vec<u32>> = vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]];
        expect.sort_by_key(|t| colex_rank(t));
        assert_eq!(got, expect);

        // an isolated member of S is not in Γ(S)
        let lone: BTreeSet<_> = [colex_rank(&[4, 5])].into();
        assert!(gamma(&f, &lone).unwrap().is_empty());

        let outside: BTreeSet<_> = [colex_rank(&[2, 3])].into();
        assert!(matches!(gamma(&f, &outside), Err(Error::NotAMember(_))));
    }

    #[test]
    fn gamma_monotone() {
        let f = random_family(8, 3, 20, RngSeed(4)).unwrap();
        let all: Vec<_> = f.members().iter().copied().collect();
        let small: BTreeSet<_> = all.iter().step_by(4).copied().collect();
        let big: BTreeSet<_> = all.iter().step_by(2).copied().collect();
        assert!(small.is_subset(&big));
        assert!(gamma(&f, &small).unwrap().is_subset(&gamma(&f, &big).unwrap()));
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected_family(&fam(4, 2, &[&[1, 2], &[2, 3], &[3, 4]])));
        assert!(!is_connected_family(&fam(4, 2, &[&[1, 2], &[3, 4]])));
        assert!(is_connected_family(&fam(5, 3, &[&[1, 2, 3], &[1, 2, 4], &[1, 4, 5]])));
        assert!(is_connected_family(&fam(5, 3, &[])));
        assert!(is_connected_family(&fam(5, 3, &[&[2, 3, 5]])));
        assert!(!is_connected_family(&fam(6, 3, &[&[1, 2, 3], &[1, 4, 5]])));
        for seed in 0..10 {
            let f = random_connected_family(12, 3, 25, RngSeed(seed)).unwrap();
            assert_eq!(f.len(), 25);
            assert!(is_connected_family(&f));
        }
    }

    #[test]
    fn sampling_preconditions() {
        let f = UniformFamily::full(6, 2).unwrap();
        // c(1/8) = 4.16, so n = 6 fails n > c + k
        assert!(matches!(
            sample_partial_dominating_set(&f, 0.125, RngSeed(1)),
            Err(Error::TooFewVertices { .. })
        ));
        // c(ε)/(n-k) >= 1 here; the unchecked path clamps and keeps everything
        let all = sample_partial_dominating_set_unchecked(&f, 0.125, RngSeed(1)).unwrap();
        assert_eq!(all.len(), f.len());
        assert!(matches!(
            sample_partial_dominating_set(&f, 0.6, RngSeed(1)),
            Err(Error::EpsilonOutOfRange(_))
        ));
        assert!(matches!(
            sample_partial_dominating_set(&f, 0.0, RngSeed(1)),
            Err(Error::EpsilonOutOfRange(_))
        ));
        let empty = UniformFamily::new(40, 2, []).unwrap();
        assert!(sample_partial_dominating_set(&empty, 0.125, RngSeed(1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn finds_on_full_family() {
        let f = UniformFamily::full(12, 2).unwrap();
        assert_eq!(theta_of(&f), Some(1.0));
        let out = find_partial_dominating_set(&f, 0.25, 1.0, RngSeed(3), None).unwrap();
        assert!(meets_domination_bounds(&f, &out.selected, out.gamma_size, 0.25, 1.0));
        assert!(out.selected.is_subset(f.members()));
        assert_eq!(out.gamma_size, gamma(&f, &out.selected).unwrap().len());
    }

    #[test]
    fn rejects_beta_violation() {
        let f = fam(12, 2, &[&[1, 2]]);
        assert!(matches!(
            find_partial_dominating_set(&f, 0.25, 0.5, RngSeed(3), None),
            Err(Error::BetaHypothesis { .. })
        ));
        assert!(matches!(
            find_partial_dominating_set(&f, 0.25, 0.0, RngSeed(3), None),
            Err(Error::ThetaOutOfRange(_))
        ));
    }

    #[test]
    fn retries_exhausted_is_distinct() {
        // S = ∅ is likely with few attempts on a sparse family; zero
        // attempts always exhausts
        let f = random_connected_family(40, 2, 80, RngSeed(5)).unwrap();
        let theta = theta_of(&f).unwrap();
        assert!(matches!(
            find_partial_dominating_set(&f, 0.125, theta, RngSeed(0), Some(0)),
            Err(Error::RetriesExhausted(0))
        ));
    }

    #[test]
    fn bounds_formulas() {
        assert!((c_epsilon(0.125) - 2.0 * 8f64.ln()).abs() < 1e-12);
        assert!((coverage_target(0.125, 0.5, 80) - 35.0).abs() < 1e-12);
        let b = size_bound(0.125, 0.5, 80, 40, 2);
        assert!((b - (20.0 * 8f64.ln() * 80.0 / 38.0 + 2.0 * 16f64.ln())).abs() < 1e-9);
        assert_eq!(default_max_retries(0.5, 1.0), 200);
    }
}
