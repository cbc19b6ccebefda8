//! Reduced cohomology `H^{k-1}(Y; R)` of a complex `Δ^{(k-1)} ⊆ Y ⊆ Δ^{(k)}`.
//!
//! With `A` the matrix of `d_{k-1}` restricted to the k-faces of `Y` and `B`
//! the matrix of `d_{k-2}` on the full skeleton (the augmentation column
//! when k = 1), `H^{k-1}(Y; Z_m) = ker(A mod m) / im(B mod m)`. Both sizes
//! follow from the Smith normal forms: a matrix with `c` columns, rank `ρ`
//! and invariant factors `s_i` has `|ker(M mod m)| = m^{c-ρ} ∏ gcd(s_i, m)`.
//!
//! Since `H_{k-2}(Y) = 0`, the group vanishes for `R` iff it vanishes over
//! `GF(p)` for every prime `p | |R|`, which only needs ranks mod `p`.

mod brute;
mod matrix;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow};

pub use brute::brute_force_cohomology_order;
pub use matrix::{rank_mod_p, smith_normal_form, IntMatrix, SnfResult};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::simplex::{facet_rank, for_each_subset, simplex_count, unrank_unchecked};

/// Matrix of `d_degree` for `degree ∈ {k-2, k-1}`.
///
/// For `k-1` the rows are the k-faces present in `y` (in rank order) and
/// the columns all (k-1)-faces. For `k-2` rows and columns span the full
/// skeleton; for k = 1 this is the `n x 1` all-ones augmentation column.
/// Entry `(τ, σ)` is the sign of `σ` as a face of `τ`.
pub fn coboundary_matrix(y: &Complex, degree: isize) -> Result<IntMatrix> {
    let k = y.k() as isize;
    let n = y.n();
    if degree == k - 1 {
        let len = y.k() as usize + 1;
        let rows = y
            .face_ranks()
            .iter()
            .map(|&r| {
                let tau = unrank_unchecked(r, len, n);
                (0..len)
                    .map(|i| (facet_rank(tau.vertices(), i), if i % 2 == 0 { 1 } else { -1 }))
                    .collect()
            })
            .collect();
        Ok(IntMatrix::from_sparse_rows(simplex_count(n, k - 1), rows))
    } else if degree == k - 2 {
        let len = y.k() as usize;
        let mut rows = Vec::with_capacity(simplex_count(n, k - 1));
        for_each_subset(n, len, |_, sigma| {
            rows.push(
                (0..len)
                    .map(|i| (facet_rank(sigma, i), if i % 2 == 0 { 1 } else { -1 }))
                    .collect(),
            );
        });
        Ok(IntMatrix::from_sparse_rows(simplex_count(n, k - 2), rows))
    } else {
        Err(Error::InvalidDegree {
            degree,
            reason: "coboundary matrices exist for degrees k-2 and k-1",
        })
    }
}

fn gcd_product(factors: &[BigInt], m: u64) -> BigUint {
    let m = BigInt::from(m);
    factors
        .iter()
        .map(|s| s.gcd(&m).to_biguint().expect("gcd is positive"))
        .product()
}

/// `|H^{k-1}(Y; Z_m)|`.
pub fn cohomology_order(y: &Complex, m: u64) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let a = coboundary_matrix(y, y.k() as isize - 1)?;
    let b = coboundary_matrix(y, y.k() as isize - 2)?;
    let snf_a = smith_normal_form(&a);
    let snf_b = smith_normal_form(&b);
    let mb = BigUint::from(m);
    let cocycles = Pow::pow(&mb, (a.cols() - snf_a.rank()) as u64)
        * gcd_product(&snf_a.invariant_factors, m);
    let coboundaries =
        Pow::pow(&mb, snf_b.rank() as u64) / gcd_product(&snf_b.invariant_factors, m);
    debug_assert!((&cocycles % &coboundaries) == BigUint::from(0u8));
    Ok(cocycles / coboundaries)
}

/// Whether `H^{k-1}(Y; R) = 0`, using ranks over `GF(p)` for each prime
/// `p | |R|`: vanishing over `GF(p)` means `rank A + rank B = C(n, k)`.
pub fn vanishes(y: &Complex, group: &FiniteAbelianGroup) -> bool {
    let a = coboundary_matrix(y, y.k() as isize - 1).expect("degree k-1");
    let b = coboundary_matrix(y, y.k() as isize - 2).expect("degree k-2");
    let cochains = a.cols();
    group.prime_divisors().into_iter().all(|p| {
        let target = cochains - matrix::rank_mod_p_until(&b, p, usize::MAX);
        a.rows() >= target && matrix::rank_mod_p_until(&a, p, target) == target
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub n: u32,
    pub k: u32,
    pub group: FiniteAbelianGroup,
    /// `m -> |H^{k-1}(Y; Z_m)|` for each distinct factor order `m` of `R`.
    pub order_mod: BTreeMap<u32, BigUint>,
    pub vanishes: bool,
}

impl CohomologyReport {
    pub const CSV_HEADER: &'static str = "n,k,group,faces,order_mod,vanishes";

    /// One CSV row; `order_mod` is rendered as `m:order` pairs joined by `;`.
    pub fn to_csv_row(&self, faces: usize) -> String {
        let orders: Vec<String> = self
            .order_mod
            .iter()
            .map(|(m, o)| format!("{m}:{o}"))
            .collect();
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.k,
            self.group,
            faces,
            orders.join(";"),
            self.vanishes
        )
    }

    /// `|H^{k-1}(Y; R)|`, the product over the cyclic factors.
    pub fn total_order(&self) -> BigUint {
        self.group
            .factors()
            .iter()
            .map(|m| self.order_mod[m].clone())
            .fold(BigUint::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for CohomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, k = {}, R = {}", self.n, self.k, self.group)?;
        for (m, o) in &self.order_mod {
            writeln!(f, "|H^{}(Y; Z{m})| = {o}", self.k as i64 - 1)?;
        }
        write!(f, "H^{}(Y; R) vanishes: {}", self.k as i64 - 1, self.vanishes)
    }
}

pub fn cohomology_report(y: &Complex, group: &FiniteAbelianGroup) -> Result<CohomologyReport> {
    let mut order_mod = BTreeMap::new();
    for &m in group.factors() {
        if let std::collections::btree_map::Entry::Vacant(e) = order_mod.entry(m) {
            e.insert(cohomology_order(y, m as u64)?);
        }
    }
    let vanishes = order_mod.values().all(|o| o.is_one());
    Ok(CohomologyReport {
        n: y.n(),
        k: y.k(),
        group: group.clone(),
        order_mod,
        vanishes,
    })
}
