//! Exhaustive counting of cocycles and coboundaries over `Z_m`, used as an
//! oracle for the Smith-normal-form route.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::simplex::{
    coface_ranks_with_signs, facet_rank, simplex_count, unrank_unchecked, SimplexRank,
};

/// `|H^{k-1}(Y; Z_m)|` by enumeration.
///
/// Cocycles are counted by a depth-first search over (k-1)-cochains that
/// checks each k-face of `y` as soon as its last face is assigned; faces
/// outside every k-face contribute a free factor `m`. Coboundaries are
/// counted as `m^L / |ker d|` with the kernel found by enumerating all
/// `m^L` cochains one degree down (`L = C(n, k-1)`, or 1 for k = 1). Fails
/// if `m^L` or the number of search nodes exceeds `cap`.
pub fn brute_force_cohomology_order(y: &Complex, m: u64, cap: u64) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let n = y.n();
    let k = y.k() as isize;
    let lower_len = simplex_count(n, k - 2);
    let states = (m as f64).powi(lower_len as i32);
    if states > cap as f64 {
        return Err(Error::CapExceeded {
            required: format!("{m}^{lower_len}"),
            cap,
        });
    }

    let cocycles = count_cocycles(y, m, cap)?;

    // ker d_{k-2} on the full skeleton
    let lower: Vec<Vec<(SimplexRank, i8)>> = (0..lower_len)
        .map(|r| coface_ranks_with_signs(&unrank_unchecked(r, k as usize - 1, n), n))
        .collect();
    let upper_len = simplex_count(n, k - 1);
    let mut kernel: u64 = 0;
    let mut psi = vec![0u64; lower_len];
    let mut image = vec![0u64; upper_len];
    for _ in 0..states as u64 {
        image.iter_mut().for_each(|x| *x = 0);
        for (j, star) in lower.iter().enumerate() {
            for &(t, sign) in star {
                image[t] = if sign > 0 {
                    (image[t] + psi[j]) % m
                } else {
                    (image[t] + m - psi[j]) % m
                };
            }
        }
        if image.iter().all(|&x| x == 0) {
            kernel += 1;
        }
        for d in psi.iter_mut() {
            *d += 1;
            if *d < m {
                break;
            }
            *d = 0;
        }
    }
    let coboundaries = BigUint::from(states as u64) / BigUint::from(kernel);

    if !(&cocycles % &coboundaries).is_zero() {
        unreachable!("coboundaries must form a subgroup of the cocycles");
    }
    Ok(cocycles / coboundaries)
}

fn count_cocycles(y: &Complex, m: u64, cap: u64) -> Result<BigUint> {
    let n = y.n();
    let len = y.k() as usize + 1;
    let faces = simplex_count(n, y.k() as isize - 1);

    // constraints keyed by the largest facet rank of each present k-face
    let mut constrained = vec![false; faces];
    let mut closing: Vec<Vec<Vec<(SimplexRank, i8)>>> = vec![Vec::new(); faces];
    for &r in y.face_ranks() {
        let tau = unrank_unchecked(r, len, n);
        let row: Vec<(SimplexRank, i8)> = (0..len)
            .map(|i| (facet_rank(tau.vertices(), i), if i % 2 == 0 { 1 } else { -1 }))
            .collect();
        let last = row.iter().map(|&(f, _)| f).max().expect("k >= 1");
        for &(f, _) in &row {
            constrained[f] = true;
        }
        closing[last].push(row);
    }
    let order: Vec<SimplexRank> = (0..faces).filter(|&f| constrained[f]).collect();
    let free = faces - order.len();

    let mut values = vec![0u64; faces];
    let mut nodes: u64 = 0;
    let leaves = dfs(&order, 0, &closing, &mut values, m, &mut nodes, cap)?;
    Ok(BigUint::from(leaves) * Pow::pow(BigUint::from(m), free as u64))
}

fn dfs(
    order: &[SimplexRank],
    depth: usize,
    closing: &[Vec<Vec<(SimplexRank, i8)>>],
    values: &mut [u64],
    m: u64,
    nodes: &mut u64,
    cap: u64,
) -> Result<u64> {
    if depth == order.len() {
        return Ok(1);
    }
    let f = order[depth];
    let mut total = 0;
    for x in 0..m {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::CapExceeded {
                required: "cocycle search nodes".into(),
                cap,
            });
        }
        values[f] = x;
        let ok = closing[f].iter().all(|row| {
            let s = row.iter().fold(0u64, |acc, &(g, sign)| {
                if sign > 0 {
                    (acc + values[g]) % m
                } else {
                    (acc + m - values[g]) % m
                }
            });
            s == 0
        });
        if ok {
            total += dfs(order, depth + 1, closing, values, m, nodes, cap)?;
        }
    }
    values[f] = 0;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::CanonicalSimplex;

    const CAP: u64 = 1 << 24;

    fn s(v: &[u32]) -> CanonicalSimplex {
        CanonicalSimplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let path = Complex::from_simplices(4, 1, &[s(&[1, 2]), s(&[2, 3]), s(&[3, 4])]).unwrap();
        assert_eq!(brute_force_cohomology_order(&path, 2, CAP).unwrap(), 1u32.into());
        let full = Complex::full(4, 2).unwrap();
        assert_eq!(brute_force_cohomology_order(&full, 2, CAP).unwrap(), 1u32.into());
        let empty = Complex::empty(4, 2).unwrap();
        assert_eq!(brute_force_cohomology_order(&empty, 3, CAP).unwrap(), 27u32.into());
        let empty = Complex::empty(5, 2).unwrap();
        assert_eq!(brute_force_cohomology_order(&empty, 2, CAP).unwrap(), 64u32.into());
        let two = Complex::from_simplices(4, 1, &[s(&[1, 2])]).unwrap();
        // components {1,2}, {3}, {4}: reduced H^0 has order m^2
        assert_eq!(brute_force_cohomology_order(&two, 5, CAP).unwrap(), 25u32.into());
    }

    #[test]
    fn cap() {
        let empty = Complex::empty(8, 3).unwrap();
        assert!(matches!(
            brute_force_cohomology_order(&empty, 2, 1000),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            brute_force_cohomology_order(&empty, 1, CAP),
            Err(Error::InvalidModulus(1))
        ));
    }
}
