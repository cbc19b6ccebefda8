//! Exact integer matrices, Smith normal form and ranks over prime fields.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::is_prime;

/// Sparse integer matrix; each row is a column-sorted list of nonzero
/// entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, BigInt::one()));
        }
        m
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                let x: BigInt = x.clone().into();
                if !x.is_zero() {
                    m.data[i].push((j, x));
                }
            }
        }
        m
    }

    /// Builds from per-row sparse entries; duplicates are summed.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let data = rows
            .into_iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (j, x) in row {
                    assert!(j < cols, "column {j} out of range");
                    *acc.entry(j).or_default() += x;
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect::<Vec<_>>();
        IntMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|pos| self.data[i][pos].1.clone())
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out[i][*j] = x.clone();
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }
}

/// Invariant factors `s_1 | s_2 | ... | s_ρ`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form over the integers.
///
/// Unit entries are eliminated first on the sparse rows (each one splits
/// off a `1` factor); the remainder is diagonalized densely with
/// minimum-magnitude pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (mut factors, rest) = eliminate_units(m);
    factors.extend(dense_snf(rest));
    SnfResult {
        invariant_factors: factors,
    }
}

fn eliminate_units(m: &IntMatrix) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = m
        .data
        .iter()
        .map(|r| r.iter().cloned().collect())
        .collect();
    let mut col_rows: Vec<std::collections::BTreeSet<usize>> =
        vec![Default::default(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut alive_row = vec![true; m.rows];
    let mut alive_col = vec![true; m.cols];
    let mut units = Vec::new();

    loop {
        // shortest row holding a unit, then its sparsest unit column
        let mut pick: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !alive_row[i] || r.is_empty() {
                continue;
            }
            if pick.is_some_and(|(_, _, len)| r.len() >= len) {
                continue;
            }
            let best_col = r
                .iter()
                .filter(|(_, x)| x.abs().is_one())
                .min_by_key(|(j, _)| col_rows[**j].len())
                .map(|(j, _)| *j);
            if let Some(j) = best_col {
                pick = Some((i, j, r.len()));
            }
        }
        let Some((pi, pj, _)) = pick else { break };

        let pivot_row = std::mem::take(&mut rows[pi]);
        let pivot_sign = pivot_row[&pj].clone();
        let targets: Vec<usize> = col_rows[pj].iter().copied().filter(|&i| i != pi).collect();
        for i in targets {
            // row_i -= (a_ij / pivot) * pivot_row, pivot = ±1
            let factor = &rows[i][&pj] * &pivot_sign;
            for (j, x) in &pivot_row {
                let entry = rows[i].entry(*j).or_default();
                *entry -= &factor * x;
                if entry.is_zero() {
                    rows[i].remove(j);
                    col_rows[*j].remove(&i);
                } else {
                    col_rows[*j].insert(i);
                }
            }
        }
        for j in pivot_row.keys() {
            col_rows[*j].remove(&pi);
        }
        alive_row[pi] = false;
        alive_col[pj] = false;
        units.push(BigInt::one());
    }

    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| alive_col[j]).collect();
    let col_index: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(a, &j)| (j, a)).collect();
    let rest: Vec<Vec<BigInt>> = rows
        .into_iter()
        .enumerate()
        .filter(|(i, r)| alive_row[*i] && !r.is_empty())
        .map(|(_, r)| {
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (j, x) in r {
                dense[col_index[&j]] = x;
            }
            dense
        })
        .collect();
    (units, rest)
}

fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero()
                    && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold an offending row into the pivot row
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match offender {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let x = a[i][j].clone();
                            a[t][j] += x;
                        }
                    }
                }
            }
            // move the smallest nonzero of row t / column t to the pivot
            let mut bi = t;
            let mut bj = t;
            for i in t..rows {
                if !a[i][t].is_zero() && (a[bi][bj].is_zero() || a[i][t].abs() < a[bi][bj].abs())
                {
                    bi = i;
                    bj = t;
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && (a[bi][bj].is_zero() || a[t][j].abs() < a[bi][bj].abs())
                {
                    bi = t;
                    bj = j;
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

/// Rank over `GF(p)`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(rank_mod_p_until(m, p, usize::MAX))
}

/// Rank over `GF(p)`, stopping early once it reaches `limit`. `p` must be
/// prime.
pub(crate) fn rank_mod_p_until(m: &IntMatrix, p: u64, limit: usize) -> usize {
    if p == 2 {
        let mut basis = Gf2Basis::new(m.cols);
        for row in &m.data {
            if basis.rank >= limit {
                break;
            }
            basis.insert(row.iter().filter(|(_, x)| x.is_odd()).map(|(j, _)| *j));
        }
        return basis.rank.min(limit);
    }
    let mut basis = GfpBasis::new(m.cols, p);
    for row in &m.data {
        if basis.rank >= limit {
            break;
        }
        let p_big = BigInt::from(p);
        basis.insert(row.iter().map(|(j, x)| {
            let r = x.mod_floor(&p_big);
            (*j, u64::try_from(r).expect("reduced mod p"))
        }));
    }
    basis.rank.min(limit)
}

/// Echelon basis over GF(2) with bit-packed rows, keyed by lowest set bit.
struct Gf2Basis {
    words: usize,
    pivots: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl Gf2Basis {
    fn new(cols: usize) -> Self {
        Gf2Basis {
            words: cols.div_ceil(64),
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    fn insert(&mut self, ones: impl Iterator<Item = usize>) {
        let mut v = vec![0u64; self.words];
        for j in ones {
            v[j / 64] ^= 1 << (j % 64);
        }
        let mut w = 0;
        while w < self.words {
            if v[w] == 0 {
                w += 1;
                continue;
            }
            let j = w * 64 + v[w].trailing_zeros() as usize;
            match &self.pivots[j] {
                Some(b) => {
                    for (x, y) in v[w..].iter_mut().zip(&b[w..]) {
                        *x ^= y;
                    }
                }
                None => {
                    self.pivots[j] = Some(v);
                    self.rank += 1;
                    return;
                }
            }
        }
    }
}

/// Echelon basis over GF(p) with dense rows normalized to pivot 1.
struct GfpBasis {
    p: u64,
    cols: usize,
    pivots: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl GfpBasis {
    fn new(cols: usize, p: u64) -> Self {
        GfpBasis {
            p,
            cols,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    fn insert(&mut self, entries: impl Iterator<Item = (usize, u64)>) {
        let p = self.p;
        let mut v = vec![0u64; self.cols];
        for (j, x) in entries {
            v[j] = (v[j] + x) % p;
        }
        for j in 0..self.cols {
            if v[j] == 0 {
                continue;
            }
            match &self.pivots[j] {
                Some(b) => {
                    let c = v[j];
                    for (x, y) in v[j..].iter_mut().zip(&b[j..]) {
                        *x = (*x + (p - c) * y % p) % p;
                    }
                }
                None => {
                    let inv = mod_inverse(v[j], p);
                    for x in v[j..].iter_mut() {
                        *x = *x * inv % p;
                    }
                    self.pivots[j] = Some(v);
                    self.rank += 1;
                    return;
                }
            }
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .invariant_factors
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(factors(&IntMatrix::identity(3)), vec![1, 1, 1]);
        assert!(factors(&IntMatrix::zeros(3, 4)).is_empty());
        assert!(factors(&IntMatrix::zeros(0, 0)).is_empty());
        let m = IntMatrix::from_dense(&[vec![2i64, 4], vec![6, 8]]);
        assert_eq!(factors(&m), vec![2, 4]);
        let m = IntMatrix::from_dense(&[vec![2i64, 0], vec![0, 3]]);
        assert_eq!(factors(&m), vec![1, 6]);
        let m = IntMatrix::from_dense(&[vec![4i64, 6], vec![6, 9]]);
        assert_eq!(factors(&m), vec![1]);
    }

    #[test]
    fn rank_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(rank_mod_p(&id, 2).unwrap(), 3);
        let two = IntMatrix::from_dense(&[vec![2i64]]);
        assert_eq!(rank_mod_p(&two, 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&two, 3).unwrap(), 1);
        assert!(matches!(rank_mod_p(&two, 4), Err(Error::NotPrime(4))));
        let m = IntMatrix::from_dense(&[vec![1i64, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 2);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
        assert_eq!(rank_mod_p_until(&IntMatrix::identity(10), 7, 4), 4);
    }

    #[test]
    fn sparse_rows_sum_duplicates() {
        let m = IntMatrix::from_sparse_rows(3, vec![vec![(0, 1), (0, -1), (2, 5)], vec![]]);
        assert_eq!(m.row(0), &[(2, BigInt::from(5))]);
        assert_eq!(m.rows(), 2);
        assert_eq!(m.get(0, 2), BigInt::from(5));
        assert_eq!(m.get(1, 1), BigInt::zero());
    }
}
