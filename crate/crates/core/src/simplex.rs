//! Simplices of the full simplex on the vertex set `[n] = {1, ..., n}`.
//!
//! A simplex is stored in its canonical orientation: strictly increasing
//! vertex order. Simplices of a fixed dimension are ranked in
//! colexicographic order, so the rank of a simplex does not depend on `n`
//! and `[m]`'s simplices form a prefix of `[n]`'s for `m <= n`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A vertex label in `1..=n`.
pub type VertexId = u32;

/// Colexicographic rank among simplices of one dimension.
pub type SimplexRank = usize;

/// Orientation sign, always `+1` or `-1`.
pub type Sign = i8;

const TABLE_SIZE: usize = 96;

fn table() -> &'static [[u128; TABLE_SIZE]] {
    static TABLE: OnceLock<Vec<[u128; TABLE_SIZE]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![[0u128; TABLE_SIZE]; TABLE_SIZE];
        for n in 0..TABLE_SIZE {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            }
        }
        t
    })
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
///
/// Panics if the value does not fit in `usize`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let v = if n < TABLE_SIZE {
        table()[n][k]
    } else {
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc
                .checked_mul((n - i) as u128)
                .expect("binomial overflow")
                / (i as u128 + 1);
        }
        acc
    };
    usize::try_from(v).expect("binomial overflow")
}

/// Number of `dim`-simplices of the full simplex on `n` vertices; the empty
/// simplex (`dim = -1`) counts once.
pub fn simplex_count(n: u32, dim: isize) -> usize {
    if dim < -1 {
        return 0;
    }
    binomial(n as usize, (dim + 1) as usize)
}

/// A simplex as a strictly increasing list of vertices. May be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSimplex {
    vertices: Vec<VertexId>,
}

impl CanonicalSimplex {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self> {
        if let Some(&0) = vertices.first() {
            return Err(Error::VertexOutOfRange { vertex: 0, n: 0 });
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing(vertices));
        }
        Ok(CanonicalSimplex { vertices })
    }

    /// Sorts `vertices` and returns the canonical simplex together with the
    /// sign of the sorting permutation.
    pub fn from_ordered(vertices: &[VertexId]) -> Result<(Self, Sign)> {
        let (sorted, sign) = sort_with_sign(vertices)?;
        Ok((CanonicalSimplex::new(sorted)?, sign))
    }

    pub fn empty() -> Self {
        CanonicalSimplex { vertices: vec![] }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.vertices.len() as isize - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn check_bound(&self, n: u32) -> Result<()> {
        match self.vertices.last() {
            Some(&v) if v > n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Adds `v` (not already present) and returns the larger simplex along
    /// with the sign of `self` as a face of it.
    pub fn insert(&self, v: VertexId) -> (CanonicalSimplex, Sign) {
        let pos = self.vertices.partition_point(|&x| x < v);
        debug_assert!(self.vertices.get(pos) != Some(&v));
        let mut vs = Vec::with_capacity(self.len() + 1);
        vs.extend_from_slice(&self.vertices[..pos]);
        vs.push(v);
        vs.extend_from_slice(&self.vertices[pos..]);
        (CanonicalSimplex { vertices: vs }, alternating(pos))
    }

    /// Number of shared vertices.
    pub fn intersection_size(&self, other: &CanonicalSimplex) -> usize {
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }
}

impl fmt::Display for CanonicalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[inline]
pub(crate) fn alternating(i: usize) -> Sign {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorts an ordered simplex, returning the sign of the sorting permutation.
pub fn sort_with_sign(vertices: &[VertexId]) -> Result<(Vec<VertexId>, Sign)> {
    let mut v = vertices.to_vec();
    let mut sign: Sign = 1;
    // insertion sort; simplices are short
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex(vertices.to_vec()));
    }
    Ok((v, sign))
}

/// Colex rank of a strictly increasing vertex tuple (no validation).
#[inline]
pub(crate) fn colex_rank(vertices: &[VertexId]) -> SimplexRank {
    vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as usize - 1, i + 1))
        .sum()
}

/// Colex rank of the facet obtained by deleting position `skip`.
#[inline]
pub(crate) fn facet_rank(vertices: &[VertexId], skip: usize) -> SimplexRank {
    let mut r = 0;
    for (i, &v) in vertices.iter().enumerate() {
        if i < skip {
            r += binomial(v as usize - 1, i + 1);
        } else if i > skip {
            r += binomial(v as usize - 1, i);
        }
    }
    r
}

pub fn rank_simplex(s: &CanonicalSimplex, n: u32) -> Result<SimplexRank> {
    s.check_bound(n)?;
    Ok(colex_rank(&s.vertices))
}

pub fn unrank_simplex(rank: SimplexRank, dim: isize, n: u32) -> Result<CanonicalSimplex> {
    let count = simplex_count(n, dim);
    if dim < -1 || rank >= count {
        return Err(Error::RankOutOfRange {
            rank,
            dim,
            n,
            count,
        });
    }
    Ok(unrank_unchecked(rank, (dim + 1) as usize, n))
}

pub(crate) fn unrank_unchecked(mut rank: SimplexRank, len: usize, n: u32) -> CanonicalSimplex {
    let mut vs = vec![0; len];
    let mut hi = n as usize;
    for i in (0..len).rev() {
        // largest c < hi with C(c, i+1) <= rank
        let mut c = hi - 1;
        while binomial(c, i + 1) > rank {
            c -= 1;
        }
        rank -= binomial(c, i + 1);
        vs[i] = c as VertexId + 1;
        hi = c;
    }
    CanonicalSimplex { vertices: vs }
}

/// Codimension-one faces `[v_0, ..., v̂_i, ..., v_d]` with sign `(-1)^i`.
pub fn faces_with_signs(s: &CanonicalSimplex) -> Vec<(CanonicalSimplex, Sign)> {
    (0..s.len())
        .map(|i| {
            let mut vs = s.vertices.clone();
            vs.remove(i);
            (CanonicalSimplex { vertices: vs }, alternating(i))
        })
        .collect()
}

/// All `s ∪ {v}` for `v ∉ s`, in increasing order of `v`.
pub fn cofaces(s: &CanonicalSimplex, n: u32) -> Vec<CanonicalSimplex> {
    (1..=n)
        .filter(|&v| !s.contains(v))
        .map(|v| s.insert(v).0)
        .collect()
}

/// Coface ranks of `s` together with the sign of `s` inside each coface.
pub(crate) fn coface_ranks_with_signs(s: &CanonicalSimplex, n: u32) -> Vec<(SimplexRank, Sign)> {
    (1..=n)
        .filter(|&v| !s.contains(v))
        .map(|v| {
            let (c, sign) = s.insert(v);
            (colex_rank(&c.vertices), sign)
        })
        .collect()
}

/// Calls `f(rank, subset)` for every `len`-subset of `[n]` in colex order.
pub fn for_each_subset<F: FnMut(SimplexRank, &[VertexId])>(n: u32, len: usize, mut f: F) {
    if len > n as usize {
        return;
    }
    let mut cur: Vec<VertexId> = (1..=len as VertexId).collect();
    let mut rank = 0;
    loop {
        f(rank, &cur);
        rank += 1;
        // colex successor: bump the first entry that has room
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            let limit = if i + 1 < len { cur[i + 1] } else { n + 1 };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, v) in cur[..i].iter_mut().enumerate() {
                    *v = j as VertexId + 1;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Iterator over all `dim`-simplices of the full simplex on `n` vertices,
/// in rank order.
pub fn simplices(n: u32, dim: isize) -> impl Iterator<Item = CanonicalSimplex> {
    let len = (dim + 1).max(0) as usize;
    (0..simplex_count(n, dim)).map(move |r| unrank_unchecked(r, len, n))
}
