//! The random complex `Y_k(n, p)`: the full (k-1)-skeleton of the simplex on
//! `[n]` plus a random set of k-faces.

use std::fmt::Write as _;
use std::io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::simplex::{
    binomial, colex_rank, facet_rank, for_each_subset, rank_simplex, simplex_count,
    unrank_unchecked, CanonicalSimplex, SimplexRank,
};

/// Seed for all randomized procedures. Streams are ChaCha8 seeded through
/// `SeedableRng::seed_from_u64`; sub-seeds come from [`derive_seed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    pub fn derive(self, indices: &[u64]) -> RngSeed {
        RngSeed(derive_seed(self.0, indices))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic child seed for `(master, i_1, ..., i_j)`.
pub fn derive_seed(master: u64, indices: &[u64]) -> u64 {
    let mut h = splitmix64(master);
    for &i in indices {
        h = splitmix64(h ^ splitmix64(i.wrapping_add(0x632B_E59B_D9B4_E019)));
    }
    h
}

/// A complex `Δ^{(k-1)} ⊆ Y ⊆ Δ^{(k)}` on `[n]`, stored as the sorted ranks
/// of its k-faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    n: u32,
    k: u32,
    faces: Vec<SimplexRank>,
}

fn check_dims(n: u32, k: u32) -> Result<()> {
    if k < 1 || k + 1 > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    Ok(())
}

impl Complex {
    pub fn new(n: u32, k: u32, faces: impl IntoIterator<Item = SimplexRank>) -> Result<Self> {
        check_dims(n, k)?;
        let total = simplex_count(n, k as isize);
        let mut faces: Vec<SimplexRank> = faces.into_iter().collect();
        faces.sort_unstable();
        if let Some(&r) = faces.last() {
            if r >= total {
                return Err(Error::RankOutOfRange {
                    rank: r,
                    dim: k as isize,
                    n,
                    count: total,
                });
            }
        }
        if let Some(w) = faces.windows(2).find(|w| w[0] == w[1]) {
            let s = unrank_unchecked(w[0], k as usize + 1, n);
            return Err(Error::DuplicateFace(s.vertices().to_vec()));
        }
        Ok(Complex { n, k, faces })
    }

    pub fn from_simplices(n: u32, k: u32, simplices: &[CanonicalSimplex]) -> Result<Self> {
        check_dims(n, k)?;
        let mut ranks = Vec::with_capacity(simplices.len());
        for s in simplices {
            if s.len() != k as usize + 1 {
                return Err(Error::InvalidDegree {
                    degree: s.dim(),
                    reason: "face dimension differs from k",
                });
            }
            ranks.push(rank_simplex(s, n)?);
        }
        Complex::new(n, k, ranks)
    }

    pub fn empty(n: u32, k: u32) -> Result<Self> {
        Complex::new(n, k, [])
    }

    /// The full k-skeleton of the simplex on `[n]`.
    pub fn full(n: u32, k: u32) -> Result<Self> {
        check_dims(n, k)?;
        Complex::new(n, k, 0..simplex_count(n, k as isize))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Ranks of the present k-faces, increasing.
    pub fn face_ranks(&self) -> &[SimplexRank] {
        &self.faces
    }

    /// `f_k(Y)`.
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_face(&self, rank: SimplexRank) -> bool {
        self.faces.binary_search(&rank).is_ok()
    }

    pub fn faces(&self) -> impl Iterator<Item = CanonicalSimplex> + '_ {
        let len = self.k as usize + 1;
        self.faces
            .iter()
            .map(move |&r| unrank_unchecked(r, len, self.n))
    }
}

/// Samples `Y_k(n, p)`: candidate k-faces are visited in rank order and each
/// consumes one uniform variate `u`; the face is kept iff `u < p`. Complexes
/// drawn with the same seed are therefore nested in `p`.
pub fn sample_complex(n: u32, k: u32, p: f64, seed: RngSeed) -> Result<Complex> {
    check_dims(n, k)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let mut rng = seed.rng();
    let total = simplex_count(n, k as isize);
    let faces = (0..total)
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    Ok(Complex { n, k, faces })
}

fn covered_facets(y: &Complex) -> Vec<bool> {
    let len = y.k as usize + 1;
    let mut covered = vec![false; simplex_count(y.n, y.k as isize - 1)];
    for &r in &y.faces {
        let s = unrank_unchecked(r, len, y.n);
        for i in 0..len {
            covered[facet_rank(s.vertices(), i)] = true;
        }
    }
    covered
}

/// Number of (k-1)-faces contained in no k-face of `y`.
pub fn isolated_count(y: &Complex) -> usize {
    covered_facets(y).iter().filter(|&&c| !c).count()
}

/// `E[g] = C(n, k) (1 - p)^{n - k}`.
pub fn expected_isolated(n: u32, k: u32, p: f64) -> f64 {
    binomial(n as usize, k as usize) as f64 * (1.0 - p).powi((n - k) as i32)
}

/// Exact `Var[g]`. Two distinct (k-1)-faces share a coface iff they meet in
/// k-1 vertices, in which case both are isolated with probability
/// `(1-p)^{2(n-k)-1}`; otherwise `(1-p)^{2(n-k)}`.
pub fn isolated_variance(n: u32, k: u32, p: f64) -> f64 {
    let faces = binomial(n as usize, k as usize) as f64;
    let q = 1.0 - p;
    let single = q.powi((n - k) as i32);
    let adjacent_pairs = faces * (k as f64) * ((n - k) as f64);
    let other_pairs = faces * (faces - 1.0) - adjacent_pairs;
    let second = faces * single
        + adjacent_pairs * q.powi(2 * (n - k) as i32 - 1)
        + other_pairs * q.powi(2 * (n - k) as i32);
    (second - (faces * single).powi(2)).max(0.0)
}

/// Renders the text format: a header line `n k`, then one present k-face
/// per line as increasing vertex ids.
pub fn complex_to_string(y: &Complex) -> String {
    let mut out = format!("{} {}\n", y.n, y.k);
    for s in y.faces() {
        let line: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn write_complex<W: io::Write>(y: &Complex, mut sink: W) -> io::Result<()> {
    sink.write_all(complex_to_string(y).as_bytes())
}

/// Parses the text format. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_complex(source: &str) -> Result<Complex> {
    let mut lines = source
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let parse_err = |line: usize, reason: String| Error::Parse { line, reason };
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header \"n k\"".into()))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let [n, k] = nums[..] else {
        return Err(parse_err(hline, format!("malformed header {header:?}")));
    };
    let n: u32 = n
        .parse()
        .map_err(|_| parse_err(hline, format!("bad vertex count {n:?}")))?;
    let k: u32 = k
        .parse()
        .map_err(|_| parse_err(hline, format!("bad dimension {k:?}")))?;
    check_dims(n, k).map_err(|e| parse_err(hline, e.to_string()))?;

    let mut ranks = Vec::new();
    for (lineno, line) in lines {
        let verts = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| parse_err(lineno, format!("bad vertex id {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if verts.len() != k as usize + 1 {
            return Err(parse_err(
                lineno,
                format!("expected {} vertices, found {}", k + 1, verts.len()),
            ));
        }
        if let Some(&v) = verts.iter().find(|&&v| v < 1 || v > n) {
            return Err(parse_err(lineno, format!("vertex {v} out of range 1..={n}")));
        }
        if verts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(
                lineno,
                format!("vertices {verts:?} not strictly increasing"),
            ));
        }
        ranks.push((lineno, colex_rank(&verts), verts));
    }
    ranks.sort_by_key(|&(_, r, _)| r);
    if let Some(w) = ranks.windows(2).find(|w| w[0].1 == w[1].1) {
        let line = w[0].0.max(w[1].0);
        return Err(parse_err(line, Error::DuplicateFace(w[1].2.clone()).to_string()));
    }
    Complex::new(n, k, ranks.into_iter().map(|(_, r, _)| r))
}

/// Calls `f` with every (k-1)-face of `[n]` that is isolated in `y`.
pub fn for_each_isolated<F: FnMut(SimplexRank, &[u32])>(y: &Complex, mut f: F) {
    let covered = covered_facets(y);
    for_each_subset(y.n, y.k as usize, |r, verts| {
        if !covered[r] {
            f(r, verts)
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> CanonicalSimplex {
        CanonicalSimplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sample_extremes() {
        let y = sample_complex(5, 2, 0.0, RngSeed(3)).unwrap();
        assert_eq!(y.num_faces(), 0);
        let y = sample_complex(5, 2, 1.0, RngSeed(3)).unwrap();
        assert_eq!(y.num_faces(), 10);
        assert_eq!(y, Complex::full(5, 2).unwrap());
    }

    #[test]
    fn sample_errors() {
        assert!(matches!(
            sample_complex(5, 2, 1.5, RngSeed(0)),
            Err(Error::ProbabilityOutOfRange(_))
        ));
        assert!(matches!(
            sample_complex(5, 2, -0.1, RngSeed(0)),
            Err(Error::ProbabilityOutOfRange(_))
        ));
        assert!(sample_complex(5, 0, 0.5, RngSeed(0)).is_err());
        assert!(sample_complex(5, 5, 0.5, RngSeed(0)).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_coupled() {
        let a = sample_complex(12, 2, 0.3, RngSeed(99)).unwrap();
        let b = sample_complex(12, 2, 0.3, RngSeed(99)).unwrap();
        assert_eq!(a, b);
        let lo = sample_complex(12, 2, 0.2, RngSeed(99)).unwrap();
        let hi = sample_complex(12, 2, 0.45, RngSeed(99)).unwrap();
        assert!(lo.face_ranks().iter().all(|&r| hi.contains_face(r)));
    }

    #[test]
    fn isolated_examples() {
        for (n, k) in [(5, 2), (6, 3), (7, 1)] {
            let y = Complex::empty(n, k).unwrap();
            assert_eq!(isolated_count(&y), binomial(n as usize, k as usize));
            assert_eq!(isolated_count(&Complex::full(n, k).unwrap()), 0);
        }
        let y = Complex::from_simplices(4, 1, &[s(&[1, 2]), s(&[3, 4])]).unwrap();
        assert_eq!(isolated_count(&y), 0);
        let y = Complex::from_simplices(4, 1, &[s(&[1, 2])]).unwrap();
        assert_eq!(isolated_count(&y), 2);
        let mut iso = vec![];
        for_each_isolated(&y, |_, v| iso.push(v.to_vec()));
        assert_eq!(iso, vec![vec![3], vec![4]]);
    }

    #[test]
    fn expected_examples() {
        assert_eq!(expected_isolated(7, 2, 0.0), 21.0);
        assert_eq!(expected_isolated(7, 2, 1.0), 0.0);
        assert!((expected_isolated(10, 2, 0.5) - 0.17578125).abs() < 1e-15);
    }

    /// Exact mean and variance by enumerating all 2^4 complexes on n=4, k=2.
    #[test]
    fn variance_matches_enumeration() {
        for (n, k) in [(4u32, 2u32), (4, 1), (5, 1)] {
            let total = simplex_count(n, k as isize);
            for &p in &[0.1f64, 0.37, 0.8] {
                let (mut m1, mut m2) = (0.0, 0.0);
                for mask in 0u32..(1 << total) {
                    let faces: Vec<usize> = (0..total).filter(|i| mask >> i & 1 == 1).collect();
                    let f = faces.len() as i32;
                    let pr = p.powi(f) * (1.0 - p).powi(total as i32 - f);
                    let g = isolated_count(&Complex::new(n, k, faces).unwrap()) as f64;
                    m1 += pr * g;
                    m2 += pr * g * g;
                }
                assert!((m1 - expected_isolated(n, k, p)).abs() < 1e-12);
                assert!((m2 - m1 * m1 - isolated_variance(n, k, p)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn text_format() {
        let y = Complex::from_simplices(4, 1, &[s(&[3, 4]), s(&[1, 2])]).unwrap();
        let text = complex_to_string(&y);
        assert_eq!(text, "4 1\n1 2\n3 4\n");
        assert_eq!(parse_complex(&text).unwrap(), y);
        let e = Complex::empty(6, 3).unwrap();
        assert_eq!(complex_to_string(&e), "6 3\n");
        assert_eq!(parse_complex("6 3\n").unwrap(), e);
        let commented = "# a graph\n4 1\n\n# edges\n1 2\n3 4\n";
        assert_eq!(parse_complex(commented).unwrap(), y);
        let mut buf = Vec::new();
        write_complex(&y, &mut buf).unwrap();
        assert_eq!(buf, text.as_bytes());
    }

    #[test]
    fn parse_errors() {
        let cases = [
            "",
            "4",
            "4 1 2",
            "x 1",
            "4 0",
            "4 4",
            "4 1\n2 2\n",
            "4 1\n2 1\n",
            "4 1\n1 5\n",
            "4 1\n1 2 3\n",
            "4 1\n1 2\n1 2\n",
            "4 1\n1 a\n",
        ];
        for c in cases {
            assert!(
                matches!(parse_complex(c), Err(Error::Parse { .. })),
                "{c:?}"
            );
        }
        assert!(matches!(
            parse_complex("4 1\n2 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(42, &[0, 1]);
        let b = derive_seed(42, &[1, 0]);
        let c = derive_seed(43, &[0, 1]);
        assert!(a != b && a != c && b != c);
        assert_eq!(a, derive_seed(42, &[0, 1]));
    }
}
