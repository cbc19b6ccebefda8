use num_bigint::BigUint;
use petgraph::graph::UnGraph;

use randcomplex::cochain::DEFAULT_CAP;
use randcomplex::complex::for_each_isolated;
use randcomplex::simplex::simplex_count;
use randcomplex::{
    brute_force_cohomology_order, coboundary_matrix, cohomology_order, isolated_count,
    rank_mod_p, sample_complex, vanishes, Cochain, Complex, FiniteAbelianGroup, RngSeed,
};

const CAP: u64 = 1 << 24;

fn petgraph_connected(y: &Complex) -> bool {
    let mut g = UnGraph::<(), ()>::new_undirected();
    let nodes: Vec<_> = (0..y.n()).map(|_| g.add_node(())).collect();
    for e in y.faces() {
        let v = e.vertices();
        g.add_edge(nodes[v[0] as usize - 1], nodes[v[1] as usize - 1], ());
    }
    petgraph::algo::connected_components(&g) == 1
}

#[test]
fn snf_route_matches_enumeration_on_all_n4_k2() {
    for mask in 0u32..16 {
        let y = Complex::new(4, 2, (0..4).filter(|i| mask >> i & 1 == 1)).unwrap();
        for m in [2u64, 3, 4, 6] {
            assert_eq!(
                cohomology_order(&y, m).unwrap(),
                brute_force_cohomology_order(&y, m, CAP).unwrap(),
                "mask {mask} m {m}"
            );
        }
    }
}

#[test]
fn snf_route_matches_enumeration_on_k1_and_k3() {
    for seed in 0..30 {
        let y = sample_complex(6, 1, 0.25, RngSeed(seed)).unwrap();
        let z = sample_complex(5, 3, 0.4, RngSeed(seed)).unwrap();
        for m in [2u64, 3, 4] {
            assert_eq!(
                cohomology_order(&y, m).unwrap(),
                brute_force_cohomology_order(&y, m, CAP).unwrap()
            );
            assert_eq!(
                cohomology_order(&z, m).unwrap(),
                brute_force_cohomology_order(&z, m, CAP).unwrap()
            );
        }
    }
}

#[test]
fn vanishing_agrees_with_orders() {
    let groups: Vec<FiniteAbelianGroup> = ["Z2", "Z3", "Z6", "Z2xZ4", "Z5"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for seed in 0..60 {
        let p = 0.3 + 0.01 * seed as f64;
        let y = sample_complex(7, 2, p, RngSeed(seed)).unwrap();
        for g in &groups {
            let by_order = g
                .factors()
                .iter()
                .all(|&m| cohomology_order(&y, m as u64).unwrap() == BigUint::from(1u8));
            assert_eq!(vanishes(&y, g), by_order);
        }
    }
}

#[test]
fn k1_vanishing_is_connectivity() {
    let z2: FiniteAbelianGroup = "Z2".parse().unwrap();
    for mask in 0u32..64 {
        let y = Complex::new(4, 1, (0..6).filter(|i| mask >> i & 1 == 1)).unwrap();
        assert_eq!(vanishes(&y, &z2), petgraph_connected(&y));
    }
    for seed in 0..200 {
        let y = sample_complex(12, 1, 0.2, RngSeed(seed)).unwrap();
        assert_eq!(vanishes(&y, &z2), petgraph_connected(&y));
    }
}

#[test]
fn coboundary_image_size_formula() {
    // |B| * |ker(B mod m)| = m^{cols}
    for (n, k) in [(5u32, 2u32), (6, 3), (5, 1)] {
        let y = Complex::empty(n, k).unwrap();
        let b = coboundary_matrix(&y, k as isize - 2).unwrap();
        for m in [2u64, 3, 4, 6] {
            let h_empty = cohomology_order(&y, m).unwrap();
            // with no k-faces every cochain is a cocycle: |H| = m^{C(n,k)} / |B|
            let all = BigUint::from(m).pow(simplex_count(n, k as isize - 1) as u32);
            let image = &all / &h_empty;
            let ker = BigUint::from(m).pow(b.cols() as u32) / &image;
            assert_eq!(image * ker, BigUint::from(m).pow(b.cols() as u32));
        }
        // the full simplex is acyclic, so rank d_{k-2} = C(n-1, k-1) over any field
        for p in [2u64, 3, 5] {
            assert_eq!(
                rank_mod_p(&b, p).unwrap(),
                simplex_count(n - 1, k as isize - 2)
            );
        }
    }
}

#[test]
fn isolated_indicator_is_a_nontrivial_cocycle() {
    let g: FiniteAbelianGroup = "Z3".parse().unwrap();
    for seed in 0..50 {
        let y = sample_complex(6, 2, 0.25, RngSeed(seed)).unwrap();
        if isolated_count(&y) == 0 {
            continue;
        }
        let mut found = vec![];
        for_each_isolated(&y, |r, _| found.push(r));
        for r in found {
            let mut phi = Cochain::zero(&g, 6, 1).unwrap();
            phi.set(r, g.one());
            let d = phi.coboundary().unwrap();
            assert!(y.face_ranks().iter().all(|&t| d.get(t).is_zero()));
            assert!(phi.weight_bruteforce(DEFAULT_CAP).unwrap() >= 1);
        }
        assert!(!vanishes(&y, &g));
    }
}

#[test]
fn vanishing_is_monotone_in_p_under_shared_seeds() {
    let z2: FiniteAbelianGroup = "Z2".parse().unwrap();
    for seed in 0..20 {
        let mut prev = false;
        for step in 0..10 {
            let p = 0.1 + 0.08 * step as f64;
            let y = sample_complex(9, 2, p, RngSeed(seed)).unwrap();
            let v = vanishes(&y, &z2);
            assert!(v || !prev);
            prev = v;
        }
    }
}
