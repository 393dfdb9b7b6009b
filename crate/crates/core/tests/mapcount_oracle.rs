use proptest::prelude::*;

use tetra_ising::exactalg::{int, ExactScalar};
use tetra_ising::mapcount::{bruteforce_z, bruteforce_z_at_one, enumerate, DartMap};
use tetra_ising::series::Symbols;

#[test]
fn bruteforce_equals_series() {
    let z = Symbols::symbolic().z_series(3).unwrap();
    for n in 1..=3 {
        assert_eq!(bruteforce_z(n).unwrap(), *z.coeff(n), "n = {n}");
    }
}

#[test]
#[ignore = "two million matchings; run with --ignored --release"]
fn bruteforce_equals_series_four_vertices() {
    let z = Symbols::symbolic().z_series(4).unwrap();
    assert_eq!(bruteforce_z(4).unwrap(), *z.coeff(4));
}

#[test]
fn spin_sum_at_one_counts_rooted_maps() {
    for n in 1..=3 {
        let e = enumerate(n).unwrap();
        let want = e.rooted_maps() * ExactScalar::from_integer((1u64 << (n - 1)).into());
        assert_eq!(bruteforce_z_at_one(n).unwrap(), want, "n = {n}");
    }
}

#[test]
fn rooted_map_counts() {
    // 2, 9, 54 rooted planar tetravalent maps
    let counts: Vec<ExactScalar> = (1..=3).map(|n| enumerate(n).unwrap().rooted_maps()).collect();
    assert_eq!(counts, vec![int(2), int(9), int(54)]);
}

#[test]
fn genus_range_and_totals() {
    for n in 1..=3 {
        let e = enumerate(n).unwrap();
        assert!(e.connected_by_genus.len() <= n.div_ceil(2) + 1, "n = {n}: {:?}", e.connected_by_genus);
        let double_factorial: u64 = (1..4 * n as u64).step_by(2).product();
        assert_eq!(e.matchings, double_factorial);
    }
}

fn matching(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..4 * n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|order| {
        let mut alpha = vec![0; order.len()];
        for pair in order.chunks(2) {
            alpha[pair[0]] = pair[1];
            alpha[pair[1]] = pair[0];
        }
        alpha
    })
}

proptest! {
    #[test]
    fn random_connected_maps_respect_genus_bound(alpha in (1usize..=6).prop_flat_map(matching)) {
        let n = alpha.len() / 4;
        let map = DartMap::new(n, alpha).unwrap();
        prop_assume!(map.is_connected());
        prop_assert_eq!(map.euler_characteristic() % 2, 0);
        prop_assert!(map.genus() <= n.div_ceil(2));
        prop_assert_eq!(map.edges().len(), 2 * n);
    }
}
