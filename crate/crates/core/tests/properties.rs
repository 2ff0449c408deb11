use std::sync::OnceLock;

use hsp_core::contraction::{contraction_tiling, tau_removable};
use hsp_core::coxeter::suite_pairs;
use hsp_core::koszul::resolution_table;
use hsp_core::tetris::{left_trail, mu_length, right_trail, trails};
use hsp_core::{decomposition_matrix, DecompositionMatrix, HermitianPair, Region, TileSet};
use proptest::prelude::*;

struct Data {
    pair: HermitianPair,
    region: Region,
    matrix: DecompositionMatrix,
}

fn suite() -> &'static [Data] {
    static SUITE: OnceLock<Vec<Data>> = OnceLock::new();
    SUITE.get_or_init(|| {
        suite_pairs()
            .into_iter()
            .map(|pair| Data { pair, region: Region::new(pair).unwrap(), matrix: decomposition_matrix(pair).unwrap() })
            .collect()
    })
}

fn pair_index() -> impl Strategy<Value = usize> {
    0..suite().len()
}

#[test]
fn pair_specs_round_trip() {
    for p in suite_pairs() {
        assert_eq!(p.to_string().parse::<HermitianPair>().unwrap(), p);
    }
    for bad in ["", "A:n=3", "A:n=2,k=3", "E6", "D/A:n=1,k=1", "C:n=x"] {
        assert!(bad.parse::<HermitianPair>().is_err(), "{bad}");
    }
}

#[test]
fn koszul_tables_hold_invariants() {
    for p in suite_pairs() {
        assert!(resolution_table(p).unwrap().invariants_hold(), "{p}");
    }
}

// Observed on the whole suite: the top degree of p_{lam,mu} is always
// |lam| - |mu|, not only along chains.
#[test]
fn koszul_top_degree_is_size_difference() {
    for p in suite_pairs() {
        let t = resolution_table(p).unwrap();
        for (lam, row) in t.rows.iter().enumerate() {
            for (&mu, poly) in row {
                let diff = t.order[lam].len() - t.order[mu].len();
                assert_eq!(poly.max_exp(), Some(diff as i32), "{p}: ({lam},{mu})");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_is_unitriangular_and_positive(k in pair_index(), a in any::<u64>(), b in any::<u64>()) {
        let d = &suite()[k];
        let n = d.matrix.len();
        let (lam, mu) = (a as usize % n, b as usize % n);
        let e = d.matrix.get(lam, mu);
        prop_assert!(d.matrix.get(lam, lam).is_one());
        if !e.is_zero() {
            prop_assert!(d.matrix.order[lam].is_subset(d.matrix.order[mu]));
            prop_assert!(e.has_nonneg_coeffs());
            if lam != mu {
                prop_assert!(e.min_exp().unwrap() >= 1);
                prop_assert!(e.max_exp().unwrap() as usize <= d.matrix.order[mu].len() - d.matrix.order[lam].len());
            }
        }
    }

    #[test]
    fn closures_are_partitions(k in pair_index(), bits in any::<u128>()) {
        let d = &suite()[k];
        let set = TileSet::from_bits(bits).intersection(d.region.full());
        let down = d.region.down_closure(set);
        let up = d.region.up_closure(set);
        prop_assert!(d.region.is_partition(down));
        prop_assert!(d.region.is_partition(d.region.full().difference(up)));
        prop_assert!(set.is_subset(down) && set.is_subset(up));
    }

    #[test]
    fn addable_and_removable_tiles(k in pair_index(), bits in any::<u128>()) {
        let d = &suite()[k];
        let lam = d.region.down_closure(TileSet::from_bits(bits).intersection(d.region.full()));
        for (_, i) in d.region.addable(lam) {
            prop_assert!(d.region.is_partition(lam.with(i)));
        }
        for (_, i) in d.region.removable(lam) {
            prop_assert!(d.region.is_partition(lam.without(i)));
        }
        prop_assert_eq!(d.region.from_row_lengths(&d.region.row_lengths(lam)).unwrap(), lam);
    }

    #[test]
    fn contract_inverts_phi(k in pair_index(), t in any::<usize>()) {
        let d = &suite()[k];
        prop_assume!(d.pair.is_simply_laced());
        let colours: Vec<_> = d.region.colours().collect();
        let tau = colours[t % colours.len()];
        let ct = contraction_tiling(d.pair, tau).unwrap();
        for mu in tau_removable(&d.region, tau) {
            let lam = ct.contract(mu).unwrap();
            prop_assert_eq!(ct.phi(lam), mu);
        }
    }

    #[test]
    fn greedy_trails_are_maximal(bits in any::<u128>(), x in 1i32..8, y in 1i32..8) {
        let region = Region::new(HermitianPair::da(8).unwrap()).unwrap();
        let mu = region.down_closure(TileSet::from_bits(bits).intersection(region.full()));
        let best = trails(x, y).iter().map(|t| mu_length(&region, t, mu)).max().unwrap();
        for t in [left_trail(&region, mu, x, y), right_trail(&region, mu, x, y)] {
            prop_assert!(t.is_well_formed());
            prop_assert_eq!(mu_length(&region, &t, mu), best);
        }
    }
}
