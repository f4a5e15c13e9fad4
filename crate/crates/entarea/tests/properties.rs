//! Property tests for the geometric and spectral invariants.

use proptest::prelude::*;

use entarea::circulant::build_potential;
use entarea::gaussian::ground_covariance;
use entarea::harness::{read_csv, read_json, write_csv, write_json, RunRecord};
use entarea::lattice::{lattice_distance, LatticeSpec, Model, SiteCoord};

fn nn_spec(d: usize, n: usize, c: f64) -> LatticeSpec {
    LatticeSpec::new(d, n, c, Model::NearestNeighbor).unwrap()
}

fn site_strategy(d: usize, n: usize) -> impl Strategy<Value = SiteCoord> {
    prop::collection::vec(0..n, d).prop_map(SiteCoord)
}

proptest! {
    #[test]
    fn distance_triangle_inequality(
        dn in (1usize..=3, 4usize..=9),
        seed in any::<u64>(),
    ) {
        let (d, n) = dn;
        let spec = nn_spec(d, n, 0.0);
        // derive three sites from the seed to keep the strategy simple
        let total = spec.site_count();
        let a = SiteCoord::from_linear(seed as usize % total, d, n);
        let b = SiteCoord::from_linear((seed / 7) as usize % total, d, n);
        let c = SiteCoord::from_linear((seed / 131) as usize % total, d, n);
        let dab = lattice_distance(&spec, &a, &b).unwrap();
        let dbc = lattice_distance(&spec, &b, &c).unwrap();
        let dac = lattice_distance(&spec, &a, &c).unwrap();
        prop_assert!(dac <= dab + dbc);
        prop_assert_eq!(dab, lattice_distance(&spec, &b, &a).unwrap());
    }

    #[test]
    fn distance_one_is_stencil_adjacency(
        dn in (1usize..=3, 3usize..=7),
        k in any::<u64>(),
        l in any::<u64>(),
    ) {
        let (d, n) = dn;
        let spec = nn_spec(d, n, 0.1 / d as f64);
        let total = spec.site_count();
        let k = SiteCoord::from_linear(k as usize % total, d, n);
        let l = SiteCoord::from_linear(l as usize % total, d, n);
        let dist = lattice_distance(&spec, &k, &l).unwrap();
        let neighbor_axes = k.0.iter().zip(&l.0)
            .filter(|(&a, &b)| {
                let diff = a.abs_diff(b);
                diff.min(n - diff) == 1
            })
            .count();
        let equal_axes = k.0.iter().zip(&l.0)
            .filter(|(&a, &b)| a == b)
            .count();
        let adjacent = neighbor_axes == 1 && equal_axes == d - 1;
        prop_assert_eq!(dist == 1, adjacent);
    }

    #[test]
    fn elements_are_translation_invariant(
        k in site_strategy(2, 5),
        l in site_strategy(2, 5),
        t in site_strategy(2, 5),
    ) {
        let spec = nn_spec(2, 5, 0.1);
        let v = build_potential(&spec).unwrap();
        let sqrt = v.fractional_power(0.5).unwrap();
        let shift = |s: &SiteCoord| {
            SiteCoord(s.0.iter().zip(&t.0).map(|(&a, &b)| (a + b) % 5).collect())
        };
        let base = sqrt.element(&k, &l).unwrap();
        let moved = sqrt.element(&shift(&k), &shift(&l)).unwrap();
        prop_assert!((base - moved).abs() < 1e-13);
    }

    #[test]
    fn ground_state_purity_holds_for_any_coupling(c in 0.0f64..0.24) {
        let spec = nn_spec(2, 4, c);
        let v = build_potential(&spec).unwrap();
        let gamma = ground_covariance(&v).unwrap();
        prop_assert!(gamma.purity_defect() < 1e-13);
    }

    #[test]
    fn potential_spectrum_stays_in_dispersion_band(
        c in 0.0f64..0.16,
        n in 3usize..10,
    ) {
        let spec = nn_spec(3, n, c);
        let v = build_potential(&spec).unwrap();
        let y = spec.y();
        prop_assert!(v.min_symbol() >= 1.0 - y - 1e-12);
        prop_assert!(v.max_symbol() <= 1.0 + y + 1e-12);
    }
}

fn record_strategy() -> impl Strategy<Value = RunRecord> {
    let float = prop_oneof![
        4 => (-1e6f64..1e6).prop_map(|x| x),
        1 => Just(f64::NAN),
        1 => Just(0.0f64),
    ];
    (
        (1usize..=4, 2usize..=64, 1usize..=16, 0.0f64..0.12),
        prop::bool::ANY,
        [
            float.clone(),
            float.clone(),
            float.clone(),
            float.clone(),
            float.clone(),
        ],
        prop::option::of(0usize..100),
        prop::bool::ANY,
    )
        .prop_map(|((d, n, m, c), squared, floats, nonunit, valid)| {
            let model = if squared {
                Model::Squared
            } else {
                Model::NearestNeighbor
            };
            let mut r = RunRecord::blank(d, n, m.min(n), c, model);
            r.s_nats = floats[0];
            r.en_nats = floats[1];
            r.upper_bound = floats[2];
            r.upper_valid = valid;
            r.shell_sum_bound = floats[3];
            r.lower_estimate = floats[4];
            r.nonunit_mu_count = nonunit;
            r.wall_ms = floats[0].abs();
            r
        })
}

fn same_bits(a: &RunRecord, b: &RunRecord) -> bool {
    a.d == b.d
        && a.n == b.n
        && a.m == b.m
        && a.c.to_bits() == b.c.to_bits()
        && a.model == b.model
        && a.s_nats.to_bits() == b.s_nats.to_bits()
        && a.en_nats.to_bits() == b.en_nats.to_bits()
        && a.upper_bound.to_bits() == b.upper_bound.to_bits()
        && a.upper_valid == b.upper_valid
        && a.shell_sum_bound.to_bits() == b.shell_sum_bound.to_bits()
        && a.lower_estimate.to_bits() == b.lower_estimate.to_bits()
        && a.nonunit_mu_count == b.nonunit_mu_count
        && a.wall_ms.to_bits() == b.wall_ms.to_bits()
}

proptest! {
    #[test]
    fn record_roundtrips_through_both_formats(
        records in prop::collection::vec(record_strategy(), 1..8)
    ) {
        let mut csv = Vec::new();
        write_csv(&records, &mut csv).unwrap();
        let from_csv = read_csv(csv.as_slice()).unwrap();
        prop_assert_eq!(records.len(), from_csv.len());
        for (a, b) in records.iter().zip(&from_csv) {
            prop_assert!(same_bits(a, b), "csv: {:?} vs {:?}", a, b);
        }

        let mut json = Vec::new();
        write_json(&records, &mut json).unwrap();
        let from_json = read_json(json.as_slice()).unwrap();
        for (a, b) in records.iter().zip(&from_json) {
            prop_assert!(same_bits(a, b), "json: {:?} vs {:?}", a, b);
        }
    }
}
