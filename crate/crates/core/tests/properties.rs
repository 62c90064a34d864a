use proptest::prelude::*;

use topokit::bordism::{
    homotopy_sphere_bordism, l_group, p_group, singular_integral_bordism, sphere_ranks,
};
use topokit::eulercalc::{chi_from_betti, chi_surgery, handle_chi, HandleComplex};
use topokit::exactnum::rational_rank;
use topokit::genus::{apply_sequence, l_lambda, MultiplicativeSequence};
use topokit::jets::{dim_jet_space, dim_rf_prolongation};
use topokit::milnor::{classify_bundle_pair, sphere_bundle_homology, BundleData};
use topokit::ricci::{flow_step, ricci_source, stability_bound, FlowParams, Grid, MetricField};
use topokit::symmpoly::{
    elementary_symmetric, monomial_symmetric_oracle, partitions_of, plain_variables, s_polynomial,
    sigma_monomial,
};
use topokit::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

/// (ab)_n = Σ_{i+j=n} a_i b_j with a_0 = b_0 = 1.
fn graded_product(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let at = |v: &[Rational], i: usize| {
        if i == 0 {
            Rational::one()
        } else {
            v[i - 1].clone()
        }
    };
    (1..=a.len())
        .map(|n| (0..=n).fold(Rational::zero(), |acc, i| acc + at(a, i) * at(b, n - i)))
        .collect()
}

#[test]
fn oracle_round_trip_with_two_spare_variables() {
    for w in 0..=6 {
        for p in partitions_of(w) {
            let names: Vec<String> = (1..=w as usize + 2).map(|i| format!("t{i}")).collect();
            let vars = plain_variables(&names);
            let s = s_polynomial(&p);
            let images: Vec<_> = (1..=s.vars().len())
                .map(|k| elementary_symmetric(k, &vars))
                .collect();
            let lhs = s.substitute(&images).unwrap();
            let rhs = monomial_symmetric_oracle(&p, &vars).unwrap();
            assert_eq!(lhs.to_string(), rhs.to_string(), "{p}");
            assert!(s.is_homogeneous_of(w), "{p} not homogeneous");
        }
    }
}

#[test]
fn s_polynomials_form_a_basis() {
    for n in 0..=6 {
        let parts = partitions_of(n);
        let rows: Vec<Vec<Rational>> = parts
            .iter()
            .map(|i| {
                let s = s_polynomial(i);
                parts
                    .iter()
                    .map(|j| s.coefficient(&sigma_monomial(j)))
                    .collect()
            })
            .collect();
        assert_eq!(rational_rank(&rows), parts.len(), "weight {n}");
    }
}

#[test]
fn bordism_from_sphere_homology() {
    for n in 1..=7 {
        let direct = singular_integral_bordism(&sphere_ranks(n)).unwrap();
        assert_eq!(direct, homotopy_sphere_bordism(n).unwrap());
    }
    for n in 0..12 {
        if n % 2 == 0 {
            assert_eq!(l_group(n), p_group(n));
        } else {
            assert!(l_group(n).is_trivial() && p_group(n).is_trivial());
        }
    }
}

#[test]
fn handles_agree_with_betti() {
    // (handle counts, Betti numbers) for S², T², S⁵.
    let fixtures: [(&[u64], &[u64]); 3] = [
        (&[1, 0, 1], &[1, 0, 1]),
        (&[1, 2, 1], &[1, 2, 1]),
        (&[1, 0, 0, 0, 0, 1], &[1, 0, 0, 0, 0, 1]),
    ];
    for (h, b) in fixtures {
        assert_eq!(
            handle_chi(&HandleComplex::from_counts(h.to_vec())),
            chi_from_betti(b)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicativity_of_power_sequences(
        lam in rational(),
        a in proptest::collection::vec(rational(), 4),
        b in proptest::collection::vec(rational(), 4),
    ) {
        let l = lam.clone();
        let power = MultiplicativeSequence::new("power", move |k| l.pow(k));
        for seq in [power, MultiplicativeSequence::l_genus()] {
            let ab = graded_product(&a, &b);
            for n in 1..=4u32 {
                let lhs = apply_sequence(&seq, &ab, n).unwrap();
                let rhs = (0..=n).fold(Rational::zero(), |acc, i| {
                    acc + apply_sequence(&seq, &a, i).unwrap() * apply_sequence(&seq, &b, n - i).unwrap()
                });
                prop_assert_eq!(lhs, rhs, "{} at weight {}", seq.name(), n);
            }
        }
    }

    #[test]
    fn one_variable_specialization(z in rational()) {
        let seq = MultiplicativeSequence::l_genus();
        for n in 1..=4u32 {
            let mut a = vec![Rational::zero(); n as usize];
            a[0] = z.clone();
            let got = apply_sequence(&seq, &a, n).unwrap();
            prop_assert_eq!(got, l_lambda(n) * z.pow(n));
        }
    }

    #[test]
    fn bundle_pairs_round_trip(a in -20i64..=20, b in -20i64..=20) {
        let bundle = classify_bundle_pair(a, b);
        prop_assert_eq!(bundle.to_pair(), (a, b));
        prop_assert_eq!(BundleData::new(bundle.euler, bundle.pontrjagin1).unwrap(), bundle);
    }

    #[test]
    fn bundle_homology_shape(chi in -30i64..=30) {
        let h = sphere_bundle_homology(chi);
        let rank: u32 = h.iter().map(|g| g.free_rank()).sum();
        prop_assert_eq!(rank, if chi == 0 { 4 } else { 2 });
        for (deg, g) in h.iter().enumerate() {
            prop_assert!(g.torsion().is_empty() || deg == 3);
        }
    }

    #[test]
    fn dual_surgery_restores_chi(chi in -50i64..=50, p in 0u32..8, n in 1u32..6) {
        let dim = 2 * n + 2;
        let p = p % dim;
        // The dual surgery on the result has index dim − p − 1, of opposite parity.
        prop_assert_eq!(chi_surgery(chi_surgery(chi, p), dim - p - 1), chi);
    }

    #[test]
    fn prolongation_fits_in_jet_space(n in 1u32..=8, s in 0u32..=6) {
        prop_assert!(dim_rf_prolongation(n, s).unwrap() <= dim_jet_space(n, s).unwrap());
        prop_assert!(dim_rf_prolongation(n, 0).unwrap() > 2 * (n as u128 + 1) + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn steps_keep_metrics_symmetric_and_positive(seed in any::<u64>(), n in 2usize..=3) {
        let grid = Grid::unit_torus(n, if n == 2 { 12 } else { 6 }).unwrap();
        let p = FlowParams::default();
        let mut g = MetricField::random_perturbation(grid, 0.1, seed).unwrap();
        for _ in 0..5 {
            prop_assert!(ricci_source(&g, &p).unwrap().is_symmetric());
            let dt = stability_bound(&g, &p);
            g = flow_step(&g, dt, &p).unwrap();
            prop_assert!(g.field().is_symmetric());
            prop_assert!(g.field().min_leading_minor().1 > 0.0);
        }
    }
}
