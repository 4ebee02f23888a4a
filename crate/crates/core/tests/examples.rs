mod common;

use common::*;
use parrondo_lab::gallery::{gallery_get, GallerySystem, ENTRY_NAMES};
use parrondo_lab::jet::{rat, ratio, Jet1D, Rational};
use parrondo_lab::periodic::{
    construct_1d_triple, detect_parrondo_1d, extend_with_padding_1d, lift_product, BaseSystem,
    Paradox, PeriodicSystem1D,
};
use parrondo_lab::planar::DEFAULT_ZERO_TOL;
use parrondo_lab::simulate::{
    empirical_verdict, expected_empirical, iterate_orbit, EmpiricalVerdict, NumericSystem,
    OrbitStatus, SimConfig,
};
use parrondo_lab::stability1d::stability_constants;
use proptest::prelude::*;

fn one_d(name: &str) -> PeriodicSystem1D {
    match gallery_get(name).unwrap().system {
        GallerySystem::OneD(s) => s,
        _ => unreachable!(),
    }
}

fn triple(a22: Rational) -> PeriodicSystem1D {
    construct_1d_triple(&a22, &rat(2), &rat(9), &rat(1), &rat(2), &rat(0))
}

fn printed_factorization(a22: &Rational) -> Rational {
    rat(8) * (a22 - rat(1)) * (a22 * a22 - rat(5) * a22 + rat(3))
}

#[test]
fn per_map_constants_from_the_oracle() {
    let v5 = |name| -> Vec<Rational> {
        one_d(name)
            .maps()
            .iter()
            .map(|f| oracle_first_v(f).unwrap())
            .map(|(l, v)| {
                assert_eq!(l, 5);
                v
            })
            .collect()
    };
    assert_eq!(v5("e-f1f2f3"), vec![rat(-4), rat(-18), rat(-2)]);
    assert_eq!(v5("e-F1F2F3"), vec![rat(2), rat(18), rat(4)]);
}

#[test]
fn compositions_agree_with_brute_force() {
    for name in ["e-f1f2f3", "e-F1F2F3", "g-123-reversed"] {
        let sys = one_d(name);
        let brute = sys.maps()[1..]
            .iter()
            .fold(sys.maps()[0].clone(), |acc, f| oracle_compose(f, &acc));
        assert_eq!(sys.composition_map(), brute, "{name}");
    }
}

#[test]
fn inverses_agree_with_lagrange_inversion() {
    for name in ["e-f1f2f3", "e-F1F2F3"] {
        for f in one_d(name).maps() {
            assert_eq!(f.inverse().unwrap(), oracle_inverse(f));
        }
    }
}

#[test]
fn triple_at_the_special_values() {
    for (a22, v5) in [(5, 96), (1, 0), (2, -24)] {
        let comp = triple(rat(a22)).composition_map();
        let w = oracle_w(&comp);
        assert_eq!(w[0], (3, rat(0)), "a22 = {a22}");
        assert_eq!(w[2], (5, rat(v5)), "a22 = {a22}");
        assert_eq!(rat(v5), printed_factorization(&rat(a22)));
    }
    let report = detect_parrondo_1d(&triple(rat(1))).unwrap();
    assert_eq!(report.paradox, Paradox::Indeterminate);
    let report = detect_parrondo_1d(&triple(rat(2))).unwrap();
    assert_eq!(report.paradox, Paradox::None);
}

proptest! {
    #[test]
    fn triple_composition_follows_the_factorization(a22 in small_rational()) {
        let comp = triple(a22.clone()).composition_map();
        let k = stability_constants(&comp).unwrap();
        prop_assert_eq!(k.w(5).cloned(), Some(printed_factorization(&a22)));
    }
}

#[test]
fn padding_preserves_the_low_order_composition() {
    let f = one_d("e-f1f2f3");
    let ext = extend_with_padding_1d(&f, 5).unwrap();
    assert_eq!(ext.len(), 5);
    assert_eq!(ext.composition_map().truncated(5), f.composition_map());
    let last = &ext.maps()[4];
    assert_eq!(last.coeff(1), rat(1));
    assert_eq!(last.coeff(7), rat(-1));

    let g = one_d("e-F1F2F3");
    let ext = extend_with_padding_1d(&g, 4).unwrap();
    let k = stability_constants(&ext.composition_map()).unwrap();
    assert_eq!(k.v_first, Some((5, rat(-96))));
    assert_eq!(
        detect_parrondo_1d(&ext).unwrap().paradox,
        Paradox::RepellersToLas
    );
}

#[test]
fn lifts_share_one_fate() {
    let g = one_d("e-F1F2F3");
    let lift = lift_product(BaseSystem::OneD(g), 3).unwrap();
    assert_eq!(lift.dimension(), 3);
    assert_eq!(
        lift.report(DEFAULT_ZERO_TOL).unwrap().paradox,
        Paradox::RepellersToLas
    );
    let sim = NumericSystem::from_lift(&lift);
    assert_eq!(sim.dim(), 3);
    let out = iterate_orbit(&sim, &[0.0, 0.0, 0.0], &SimConfig::default()).unwrap();
    assert_eq!(out.status, OrbitStatus::Converged { iter: 0 });
}

#[test]
fn orientation_preserving_jet_is_mixed() {
    let sys = NumericSystem::from_jet(&Jet1D::from_ints(&[1, 1]).unwrap());
    let cfg = SimConfig {
        converge_radius: 1e-3,
        ..SimConfig::default()
    };
    assert_eq!(
        empirical_verdict(&sys, &cfg).unwrap(),
        EmpiricalVerdict::Mixed
    );
}

/// A neighbourhood scaled to the examples: the polynomial maps of the
/// 1-D examples carry a spurious two-cycle near `|x| = 0.0142` and the
/// glued jet a second fixed point at `0.293`, so escape is declared
/// inside both.
fn local_config() -> SimConfig {
    SimConfig {
        initial_radius: 1e-2,
        converge_radius: 9e-3,
        escape_radius: 1.35e-2,
        max_iters: 10_000_000,
        n_samples: 8,
        trace_every: None,
    }
}

#[test]
fn empirical_verdicts_agree_inside_a_local_neighbourhood() {
    for name in ENTRY_NAMES {
        let entry = gallery_get(name).unwrap();
        let Some(class) = entry.analytic_class(DEFAULT_ZERO_TOL).unwrap() else {
            continue;
        };
        let sys = entry.numeric_system().unwrap();
        let got = empirical_verdict(&sys, &local_config()).unwrap();
        assert_eq!(Some(got), expected_empirical(class), "{name}");
    }
}

#[test]
fn shrinking_the_radius_never_flips_the_verdict() {
    for name in ENTRY_NAMES {
        let entry = gallery_get(name).unwrap();
        let Some(sys) = entry.numeric_system() else {
            continue;
        };
        let wide = local_config();
        let narrow = SimConfig {
            initial_radius: wide.initial_radius / 10.0,
            converge_radius: wide.converge_radius / 10.0,
            max_iters: 200_000,
            ..wide.clone()
        };
        let a = empirical_verdict(&sys, &wide).unwrap();
        let b = empirical_verdict(&sys, &narrow).unwrap();
        let flipped = matches!(
            (a, b),
            (
                EmpiricalVerdict::AttractingAll,
                EmpiricalVerdict::RepellingAll
            ) | (
                EmpiricalVerdict::RepellingAll,
                EmpiricalVerdict::AttractingAll
            )
        );
        assert!(!flipped, "{name}: {a:?} then {b:?}");
    }
}

#[test]
fn rational_parameters_stay_exact() {
    let sys = construct_1d_triple(
        &ratio(7, 3),
        &ratio(1, 4),
        &rat(1),
        &rat(1),
        &ratio(-1, 2),
        &rat(3),
    );
    for f in sys.maps() {
        assert_eq!(stability_constants(f).unwrap().w(3), Some(&rat(0)));
    }
}
