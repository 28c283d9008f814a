use dirac_core::clifford::{closed_form_block_spectrum, oracle_block_spectrum, spectrum_mismatch};
use dirac_core::inflation::{slow_roll_params, SlowRollConfig, Status};
use dirac_core::spectral_action::{
    product_trace_asymptotic, product_trace_direct, rel_diff, trace_asymptotic_su2, trace_direct_su2, ProductGeometry,
    DEFAULT_TAIL_EPS,
};
use dirac_core::spectrum::{su2_block_lines, su2_spectrum, SpectrumQuery};
use dirac_core::test_function::TestFunction;
use dirac_core::Error;
use proptest::prelude::*;

/// Sorts lines by eigenvalue and merges coincident ones.
fn merged<T: Copy + std::ops::AddAssign>(mut v: Vec<(f64, T)>) -> Vec<(f64, T)> {
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, T)> = Vec::new();
    for (e, m) in v {
        match out.last_mut() {
            Some(last) if (last.0 - e).abs() <= 1e-12 * e.abs().max(1.0) => last.1 += m,
            _ => out.push((e, m)),
        }
    }
    out
}

fn sorted_spectrum(t: f64, e_max: f64) -> Vec<(f64, u64)> {
    merged(
        su2_spectrum(t, SpectrumQuery::cutoff(e_max).unwrap())
            .unwrap()
            .map(|l| (l.eigenvalue, l.multiplicity))
            .collect(),
    )
}

#[test]
fn spectrum_symmetric_under_t_to_one_minus_t() {
    for t in [0.0, 0.1, 0.25, 1.0 / 3.0, 0.45] {
        let a = sorted_spectrum(t, 150.0);
        let b = sorted_spectrum(1.0 - t, 150.0);
        assert_eq!(a.len(), b.len(), "t={t}");
        for (x, y) in a.iter().zip(&b) {
            assert!(
                (x.0 - y.0).abs() <= 1e-12 * x.0.max(1.0) && x.1 == y.1,
                "t={t}: {x:?} vs {y:?}"
            );
        }
    }
}

#[test]
fn block_lines_agree_with_matrix_oracle() {
    for t in [0.0, 0.2, 0.5, 0.9] {
        for m in 0..=5 {
            // total multiplicity = (m+1) copies of the S (x) V_m degeneracy
            let closed = merged(
                su2_block_lines(t, m)
                    .into_iter()
                    .map(|l| (l.eigenvalue, l.multiplicity as usize / (m as usize + 1)))
                    .collect(),
            );
            let oracle = oracle_block_spectrum(t, m).unwrap();
            assert!(spectrum_mismatch(&oracle, &closed) < 1e-9, "t={t} m={m}");
            assert!(spectrum_mismatch(&oracle, &closed_form_block_spectrum(t, m)) < 1e-9);
        }
    }
}

#[test]
fn input_errors_are_not_numerical() {
    let e = ProductGeometry::new(-1.0, 1.0, 0.0, 0.5, 2.0).unwrap_err();
    assert!(!e.is_numerical());
    let e = trace_direct_su2(0.5, 2.0, &TestFunction::gaussian(), -1.0).unwrap_err();
    assert!(matches!(e, Error::InvalidArgument { .. }), "{e}");
}

#[test]
fn slow_roll_origin_is_singular() {
    let cfg = SlowRollConfig::new(0.5, 2.0, 1.0, 1.0, TestFunction::exp_pi()).unwrap();
    let p = slow_roll_params(&cfg, 0.0).unwrap();
    assert_eq!(p.status, Status::Singular);
    assert!(p.epsilon.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn su2_action_matches_expansion(t in 0.0f64..=1.0, lambda in 6.0f64..20.0) {
        let f = TestFunction::gaussian();
        let d = trace_direct_su2(t, lambda, &f, DEFAULT_TAIL_EPS).unwrap();
        let a = trace_asymptotic_su2(t, lambda, &f).unwrap();
        prop_assert!(rel_diff(d.value, a.value) <= 1e-10);
    }

    #[test]
    fn product_action_matches_expansion(t in 0.0f64..=1.0, s in 0.0f64..1.0, la in 3.0f64..6.0, lb in 3.0f64..6.0) {
        let geom = ProductGeometry::new(1.0, lb / la, s, t, la).unwrap();
        let h = TestFunction::gaussian();
        let d = product_trace_direct(&geom, &h, DEFAULT_TAIL_EPS).unwrap();
        let a = product_trace_asymptotic(&geom, &h).unwrap();
        prop_assert!(rel_diff(d.value, a.value) <= 1e-10, "{} vs {}", d.value, a.value);
    }
}
