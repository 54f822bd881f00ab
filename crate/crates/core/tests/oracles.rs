//! Values checked against the classification tables and against quantities
//! derived independently by hand.

use num_bigint::BigInt;
use spacecurve_core::catalog::{explicit_miniversal, instantiate, printed_miniversal, EntryId};
use spacecurve_core::deform_solver::{bifurcation_matrix, discriminant_matrix};
use spacecurve_core::genericity::GenericityConfig;
use spacecurve_core::invariants::{conjecture_check, milnor, tjurina, CheckStatus};
use spacecurve_core::ll_map::{
    ll_degree, ll_jacobian_check, ll_point, printed_ll_degree, weight_profile,
};
use spacecurve_core::poly::{int, rat};
use spacecurve_core::{parse_polynomial, Rational, VarList};

fn id(s: &str) -> EntryId {
    s.parse().unwrap()
}

fn tau_of(s: &str) -> usize {
    tjurina(&instantiate(&id(s)).unwrap().pair).unwrap()
}

fn degree_of(s: &str) -> BigInt {
    ll_degree(&weight_profile(&instantiate(&id(s)).unwrap()).unwrap()).unwrap()
}

#[test]
fn tjurina_numbers_follow_the_tables() {
    // subscript for A, B, F, E; p+q for plane C; p+q+r+1 for space C; 6 for the bounding germs
    for (s, t) in [
        ("A1", 1),
        ("A5", 5),
        ("B4", 4),
        ("B6", 6),
        ("C:3,2", 5),
        ("C:5,1", 6),
        ("F4", 4),
        ("F7", 7),
        ("C:1,1,1", 4),
        ("C:2,2,1", 6),
        ("C:3,1,1", 6),
        ("E6", 6),
        ("E7", 7),
        ("E8", 8),
        ("X9@2", 6),
        ("J10@5/2", 6),
    ] {
        assert_eq!(tau_of(s), t, "{s}");
    }
}

#[test]
fn printed_deformation_parameter_counts() {
    let full = printed_miniversal(&id("C:1,1,1"), false).unwrap();
    assert_eq!(full.num_params(), 4);
    let trunc = printed_miniversal(&id("C:1,1,1"), true).unwrap();
    assert_eq!(trunc.num_params(), 3);
    let vars = VarList::new(&["x", "y", "z"]);
    let at_zero = trunc.specialize(&[int(0), int(0), int(0)]).unwrap();
    assert_eq!(
        at_zero.function,
        parse_polynomial("x + y + z", &vars).unwrap()
    );
    assert_eq!(
        printed_miniversal(&id("C:2,1,1"), false)
            .unwrap()
            .num_params(),
        5
    );
    assert_eq!(
        explicit_miniversal(&id("A4"), false).unwrap().num_params(),
        4
    );
}

#[test]
fn milnor_equals_tjurina_on_small_entries() {
    let cfg = GenericityConfig::default();
    for s in [
        "A2", "A4", "B3", "C:2,1", "C:2,2", "F4", "C:1,1,1", "C:2,1,1", "X9@3",
    ] {
        let e = instantiate(&id(s)).unwrap();
        let mu = milnor(&e, &cfg).unwrap();
        assert_eq!(mu, Some(e.expected_tau), "{s}");
    }
    let e6 = conjecture_check(&instantiate(&id("E6")).unwrap(), &cfg).unwrap();
    assert_eq!(e6.status, CheckStatus::Skipped);
}

#[test]
fn ll_degrees_match_the_index_table() {
    // (k+1)^(k-1) for A_k
    for k in 1..=7u32 {
        assert_eq!(
            degree_of(&format!("A{k}")),
            BigInt::from(k + 1).pow(k - 1),
            "A{k}"
        );
    }
    for k in 3..=8 {
        assert_eq!(degree_of(&format!("B{k}")), BigInt::from(1), "B{k}");
    }
    assert_eq!(degree_of("E6"), BigInt::from(243));
    assert_eq!(degree_of("E7"), BigInt::from(896));
    assert_eq!(degree_of("E8"), BigInt::from(3888));
    // (p+q+r+1)! p^p q^q r^r / ((p-1)!(q-1)!(r-1)!) at (1,1,1) and (2,1,1)
    assert_eq!(degree_of("C:1,1,1"), BigInt::from(24));
    assert_eq!(degree_of("C:2,1,1"), BigInt::from(480));
    // (p+q-1)! p^p q^q / ((p-1)!(q-1)!) at (2,1): 2! * 4 / 1
    assert_eq!(degree_of("C:2,1"), BigInt::from(8));
    for s in ["A6", "C:3,2", "F8", "C:2,2,2"] {
        assert_eq!(
            Some(Rational::from_integer(degree_of(s))),
            printed_ll_degree(&id(s)),
            "{s}"
        );
    }
    assert!(printed_ll_degree(&id("X9@2")).is_none());
}

#[test]
fn discriminant_of_the_cubic() {
    // x^3 + a x + b has discriminant -(4a^3 + 27b^2); normalized by the b^2 coefficient
    let (v, _) = discriminant_matrix(&id("A2")).unwrap();
    let vars = v.params.clone();
    assert_eq!(v.det, parse_polynomial("l0^2 + 4/27*l1^3", &vars).unwrap());
    let (v1, _) = discriminant_matrix(&id("A1")).unwrap();
    assert_eq!(v1.det.to_string(), "l0");
}

#[test]
fn bifurcation_matrix_of_three_lines() {
    let cfg = GenericityConfig::default();
    let (w, _) = bifurcation_matrix(&id("C:1,1,1"), &cfg).unwrap();
    assert_eq!(w.row_degrees(1), vec![1, 2, 3]);
    assert_eq!(w.det.quasi_degree(&w.param_weights), Some(6));
    assert!(w.euler_in_span());
    assert!(w.det_squarefree_on_line(&cfg));
}

#[test]
fn critical_values_of_a_cubic() {
    // x^3 - 3x + 1: critical points ±1, values -1 and 3
    let pt = ll_point(&id("A2"), &[int(-3), int(1)]).unwrap();
    assert_eq!(pt.coeffs, vec![int(-3), int(-2), int(1)]);
    // mean-shifted: roots -2, 2
    assert_eq!(pt.truncated().coeffs, vec![int(-4), int(0), int(1)]);
    assert!(!pt.has_multiple_root());
    let cusp = ll_point(&id("A2"), &[int(0), rat(1, 2)]);
    assert!(cusp.is_err() || cusp.unwrap().has_multiple_root());
}

#[test]
fn jacobian_degenerates_on_a_singular_curve() {
    let c = id("C:1,1,1");
    let generic = ll_jacobian_check(&c, &[int(2), int(3), int(5), int(7)]).unwrap();
    assert!(generic.nonsingular);
    let node = ll_jacobian_check(&c, &[int(0), int(3), int(5), int(7)]).unwrap();
    assert!(!node.nonsingular);
}
