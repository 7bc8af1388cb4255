mod common;

use common::{params, pv, s, transform};
use filiform_core::algebra::{build_second_class, StructureTable};
use filiform_core::classify::{
    canonical_form, find_class, iso_decide, representatives, verify_classification, witness_search, Answer,
    Classification, SearchOutcome,
};
use filiform_core::exec::Execution;
use filiform_core::invariants::in_open_set;
use filiform_core::transform::rho_apply;
use filiform_core::{Error, QiScalar};
use num_traits::Zero;
use proptest::prelude::*;

/// The representative tables as printed, on `e_1, …, e_dim`; `λ` stands for
/// the family parameter.
const DIM5_TABLES: [&str; 5] = [
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e1,e2]=e4; [e2,e2]=λe5; [e3,e2]=e5",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e1,e2]=e4+e5; [e2,e2]=2e5; [e3,e2]=e5",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e2,e2]=e5",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e1,e2]=e5",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5",
];

const DIM6_TABLES: [&str; 12] = [
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e4+λe6; [e2,e2]=e6; [e3,e2]=e5; [e4,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e4+e6; [e3,e2]=e5; [e4,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e4; [e3,e2]=e5; [e4,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e4+e5+λe6; [e2,e2]=e6; [e3,e2]=e5+e6; [e4,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e4+e5; [e3,e2]=e5+e6; [e4,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e5; [e2,e2]=e6; [e3,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e5+e6; [e3,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e5; [e3,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e2,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6; [e1,e2]=e6; [e2,e2]=e6",
    "[e1,e1]=e3; [e3,e1]=e4; [e4,e1]=e5; [e5,e1]=e6",
];

fn index(e: &str) -> usize {
    e.trim().trim_start_matches('e').parse::<usize>().unwrap() - 1
}

fn parse_table(dim: usize, text: &str, lambda: &QiScalar) -> StructureTable {
    let mut t = StructureTable::zero(dim);
    for product in text.split(';') {
        let (lhs, rhs) = product.split_once('=').unwrap();
        let (i, j) = lhs.trim().trim_matches(['[', ']']).split_once(',').unwrap();
        for term in rhs.split('+') {
            let (coeff, e) = term.split_at(term.find('e').unwrap());
            let c = match coeff.trim() {
                "" => s("1"),
                "λ" => lambda.clone(),
                v => s(v),
            };
            if !c.is_zero() {
                t.add(index(i), index(j), index(e), &c).unwrap();
            }
        }
    }
    t
}

#[test]
fn representative_tables_match_the_printed_ones() {
    let lambdas = [s("0"), s("1"), s("-2/3"), s("1+1*i")];
    for (dim, tables) in [(5, &DIM5_TABLES[..]), (6, &DIM6_TABLES[..])] {
        for (f, text) in representatives(dim).unwrap().iter().zip(tables) {
            for l in &lambdas {
                let built = build_second_class(&f.member(f.is_parametric().then_some(l)).unwrap());
                assert_eq!(built, parse_table(dim, text, l), "{f} at λ = {l}");
            }
        }
    }
}

#[test]
fn representatives_are_fixed_in_dimension_5() {
    for f in representatives(5).unwrap() {
        for l in [s("0"), s("3"), s("-1/2+2*i")] {
            let p = f.instantiate(&l);
            let Classification::Confirmed(cf) = canonical_form(&p).unwrap() else {
                panic!("{p} is not confirmed");
            };
            assert_eq!(cf.representative, p);
        }
    }
}

#[test]
fn merged_dimension_6_families_are_isomorphic() {
    for (a, b) in [(["1", "0", "1", "0"], ["1", "1", "0", "0"]), (["0", "0", "0", "1"], ["0", "0", "1", "1"])] {
        let (p, q) = (pv(&a), pv(&b));
        let SearchOutcome::Found { witness, .. } = witness_search(&p, &q).unwrap() else {
            panic!("{p} and {q} are not isomorphic");
        };
        assert!(witness.verify(&p, &q));
    }
}

#[test]
fn undecided_outside_the_open_set() {
    let p = pv(&["0", "1", "0", "0", "1"]);
    assert!(!in_open_set(&p).unwrap());
    assert!(matches!(iso_decide(&p, &p), Err(Error::UndecidedOutsideU { .. })));
}

#[test]
fn dimension_mismatch_is_rejected() {
    let (p, q) = (pv(&["1", "0", "0"]), pv(&["1", "0", "0", "0"]));
    assert!(matches!(iso_decide(&p, &q), Err(Error::DimensionMismatch(_))));
    assert!(matches!(witness_search(&p, &q), Err(Error::DimensionMismatch(_))));
}

#[test]
fn audit_is_reproducible() {
    let a = verify_classification(5, 8, 3, Execution::Parallel).unwrap();
    let b = verify_classification(5, 8, 3, Execution::Sequential).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let c = verify_classification(5, 8, 4, Execution::Parallel).unwrap();
    assert_ne!(a.to_json(), c.to_json());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_idempotent_in_dimension_5(p in params(4)) {
        let c = canonical_form(&p).unwrap();
        prop_assert!(c.reverify(&p));
        let cf = c.class().unwrap();
        let again = canonical_form(&cf.representative).unwrap();
        prop_assert_eq!(again.class().unwrap().representative.clone(), cf.representative.clone());
    }

    #[test]
    fn dimension_6_classes_are_idempotent(p in params(5)) {
        let c = canonical_form(&p).unwrap();
        prop_assert!(c.reverify(&p));
        let first = find_class(&p).unwrap().unwrap();
        let again = find_class(&first.representative).unwrap().unwrap();
        prop_assert_eq!(again.representative, first.representative);
    }

    #[test]
    fn class_is_closed_under_base_change(p in prop_oneof![params(4), params(5)], tp in transform()) {
        let q = rho_apply(&tp, &p);
        let (cp, cq) = (find_class(&p).unwrap().unwrap(), find_class(&q).unwrap().unwrap());
        prop_assert_eq!(&cp.family, &cq.family);
        prop_assert_eq!(&cp.lambda, &cq.lambda);
        prop_assert_eq!(cp.representative, cq.representative);
    }

    #[test]
    fn orbit_members_are_isomorphic(p in params(6), tp in transform()) {
        let q = rho_apply(&tp, &p);
        if in_open_set(&p).unwrap() {
            let v = iso_decide(&p, &q).unwrap();
            prop_assert_eq!(v.answer, Answer::Isomorphic);
            prop_assert!(v.reverify(&p, &q));
        }
    }

    #[test]
    fn low_dimensional_verdicts_reverify(p in params(4), q in params(4)) {
        let v = iso_decide(&p, &q).unwrap();
        prop_assert!(v.reverify(&p, &q));
        let outcome = witness_search(&p, &q).unwrap();
        prop_assert_eq!(matches!(outcome, SearchOutcome::Found { .. }), v.is_isomorphic());
    }
}
