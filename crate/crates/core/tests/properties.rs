mod common;

use common::{nonzero, params, scalar, transform};
use filiform_core::algebra::{build_second_class, ParamVector, StructureTable};
use filiform_core::exactnum::{RadicalElem, Ring};
use filiform_core::invariants::{
    cell_membership, closed_form_corrected, closed_form_invariant, closed_forms_for_dim, in_open_set,
    invariant_vector,
};
use filiform_core::transform::{rho_apply, TransformParams};
use filiform_core::{MultiPoly, QiScalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(vars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, vars), scalar()), 0..5)
        .prop_map(move |terms| MultiPoly::from_terms(vars, terms).unwrap())
}

fn radical() -> impl Strategy<Value = RadicalElem> {
    prop::collection::vec(scalar(), 3).prop_map(|c| RadicalElem::new(3, QiScalar::ratio(2, 7), c).unwrap())
}

fn open_params(n: usize) -> impl Strategy<Value = ParamVector> {
    params(n).prop_filter("in the open set", |p| in_open_set(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalars_form_a_field(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &QiScalar::zero(), a.clone());
        prop_assert_eq!(&a * &QiScalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), QiScalar::one());
        }
    }

    #[test]
    fn conjugation_and_norm(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a * &a.conj()).re().clone(), a.norm_sqr());
        let sq = &a * &a;
        let r = sq.sqrt_exact().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn scalar_text_and_json_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<QiScalar>().unwrap(), a.clone());
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QiScalar>(&j).unwrap(), a);
    }

    #[test]
    fn radical_arithmetic_is_a_ring(a in radical(), b in radical(), c in radical()) {
        prop_assert_eq!(a.ring_mul(&b).ring_mul(&c), a.ring_mul(&b.ring_mul(&c)));
        prop_assert_eq!(a.ring_mul(&b), b.ring_mul(&a));
        prop_assert_eq!(a.ring_mul(&b.ring_add(&c)), a.ring_mul(&b).ring_add(&a.ring_mul(&c)));
        let r = RadicalElem::root(3, QiScalar::ratio(2, 7)).unwrap();
        prop_assert_eq!(r.ring_pow(3).as_scalar(), Some(QiScalar::ratio(2, 7)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(3), q in poly(3), at in prop::collection::vec(scalar(), 3), c in scalar()) {
        let (ep, eq) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
        prop_assert_eq!(p.add(&q).unwrap().eval(&at).unwrap(), &ep + &eq);
        prop_assert_eq!(p.sub(&q).unwrap().eval(&at).unwrap(), &ep - &eq);
        prop_assert_eq!(p.mul(&q).unwrap().eval(&at).unwrap(), &ep * &eq);
        prop_assert_eq!(p.scale(&c).eval(&at).unwrap(), &c * &ep);
        prop_assert_eq!(p.pow(3).eval(&at).unwrap(), ep.pow(3));
    }

    #[test]
    fn params_and_tables_round_trip(p in params(7), tp in transform()) {
        prop_assert_eq!(ParamVector::from_json(&p.to_json()).unwrap(), p.clone());
        let j = serde_json::to_string(&tp).unwrap();
        prop_assert_eq!(serde_json::from_str::<TransformParams>(&j).unwrap(), tp);
        let t = build_second_class(&p);
        prop_assert_eq!(StructureTable::from_json(&t.to_json(true), true).unwrap(), t.clone());
        prop_assert_eq!(StructureTable::from_json(&t.to_json(false), false).unwrap(), t);
    }

    #[test]
    fn dimension_5_cells_are_orbit_invariant(p in params(4), tp in transform()) {
        prop_assert_eq!(cell_membership(&p).unwrap(), cell_membership(&rho_apply(&tp, &p)).unwrap());
    }

    #[test]
    fn coarse_cells_are_orbit_invariant(
        p in prop_oneof![params(6), params(7), params(8), params(9)],
        tp in transform(),
    ) {
        prop_assert_eq!(cell_membership(&p).unwrap(), cell_membership(&rho_apply(&tp, &p)).unwrap());
    }

    #[test]
    fn invariants_are_constant_on_orbits(
        p in prop_oneof![open_params(6), open_params(7), open_params(8), open_params(9), open_params(10)],
        tp in transform(),
    ) {
        let q = rho_apply(&tp, &p);
        prop_assert!(in_open_set(&q).unwrap());
        prop_assert_eq!(invariant_vector(&p).unwrap(), invariant_vector(&q).unwrap());
    }

    #[test]
    fn closed_forms_track_the_invariant_vector(p in prop_oneof![open_params(5), open_params(6), open_params(7)]) {
        let iv = invariant_vector(&p).unwrap();
        for f in closed_forms_for_dim(p.dim()) {
            let want = &f.factor() * iv.get(f.slot());
            if let Ok(v) = closed_form_corrected(&p, f) {
                prop_assert_eq!(&v, &want, "{} corrected", f);
            }
            if !f.is_misprinted() {
                if let Ok(v) = closed_form_invariant(&p, f) {
                    prop_assert_eq!(&v, &want, "{} as printed", f);
                }
            }
        }
    }

    #[test]
    fn dimension_6_cells_are_not_orbit_invariant(b in nonzero()) {
        // β_4 vanishes in U5 but not after a shear.
        let p = ParamVector::from_tuple(vec![b, QiScalar::zero(), QiScalar::zero(), QiScalar::zero()]).unwrap();
        let q = rho_apply(&TransformParams::from_ints(1, 1, 1).unwrap(), &p);
        prop_assert_eq!(cell_membership(&p).unwrap().to_string(), "U5");
        prop_assert_ne!(cell_membership(&q).unwrap().to_string(), "U5");
    }

    #[test]
    fn unit_scaling_multiplies_every_slot(p in open_params(6), d in nonzero()) {
        // With A = 1 and B = 0 every β scales by D and γ by D².
        let q = rho_apply(&TransformParams::new(QiScalar::one(), QiScalar::zero(), d.clone()).unwrap(), &p);
        for t in 3..=6 {
            prop_assert_eq!(q.beta(t), &(&d * p.beta(t)));
        }
        prop_assert_eq!(q.gamma(), &(&d.pow(2) * p.gamma()));
    }
}
