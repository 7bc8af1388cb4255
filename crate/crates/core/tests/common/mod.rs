#![allow(dead_code)]

use filiform_core::algebra::ParamVector;
use filiform_core::transform::TransformParams;
use filiform_core::QiScalar;
use num_traits::Zero;
use proptest::prelude::*;

pub fn s(v: &str) -> QiScalar {
    v.parse().unwrap()
}

pub fn pv(values: &[&str]) -> ParamVector {
    ParamVector::from_tuple(values.iter().map(|v| s(v)).collect()).unwrap()
}

/// Small Gaussian rationals, about a quarter of them non-real.
pub fn scalar() -> impl Strategy<Value = QiScalar> {
    (-12i64..=12, 1i64..=6, prop::bool::weighted(0.25), -4i64..=4, 1i64..=4)
        .prop_map(|(a, b, cx, c, d)| if cx { QiScalar::complex((a, b), (c, d)) } else { QiScalar::ratio(a, b) })
}

pub fn nonzero() -> impl Strategy<Value = QiScalar> {
    scalar().prop_filter("nonzero", |v| !v.is_zero())
}

pub fn params(n: usize) -> impl Strategy<Value = ParamVector> {
    prop::collection::vec(scalar(), n - 1).prop_map(|v| ParamVector::from_tuple(v).unwrap())
}

pub fn transform() -> impl Strategy<Value = TransformParams> {
    (nonzero(), scalar(), nonzero()).prop_map(|(a, b, d)| TransformParams::new(a, b, d).unwrap())
}
