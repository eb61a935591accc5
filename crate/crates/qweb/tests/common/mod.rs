#![allow(dead_code)]

pub mod conway;
pub mod quotient;

use qweb::scalars::{GaussianRational, ScalarQ};

pub fn q0() -> GaussianRational {
    GaussianRational::from_ratio(7, 5)
}

pub fn s(n: i64) -> ScalarQ {
    ScalarQ::from_int(n)
}
