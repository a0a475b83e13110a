//! Localized equivariant K-theory of `T*G(k,N)`: kernels for `E^(r)`, `F^(r)`,
//! `Θ` and the Rickard braid operator, with exact identity checks.

mod checks;
mod crossmodel;
mod local;
pub mod ratfn;

use num_rational::BigRational;

use crate::field::Field;

pub use checks::{
    calibrate, evaluation_points, run_suite, symbolic_torus, CalibrationReport, CheckKind,
    CheckReport, FibreCandidate, Observation, PointReport, RickardCandidate, SuiteConfig,
    SuiteReport,
};
pub use local::{
    correspondence_weights, fixed_point_text, subsets, tangent_weights, tangent_weights_with,
    Character, Conventions, FixedPoint, KernelMatrix, Model, ShiftBase, Torus,
};
pub use ratfn::RatFn;

/// Field elements that can be rendered and built from rationals.
pub trait Scalar: Field {
    fn from_rational(r: &BigRational) -> Self;
    fn render(&self) -> String;
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for RatFn {
    fn from_rational(r: &BigRational) -> Self {
        RatFn::from_poly(ratfn::LPoly::constant(r.clone()))
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}
