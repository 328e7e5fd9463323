//! Exact arithmetic: rationals, polynomials, 3x3 matrices and ideal membership.

pub mod groebner;
pub mod linear;
pub mod mat3;
pub mod multipoly;
pub mod quotient;
pub mod ring;
pub mod unipoly;

pub use groebner::{
    groebner_with_trace, ideal_contains_one, multipoly_reduce, replay_combinations, Combination,
    GroebnerRun, IdealBasis, IdealDecision, StepBudget, Witness, DEFAULT_STEP_BUDGET,
};
pub use mat3::Mat3;
pub use multipoly::{Monomial, MultiPoly};
pub use quotient::QuotientElem;
pub use ring::{fmt_rational, rat, ratio, Field, Rational, Ring};
pub use unipoly::{Degree, UniPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("reduction budget of {0} steps exhausted")]
    BudgetExhausted(usize),
    #[error("incompatible parameter lists {0:?} and {1:?}")]
    IncompatibleVariables(Vec<String>, Vec<String>),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Derive owned-operand arithmetic from the by-reference impls.
macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl std::ops::Add<&$t> for $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                &self + o
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl std::ops::Sub<&$t> for $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                &self - o
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl std::ops::Mul<&$t> for $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                &self * o
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use forward_ops;
