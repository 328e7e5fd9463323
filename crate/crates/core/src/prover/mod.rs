//! Constraint systems for hypothetical nets and certified decisions about them.

mod certificate;
mod constraints;
mod prove;
mod skeleton;

pub use certificate::{
    saturate, verify_certificate, Acceptance, Certificate, CertificateKind, Conclusion, Landmark, Rejection,
    SolvedParameter, CERTIFICATE_SCHEMA_VERSION,
};

pub use constraints::{generate_constraints, ConstraintSystem, DerivedItem, EquationTag};
pub use prove::{
    landmarks_44, prove_nonexistence, prove_nonexistence_44, prove_uniqueness, prove_uniqueness_43,
};
pub use skeleton::{
    build_43_skeleton, build_44_skeleton, build_skeleton, net_43, net_44, Hypothesis, NetSkeleton, SkeletonEntry,
    STANDARD_FRAME,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::latin::LatinError;
use crate::nets::NetError;
use crate::projective::ProjectiveError;
use crate::tropical::TropicalError;

#[derive(Debug, Error)]
pub enum ProverError {
    #[error("inconsistent at {item}: {reason}")]
    Inconsistent { item: String, reason: String },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Latin(#[from] LatinError),
}
