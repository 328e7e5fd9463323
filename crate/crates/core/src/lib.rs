//! Exact computations on (k,d)-nets in the projective plane: Latin squares,
//! projective realizations, tropicalization and certified nonexistence proofs.

pub mod algebra;
pub mod projective;
pub mod latin;
pub mod nets;
pub mod tropical;
pub mod prover;
pub mod codec;
