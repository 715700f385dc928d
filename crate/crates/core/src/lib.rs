//! Exact linear algebra over prime fields and the rationals, permutation
//! detection in vectors and matrices, and a key-recovery attack on McEliece
//! cryptosystems built on Reed-Solomon codes.
//!
//! Everything here computes exactly: prime-field scalars are canonical
//! residues, rational scalars are reduced big fractions, and no operation
//! rounds. The crate is organized around the pipeline
//!
//! * [`field`] / [`poly`] — scalars, univariate polynomials, Vieta
//!   coefficient vectors;
//! * [`perm`] — permutations, cycle notation, the group action on vectors
//!   and permutation matrices;
//! * [`detect`] — deciding whether one vector is a permutation of another
//!   (three interchangeable strategies) and the projective variant;
//! * [`matrix`] — dense exact matrices, elimination, standard form,
//!   parity checks, decoding;
//! * [`equiv`] — solving `X A = B Y` for invertible `X` and permutation `Y`;
//! * [`codes`] — linear codes, Reed-Solomon generators, minimum-weight
//!   codeword enumeration;
//! * [`mceliece`] — textbook McEliece keygen/encrypt/decrypt over a
//!   Reed-Solomon code;
//! * [`attack`] — full key recovery from the public key, including
//!   recovery of the primitive element when it is unknown.

pub mod attack;
pub mod codes;
pub mod detect;
pub mod equiv;
pub mod error;
pub mod field;
pub mod matrix;
pub mod mceliece;
pub mod perm;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use perm::{PermMatrix, Permutation};
pub use poly::Poly;
