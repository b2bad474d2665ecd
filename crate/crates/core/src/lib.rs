//! Exact symbolic verification of polarization identities for
//! `n`-Jordan homomorphisms.
//!
//! * [`freealg`]: sparse rational polynomials in free (non)commutative algebras.
//! * [`blift`]: the codomain algebra on formal images `h(w)`.
//! * [`jordan`]: the subset-lattice decomposition of the Jordan defect and its
//!   verifiers.
//! * [`concrete`]: finite-dimensional algebras given by structure constants,
//!   used as a numeric cross-check.
//! * [`report`]: text and JSON reports shared by the command line front end.

pub mod blift;
pub mod concrete;
pub mod error;
pub mod freealg;
pub mod jordan;
pub mod report;

pub use blift::{lift, BPolynomial, BWord, HSymbol, Modes};
pub use error::{Error, Result};
pub use freealg::{
    Coefficient, Generator, Letter, Mode, Poly, Polynomial, VarSet, Word, DEFAULT_GENERATOR_CAP,
    MAX_GENERATORS,
};
pub use jordan::{
    Certificate, CertificateCheck, CollapseCheck, IdentityCheck, JordanConfig, Lattice,
    Multiplicity, RefutationReport, SubsetId,
};
pub use report::{Format, Outcome, Payload, Report};
