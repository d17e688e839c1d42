//! Exact construction and certification of equiangular tight frames from
//! group divisible designs, Steiner systems and Latin squares.
//!
//! All arithmetic is over cyclotomic integers; certificates are exact.

pub mod constructions;
pub mod cyclo;
pub mod designs;
pub mod frames;
pub mod hadamard;
pub mod io;

pub use constructions::{
    check_chen_classification, existence_status, gdd_etf, mols_tdtf, plan_gdd_etf, regular_simplex, steiner_etf,
    CertifiedEtf, ConstructionError, ExistenceStatus, GddEtfPlan, MolsVariant, Status,
};
pub use cyclo::{CycMatrix, CycScalar, CycloError};
pub use designs::{DesignError, EmbeddingOperatorSet, FiniteField, GroupDivisibleDesign, LatinSquareSet};
pub use frames::{classify_type, naimark_gram, verify_etf, verify_tdtf, EtfCertificate, EtfType, Frame, FrameError};
pub use hadamard::{verify_hadamard, HadamardError, HadamardMatrix, SimplexFrame};
