//! Class maps to `K_0(mod A)`, triangle relations, Gorsky induction witnesses, and a
//! certified presentation of the Grothendieck group of the periodic derived category.

mod class;
mod gorsky;
mod presentation;

pub use class::{check_triangle_additivity, class_of, K0Class, Parity};
pub use gorsky::{
    gorsky_step, gorsky_witness, is_gorsky_leaf, verify_witness, GorskyStep, GorskyWitness, ShortExactSequence,
    WitnessError,
};
pub use presentation::{
    empirical_k0, k0_report, Certificate, CertificateFailure, CertificateStatus, K0Report, Presentation, Relation,
    RelationKind, SamplerConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrothendieckError {
    #[error("Gorsky witnesses need an odd period, got {0}")]
    EvenPeriod(usize),
    #[error("certificate failed: {}", serde_json::to_string(&.0.certificate).unwrap_or_default())]
    CertificateFailed(Box<K0Report>),
    #[error("relation coefficients overflowed during elimination")]
    CoefficientOverflow,
}
