pub mod cli;
pub mod conjecture;
pub mod error;
pub mod factorization;
pub mod invariants;
pub mod kernel;
pub mod monoid;
pub mod report;
pub mod survey;
mod union_find;
pub mod verify;

pub use error::{Error, Result};
pub use factorization::{
    catenary_of_element, enumerate_factorizations, factorization_distance, length_profile,
    verify_chain, ChainCertificate, Factorization, LengthProfile,
};
pub use monoid::{classify, Acm, AcmDescriptor, Classification, LocalParams};
pub use survey::{Survey, SurveyRow, SurveySummary};
