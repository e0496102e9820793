//! Exact computational pipeline from Salem numbers and totally real number
//! fields to pseudo-Anosov stretch factors realized by Thurston's
//! construction on two tight filling multicurves.

pub mod error;
pub mod exact;
pub mod linalg;
pub mod realize;
pub mod skewpower;
pub mod surface;
pub mod thurston;
pub mod unitfinder;

pub use error::{Error, Result};
pub use exact::{
    classify_salem, isolate_roots, trace_polynomial, AlgebraicReal, FieldElement, FieldVector, IntPolynomial,
    NumberField, RatPolynomial, SalemClassification, SalemVerdict,
};
pub use linalg::RatMatrix;
pub use skewpower::{salem_certificate, CertificateConfig, PowerCertificate, SkewPowerCertificate};
pub use surface::{analyze, build_surface, CombinatorialSurface, RoutingPlan, SurfaceReport};
pub use thurston::{classify_word, pf_data, pf_of_product, veech_check, PseudoAnosovReport, TwistWeights, Word};
pub use unitfinder::{field_pipeline, FieldPipelineReport, TotallyRealField, UnitSystem};
