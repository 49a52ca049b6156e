//! Levi-flatness, tangency and invariance certificates, singular-locus
//! systems, plane sections and the Lion example.

pub mod levi;
pub mod lion;
pub mod locus;
pub mod plane;
pub mod sampling;
pub mod tangency;

pub use levi::{
    flatness_certificate, levi_matrix, levi_scalar, FlatnessCertificate, FlatnessEvidence, FlatnessVerdict, LeviMatrix,
};
pub use lion::{lion_singular_lines, LionLine, LionReport};
pub use locus::{contains_variety, singular_locus_system, SingularLocusSystem};
pub use plane::{restrict_foliation, restrict_form, PlaneMap, RestrictedFoliation, RestrictedForm};
pub use sampling::{SampleOptions, SampleTable, SurfacePoint, Witness};
pub use tangency::{
    curve_invariance, hypersurface_tangency, web2_tangency, AffineForm, OneForm, QuadraticWeb, TangencyEvidence,
    TangencyReport, TangencyVerdict,
};
