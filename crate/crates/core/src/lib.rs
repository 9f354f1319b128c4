//! Spectral conditions for k-factors.
//!
//! * [`graph`]: the [`Graph`] value type, the extremal family `G_{n,k}` and
//!   graph6 I/O.
//! * [`spectral`]: certified spectral-radius enclosures and closed-form bounds.
//! * [`factor`]: k-factor existence via deficiency certificates and via the
//!   Tutte gadget with blossom matching.
//! * [`verify`]: structural recognition of `G_{n,k}` and verification
//!   campaigns producing [`verify::VerificationReport`]s.

pub mod error;
pub mod factor;
pub mod graph;
pub mod spectral;
pub mod verify;

pub use error::{FactorError, Graph6Error, GraphError, SpectralError, VerifyError};
pub use factor::{
    deficiency, has_k_factor, in_class_gkn, in_class_gnk_big, max_matching, search_certificate,
    tutte_gadget, ClassWitness, DeficiencyWitness, FactorOutcome,
};
pub use graph::{build_base_family_member, build_gnk, graph6, GnkParams, Graph};
pub use spectral::{compare_rho, hsf_bound, power_enclosure, rho, RhoOrdering, SpectralEstimate};
