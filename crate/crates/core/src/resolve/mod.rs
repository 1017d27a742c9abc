//! Drivers built on the lower layers: principalization of strict
//! transforms by blowing up `I + J^n`, and embedded resolution of reduced
//! plane curves with an independent verifier.

mod principal;
mod trace;
mod verify;

pub use principal::{principalize_strict_transform, separate_and_principalize, ChartCertificate, PrincipalizationResult};
pub use trace::{resolve_batch, resolve_plane_curve, LeafReport, MarkedIdeal, ResolutionTrace, TraceStep, DEFAULT_MAX_STEPS};
pub use verify::{verify_resolution, VerificationReport};
