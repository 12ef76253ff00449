//! Homotopy constructions on simplicial sets: the wrapping functor and its
//! counit, skeletal pushout squares, homotopy pushouts, mapping cylinders
//! and weak-equivalence certificates.

pub mod certificate;
pub mod pushout;
pub mod wrap;

pub use certificate::{weq_certificate, GroupoidMatch, WeqCertificate};
pub use pushout::{cylinder, homotopy_pushout, Cylinder, HomotopyPushout, PushoutDiagram, ReducedCylinder};
pub use wrap::{skeleton_pushout_check, wrap, wrap_triangle_check, SkeletonReport, Wrap};
