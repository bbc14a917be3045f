//! Oriented Temperley-Lieb diagrams as a model of the pop-switch planar
//! algebra.
//!
//! Strands carry directions, gluing across mismatched directions gives
//! zero, and a closed oriented loop is the scalar `q` or `q⁻¹` according to
//! its chirality, so the two orientations of a loop sum to `q + q⁻¹`.
//! Unoriented elements embed by summing over orientations ([`lift`]).
//! Statements checked here hold in this model; they are evidence for, not
//! proofs of, the corresponding statements in the planar algebra itself.

mod element;
mod eval;
mod lemmas;
mod oriented;

pub use element::{alpha, beta, iota, lift, scalar, OrElement};
pub(crate) use eval::entry_exponent;
pub use eval::{evaluate, Evaluation};
pub use lemmas::{verify_arc_move, verify_ia, verify_oio, verify_teleport, ArcMoveReport, ArcMoveStatus};
pub use oriented::{enumerate_oriented, Chirality, OrMatching, Sign, Signature};
