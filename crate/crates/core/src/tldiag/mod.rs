//! Temperley-Lieb diagrams as morphisms of the rectangular category.
//!
//! A diagram `i -> j` has bottom points `b0..b(i-1)` and top points
//! `t0..t(j-1)`, numbered left to right. Composition `f ∘ g` stacks `f` on
//! top of `g`; tensor places diagrams side by side.

mod comb;
mod element;
mod matching;

pub use comb::{Comb, Diagram};
pub(crate) use comb::Scaled;
pub use element::Element;
pub(crate) use element::delta_pow;
pub use matching::{enumerate_basis, Matching, Point};
