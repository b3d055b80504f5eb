//! Biquandle arrow weight invariants of virtual knots given by signed
//! Gauss codes: colorings, arrow weight sums, weighted coloring quivers and
//! their polynomial invariants, plus a solver for valid weights over Z_m.

pub mod arrowweight;
pub mod biquandle;
pub mod calibrate;
pub mod fixtures;
pub mod gausscode;
pub mod homset;
pub mod invariants;
pub mod knotdata;
pub mod quiver;
pub mod random;
