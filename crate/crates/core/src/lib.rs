//! Polyhedral types of generic polynomial maps of the plane.
//!
//! Given a pair of lattice polygons `A = (A1, A2)` (the Newton polygons of the
//! two components of a map `C² → C²`), this crate computes the Newton polygon
//! of the critical curve, of the discriminant and of the non-properness set,
//! and assembles the 12-component polyhedral type `Ψ(A)`. It also enumerates
//! the lattice polygons of bounded degree and runs the census of `Ψ` over all
//! conical pairs.

pub mod geom;
pub mod newton;
pub mod enumerate;
pub mod ptype;
pub mod census;
