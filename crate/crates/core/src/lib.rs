//! Exact construction and certification of Hessian curves.
//!
//! The Hessian curve of a smooth `f: R^2 -> R` is the zero set of
//! `f_xx f_yy - f_xy^2`; it is the projection of the parabolic curve of the
//! graph `z = f(x, y)`. This crate builds three explicit families of
//! functions, computes their Hessians with exact rational arithmetic, and
//! checks topological claims about them (number and nesting of components,
//! special parabolic points, region types) through a mix of exact algebra
//! and exact-sign curve tracing.

pub mod calculus;
pub mod certify;
pub mod cli;
pub mod families;
pub mod par;
pub mod polycore;
pub mod realroots;
pub mod topology;
