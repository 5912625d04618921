//! Degreewise computation of graded quiver algebras `kQ/I`, minimal graded
//! projective resolutions of their semisimple quotient, and diagnostics for
//! generalized AS-regularity and the twisted Calabi-Yau property up to a
//! truncation degree.

pub mod algebra;
pub mod constructions;
pub mod diagnostics;
pub mod linalg;
pub mod modules;
pub mod presentation;
pub mod report;
pub mod resolution;
