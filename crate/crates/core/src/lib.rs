//! Exact symbolic construction and verification of axial algebras of type J(α, β).

pub mod algebra;
pub mod axial2;
pub mod axial3;
pub mod par;
pub mod rewrite;
pub mod scalar;
