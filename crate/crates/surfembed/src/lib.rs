//! Algebraic and combinatorial embedding obstructions for generically
//! immersed surfaces in 4-manifolds, plus Seifert-matrix knot invariants.

pub mod gamma_algebra;
pub mod group_core;
pub mod lattice;
pub mod snf;
pub mod whitney_calc;
pub mod band_theta;
pub mod decision_engine;
pub mod knot_tools;
