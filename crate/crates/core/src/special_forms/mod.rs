//! Structured matrices with closed-form or decomposition-based tests:
//! cyclic feedback, block-triangular splitting, second additive compounds
//! and second-order companion systems.

mod companion;
mod cyclic;
mod structure;

pub use companion::{build_companion, criterion1, g1_equivalence, g2_sufficient, theorem1_dstable, CompanionPair};
pub use cyclic::{detect_cyclic, secant_bound, secant_criterion, SECANT_RTOL, single_circuit_criterion, CyclicForm};
pub use structure::{arcak_decompose, arcak_diagonal_stability, li_wang, str1_sign_structure, DiagonalBlock};
