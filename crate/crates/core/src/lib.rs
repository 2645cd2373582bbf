//! Group and Drazin inverses of dense complex matrices, together with
//! checkable additive and block formulas for the group inverse.

pub mod additive;
pub mod block;
mod elem;
pub mod error;
pub mod ginv;
pub mod matrix;
pub mod testkit;
pub mod theorem;

pub use additive::{
    auto_sum, cor24_sum, cor26_sum, cor27_sum, cor33_sum, cor36_sum, lemma21_ginv, lemma22_corner,
    lemma31_product, pierce_blocks, sum_by_id, thm23_sum, thm25_sum, thm32_sum, thm35_sum,
    AutoSumReport, SumGinvReport,
};
pub use block::{
    assemble, auto_block, block_by_id, cor42_block, cor43_block, cor44_block, cor46_block,
    cor48_block, thm41_block, thm45_block, thm47_block, AutoBlockReport, BlockGinvReport,
    BlockParts, Splitting,
};
pub use error::{GinvError, Result};
pub use ginv::{
    agree, cline_drazin, drazin_inverse, drazin_inverse_scaled, group_inverse,
    group_inverse_scaled, oracle_group_inverse, oracle_group_inverse_scaled, spectral_idempotent,
    verify_axioms, verify_axioms_scaled, AxiomCheck, AxiomResiduals, DrazinResult, GinvDiagnostic,
    GinvResult,
};
pub use matrix::{
    is_negligible, mat_ops, mat_pinv, mat_rank, pinv_relative_to, rank_relative_to,
    singular_values, CMatrix, MatOp, Tolerance, C64,
};
pub use testkit::{
    cor44_variant, gen_block_case, gen_commuting_pair, gen_thm23_pair, generate, violable, GenSpec,
    Instance, Outcome,
};
pub use theorem::{Check, Named, TheoremId};
