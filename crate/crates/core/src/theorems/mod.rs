//! Exhaustive checkers for the standard results on picture fuzzy subgroups,
//! and randomized campaigns over them.
//!
//! Each verifier checks one instance completely: every element, every pair
//! and every representative threshold. It returns a [`VerificationReport`]
//! whose counterexample, when present, carries the offending sets and
//! elements so it can be replayed through the base predicates.
//!
//! Conditional results distinguish *substantive* instances, where the
//! hypothesis held and the conclusion was checked, from *vacuous* ones,
//! where it failed. For the iff results the report also counts how many
//! instances had each truth value on the left-hand side.

mod campaign;
mod report;
mod verify;

pub use campaign::{default_groups, run_campaign, CampaignConfig, CampaignError};
pub use report::{Counterexample, Polarity, TheoremId, UnknownTheorem, VerificationReport};
pub use verify::{
    verify_conjugate_products, verify_coset_translation, verify_cut_normal_iff,
    verify_cut_subgroup_iff, verify_factor_recovery, verify_identity_dominance,
    verify_image_cut_laws, verify_pfnsg_forms, verify_pfsg_forms, verify_product_cut,
    verify_product_pfnsg, verify_product_pfsg, CheckMode,
};
