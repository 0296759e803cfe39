//! Randomized generation and the invariant campaign.

pub mod campaign;
pub mod gen;

pub use campaign::{run_campaign, CampaignParams, CampaignResult, Check, Outcome};
pub use gen::*;
