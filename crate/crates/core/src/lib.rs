//! Reversible effects as inverse arrows over partial injections.

pub mod arrow;
pub mod cli;
pub mod effects;
pub mod pinj;
pub mod profcheck;
pub mod values;
