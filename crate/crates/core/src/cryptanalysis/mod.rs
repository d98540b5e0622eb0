//! Attack-cost models, toy-scale information-set decoding and parameter sizing.

pub mod isd;
pub mod params;
pub mod workfactor;

pub use isd::{lee_brickell_attack, stern_attack, AttackOutcome, SternParams};
pub use params::{info_rate, mceliece_keysize_bits, min_blocks_classical, min_blocks_quantum, param_report, ParamRow};
pub use workfactor::{lee_brickell_workfactor, WorkFactorReport};
