//! Stochastic measurement models returning sampled outcomes and the exact
//! conditional post-measurement Gaussian state.
//!
//! All measurements funnel through one noisy-linear-observation routine
//! ([`Observation`]); the individual models are thin wrappers that pick the
//! observation rows, the noise, and the removed-mode bookkeeping.

mod conditioning;
mod ops;
mod record;

pub use conditioning::Observation;
pub use ops::{
    condition_epr, condition_heterodyne, condition_homodyne, epr_measure, heterodyne,
    homodyne_bae, photocount_coherent, squeezed_heterodyne, vacuum_condition, EprOutcome,
    HeterodyneOutcome, HomodyneOutcome,
};
pub use record::{read_jsonl, write_jsonl, MeasurementRecord, OutcomeEntry};
