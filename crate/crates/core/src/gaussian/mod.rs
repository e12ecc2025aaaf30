//! Exact Gaussian-state representation and the unitary Gaussian operations
//! of the toolkit, plus quadratic-observable moments.

mod epr;
mod moments;
mod state;
mod symplectic;

pub use epr::EprVariables;
pub(crate) use epr::{epr_row, EprObservable};
pub use moments::{quadratic_form_moments, quadratic_moments, TwoModeMoments};
pub use state::GaussianState;
pub use symplectic::{symplectic_form, SymplecticOp};
