//! Explicit formulas turning group cocycles into Čech data on covers by
//! translates, with the identities between them checked pointwise.

mod cochain;
mod edge;
mod pair;
mod square;

pub use cochain::{kappa, rho, tau, tau_of_cochain, CechCochain, TranslateCover};
pub use edge::{edge_vs_tau, EdgeVsTau};
pub use pair::{
    mu_tau_pair, pair_coboundary_witness, MuTauPair, NerveCover, PairCheck, TruncatedCech,
};
pub use square::{tau_delta_square, TauDeltaSquare};
