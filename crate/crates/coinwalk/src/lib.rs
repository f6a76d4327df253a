//! Discrete-time quantum walks on the line with position-dependent coins.
//!
//! A walker with a two-level coin (polarization, in the optical picture)
//! hops on the integers: each step applies a coin unitary that may differ
//! from site to site, then shifts H-amplitude up and V-amplitude down.
//! On top of the exact state-vector simulation this crate builds
//!
//! * a compiler for the three-step walk that performs unambiguous
//!   discrimination of two nonorthogonal qubit states ([`usd`]),
//! * extraction of the generalized-measurement (POVM) elements the walk
//!   realizes, with closed forms to check against ([`povm`]),
//! * an emulation of the photon-counting experiment — seeded multinomial
//!   shot noise, 1-norm distances, and comparison reports against an
//!   embedded reference dataset ([`experiment`], [`reference`]),
//! * the `.walk` protocol file format ([`protocol_file`]).
//!
//! States are immutable and every operation returns a new value, so all
//! of this is safe to share across threads.
//!
//! ```
//! use coinwalk::{Sign, UsdParams};
//!
//! let params = UsdParams::new(0.707).unwrap();
//! let outcomes = params
//!     .compile()
//!     .discriminate(&params.prepare_coin(Sign::Plus))
//!     .unwrap();
//! // Conclusive with probability 1 − α, never the wrong answer.
//! assert!((outcomes[0].probability - (1.0 - 0.707)).abs() < 1e-12);
//! assert!(outcomes[1].probability < 1e-12);
//! ```

pub mod angles;
pub mod coin;
pub mod error;
pub mod experiment;
pub mod math;
pub mod povm;
pub mod protocol_file;
pub mod reference;
pub mod state;
pub mod usd;
mod walk;

pub use coin::{CoinAction, CoinOp, Protocol, StepSpec};
pub use error::{Error, Result};
pub use math::Mat2;
pub use state::{CoinState, WalkState};
pub use usd::{Outcome, OutcomeKind, Sign, UsdParams, UsdProtocol};
