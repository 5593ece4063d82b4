//! Quantum synchronizable codes from binary quadratic residue codes.
//!
//! The crate builds the pieces bottom-up:
//!
//! - [`poly`]: bit-packed GF(2)[x] arithmetic, polynomial orders.
//! - [`arith`]: quadratic residues and cyclotomic cosets of 2.
//! - [`field`]: GF(2^t), roots of unity, minimal polynomials.
//! - [`cyclic`]: cyclic codes, duals, parity checks, minimum distance.
//! - [`qr`]: the four quadratic residue codes of a prime length.
//! - [`chain`]: dual-containing supercode chains and code parameters.
//! - [`syncsim`]: framed transmission, misalignment recovery, Monte Carlo trials.
//!
//! Quantum states are never materialized; everything runs on the classical
//! polynomial labels of basis states.

pub mod arith;
pub mod chain;
pub mod cyclic;
pub mod error;
pub mod field;
pub mod poly;
pub mod qr;
pub mod syncsim;

pub use chain::{mersenne_chain, parameter_table, residue_chain, FactorChain, QsyncParams};
pub use cyclic::{CyclicCode, ParityCheck};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use poly::Poly;
pub use qr::{QrFamily, QrLabel};
pub use syncsim::{
    encode_frame, recover, run_trials, transmit, Channel, Frame, RecoveryResult, Simulator,
    SyncDecoder, TrialConfig, TrialMode, TrialSummary,
};
