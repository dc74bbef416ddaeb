//! Library half of the `xy-entropy` command-line tool.
//!
//! The binary is a thin argument parser over these modules so that the
//! verification suite and the integration tests drive exactly the code the
//! user runs:
//!
//! - [`scan`] — deterministic phase-diagram scans with a bounded worker pool;
//! - [`output`] — CSV/JSON emission with fixed 17-significant-digit formatting;
//! - [`figure1`] — the entropy-vs-field curve at fixed anisotropy plus a
//!   gnuplot script;
//! - [`acceptance`] — the pinned pass/fail verification criteria behind
//!   `xy-entropy verify`.

pub mod acceptance;
pub mod figure1;
pub mod output;
pub mod scan;
