//! Exact verification of B_h-sets over the rationals and Gaussian rationals.
//!
//! A finite set `A = {a_1, …, a_n}` is a B_h-set when every h-fold sum
//! `a'_1 + ⋯ + a'_h` (summands drawn from `A` with repetition) has a unique
//! representation up to order. The crate decides this exactly, measures how
//! far apart the sums are, certifies an open ball of B_h-vectors around any
//! B_h-vector, and moves arbitrary vectors onto nearby B_h-vectors.

pub mod analysis;
pub mod bhg;
pub mod cli;
pub mod closest_pair;
pub mod compositions;
pub mod error;
pub mod oracle;
pub mod repair;
pub mod rng;
pub mod sample;
pub mod scalar;
pub mod sumset;

pub use analysis::{certified_radius, certify, is_bh, margin, uv_partition, BhCertificate, BhVerdict, UVPartition};
pub use bhg::{bh_sweep, g_profile, is_bhg, probe_openness, GProfile, ProbeReport};
pub use compositions::{count, diff_inf_norm, enumerate, Composition};
pub use error::{Error, Result};
pub use repair::{canonical_witness, contract, repair, small_bh_vector, RepairReport};
pub use scalar::{mag_compare, parse_scalar, Backend, Magnitude, Rational, Scalar};
pub use sumset::{build_profile, dot, g_max, RepresentationProfile, Tolerance, VectorKn};
