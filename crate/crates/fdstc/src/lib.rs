//! Fast-decodable space-time block codes from quaternion division algebras.
//!
//! This crate builds distributed space-time block codes for amplify-and-forward
//! relay channels and for the multiple-access MIMO channel, analyzes their
//! maximum-likelihood decoding complexity through the Hurwitz-Radon quadratic
//! form, decodes them with exhaustive, sphere and partition-aware grouped
//! decoders, and measures block-error rates over simulated channels.
//!
//! The main layers, bottom up:
//!
//! * [`numfield`] - exact arithmetic in number fields, multiquadratic towers
//!   and finite residue fields;
//! * [`cda`] - quaternion algebras, their matrix representations and
//!   division certificates;
//! * [`stcode`] - weight-matrix constructions (block-diagonal relay lifting,
//!   iterated doubling) and codebook handling;
//! * [`fdan`] - fast-decodability analysis: Hurwitz-Radon quadratic form,
//!   group partitions, complexity exponents, R-matrix structure checks;
//! * [`decode`] - exhaustive / sphere / grouped lattice decoders and lattice
//!   figures of merit;
//! * [`chansim`] - Monte Carlo simulation of the half-duplex N-relay channel
//!   and the K-user MIMO multiple-access channel;
//! * [`config`] - batch-run configuration, presets and report manifests used
//!   by the `fdstc` binary.
//!
//! Each major capability has a runnable example under `examples/`; start with
//! `cargo run --release --example construct_presets`.

pub mod chansim;
pub mod cda;
pub mod config;
pub mod decode;
pub mod fdan;
pub mod numfield;
mod poly;
pub mod stcode;

pub use cda::{AlgebraElement, AlgebraSpec, DivisionCertificate, RepMatrix};
pub use decode::DecodeProblem;
pub use fdan::HrqfReport;
pub use numfield::{FieldElement, NumberField, Tower, TowerElem, TowerMap};
pub use stcode::{Codebook, Provenance, STCode};
