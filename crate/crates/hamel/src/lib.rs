//! Exact symbolic engine for finitely presented Hamel spaces.
//!
//! A Hamel space is a rational vector space carrying two linear orders and a
//! convex valuation into its own positive cone. This crate represents such
//! structures by finite generator towers: each generator is adjoined with a
//! description of its position relative to everything built before it, and
//! all comparisons, valuations, and witness constructions are decided exactly
//! from those descriptions. No floating point, no approximation.
//!
//! The main entry points:
//!
//! * [`tower::Model`] builds towers and answers order and valuation queries.
//! * [`oracle`] has a standalone reference structure used to cross-check the
//!   tower engine on a concrete space of eventually-zero sequences.
//! * [`logic`] parses a two-sorted first-order language, evaluates
//!   quantifier-free formulas, and eliminates quantifiers.
//! * [`lab`] runs randomized property suites with seeded, reproducible
//!   reports.

pub mod lab;
pub mod linear;
pub mod logic;
pub mod oracle;
pub mod scalar;
pub mod tower;
