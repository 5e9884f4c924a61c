//! Cross-section classification for flows on flat tori.
//!
//! A flow on the 2- or 3-torus is discretized into a transition graph whose
//! edges carry integer winding vectors. Everything downstream is exact
//! combinatorics on that graph: recurrence chains, the alpha-weighted
//! analysis for a cohomology class, and the chain graph whose feasible
//! labelings index isotopy classes of partial cross-sections.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod alpha;
pub mod chains;
pub mod digraph;
pub mod flow;
pub mod fried;
pub mod grid;
pub mod homology;
pub mod labeling;
pub mod mcm;
pub mod polyline;
pub mod rational;
pub mod recurrence;
pub mod scc;
pub mod section;
pub mod shortest;
pub mod transition;

pub use alpha::{alpha_weight, AlphaAnalysis, Existence};
pub use chains::{AlphaChainGraph, Shift};
pub use digraph::{Digraph, EdgeRef};
pub use flow::{FlowError, FlowSpec};
pub use grid::Grid;
pub use homology::{CohomologyClass, WindingVector};
pub use labeling::{Cardinality, Labeling};
pub use rational::Rational;
pub use recurrence::ChainDecomposition;
pub use section::{CrossSection, SectionPotential};
pub use transition::{BuildParams, TransitionGraph};
