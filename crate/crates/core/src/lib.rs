//! Combinatorics of anti-spherical Hecke categories for Hermitian symmetric
//! pairs: tile partitions, light-leaves paths, graded decomposition
//! matrices, contraction, folding and Koszul resolution multiplicities.

pub mod contraction;
pub mod coxeter;
pub mod error;
pub mod export;
pub mod folding;
pub mod hecke_oracle;
pub mod invariance;
pub mod klpoly;
pub mod koszul;
pub mod laurent;
pub mod paths;
pub mod tetris;
pub mod tiling;

pub use contraction::{ContractedPair, ContractionTile, ContractionTiling, UnitKind};
pub use coxeter::{CoxeterSystem, Family, HermitianPair, Node, NodeLabel};
pub use error::{Error, Result};
pub use folding::FoldMap;
pub use invariance::{ClosedSubset, ScanEntry, ScanReport, SubPoset};
pub use klpoly::{decomposition_matrix, DecompositionMatrix, RadicalLayers};
pub use koszul::{KoszulSolver, ResolutionTable};
pub use laurent::LaurentPoly;
pub use paths::{Path, PathStep, StepKind};
pub use tetris::{Decoration, DecorationLabel, HookEntry, HookMultiset, LabelKind, OmegaDecoration, Trail};
pub use tiling::{BruhatPoset, Parity, Region, Tile, TilePartition, TileSet};
