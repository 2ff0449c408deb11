//! Graded decomposition matrices and radical layers.
//!
//! `D[lam][mu]` is the degree generating function of `Path(lam, t_mu)`, so it
//! is nonzero only for `lam <= mu`. For the two non-simply-laced families
//! the paths are the parity paths obtained by folding (see [`crate::folding`]).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::HermitianPair;
use crate::error::Result;
use crate::folding::FoldMap;
use crate::laurent::LaurentPoly;
use crate::paths::{canonical_word, path_expansion};
use crate::tiling::{BruhatPoset, Region, TileSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionMatrix {
    pub pair: HermitianPair,
    /// Partitions in poset-id order.
    pub order: Vec<TileSet>,
    /// `entries[lam][mu]`.
    pub entries: Vec<Vec<LaurentPoly>>,
}

/// For a fixed `lam`: degree `k` maps to `(mu, coefficient of q^k in D[lam][mu])`.
pub type RadicalLayers = BTreeMap<i32, Vec<(usize, i64)>>;

impl DecompositionMatrix {
    pub fn len(&self) -> usize {
        self.order.len()
    }
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
    pub fn get(&self, lam: usize, mu: usize) -> &LaurentPoly {
        &self.entries[lam][mu]
    }

    /// Diagonal ones, support in `lam <= mu`, off-diagonal entries in `q Z_{>=0}[q]`.
    pub fn is_positively_graded(&self) -> bool {
        self.first_grading_violation().is_none()
    }

    pub fn first_grading_violation(&self) -> Option<(usize, usize)> {
        for lam in 0..self.len() {
            for mu in 0..self.len() {
                let e = &self.entries[lam][mu];
                let ok = if lam == mu {
                    e.is_one()
                } else {
                    e.is_zero() || (self.order[lam].is_subset(self.order[mu]) && e.in_q_nonneg())
                };
                if !ok {
                    return Some((lam, mu));
                }
            }
        }
        None
    }

    /// First cell where two matrices differ, if any.
    pub fn first_difference(&self, other: &DecompositionMatrix) -> Option<(usize, usize)> {
        if self.order != other.order {
            return Some((0, 0));
        }
        for lam in 0..self.len() {
            for mu in 0..self.len() {
                if self.entries[lam][mu] != other.entries[lam][mu] {
                    return Some((lam, mu));
                }
            }
        }
        None
    }

    pub fn radical_layers(&self, lam: usize) -> RadicalLayers {
        let mut layers = RadicalLayers::new();
        for (mu, e) in self.entries[lam].iter().enumerate() {
            for (k, c) in e.terms() {
                layers.entry(k).or_default().push((mu, c));
            }
        }
        layers
    }
}

/// Path-degree matrix of a simply-laced pair. Columns are independent and
/// computed in parallel.
pub fn matrix_from_paths(region: &Region, poset: &BruhatPoset) -> DecompositionMatrix {
    let n = poset.len();
    let columns: Vec<Vec<LaurentPoly>> = (0..n)
        .into_par_iter()
        .map(|mu| {
            let exp = path_expansion(region, &canonical_word(region, poset.get(mu)));
            (0..n).map(|lam| exp.get(&poset.get(lam)).cloned().unwrap_or_default()).collect()
        })
        .collect();
    let entries = (0..n).map(|lam| (0..n).map(|mu| columns[mu][lam].clone()).collect()).collect();
    DecompositionMatrix { pair: region.pair(), order: poset.elements().to_vec(), entries }
}

pub fn decomposition_matrix(pair: HermitianPair) -> Result<DecompositionMatrix> {
    if pair.is_simply_laced() {
        let region = Region::new(pair)?;
        let poset = region.enumerate_partitions();
        Ok(matrix_from_paths(&region, &poset))
    } else {
        FoldMap::for_target(pair)?.folded_matrix()
    }
}

pub fn radical_layers(pair: HermitianPair, lam: usize) -> Result<RadicalLayers> {
    Ok(decomposition_matrix(pair)?.radical_layers(lam))
}
