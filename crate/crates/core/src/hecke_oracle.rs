//! Brute-force canonical basis of the antispherical module, computed
//! directly on the tile lattice. Serves as an oracle for the path-based
//! decomposition matrices.
//!
//! `N_lam * b_s` is `N_{lam+s} + v N_lam` if `s` is addable, `N_{lam-s} +
//! v^-1 N_lam` if `s` is removable, and zero otherwise.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coxeter::{HermitianPair, Node};
use crate::error::Result;
use crate::klpoly::DecompositionMatrix;
use crate::laurent::LaurentPoly;
use crate::tiling::{BruhatPoset, Region, TileSet};

/// Finitely supported combination of standard basis elements `N_lam`,
/// with Laurent coefficients in `v`.
pub type AntisphericalElement = BTreeMap<TileSet, LaurentPoly>;

pub fn standard(lam: TileSet) -> AntisphericalElement {
    BTreeMap::from([(lam, LaurentPoly::one())])
}

fn add_into(elem: &mut AntisphericalElement, key: TileSet, poly: &LaurentPoly) {
    let slot = elem.entry(key).or_default();
    *slot += poly;
    if slot.is_zero() {
        elem.remove(&key);
    }
}

pub fn act_bs(region: &Region, elem: &AntisphericalElement, s: Node) -> AntisphericalElement {
    let v = LaurentPoly::q();
    let v_inv = LaurentPoly::monomial(1, -1);
    let mut out = AntisphericalElement::new();
    for (&lam, coeff) in elem {
        if let Some(t) = region.addable_of(lam, s) {
            add_into(&mut out, lam.with(t), coeff);
            add_into(&mut out, lam, &(coeff * &v));
        } else if let Some(t) = region.removable_of(lam, s) {
            add_into(&mut out, lam.without(t), coeff);
            add_into(&mut out, lam, &(coeff * &v_inv));
        }
    }
    out
}

/// `n_w` for every element, indexed by poset id.
#[derive(Clone, Debug)]
pub struct CanonicalBasisTable {
    pub pair: HermitianPair,
    pub order: Vec<TileSet>,
    pub basis: Vec<AntisphericalElement>,
}

impl CanonicalBasisTable {
    /// `n_{y,w}`.
    pub fn coeff(&self, y: usize, w: usize) -> LaurentPoly {
        self.basis[w].get(&self.order[y]).cloned().unwrap_or_default()
    }

    /// `n_{w,w} = 1`; `n_{y,w}` in `v Z_{>=0}[v]` for `y != w`; support `y <= w`.
    pub fn invariants_hold(&self) -> bool {
        self.basis.iter().enumerate().all(|(w, elem)| {
            elem.iter().all(
                |(&y, c)| {
                    if y == self.order[w] {
                        c.is_one()
                    } else {
                        y.is_subset(self.order[w]) && c.in_q_nonneg()
                    }
                },
            ) && elem.contains_key(&self.order[w])
        })
    }
}

/// One step of the recursion: `n_x * b_s` minus the constant-term
/// corrections, where `x = w - s`.
pub fn canonical_step(
    region: &Region,
    poset: &BruhatPoset,
    basis: &[AntisphericalElement],
    w: usize,
    s: Node,
) -> AntisphericalElement {
    let lam = poset.get(w);
    let t = region.removable_of(lam, s).expect("s must be a descent of w");
    let x = poset.id_of(lam.without(t)).unwrap();
    let mut elem = act_bs(region, &basis[x], s);
    // n_y only involves N_z with z <= y, and ids increase with rank, so
    // correcting from the top id down never disturbs a finished coefficient.
    for y in (0..w).rev() {
        let mu = elem.get(&poset.get(y)).map_or(0, |c| c.constant_term());
        if mu != 0 {
            for (&z, c) in &basis[y] {
                add_into(&mut elem, z, &(c * -mu));
            }
        }
    }
    elem
}

/// Canonical basis using the smallest removable colour as descent.
pub fn canonical_basis(region: &Region, poset: &BruhatPoset) -> CanonicalBasisTable {
    canonical_basis_with(region, poset, |rem| *rem.keys().next().unwrap())
}

/// Canonical basis with a caller-chosen descent at each element. Elements of
/// equal rank are computed in parallel from the frozen lower table.
pub fn canonical_basis_with<F>(region: &Region, poset: &BruhatPoset, choose: F) -> CanonicalBasisTable
where
    F: Fn(&BTreeMap<Node, usize>) -> Node + Sync,
{
    let order = poset.elements().to_vec();
    let mut basis: Vec<AntisphericalElement> = Vec::with_capacity(order.len());
    let mut start = 0;
    while start < order.len() {
        let rank = order[start].len();
        let end = (start..order.len()).find(|&i| order[i].len() != rank).unwrap_or(order.len());
        let level: Vec<AntisphericalElement> = (start..end)
            .into_par_iter()
            .map(|w| {
                if rank == 0 {
                    standard(order[w])
                } else {
                    let s = choose(&region.removable(order[w]));
                    canonical_step(region, poset, &basis, w, s)
                }
            })
            .collect();
        basis.extend(level);
        start = end;
    }
    CanonicalBasisTable { pair: region.pair(), order, basis }
}

/// Recompute every `n_w` with every available descent and compare.
pub fn verify_descent_independence(region: &Region, poset: &BruhatPoset, table: &CanonicalBasisTable) -> bool {
    (1..poset.len()).into_par_iter().all(|w| {
        region
            .removable(poset.get(w))
            .keys()
            .all(|&s| canonical_step(region, poset, &table.basis, w, s) == table.basis[w])
    })
}

/// `D[lam][mu] = n_{lam,mu}` with `v -> q`.
pub fn oracle_matrix(pair: HermitianPair) -> Result<DecompositionMatrix> {
    let region = Region::new(pair)?;
    let poset = region.enumerate_partitions();
    let table = canonical_basis(&region, &poset);
    Ok(matrix_from_table(&table))
}

pub fn matrix_from_table(table: &CanonicalBasisTable) -> DecompositionMatrix {
    let n = table.order.len();
    let entries = (0..n).map(|lam| (0..n).map(|mu| table.coeff(lam, mu)).collect()).collect();
    DecompositionMatrix { pair: table.pair, order: table.order.clone(), entries }
}
