//! Rank reduction by a node `tau`.
//!
//! With `t_1 < ... < t_k` the `tau`-tiles ordered by `r+c`, the region splits
//! into the lower null region `{x <= r_1, y <= c_1}`, the upper null region
//! `{x >= r_k, y >= c_k} - t_k`, the composite tiles spanned by consecutive
//! `tau`-tiles (`t_i` excluded, `t_{i+1}` included) and the remaining single
//! tiles. Composite and single tiles form the region of the contracted pair;
//! the correspondence is found as a colour-consistent poset isomorphism.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::coxeter::{Family, HermitianPair, Node};
use crate::error::{Error, Result};
use crate::paths::path_poly;
use crate::tiling::{Region, TilePartition, TileSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UnitKind {
    Composite,
    Single,
}

/// A composite or single tile of the contraction tiling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionTile {
    pub kind: UnitKind,
    pub tiles: TileSet,
    /// Colours of the base tiles in canonical (bottom-to-top) order.
    pub reading_word: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractedPair {
    pub source: HermitianPair,
    pub tau: Node,
    /// `None` for the one-point pair with an empty region.
    pub target: Option<HermitianPair>,
    /// Contracted node to the reading word of base nodes it stands for.
    pub colour_map: BTreeMap<Node, Vec<Node>>,
}

#[derive(Clone, Debug)]
pub struct ContractionTiling {
    pub pair: HermitianPair,
    pub tau: Node,
    pub tau_tiles: Vec<usize>,
    pub null_low: TileSet,
    pub null_high: TileSet,
    /// `units[i]` corresponds to tile `i` of the contracted region.
    pub units: Vec<ContractionTile>,
    pub target: Option<HermitianPair>,
}

/// The contracted pair predicted by the classification table.
pub fn expected_contracted_pair(pair: HermitianPair) -> Result<Option<HermitianPair>> {
    let n = pair.n();
    Ok(match pair.family() {
        Family::AxA if pair.k() == 1 || pair.k() == n => None,
        Family::AxA => Some(HermitianPair::axa(n - 2, pair.k() - 1)?),
        Family::DA if n <= 3 => None,
        Family::DA => Some(HermitianPair::da(n - 2)?),
        Family::DD => Some(HermitianPair::axa(1, 1)?),
        Family::E6D5 => Some(HermitianPair::axa(5, 1)?),
        Family::E7E6 => Some(HermitianPair::dd(6)?),
        Family::CA | Family::BB => return Err(Error::NotSimplyLaced(pair)),
    })
}

fn rect(region: &Region, r0: u8, r1: u8, c0: u8, c1: u8) -> TileSet {
    (0..region.len())
        .filter(|&i| {
            let t = region.tile(i);
            (r0..=r1).contains(&t.r) && (c0..=c1).contains(&t.c)
        })
        .collect()
}

fn strictly_below(region: &Region) -> Vec<TileSet> {
    (0..region.len()).map(|i| region.down_closure(TileSet::single(i)).without(i)).collect()
}

fn unit_key(region: &Region, tiles: TileSet) -> Vec<Node> {
    let mut k = region.colour_word(tiles);
    k.sort();
    k
}

pub fn contraction_tiling(pair: HermitianPair, tau: Node) -> Result<ContractionTiling> {
    let target = expected_contracted_pair(pair)?;
    let region = Region::new(pair)?;
    let mut tau_tiles: Vec<usize> = region.tiles_of_colour(tau).to_vec();
    if tau_tiles.is_empty() {
        return Err(Error::UnknownNode(tau, pair));
    }
    tau_tiles.sort_by_key(|&i| (region.tile(i).r as u16 + region.tile(i).c as u16, region.tile(i).r));
    let first = *region.tile(tau_tiles[0]);
    let last = *region.tile(*tau_tiles.last().unwrap());
    let null_low = rect(&region, 1, first.r, 1, first.c);
    let null_high = rect(&region, last.r, u8::MAX, last.c, u8::MAX).without(*tau_tiles.last().unwrap());

    let mut composites = Vec::new();
    let mut covered = null_low.union(null_high);
    for w in tau_tiles.windows(2) {
        let (a, b) = (region.tile(w[0]), region.tile(w[1]));
        let tiles = rect(&region, a.r.min(b.r), a.r.max(b.r), a.c.min(b.c), a.c.max(b.c)).without(w[0]);
        if !tiles.intersection(covered).is_empty() {
            return Err(Error::Precondition(format!("overlapping contraction tiles for {pair}, {tau}")));
        }
        covered = covered.union(tiles);
        composites.push(tiles);
    }
    let mut units: Vec<ContractionTile> = composites
        .into_iter()
        .map(|tiles| ContractionTile { kind: UnitKind::Composite, tiles, reading_word: region.colour_word(tiles) })
        .collect();
    for i in region.full().difference(covered).iter() {
        let tiles = TileSet::single(i);
        units.push(ContractionTile { kind: UnitKind::Single, tiles, reading_word: region.colour_word(tiles) });
    }

    let units = match target {
        None if units.is_empty() => Vec::new(),
        None => return Err(Error::Precondition(format!("{pair}, {tau}: expected an empty contraction"))),
        Some(t) => match_units(&region, units, &Region::new(t)?)
            .ok_or_else(|| Error::Precondition(format!("{pair}, {tau}: units do not match the region of {t}")))?,
    };
    Ok(ContractionTiling { pair, tau, tau_tiles, null_low, null_high, units, target })
}

/// Reorder `units` so that unit `i` sits on tile `i` of `target`, via an
/// order isomorphism under which equal target colours have equal colour
/// multisets and vice versa.
fn match_units(base: &Region, units: Vec<ContractionTile>, target: &Region) -> Option<Vec<ContractionTile>> {
    let n = units.len();
    if n != target.len() {
        return None;
    }
    let base_below = strictly_below(base);
    let unit_less =
        |u: usize, v: usize| units[v].tiles.iter().any(|b| !base_below[b].intersection(units[u].tiles).is_empty());
    // Transitive closure of the unit order.
    let mut less: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| u != v && unit_less(u, v)).collect()).collect();
    for k in 0..n {
        for u in 0..n {
            for v in 0..n {
                if less[u][k] && less[k][v] {
                    less[u][v] = true;
                }
            }
        }
    }
    let tgt_below = strictly_below(target);
    let tless = |a: usize, b: usize| tgt_below[b].contains(a);
    let keys: Vec<Vec<Node>> = units.iter().map(|u| unit_key(base, u.tiles)).collect();
    let profile_u = |u: usize| ((0..n).filter(|&v| less[v][u]).count(), (0..n).filter(|&v| less[u][v]).count());
    let profile_t = |t: usize| (tgt_below[t].len(), (0..n).filter(|&s| tless(t, s)).count());

    // Units in a linear extension order; try target tiles in index order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (profile_u(u).0, u));

    struct State {
        assign: Vec<Option<usize>>,
        used: Vec<bool>,
        colour_to_key: HashMap<Node, Vec<Node>>,
        key_to_colour: HashMap<Vec<Node>, Node>,
    }
    fn search(
        depth: usize,
        order: &[usize],
        st: &mut State,
        ok: &dyn Fn(usize, usize, &State) -> bool,
        target: &Region,
        keys: &[Vec<Node>],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let u = order[depth];
        for t in 0..target.len() {
            if st.used[t] || !ok(u, t, st) {
                continue;
            }
            let colour = target.tile(t).colour;
            let new_c = !st.colour_to_key.contains_key(&colour);
            let new_k = !st.key_to_colour.contains_key(&keys[u]);
            st.colour_to_key.insert(colour, keys[u].clone());
            st.key_to_colour.insert(keys[u].clone(), colour);
            st.assign[u] = Some(t);
            st.used[t] = true;
            if search(depth + 1, order, st, ok, target, keys) {
                return true;
            }
            st.used[t] = false;
            st.assign[u] = None;
            if new_c {
                st.colour_to_key.remove(&colour);
            }
            if new_k {
                st.key_to_colour.remove(&keys[u]);
            }
        }
        false
    }
    let ok = |u: usize, t: usize, st: &State| -> bool {
        if profile_u(u) != profile_t(t) {
            return false;
        }
        let colour = target.tile(t).colour;
        if st.colour_to_key.get(&colour).is_some_and(|k| *k != keys[u]) {
            return false;
        }
        if st.key_to_colour.get(&keys[u]).is_some_and(|&c| c != colour) {
            return false;
        }
        (0..n).all(|v| match st.assign[v] {
            Some(s) => less[u][v] == tless(t, s) && less[v][u] == tless(s, t),
            None => true,
        })
    };
    let mut st = State {
        assign: vec![None; n],
        used: vec![false; n],
        colour_to_key: HashMap::new(),
        key_to_colour: HashMap::new(),
    };
    if !search(0, &order, &mut st, &ok, target, &keys) {
        return None;
    }
    let mut out: Vec<Option<ContractionTile>> = vec![None; n];
    for (u, unit) in units.into_iter().enumerate() {
        out[st.assign[u].unwrap()] = Some(unit);
    }
    out.into_iter().collect()
}

impl ContractionTiling {
    pub fn contracted_pair(&self, target_region: Option<&Region>) -> ContractedPair {
        let mut colour_map = BTreeMap::new();
        if let Some(r) = target_region {
            for (i, u) in self.units.iter().enumerate() {
                colour_map.entry(r.tile(i).colour).or_insert_with(|| u.reading_word.clone());
            }
        }
        ContractedPair { source: self.pair, tau: self.tau, target: self.target, colour_map }
    }

    pub fn target_region(&self) -> Result<Option<Region>> {
        self.target.map(Region::new).transpose()
    }

    /// `phi(lam') = T_{0->1}` together with the units indexed by `lam'`.
    pub fn phi(&self, lam: TilePartition) -> TilePartition {
        lam.iter().fold(self.null_low, |acc, i| acc.union(self.units[i].tiles))
    }

    /// Inverse of [`Self::phi`] on its image.
    pub fn contract(&self, mu: TilePartition) -> Option<TilePartition> {
        let lam: TileSet = (0..self.units.len()).filter(|&i| self.units[i].tiles.is_subset(mu)).collect();
        (self.phi(lam) == mu).then_some(lam)
    }
}

pub fn contracted_pair(pair: HermitianPair, tau: Node) -> Result<ContractedPair> {
    let ct = contraction_tiling(pair, tau)?;
    Ok(ct.contracted_pair(ct.target_region()?.as_ref()))
}

/// Partitions of the base pair in which `tau` is removable.
pub fn tau_removable(region: &Region, tau: Node) -> Vec<TilePartition> {
    region
        .enumerate_partitions()
        .elements()
        .iter()
        .copied()
        .filter(|&mu| region.removable_of(mu, tau).is_some())
        .collect()
}

/// Path polynomials agree across `phi`.
pub fn graded_equinumerosity(
    ct: &ContractionTiling,
    base: &Region,
    target: Option<&Region>,
    lam: TilePartition,
    mu: TilePartition,
) -> bool {
    let contracted = match target {
        Some(r) => path_poly(r, lam, mu),
        None => path_poly(base, TileSet::EMPTY, TileSet::EMPTY),
    };
    contracted == path_poly(base, ct.phi(lam), ct.phi(mu))
}
