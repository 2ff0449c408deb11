//! Admissible regions, tile partitions and the Bruhat poset.
//!
//! A tile `[r,c]` is supported by `[r-1,c]` and `[r,c-1]` whenever those lie
//! in the region. Tile partitions are order ideals for this relation and are
//! stored as bitsets over the region's tiles, which are kept sorted by
//! `(r+c, r)`.
//!
//! The `DA` and `DD` shapes are taken from the coloured figures rather than
//! the prose set descriptions: `DA(n)` is the staircase `1 <= c <= r <= n-1`
//! and `DD(n)` is a double-tailed diamond with `2n-2` tiles. Both give the
//! right number of ideals (`2^(n-1)` and `2n`).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{Family, HermitianPair, Node};
use crate::error::{Error, Result};

/// Sign carried by tiles of the folded (non-simply-laced) families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Plus,
    Minus,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub r: u8,
    pub c: u8,
    pub colour: Node,
    pub parity: Parity,
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.r, self.c)
    }
}

/// Set of tiles of one region, as a bitset over tile indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileSet(u128);

/// A tile set that is an order ideal of its region.
pub type TilePartition = TileSet;

pub const MAX_TILES: usize = 128;

impl TileSet {
    pub const EMPTY: TileSet = TileSet(0);

    pub fn from_bits(bits: u128) -> Self {
        TileSet(bits)
    }
    pub fn bits(self) -> u128 {
        self.0
    }
    pub fn single(i: usize) -> Self {
        TileSet(1 << i)
    }
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn with(self, i: usize) -> Self {
        TileSet(self.0 | 1 << i)
    }
    pub fn without(self, i: usize) -> Self {
        TileSet(self.0 & !(1 << i))
    }
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn is_subset(self, other: TileSet) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn union(self, other: TileSet) -> Self {
        TileSet(self.0 | other.0)
    }
    pub fn intersection(self, other: TileSet) -> Self {
        TileSet(self.0 & other.0)
    }
    pub fn difference(self, other: TileSet) -> Self {
        TileSet(self.0 & !other.0)
    }
    pub fn symmetric_difference(self, other: TileSet) -> Self {
        TileSet(self.0 ^ other.0)
    }
    /// Tile indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
    /// Sort key: size, then tile indices lexicographically.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl fmt::Debug for TileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as the sorted list of tile indices.
impl Serialize for TileSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for TileSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= MAX_TILES) {
            return Err(serde::de::Error::custom(format!("tile index {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

impl FromIterator<usize> for TileSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = TileSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct Region {
    pair: HermitianPair,
    tiles: Vec<Tile>,
    lookup: HashMap<(u8, u8), usize>,
    below: Vec<TileSet>,
    above: Vec<TileSet>,
    by_colour: BTreeMap<Node, Vec<usize>>,
}

const E6_TILES: [(u8, u8, u8); 16] = [
    (1, 1, 1),
    (1, 2, 2),
    (1, 3, 3),
    (1, 4, 4),
    (1, 5, 5),
    (2, 3, 6),
    (2, 4, 3),
    (2, 5, 4),
    (3, 4, 2),
    (3, 5, 3),
    (3, 6, 6),
    (4, 4, 1),
    (4, 5, 2),
    (4, 6, 3),
    (4, 7, 4),
    (4, 8, 5),
];

const E7_TILES: [(u8, u8, u8); 27] = [
    (1, 1, 1),
    (1, 2, 2),
    (1, 3, 3),
    (1, 4, 4),
    (1, 5, 5),
    (1, 6, 6),
    (2, 4, 7),
    (2, 5, 4),
    (2, 6, 5),
    (3, 5, 3),
    (3, 6, 4),
    (3, 7, 7),
    (4, 5, 2),
    (4, 6, 3),
    (4, 7, 4),
    (4, 8, 5),
    (4, 9, 6),
    (5, 5, 1),
    (5, 6, 2),
    (5, 7, 3),
    (5, 8, 4),
    (5, 9, 5),
    (6, 8, 7),
    (6, 9, 4),
    (7, 9, 3),
    (8, 9, 2),
    (9, 9, 1),
];

fn raw_tiles(pair: HermitianPair) -> Vec<Tile> {
    let n = pair.n();
    let t = |r: u8, c: u8, colour: u8, parity: Parity| Tile { r, c, colour: Node(colour), parity };
    let mut out = Vec::new();
    match pair.family() {
        Family::AxA => {
            let k = pair.k();
            for r in 1..=n - k + 1 {
                for c in 1..=k {
                    out.push(t(r, c, k + r - c, Parity::None));
                }
            }
        }
        Family::CA => {
            for r in 1..=n {
                for c in 1..=r {
                    let parity = match (r == c, r % 2) {
                        (false, _) => Parity::None,
                        (true, 1) => Parity::Plus,
                        (true, _) => Parity::Minus,
                    };
                    out.push(t(r, c, 1 + r - c, parity));
                }
            }
        }
        Family::DA => {
            for r in 1..n {
                for c in 1..=r {
                    let colour = if r != c { 1 + r - c } else { 1 - r % 2 };
                    out.push(t(r, c, colour, Parity::None));
                }
            }
        }
        Family::BB => {
            for c in 1..n {
                out.push(t(1, c, n + 1 - c, Parity::Plus));
            }
            out.push(t(1, n, 1, Parity::None));
            for r in 2..=n {
                out.push(t(r, n, r, Parity::Minus));
            }
        }
        Family::DD => {
            for c in 1..=n - 2 {
                out.push(t(1, c, n - c, Parity::None));
            }
            out.push(t(1, n - 1, 0, Parity::None));
            out.push(t(2, n - 2, 1, Parity::None));
            for r in 2..n {
                out.push(t(r, n - 1, r, Parity::None));
            }
        }
        Family::E6D5 => out.extend(E6_TILES.iter().map(|&(r, c, s)| t(r, c, s, Parity::None))),
        Family::E7E6 => out.extend(E7_TILES.iter().map(|&(r, c, s)| t(r, c, s, Parity::None))),
    }
    out
}

/// The admissible region of a pair, with colours and parities.
pub fn admissible_region(pair: HermitianPair) -> Result<Region> {
    Region::new(pair)
}

/// Colour and parity of an admissible tile.
pub fn colour_of(pair: HermitianPair, r: u8, c: u8) -> Result<(Node, Parity)> {
    let region = Region::new(pair)?;
    let i = region.index_of(r, c).ok_or(Error::Inadmissible(r as i32, c as i32))?;
    let t = region.tile(i);
    Ok((t.colour, t.parity))
}

impl Region {
    pub fn new(pair: HermitianPair) -> Result<Self> {
        let mut tiles = raw_tiles(pair);
        if tiles.len() > MAX_TILES {
            return Err(Error::RegionTooLarge(pair, tiles.len()));
        }
        tiles.sort_by_key(|t| (t.r as u16 + t.c as u16, t.r));
        let lookup: HashMap<_, _> = tiles.iter().enumerate().map(|(i, t)| ((t.r, t.c), i)).collect();
        let mut below = vec![TileSet::EMPTY; tiles.len()];
        let mut above = vec![TileSet::EMPTY; tiles.len()];
        for (i, t) in tiles.iter().enumerate() {
            for (r, c) in [(t.r.wrapping_sub(1), t.c), (t.r, t.c.wrapping_sub(1))] {
                if let Some(&j) = lookup.get(&(r, c)) {
                    below[i].insert(j);
                    above[j].insert(i);
                }
            }
        }
        let mut by_colour: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
        for (i, t) in tiles.iter().enumerate() {
            by_colour.entry(t.colour).or_default().push(i);
        }
        Ok(Self { pair, tiles, lookup, below, above, by_colour })
    }

    pub fn pair(&self) -> HermitianPair {
        self.pair
    }
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }
    pub fn tile(&self, i: usize) -> &Tile {
        &self.tiles[i]
    }
    pub fn len(&self) -> usize {
        self.tiles.len()
    }
    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }
    pub fn index_of(&self, r: u8, c: u8) -> Option<usize> {
        self.lookup.get(&(r, c)).copied()
    }
    /// Index of a possibly out-of-range lattice point.
    pub fn index_at(&self, r: i32, c: i32) -> Option<usize> {
        if r < 1 || c < 1 || r > 255 || c > 255 {
            return None;
        }
        self.index_of(r as u8, c as u8)
    }
    /// Supporting tiles (at most two).
    pub fn below(&self, i: usize) -> TileSet {
        self.below[i]
    }
    /// Tiles supported by tile `i`.
    pub fn above(&self, i: usize) -> TileSet {
        self.above[i]
    }
    pub fn full(&self) -> TileSet {
        (0..self.len()).collect()
    }
    pub fn tiles_of_colour(&self, s: Node) -> &[usize] {
        self.by_colour.get(&s).map_or(&[], |v| v.as_slice())
    }
    pub fn colours(&self) -> impl Iterator<Item = Node> + '_ {
        self.by_colour.keys().copied()
    }

    pub fn is_partition(&self, set: TileSet) -> bool {
        set.is_subset(self.full()) && set.iter().all(|i| self.below[i].is_subset(set))
    }

    pub fn is_addable(&self, set: TileSet, i: usize) -> bool {
        !set.contains(i) && self.below[i].is_subset(set)
    }

    pub fn is_removable(&self, set: TileSet, i: usize) -> bool {
        set.contains(i) && self.above[i].intersection(set).is_empty()
    }

    pub fn addable(&self, set: TileSet) -> BTreeMap<Node, usize> {
        (0..self.len()).filter(|&i| self.is_addable(set, i)).map(|i| (self.tiles[i].colour, i)).collect()
    }

    pub fn removable(&self, set: TileSet) -> BTreeMap<Node, usize> {
        set.iter().filter(|&i| self.is_removable(set, i)).map(|i| (self.tiles[i].colour, i)).collect()
    }

    pub fn addable_of(&self, set: TileSet, s: Node) -> Option<usize> {
        self.tiles_of_colour(s).iter().copied().find(|&i| self.is_addable(set, i))
    }

    pub fn removable_of(&self, set: TileSet, s: Node) -> Option<usize> {
        self.tiles_of_colour(s).iter().copied().find(|&i| self.is_removable(set, i))
    }

    /// Smallest ideal containing `set`.
    pub fn down_closure(&self, set: TileSet) -> TileSet {
        let mut out = set;
        for i in (0..self.len()).rev() {
            if out.contains(i) {
                out = out.union(self.below[i]);
            }
        }
        out
    }

    /// Smallest up-closed set containing `set`.
    pub fn up_closure(&self, set: TileSet) -> TileSet {
        let mut out = set;
        for i in 0..self.len() {
            if out.contains(i) {
                out = out.union(self.above[i]);
            }
        }
        out
    }

    /// `{[x,y] in region : x <= r, y <= c}`.
    pub fn lambda_rect(&self, r: u8, c: u8) -> Result<TilePartition> {
        if self.index_of(r, c).is_none() {
            return Err(Error::Inadmissible(r as i32, c as i32));
        }
        Ok(self.tiles.iter().enumerate().filter(|(_, t)| t.r <= r && t.c <= c).map(|(i, _)| i).collect())
    }

    pub fn from_coords(&self, coords: &[(u8, u8)]) -> Result<TileSet> {
        coords.iter().map(|&(r, c)| self.index_of(r, c).ok_or(Error::Inadmissible(r as i32, c as i32))).collect()
    }

    pub fn coords(&self, set: TileSet) -> Vec<(u8, u8)> {
        set.iter().map(|i| (self.tiles[i].r, self.tiles[i].c)).collect()
    }

    /// Partition from row lengths: entry `i` is the number of tiles taken
    /// from row `i+1`, leftmost first.
    pub fn from_row_lengths(&self, rows: &[usize]) -> Result<TilePartition> {
        let mut set = TileSet::EMPTY;
        for (i, &len) in rows.iter().enumerate() {
            let r = (i + 1) as u8;
            let mut row: Vec<usize> = (0..self.len()).filter(|&j| self.tiles[j].r == r).collect();
            row.sort_by_key(|&j| self.tiles[j].c);
            if len > row.len() {
                return Err(Error::NotPartition);
            }
            for &j in &row[..len] {
                set.insert(j);
            }
        }
        if self.is_partition(set) {
            Ok(set)
        } else {
            Err(Error::NotPartition)
        }
    }

    /// Row lengths with trailing empty rows dropped.
    pub fn row_lengths(&self, set: TileSet) -> Vec<usize> {
        let max_r = set.iter().map(|i| self.tiles[i].r as usize).max().unwrap_or(0);
        let mut rows = vec![0; max_r];
        for i in set.iter() {
            rows[self.tiles[i].r as usize - 1] += 1;
        }
        rows
    }

    /// Colour word of the tiles of `set` read in canonical order.
    pub fn colour_word(&self, set: TileSet) -> Vec<Node> {
        set.iter().map(|i| self.tiles[i].colour).collect()
    }

    pub fn enumerate_partitions(&self) -> BruhatPoset {
        BruhatPoset::new(self)
    }
}

/// A cover `lower < upper` in the Bruhat poset, labelled by the added tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub tile: usize,
    pub colour: Node,
}

/// All tile partitions of a region ordered by inclusion. Element ids follow
/// the canonical order: by size, then by sorted tile indices.
#[derive(Clone, Debug)]
pub struct BruhatPoset {
    pair: HermitianPair,
    elements: Vec<TilePartition>,
    index: HashMap<TilePartition, usize>,
    covers: Vec<Cover>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl BruhatPoset {
    fn new(region: &Region) -> Self {
        let mut elements = vec![TileSet::EMPTY];
        let mut level = vec![TileSet::EMPTY];
        while !level.is_empty() {
            let mut next: HashSet<TileSet> = HashSet::new();
            for &lam in &level {
                for (_, i) in region.addable(lam) {
                    next.insert(lam.with(i));
                }
            }
            let mut next: Vec<_> = next.into_iter().collect();
            next.sort_by_cached_key(|s| s.canonical_key());
            elements.extend(next.iter().copied());
            level = next;
        }
        let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut covers = Vec::new();
        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        for (lo, &lam) in elements.iter().enumerate() {
            for (colour, tile) in region.addable(lam) {
                let hi = index[&lam.with(tile)];
                up[lo].push(covers.len());
                down[hi].push(covers.len());
                covers.push(Cover { lower: lo, upper: hi, tile, colour });
            }
        }
        Self { pair: region.pair(), elements, index, covers, up, down }
    }

    pub fn pair(&self) -> HermitianPair {
        self.pair
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn elements(&self) -> &[TilePartition] {
        &self.elements
    }
    pub fn get(&self, id: usize) -> TilePartition {
        self.elements[id]
    }
    pub fn id_of(&self, lam: TilePartition) -> Option<usize> {
        self.index.get(&lam).copied()
    }
    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }
    /// Covers with `lower == id`.
    pub fn up_covers(&self, id: usize) -> impl Iterator<Item = &Cover> {
        self.up[id].iter().map(move |&c| &self.covers[c])
    }
    /// Covers with `upper == id`.
    pub fn down_covers(&self, id: usize) -> impl Iterator<Item = &Cover> {
        self.down[id].iter().map(move |&c| &self.covers[c])
    }
    /// Bruhat order is inclusion of tile sets.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(self.elements[b])
    }
    pub fn cover_between(&self, lower: usize, upper: usize) -> Option<&Cover> {
        self.up_covers(lower).find(|c| c.upper == upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{bond, quotient_size, CoxeterSystem};

    fn region(p: HermitianPair) -> Region {
        Region::new(p).unwrap()
    }

    fn suite() -> Vec<HermitianPair> {
        let mut v = Vec::new();
        for n in 1..=6 {
            for k in 1..=n {
                v.push(HermitianPair::axa(n, k).unwrap());
            }
        }
        for n in 2..=5 {
            v.push(HermitianPair::ca(n).unwrap());
            v.push(HermitianPair::bb(n).unwrap());
        }
        for n in 2..=6 {
            v.push(HermitianPair::da(n).unwrap());
        }
        for n in 3..=6 {
            v.push(HermitianPair::dd(n).unwrap());
        }
        v.push(HermitianPair::e6d5());
        v.push(HermitianPair::e7e6());
        v
    }

    #[test]
    fn region_sizes() {
        let r = region(HermitianPair::axa(8, 5).unwrap());
        assert_eq!(r.len(), 20);
        assert_eq!(r.tiles().iter().map(|t| t.r).max(), Some(4));
        assert_eq!(r.tiles().iter().map(|t| t.c).max(), Some(5));
        assert_eq!(region(HermitianPair::ca(6).unwrap()).len(), 21);
        assert_eq!(region(HermitianPair::bb(6).unwrap()).len(), 11);
        assert_eq!(region(HermitianPair::dd(6).unwrap()).len(), 10);
        assert_eq!(region(HermitianPair::e6d5()).len(), 16);
        assert_eq!(region(HermitianPair::e7e6()).len(), 27);
    }

    #[test]
    fn region_size_is_length_of_longest_rep() {
        for p in suite() {
            let sys = CoxeterSystem::new(p);
            let longest = sys.min_coset_reps().last().unwrap().len();
            assert_eq!(region(p).len(), longest, "{p}");
        }
    }

    #[test]
    fn colours() {
        let a = HermitianPair::axa(8, 5).unwrap();
        assert_eq!(colour_of(a, 1, 1).unwrap(), (Node(5), Parity::None));
        assert_eq!(colour_of(a, 1, 2).unwrap().0, Node(4));
        assert_eq!(colour_of(a, 2, 1).unwrap().0, Node(6));
        let c = HermitianPair::ca(6).unwrap();
        assert_eq!(colour_of(c, 3, 3).unwrap(), (Node(1), Parity::Plus));
        assert_eq!(colour_of(c, 2, 2).unwrap(), (Node(1), Parity::Minus));
        assert!(colour_of(c, 1, 2).is_err());
        for p in suite() {
            let r = region(p);
            assert_eq!(r.tile(0).colour, p.nonparabolic(), "{p}");
            assert_eq!((r.tile(0).r, r.tile(0).c), (1, 1));
        }
    }

    #[test]
    fn adjacent_tiles_have_adjacent_colours() {
        for p in suite() {
            let r = region(p);
            for i in 0..r.len() {
                for j in r.below(i).iter() {
                    let m = bond(p, r.tile(i).colour, r.tile(j).colour).unwrap();
                    assert!(m >= 3, "{p}: {} {}", r.tile(i), r.tile(j));
                }
            }
        }
    }

    #[test]
    fn diagonal_neighbours_share_colours() {
        for p in suite() {
            let r = region(p);
            if matches!(p.family(), Family::E6D5 | Family::E7E6) {
                continue;
            }
            for t in r.tiles() {
                if let Some(j) = r.index_of(t.r + 1, t.c + 1) {
                    let u = r.tile(j);
                    let d_type = matches!(p.family(), Family::DA | Family::DD);
                    let fork = |s: Node| d_type && s.0 <= 1;
                    if fork(t.colour) || fork(u.colour) {
                        assert_ne!(t.colour, u.colour);
                    } else {
                        assert_eq!(t.colour, u.colour, "{p}: {t} {u}");
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_counts_match_index() {
        for p in suite() {
            let poset = region(p).enumerate_partitions();
            assert_eq!(poset.len() as u128, quotient_size(p), "{p}");
        }
        assert_eq!(region(HermitianPair::axa(3, 2).unwrap()).enumerate_partitions().len(), 6);
        assert_eq!(region(HermitianPair::e6d5()).enumerate_partitions().len(), 27);
        assert_eq!(region(HermitianPair::e7e6()).enumerate_partitions().len(), 56);
    }

    #[test]
    fn poset_shape() {
        for p in suite() {
            let r = region(p);
            let poset = r.enumerate_partitions();
            assert_eq!(poset.get(0), TileSet::EMPTY);
            assert_eq!(poset.get(poset.len() - 1), r.full());
            for id in 0..poset.len() {
                let lam = poset.get(id);
                assert!(r.is_partition(lam));
                assert_eq!(poset.up_covers(id).count(), r.addable(lam).len());
                // At most one addable and one removable tile per colour.
                let add: Vec<_> = (0..r.len()).filter(|&i| r.is_addable(lam, i)).collect();
                assert_eq!(add.len(), r.addable(lam).len(), "{p}");
                let rem: Vec<_> = (0..r.len()).filter(|&i| r.is_removable(lam, i)).collect();
                assert_eq!(rem.len(), r.removable(lam).len(), "{p}");
            }
            for c in poset.covers() {
                let (a, b) = (poset.get(c.lower), poset.get(c.upper));
                assert_eq!(b.difference(a), TileSet::single(c.tile));
                assert_eq!(b.len(), a.len() + 1);
            }
        }
    }

    #[test]
    fn linear_extensions_give_distinct_min_reps() {
        for p in suite() {
            let r = region(p);
            let sys = CoxeterSystem::new(p);
            let poset = r.enumerate_partitions();
            let mut keys = HashSet::new();
            for &lam in poset.elements() {
                let word = r.colour_word(lam);
                assert_eq!(sys.word_length(&word).unwrap(), (word.len(), true), "{p}");
                assert!(sys.is_min_coset_rep(&word).unwrap(), "{p}");
                assert!(keys.insert(sys.element_key(&word).unwrap()));
            }
        }
    }

    #[test]
    fn addable_removable_examples() {
        let r = region(HermitianPair::axa(8, 5).unwrap());
        let add = r.addable(TileSet::EMPTY);
        assert_eq!(add.len(), 1);
        assert_eq!(add[&Node(5)], 0);
        assert!(r.removable(TileSet::EMPTY).is_empty());
        let rem = r.removable(r.full());
        assert_eq!(rem.len(), 1);
        let (&colour, &i) = rem.iter().next().unwrap();
        assert_eq!((r.tile(i).r, r.tile(i).c, colour), (4, 5, Node(4)));
    }

    #[test]
    fn lambda_rect_examples() {
        let a = region(HermitianPair::axa(8, 5).unwrap());
        assert_eq!(a.lambda_rect(1, 1).unwrap(), TileSet::single(0));
        assert_eq!(a.lambda_rect(2, 3).unwrap().len(), 6);
        let c = region(HermitianPair::ca(4).unwrap());
        let rect = c.lambda_rect(3, 2).unwrap();
        let expect = c.from_coords(&[(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)]).unwrap();
        assert_eq!(rect, expect);
        assert!(c.is_partition(rect));
        assert!(c.lambda_rect(1, 2).is_err());
    }

    #[test]
    fn row_length_roundtrip() {
        let r = region(HermitianPair::da(15).unwrap());
        let rows = [1, 2, 3, 4, 5, 6, 7, 8, 8, 3, 1, 1, 1, 1];
        let mu = r.from_row_lengths(&rows).unwrap();
        assert_eq!(mu.len(), 51);
        assert_eq!(r.row_lengths(mu), rows.to_vec());
        assert!(r.from_row_lengths(&[1, 0, 1]).is_err());
    }

    #[test]
    fn closures() {
        let r = region(HermitianPair::axa(3, 2).unwrap());
        let top = TileSet::single(r.len() - 1);
        assert_eq!(r.down_closure(top), r.full());
        assert_eq!(r.up_closure(TileSet::single(0)), r.full());
    }
}
