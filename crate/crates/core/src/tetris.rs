//! Trails, hooks, holes and the spot decorations of the `(D_n, A_{n-1})`
//! family.
//!
//! Coordinates are lattice points `[x,y]` with `x, y >= 1`; they need not be
//! admissible. `SW[x,y] = [x-1,y]` and `SE[x,y] = [x,y-1]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coxeter::Family;
use crate::error::{Error, Result};
use crate::tiling::{Region, TilePartition, TileSet};

/// `[x,y] = T_1, ..., T_{x+y-1} = [1,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Trail {
    pub tiles: Vec<(i32, i32)>,
}

impl Trail {
    pub fn is_well_formed(&self) -> bool {
        let Some(&first) = self.tiles.first() else { return false };
        self.tiles.len() as i32 == first.0 + first.1 - 1
            && self.tiles.last() == Some(&(1, 1))
            && self.tiles.windows(2).all(|w| {
                let ((a, b), (c, d)) = (w[0], w[1]);
                (c, d) == (a - 1, b) || (c, d) == (a, b - 1)
            })
    }
}

/// All trails from `[x,y]`.
pub fn trails(x: i32, y: i32) -> Vec<Trail> {
    assert!(x >= 1 && y >= 1);
    fn go(x: i32, y: i32, cur: &mut Vec<(i32, i32)>, out: &mut Vec<Trail>) {
        cur.push((x, y));
        if (x, y) == (1, 1) {
            out.push(Trail { tiles: cur.clone() });
        }
        if x > 1 {
            go(x - 1, y, cur, out);
        }
        if y > 1 {
            go(x, y - 1, cur, out);
        }
        cur.pop();
    }
    let mut out = Vec::new();
    go(x, y, &mut Vec::new(), &mut out);
    out
}

fn in_mu(region: &Region, mu: TileSet, x: i32, y: i32) -> bool {
    region.index_at(x, y).is_some_and(|i| mu.contains(i))
}

/// `|trail ∩ mu|`.
pub fn mu_length(region: &Region, trail: &Trail, mu: TilePartition) -> usize {
    trail.tiles.iter().filter(|&&(x, y)| in_mu(region, mu, x, y)).count()
}

/// `best[x][y]`: the maximal `mu`-length of a trail from `[x,y]`.
fn best_lengths(region: &Region, mu: TileSet, x: i32, y: i32) -> Vec<Vec<usize>> {
    let (xs, ys) = (x as usize, y as usize);
    let mut best = vec![vec![0usize; ys + 1]; xs + 1];
    for a in 1..=xs {
        for b in 1..=ys {
            let prev = match (a > 1, b > 1) {
                (true, true) => best[a - 1][b].max(best[a][b - 1]),
                (true, false) => best[a - 1][b],
                (false, true) => best[a][b - 1],
                (false, false) => 0,
            };
            best[a][b] = prev + in_mu(region, mu, a as i32, b as i32) as usize;
        }
    }
    best
}

/// The maximal `mu`-length trail whose steps prefer `SW` (left) or `SE`
/// (right) whenever maximality allows.
fn greedy_trail(region: &Region, mu: TileSet, x: i32, y: i32, prefer_sw: bool) -> Trail {
    let best = best_lengths(region, mu, x, y);
    let (mut a, mut b) = (x as usize, y as usize);
    let mut tiles = vec![(x, y)];
    while (a, b) != (1, 1) {
        let sw = (a > 1).then(|| best[a - 1][b]);
        let se = (b > 1).then(|| best[a][b - 1]);
        let target = sw.unwrap_or(0).max(se.unwrap_or(0));
        let take_sw = match (sw, se) {
            (Some(s), Some(e)) => {
                if prefer_sw {
                    s == target
                } else {
                    e != target
                }
            }
            (Some(_), None) => true,
            _ => false,
        };
        if take_sw {
            a -= 1;
        } else {
            b -= 1;
        }
        tiles.push((a as i32, b as i32));
    }
    Trail { tiles }
}

/// Maximal `mu`-length trail keeping the column as large as possible.
pub fn left_trail(region: &Region, mu: TilePartition, x: i32, y: i32) -> Trail {
    greedy_trail(region, mu, x, y, true)
}

/// Maximal `mu`-length trail keeping the row as large as possible.
pub fn right_trail(region: &Region, mu: TilePartition, x: i32, y: i32) -> Trail {
    greedy_trail(region, mu, x, y, false)
}

/// Left trail of `[x,y]` intersected with column `y` of `mu`.
pub fn left_hook(region: &Region, mu: TilePartition, x: i32, y: i32) -> TileSet {
    left_trail(region, mu, x, y)
        .tiles
        .iter()
        .filter(|&&(_, b)| b == y)
        .filter_map(|&(a, b)| region.index_at(a, b))
        .filter(|&i| mu.contains(i))
        .collect()
}

/// Right trail of `[x,y]` intersected with row `x` of `mu`.
pub fn right_hook(region: &Region, mu: TilePartition, x: i32, y: i32) -> TileSet {
    right_trail(region, mu, x, y)
        .tiles
        .iter()
        .filter(|&&(a, _)| a == x)
        .filter_map(|&(a, b)| region.index_at(a, b))
        .filter(|&i| mu.contains(i))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookEntry {
    pub r: u8,
    pub c: u8,
    pub multiplicity: u32,
}

/// Multiset of tiles, sorted by `(r, c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HookMultiset {
    pub tiles: Vec<HookEntry>,
}

impl HookMultiset {
    fn from_counts(region: &Region, counts: BTreeMap<usize, u32>) -> Self {
        let mut tiles: Vec<HookEntry> = counts
            .into_iter()
            .map(|(i, m)| HookEntry { r: region.tile(i).r, c: region.tile(i).c, multiplicity: m })
            .collect();
        tiles.sort_by_key(|e| (e.r, e.c));
        Self { tiles }
    }

    /// Total size counted with multiplicity.
    pub fn len(&self) -> usize {
        self.tiles.iter().map(|e| e.multiplicity as usize).sum()
    }
    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }
    pub fn multiplicity(&self, r: u8, c: u8) -> u32 {
        self.tiles.iter().find(|e| (e.r, e.c) == (r, c)).map_or(0, |e| e.multiplicity)
    }
    pub fn max_multiplicity(&self) -> u32 {
        self.tiles.iter().map(|e| e.multiplicity).max().unwrap_or(0)
    }
}

fn add_all(counts: &mut BTreeMap<usize, u32>, set: TileSet, times: u32) {
    for i in set.iter() {
        *counts.entry(i).or_default() += times;
    }
}

fn trail_in_mu(region: &Region, mu: TileSet, trail: &Trail) -> TileSet {
    trail.tiles.iter().filter_map(|&(a, b)| region.index_at(a, b)).filter(|&i| mu.contains(i)).collect()
}

fn check_addable(region: &Region, mu: TilePartition, r: u8, c: u8) -> Result<()> {
    let i = region.index_of(r, c).ok_or(Error::Inadmissible(r as i32, c as i32))?;
    if !region.is_partition(mu) {
        return Err(Error::NotPartition);
    }
    if !region.is_addable(mu, i) {
        return Err(Error::Precondition(format!("[{r},{c}] is not addable")));
    }
    Ok(())
}

/// `Hook_tau(mu)` for `tau = [r,c]` addable, using right trails as the
/// preferred maximal trails.
pub fn hook_multiset(region: &Region, mu: TilePartition, r: u8, c: u8) -> Result<HookMultiset> {
    check_addable(region, mu, r, c)?;
    let (r, c) = (r as i32, c as i32);
    let n = region.pair().n() as i32;
    let admissible = |a: i32, b: i32| region.index_at(a, b).is_some();
    let t = |a: i32, b: i32| -> TileSet {
        if a < 1 || b < 1 {
            TileSet::EMPTY
        } else {
            trail_in_mu(region, mu, &right_trail(region, mu, a, b))
        }
    };
    let mut counts = BTreeMap::new();
    match region.pair().family() {
        Family::CA if !admissible(r - 1, c) => add_all(&mut counts, t(r, c - 1), 2),
        Family::BB if !admissible(r, c - 1) => {
            add_all(&mut counts, t(r - 1, c), 1);
            add_all(&mut counts, t(1, n), 1);
        }
        _ => {
            add_all(&mut counts, t(r - 1, c), 1);
            add_all(&mut counts, t(r, c - 1), 1);
        }
    }
    Ok(HookMultiset::from_counts(region, counts))
}

/// `Hole_tau(mu)`: the hook reduced to right and left hooks.
pub fn hole_multiset(region: &Region, mu: TilePartition, r: u8, c: u8) -> Result<HookMultiset> {
    check_addable(region, mu, r, c)?;
    let (r, c) = (r as i32, c as i32);
    let n = region.pair().n() as i32;
    let rh = |a: i32, b: i32| if a < 1 || b < 1 { TileSet::EMPTY } else { right_hook(region, mu, a, b) };
    let mut counts = BTreeMap::new();
    match region.pair().family() {
        Family::CA if r == c => add_all(&mut counts, rh(r, r - 1), 2),
        Family::BB if region.index_at(r, c - 1).is_none() => {
            add_all(&mut counts, rh(r - 1, c), 1);
            add_all(&mut counts, left_hook(region, mu, 1, n), 1);
        }
        _ => {
            add_all(&mut counts, rh(r - 1, c), 1);
            add_all(&mut counts, rh(r, c - 1), 1);
        }
    }
    Ok(HookMultiset::from_counts(region, counts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LabelKind {
    R,
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecorationLabel {
    pub kind: LabelKind,
    pub plus: bool,
    pub index: usize,
}

impl fmt::Display for DecorationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            LabelKind::R => "R",
            LabelKind::A => "A",
        };
        write!(f, "{k}{}_{}", if self.plus { "+" } else { "-" }, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decoration {
    pub r: u8,
    pub c: u8,
    pub label: DecorationLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaDecoration {
    pub spot: (u8, u8),
    pub decorations: Vec<Decoration>,
    /// Largest ideal of undecorated tiles, excluding the spot.
    #[serde(skip)]
    pub sigma: TilePartition,
    /// Remaining tiles after deleting decorations and the spot and letting
    /// each diagonal fall; `None` when the result is not an ideal.
    #[serde(skip)]
    pub omega: Option<TilePartition>,
    pub sigma_rows: Vec<usize>,
    pub omega_rows: Option<Vec<usize>>,
    pub ell: usize,
}

/// Decorations, `Sigma`, `Omega` and `ell` for a spot `[r,c]` in `mu` with
/// `[r,c+1]` not in `mu`, in the `DA` family.
pub fn omega_sigma(region: &Region, mu: TilePartition, r: u8, c: u8) -> Result<OmegaDecoration> {
    if region.pair().family() != Family::DA {
        return Err(Error::Precondition(format!("{} is not of type D/A", region.pair())));
    }
    if !region.is_partition(mu) {
        return Err(Error::NotPartition);
    }
    let spot = region.index_of(r, c).filter(|&i| mu.contains(i));
    let Some(spot) = spot else {
        return Err(Error::Precondition(format!("[{r},{c}] is not a tile of mu")));
    };
    if in_mu(region, mu, r as i32, c as i32 + 1) {
        return Err(Error::Precondition(format!("[{r},{} ] lies in mu", c + 1)));
    }
    let (ri, ci) = (r as i32, c as i32);
    let has = |a: i32, b: i32| in_mu(region, mu, a, b);
    let mut decorations = Vec::new();
    let mut push = |a: i32, b: i32, kind: LabelKind, plus: bool, index: usize| {
        decorations.push(Decoration { r: a as u8, c: b as u8, label: DecorationLabel { kind, plus, index } });
    };
    // Step (i): quadruples while both leading tiles are present.
    let mut k = 0;
    while has(ri + 1 + k, ci + 1 - k) && has(ri + k, ci - 1 - k) {
        push(ri + 1 + k, ci + 1 - k, LabelKind::R, true, k as usize);
        push(ri + k, ci - 1 - k, LabelKind::A, true, k as usize);
        push(ri + 1 + k, ci - k, LabelKind::R, false, k as usize);
        push(ri + 1 + k, ci - 1 - k, LabelKind::A, false, k as usize);
        k += 1;
    }
    // Step (ii): pairs continuing below.
    while has(ri + 1 + k, ci - k) && has(ri + 1 + k, ci - 1 - k) {
        push(ri + 1 + k, ci - k, LabelKind::R, true, k as usize);
        push(ri + 1 + k, ci - 1 - k, LabelKind::A, false, k as usize);
        k += 1;
    }
    let decorated: TileSet =
        decorations.iter().map(|d| region.index_of(d.r, d.c).expect("decorations lie in mu")).collect();
    let removed = decorated.with(spot);
    let sigma = largest_ideal_within(region, mu.difference(removed));
    let omega = drop_diagonals(region, mu.difference(removed));
    Ok(OmegaDecoration {
        spot: (r, c),
        ell: decorations.len() / 2,
        sigma_rows: region.row_lengths(sigma),
        omega_rows: omega.map(|o| region.row_lengths(o)),
        decorations,
        sigma,
        omega,
    })
}

/// Largest order ideal contained in `set`.
pub fn largest_ideal_within(region: &Region, set: TileSet) -> TilePartition {
    let mut out = TileSet::EMPTY;
    // Tiles are sorted so that supports come first.
    for i in 0..region.len() {
        if set.contains(i) && region.below(i).is_subset(out) {
            out.insert(i);
        }
    }
    out
}

/// Let the tiles of `set` fall along each diagonal `r - c = const` to the
/// lowest positions; `None` if the result is not an ideal.
pub fn drop_diagonals(region: &Region, set: TileSet) -> Option<TilePartition> {
    let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
    for i in set.iter() {
        let t = region.tile(i);
        *counts.entry(t.r as i32 - t.c as i32).or_default() += 1;
    }
    let mut out = TileSet::EMPTY;
    for (d, m) in counts {
        let (r0, c0) = if d >= 0 { (d + 1, 1) } else { (1, 1 - d) };
        for j in 0..m as i32 {
            out.insert(region.index_at(r0 + j, c0 + j)?);
        }
    }
    region.is_partition(out).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::HermitianPair;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn trail_counts_and_shape() {
        assert_eq!(trails(1, 1), vec![Trail { tiles: vec![(1, 1)] }]);
        for (x, y) in [(3, 2), (4, 4), (2, 5)] {
            let ts = trails(x, y);
            assert_eq!(ts.len() as u64, binom((x + y - 2) as u64, (x - 1) as u64));
            assert!(ts.iter().all(Trail::is_well_formed));
        }
    }

    #[test]
    fn mu_lengths_in_full_rectangle() {
        let r = Region::new(HermitianPair::axa(7, 4).unwrap()).unwrap();
        let full = r.full();
        for t in trails(3, 4) {
            assert_eq!(mu_length(&r, &t, full), 6);
            assert_eq!(mu_length(&r, &t, TileSet::EMPTY), 0);
        }
    }

    #[test]
    fn right_trail_of_column_tile() {
        let r = Region::new(HermitianPair::axa(5, 2).unwrap()).unwrap();
        let t = right_trail(&r, r.full(), 3, 1);
        assert_eq!(t.tiles, vec![(3, 1), (2, 1), (1, 1)]);
        assert!(left_hook(&r, TileSet::EMPTY, 3, 2).is_empty());
    }

    #[test]
    fn left_and_right_trails_are_maximal() {
        let r = Region::new(HermitianPair::da(8).unwrap()).unwrap();
        let mu = r.from_row_lengths(&[1, 2, 3, 4, 5, 5, 4]).unwrap();
        let max = trails(7, 4).iter().map(|t| mu_length(&r, t, mu)).max().unwrap();
        let (lt, rt) = (left_trail(&r, mu, 7, 4), right_trail(&r, mu, 7, 4));
        assert!(lt.is_well_formed() && rt.is_well_formed());
        assert_eq!(mu_length(&r, &lt, mu), max);
        assert_eq!(mu_length(&r, &rt, mu), max);
        // Left keeps the column, right keeps the row, pointwise among maximal trails.
        for t in trails(7, 4).into_iter().filter(|t| mu_length(&r, t, mu) == max) {
            for i in 0..t.tiles.len() {
                assert!(t.tiles[i].1 <= lt.tiles[i].1);
                assert!(t.tiles[i].0 <= rt.tiles[i].0);
            }
        }
    }

    #[test]
    fn hole_figure_first_case() {
        let r = Region::new(HermitianPair::axa(11, 5).unwrap()).unwrap();
        let mu = r.from_row_lengths(&[5, 5, 4, 4, 4, 3, 1]).unwrap();
        let rh63 = right_hook(&r, mu, 6, 3);
        let rh54 = right_hook(&r, mu, 5, 4);
        assert_eq!(r.coords(rh63), vec![(6, 1), (6, 2), (6, 3)]);
        assert_eq!(r.coords(rh54), vec![(5, 1), (5, 2), (5, 3), (5, 4)]);
        let hole = hole_multiset(&r, mu, 6, 4).unwrap();
        assert_eq!(hole.len(), 7);
        assert_eq!(hole.max_multiplicity(), 1);
    }

    #[test]
    fn hole_figure_other_cases() {
        let r = Region::new(HermitianPair::da(8).unwrap()).unwrap();
        let mu = r.from_row_lengths(&[1, 2, 3, 4, 4, 3, 1]).unwrap();
        let hole = hole_multiset(&r, mu, 6, 4).unwrap();
        let coords: Vec<_> = hole.tiles.iter().map(|e| (e.r, e.c)).collect();
        assert_eq!(coords, vec![(5, 1), (5, 2), (5, 3), (5, 4), (6, 1), (6, 2), (6, 3)]);

        let rows = [1, 2, 3, 4, 5, 5];
        let r = Region::new(HermitianPair::da(8).unwrap()).unwrap();
        let mu = r.from_row_lengths(&rows).unwrap();
        let hole = hole_multiset(&r, mu, 6, 6).unwrap();
        assert_eq!(hole.len(), 10);
        assert_eq!(hole.max_multiplicity(), 1);

        let r = Region::new(HermitianPair::ca(7).unwrap()).unwrap();
        let mu = r.from_row_lengths(&rows).unwrap();
        let hole = hole_multiset(&r, mu, 6, 6).unwrap();
        assert_eq!(hole.len(), 10);
        assert!(hole.tiles.iter().all(|e| e.r == 6 && e.multiplicity == 2));
    }

    #[test]
    fn hooks_of_empty_and_generic() {
        let r = Region::new(HermitianPair::axa(5, 3).unwrap()).unwrap();
        assert!(hook_multiset(&r, TileSet::EMPTY, 1, 1).unwrap().is_empty());
        assert!(hook_multiset(&r, TileSet::EMPTY, 2, 2).is_err());
        let mu = r.from_row_lengths(&[3, 2]).unwrap();
        let hook = hook_multiset(&r, mu, 2, 3).unwrap();
        // T[1,3] has three tiles of mu, T[2,2] four; they share [1,1].
        assert_eq!(hook.len(), 6);
        assert_eq!(hook.multiplicity(1, 1), 2);
    }

    #[test]
    fn golden_spot_decoration() {
        let r = Region::new(HermitianPair::da(15).unwrap()).unwrap();
        let mu = r.from_row_lengths(&[1, 2, 3, 4, 5, 6, 7, 8, 8, 3, 1, 1, 1, 1]).unwrap();
        let d = omega_sigma(&r, mu, 6, 6).unwrap();
        assert_eq!(d.decorations.len(), 14);
        assert_eq!(d.ell, 7);
        assert_eq!(d.sigma_rows, vec![1, 2, 3, 4, 5, 4, 3, 2, 2, 1, 1, 1, 1, 1]);
        assert_eq!(d.omega_rows, Some(vec![1, 2, 3, 4, 5, 6, 6, 2, 2, 1, 1, 1, 1, 1]));
        assert_eq!(d.omega.unwrap().len(), mu.len() - 2 * d.ell - 1);
        let labels: Vec<String> = d.decorations.iter().map(|x| x.label.to_string()).collect();
        assert!(labels.contains(&"R+_3".to_string()) && labels.contains(&"A-_3".to_string()));
        assert!(d.sigma.is_subset(mu));
    }

    #[test]
    fn spot_without_decorations() {
        let r = Region::new(HermitianPair::da(6).unwrap()).unwrap();
        let mu = r.from_row_lengths(&[1, 2, 3]).unwrap();
        let d = omega_sigma(&r, mu, 3, 3).unwrap();
        assert_eq!(d.ell, 0);
        assert_eq!(d.omega, Some(mu.without(r.index_of(3, 3).unwrap())));
        assert!(omega_sigma(&r, mu, 2, 1).is_err());
        let ra = Region::new(HermitianPair::axa(3, 2).unwrap()).unwrap();
        assert!(omega_sigma(&ra, ra.full(), 2, 2).is_err());
    }
}
