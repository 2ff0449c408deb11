//! Reduced tableaux and light-leaves paths.
//!
//! A path walks along a reduced word. At each letter `s` the current shape
//! either gains or keeps its addable `s`-tile, or keeps or loses its
//! removable `s`-tile. Step degrees come from the generator degrees
//! (spot `+1`, fork `-1`, braid `0`):
//!
//! | step      | degree |
//! |-----------|--------|
//! | `AddUp`   | 0      |
//! | `AddDown` | +1     |
//! | `RemUp`   | -1     |
//! | `RemDown` | 0      |

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coxeter::{bond, HermitianPair, Node};
use crate::laurent::LaurentPoly;
use crate::tiling::{Region, TilePartition, TileSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    AddUp,
    AddDown,
    RemUp,
    RemDown,
}

impl StepKind {
    pub fn degree(self) -> i32 {
        match self {
            StepKind::AddUp | StepKind::RemDown => 0,
            StepKind::AddDown => 1,
            StepKind::RemUp => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathStep {
    pub kind: StepKind,
    /// Index of the tile in the region.
    pub tile: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub word: Vec<Node>,
    pub steps: Vec<PathStep>,
    pub shape: TilePartition,
    pub degree: i32,
}

impl Path {
    /// Shapes before the first step and after every step.
    pub fn shapes(&self) -> Vec<TileSet> {
        let mut cur = TileSet::EMPTY;
        let mut out = vec![cur];
        for st in &self.steps {
            cur = match st.kind {
                StepKind::AddUp => cur.with(st.tile),
                StepKind::RemDown => cur.without(st.tile),
                _ => cur,
            };
            out.push(cur);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedTableau {
    pub shape: TilePartition,
    /// Tiles in the order they are added.
    pub order: Vec<usize>,
}

impl ReducedTableau {
    pub fn word(&self, region: &Region) -> Vec<Node> {
        self.order.iter().map(|&i| region.tile(i).colour).collect()
    }
}

/// Linear extension sorting the tiles by `(r+c, r)`, which is the region's
/// own tile order.
pub fn canonical_tableau(lam: TilePartition) -> ReducedTableau {
    ReducedTableau { shape: lam, order: lam.iter().collect() }
}

pub fn canonical_word(region: &Region, lam: TilePartition) -> Vec<Node> {
    canonical_tableau(lam).word(region)
}

/// `Path(lam, t_mu)`: all paths along the canonical word of `mu` ending at `lam`.
pub fn enumerate_paths(region: &Region, lam: TilePartition, mu: TilePartition) -> Vec<Path> {
    enumerate_paths_along(region, lam, &canonical_word(region, mu))
}

/// All paths along `word` ending at `lam`, depth first with `AddUp` before
/// `AddDown` and `RemUp` before `RemDown`.
pub fn enumerate_paths_along(region: &Region, lam: TilePartition, word: &[Node]) -> Vec<Path> {
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(word.len());
    dfs(region, lam, word, TileSet::EMPTY, 0, &mut steps, &mut out);
    out
}

fn dfs(
    region: &Region,
    target: TileSet,
    word: &[Node],
    cur: TileSet,
    degree: i32,
    steps: &mut Vec<PathStep>,
    out: &mut Vec<Path>,
) {
    let pos = steps.len();
    if cur.symmetric_difference(target).len() > word.len() - pos {
        return;
    }
    if pos == word.len() {
        out.push(Path { word: word.to_vec(), steps: steps.clone(), shape: cur, degree });
        return;
    }
    let s = word[pos];
    let mut branch = |kind: StepKind, tile: usize, next: TileSet, steps: &mut Vec<PathStep>| {
        steps.push(PathStep { kind, tile });
        dfs(region, target, word, next, degree + kind.degree(), steps, out);
        steps.pop();
    };
    if let Some(t) = region.addable_of(cur, s) {
        branch(StepKind::AddUp, t, cur.with(t), steps);
        branch(StepKind::AddDown, t, cur, steps);
    }
    if let Some(t) = region.removable_of(cur, s) {
        branch(StepKind::RemUp, t, cur, steps);
        branch(StepKind::RemDown, t, cur.without(t), steps);
    }
}

pub fn paths_poly(paths: &[Path]) -> LaurentPoly {
    LaurentPoly::from_terms(paths.iter().map(|p| (p.degree, 1)))
}

/// `sum_{S in Path(lam, t_mu)} q^deg(S)`.
pub fn path_poly(region: &Region, lam: TilePartition, mu: TilePartition) -> LaurentPoly {
    paths_poly(&enumerate_paths(region, lam, mu))
}

/// Degree generating function of paths along `word`, for every end shape at
/// once. Agrees with [`path_poly`] and avoids materialising paths.
pub fn path_expansion(region: &Region, word: &[Node]) -> HashMap<TileSet, LaurentPoly> {
    let mut cur: HashMap<TileSet, LaurentPoly> = HashMap::new();
    cur.insert(TileSet::EMPTY, LaurentPoly::one());
    let q = LaurentPoly::q();
    let q_inv = LaurentPoly::monomial(1, -1);
    for &s in word {
        let mut next: HashMap<TileSet, LaurentPoly> = HashMap::new();
        for (shape, poly) in cur {
            if let Some(t) = region.addable_of(shape, s) {
                *next.entry(shape.with(t)).or_default() += &poly;
                *next.entry(shape).or_default() += &(&poly * &q);
            }
            if let Some(t) = region.removable_of(shape, s) {
                *next.entry(shape).or_default() += &(&poly * &q_inv);
                *next.entry(shape.without(t)).or_default() += &poly;
            }
        }
        next.retain(|_, p| !p.is_zero());
        cur = next;
    }
    cur
}

/// Linear extensions of `lam`, up to `limit` of them.
pub fn linear_extensions(region: &Region, lam: TilePartition, limit: usize) -> Vec<Vec<usize>> {
    fn go(region: &Region, lam: TileSet, cur: TileSet, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if cur == lam {
            out.push(acc.clone());
            return;
        }
        for i in lam.difference(cur).iter() {
            if region.is_addable(cur, i) {
                acc.push(i);
                go(region, lam, cur.with(i), acc, out, limit);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(region, lam, TileSet::EMPTY, &mut Vec::new(), &mut out, limit);
    out
}

struct Bonds(HashMap<(Node, Node), u8>);

impl Bonds {
    fn new(pair: HermitianPair, letters: &[Node]) -> Self {
        let mut map = HashMap::new();
        for &a in letters {
            for &b in letters {
                if a != b {
                    map.insert((a, b), bond(pair, a, b).expect("letters are nodes"));
                }
            }
        }
        Bonds(map)
    }
    fn m(&self, a: Node, b: Node) -> u8 {
        if a == b {
            1
        } else {
            self.0[&(a, b)]
        }
    }
}

fn commutation_class(bonds: &Bonds, start: &[Node]) -> HashSet<Vec<Node>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            if bonds.m(w[i], w[i + 1]) == 2 {
                let mut v = w.clone();
                v.swap(i, i + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

/// Positions `i` where a braid relation of length `m >= 3` applies to
/// `w[i..i+m]`.
fn braid_sites(bonds: &Bonds, w: &[Node]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        if i + 1 >= w.len() || w[i] == w[i + 1] {
            continue;
        }
        let m = bonds.m(w[i], w[i + 1]) as usize;
        if m < 3 || i + m > w.len() {
            continue;
        }
        if (0..m).all(|j| w[i + j] == w[i + (j % 2)]) {
            out.push((i, m));
        }
    }
    out
}

/// All reduced words of the element of `start`, via every braid move.
pub fn reduced_words(pair: HermitianPair, start: &[Node]) -> HashSet<Vec<Node>> {
    let mut letters: Vec<Node> = start.to_vec();
    letters.sort();
    letters.dedup();
    let bonds = Bonds::new(pair, &letters);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(w) = queue.pop_front() {
        let mut nbrs = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            if w[i] != w[i + 1] && bonds.m(w[i], w[i + 1]) == 2 {
                let mut v = w.clone();
                v.swap(i, i + 1);
                nbrs.push(v);
            }
        }
        for (i, m) in braid_sites(&bonds, &w) {
            let mut v = w.clone();
            let (a, b) = (w[i], w[i + 1]);
            for j in 0..m {
                v[i + j] = if j % 2 == 0 { b } else { a };
            }
            nbrs.push(v);
        }
        for v in nbrs {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// True iff every reduced word of `lam` is reachable from the canonical one
/// by commutation moves alone.
///
/// Commutation moves preserve the multiset of letters while a braid move of
/// length `m >= 3` changes it, so the commutation class is the full set of
/// reduced words exactly when no word in it contains a braid factor. The
/// class is the set of linear extensions of the word's heap; these are
/// walked through heap ideals, remembering only the last few letters.
pub fn commutation_class_check(region: &Region, lam: TilePartition) -> bool {
    let word = canonical_word(region, lam);
    let n = word.len();
    assert!(n <= 128);
    let mut letters = word.clone();
    letters.sort();
    letters.dedup();
    let bonds = Bonds::new(region.pair(), &letters);
    let max_m = letters
        .iter()
        .flat_map(|&a| letters.iter().map(move |&b| (a, b)))
        .map(|(a, b)| bonds.m(a, b) as usize)
        .max()
        .unwrap_or(1);
    // Covering relations of the heap: j must follow i when they do not commute.
    let mut pred = vec![0u128; n];
    for j in 0..n {
        for i in 0..j {
            if bonds.m(word[i], word[j]) != 2 {
                pred[j] |= 1 << i;
            }
        }
    }
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut seen: HashSet<(u128, Vec<Node>)> = HashSet::new();
    let mut stack = vec![(0u128, Vec::<Node>::new())];
    while let Some((ideal, tail)) = stack.pop() {
        if ideal == full || !seen.insert((ideal, tail.clone())) {
            continue;
        }
        for j in 0..n {
            if ideal >> j & 1 == 0 && pred[j] & !ideal == 0 {
                let mut t = tail.clone();
                t.push(word[j]);
                if t.len() > max_m {
                    t.remove(0);
                }
                if !braid_sites(&bonds, &t).is_empty() {
                    return false;
                }
                stack.push((ideal | 1 << j, t));
            }
        }
    }
    true
}

/// Reference version: enumerates the commutation class word by word.
pub fn commutation_class_check_naive(region: &Region, lam: TilePartition) -> bool {
    let start = canonical_word(region, lam);
    let mut letters = start.clone();
    letters.sort();
    letters.dedup();
    let bonds = Bonds::new(region.pair(), &letters);
    commutation_class(&bonds, &start).iter().all(|w| braid_sites(&bonds, w).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use crate::tiling::Region;

    fn region(p: HermitianPair) -> Region {
        Region::new(p).unwrap()
    }

    fn small_pairs() -> Vec<HermitianPair> {
        vec![
            HermitianPair::axa(2, 2).unwrap(),
            HermitianPair::axa(3, 2).unwrap(),
            HermitianPair::axa(4, 2).unwrap(),
            HermitianPair::axa(5, 3).unwrap(),
            HermitianPair::da(4).unwrap(),
            HermitianPair::da(5).unwrap(),
            HermitianPair::dd(4).unwrap(),
            HermitianPair::dd(5).unwrap(),
            HermitianPair::e6d5(),
        ]
    }

    #[test]
    fn canonical_words() {
        let r = region(HermitianPair::axa(2, 2).unwrap());
        let lam = r.from_coords(&[(1, 1), (1, 2)]).unwrap();
        assert_eq!(canonical_word(&r, lam), vec![Node(2), Node(1)]);
        assert!(canonical_tableau(TileSet::EMPTY).order.is_empty());
        let r = region(HermitianPair::axa(3, 2).unwrap());
        assert_eq!(canonical_word(&r, r.full()), vec![Node(2), Node(1), Node(3), Node(2)]);
        let sys = CoxeterSystem::new(r.pair());
        assert_eq!(sys.word_length(&canonical_word(&r, r.full())).unwrap(), (4, true));
    }

    #[test]
    fn axa22_paths() {
        let r = region(HermitianPair::axa(2, 2).unwrap());
        let a = TileSet::single(0);
        let full = r.full();
        let ps = enumerate_paths(&r, a, full);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].steps[0].kind, StepKind::AddUp);
        assert_eq!(ps[0].steps[1].kind, StepKind::AddDown);
        assert_eq!(ps[0].degree, 1);
        assert!(enumerate_paths(&r, TileSet::EMPTY, full).is_empty());
        assert_eq!(path_poly(&r, a, full), LaurentPoly::q());
        assert_eq!(path_poly(&r, TileSet::EMPTY, a), LaurentPoly::q());
        let own = enumerate_paths(&r, full, full);
        assert_eq!(own.len(), 1);
        assert!(own[0].steps.iter().all(|s| s.kind == StepKind::AddUp));
    }

    #[test]
    fn diagonal_is_one_and_positivity() {
        for p in small_pairs() {
            let r = region(p);
            let poset = r.enumerate_partitions();
            for &mu in poset.elements() {
                for &lam in poset.elements() {
                    let ps = enumerate_paths(&r, lam, mu);
                    if lam == mu {
                        assert_eq!(paths_poly(&ps), LaurentPoly::one());
                        continue;
                    }
                    for path in &ps {
                        assert!(path.degree >= 1, "{p}");
                    }
                    if !ps.is_empty() {
                        assert!(lam.is_subset(mu), "{p}: support");
                    }
                    // Simply-laced types have at most one path.
                    assert!(ps.len() <= 1, "{p}");
                }
            }
        }
    }

    #[test]
    fn paths_are_well_formed() {
        let r = region(HermitianPair::axa(4, 2).unwrap());
        let poset = r.enumerate_partitions();
        for &mu in poset.elements() {
            for &lam in poset.elements() {
                for path in enumerate_paths(&r, lam, mu) {
                    assert_eq!(path.steps.len(), path.word.len());
                    assert_eq!(path.shape, lam);
                    for (st, s) in path.steps.iter().zip(&path.word) {
                        assert_eq!(r.tile(st.tile).colour, *s);
                    }
                    for sh in path.shapes() {
                        assert!(r.is_partition(sh));
                    }
                    assert_eq!(path.degree, path.steps.iter().map(|s| s.kind.degree()).sum::<i32>());
                }
            }
        }
    }

    #[test]
    fn expansion_matches_enumeration() {
        for p in small_pairs() {
            let r = region(p);
            let poset = r.enumerate_partitions();
            for &mu in poset.elements() {
                let exp = path_expansion(&r, &canonical_word(&r, mu));
                for &lam in poset.elements() {
                    let expect = path_poly(&r, lam, mu);
                    assert_eq!(exp.get(&lam).cloned().unwrap_or_default(), expect);
                }
            }
        }
    }

    #[test]
    fn reduced_word_independence() {
        for p in small_pairs() {
            let r = region(p);
            let poset = r.enumerate_partitions();
            for &mu in poset.elements() {
                let canonical = path_expansion(&r, &canonical_word(&r, mu));
                for order in linear_extensions(&r, mu, 40) {
                    let word: Vec<Node> = order.iter().map(|&i| r.tile(i).colour).collect();
                    let mut other = path_expansion(&r, &word);
                    other.retain(|_, v| !v.is_zero());
                    assert_eq!(other, canonical, "{p}");
                }
            }
        }
    }

    #[test]
    fn cell_dimension_symmetry() {
        let r = region(HermitianPair::da(5).unwrap());
        let poset = r.enumerate_partitions();
        let counts: Vec<Vec<usize>> = poset
            .elements()
            .iter()
            .map(|&mu| poset.elements().iter().map(|&lam| enumerate_paths(&r, lam, mu).len()).collect())
            .collect();
        for m in 0..poset.len() {
            for n in 0..poset.len() {
                let a: usize = (0..poset.len()).map(|l| counts[m][l] * counts[n][l]).sum();
                let b: usize = (0..poset.len()).map(|l| counts[n][l] * counts[m][l]).sum();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn full_commutativity() {
        let r = region(HermitianPair::axa(3, 2).unwrap());
        assert!(commutation_class_check(&r, r.full()));
        assert!(commutation_class_check(&r, TileSet::single(0)));
        for p in small_pairs() {
            let r = region(p);
            for &lam in r.enumerate_partitions().elements() {
                assert!(commutation_class_check(&r, lam), "{p}");
            }
        }
    }

    #[test]
    fn heap_walk_matches_naive() {
        for p in small_pairs() {
            let r = region(p);
            for &lam in r.enumerate_partitions().elements() {
                assert_eq!(commutation_class_check(&r, lam), commutation_class_check_naive(&r, lam), "{p}");
            }
        }
    }

    #[test]
    fn commutation_class_equals_braid_closure() {
        for p in [HermitianPair::axa(3, 2).unwrap(), HermitianPair::dd(4).unwrap(), HermitianPair::ca(3).unwrap()] {
            let r = region(p);
            for &lam in r.enumerate_partitions().elements() {
                let w = canonical_word(&r, lam);
                let all = reduced_words(p, &w);
                let exts = linear_extensions(&r, lam, usize::MAX);
                let words: HashSet<Vec<Node>> =
                    exts.iter().map(|o| o.iter().map(|&i| r.tile(i).colour).collect()).collect();
                assert_eq!(all, words, "{p}");
            }
        }
    }

    #[test]
    fn braid_detection() {
        // s1 s2 s1 in type A is not fully commutative.
        let p = HermitianPair::axa(3, 2).unwrap();
        let w = [Node(1), Node(2), Node(1)];
        assert_eq!(reduced_words(p, &w).len(), 2);
    }
}
