//! Folding maps `A_{2n-1} -> B_n` and `D_{n+1} -> C_n`.
//!
//! Source and target regions have the same number of tiles and the same
//! support relation once tiles are matched by canonical position, so
//! partitions fold index-for-index. Parity paths of the target are defined
//! as the images of the source paths.

use std::collections::{BTreeMap, BTreeSet};

use crate::coxeter::{Family, HermitianPair, Node};
use crate::error::{Error, Result};
use crate::klpoly::{matrix_from_paths, DecompositionMatrix};
use crate::paths::{canonical_word, enumerate_paths, Path, PathStep, StepKind};
use crate::tiling::{Parity, Region, TileSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldMap {
    source: HermitianPair,
    target: HermitianPair,
    iota: BTreeMap<Node, Node>,
}

impl FoldMap {
    /// `(D_{n+1}, A_n) -> (C_n, A_{n-1})`: `s_0, s_1 -> s_1`, other nodes fixed.
    pub fn c_from_d(n: u8) -> Result<Self> {
        let target = HermitianPair::ca(n)?;
        let source = HermitianPair::da(n + 1)?;
        let mut iota = BTreeMap::from([(Node(0), Node(1)), (Node(1), Node(1))]);
        for j in 2..=n {
            iota.insert(Node(j), Node(j));
        }
        Ok(Self { source, target, iota })
    }

    /// `(A_{2n-1}, A_{2n-2}) -> (B_n, B_{n-1})`: `s_i -> s_{|n-i|+1}`, so
    /// `s_n` goes to the short node and `s_i`, `s_{2n-i}` share an image.
    pub fn b_from_a(n: u8) -> Result<Self> {
        let target = HermitianPair::bb(n)?;
        let source = HermitianPair::axa(2 * n - 1, 1)?;
        let iota = (1..2 * n).map(|i| (Node(i), Node(n.abs_diff(i) + 1))).collect();
        Ok(Self { source, target, iota })
    }

    pub fn for_target(pair: HermitianPair) -> Result<Self> {
        match pair.family() {
            Family::CA => Self::c_from_d(pair.n()),
            Family::BB => Self::b_from_a(pair.n()),
            _ => Err(Error::Precondition(format!("{pair} is not a folded pair"))),
        }
    }

    pub fn source(&self) -> HermitianPair {
        self.source
    }
    pub fn target(&self) -> HermitianPair {
        self.target
    }
    pub fn iota(&self, s: Node) -> Node {
        self.iota[&s]
    }
    pub fn node_map(&self) -> &BTreeMap<Node, Node> {
        &self.iota
    }

    pub fn regions(&self) -> Result<(Region, Region)> {
        Ok((Region::new(self.source)?, Region::new(self.target)?))
    }

    /// Tile `i` of the source matches tile `i` of the target: same supports
    /// and colours related by `iota`.
    pub fn check_regions(&self, src: &Region, tgt: &Region) -> bool {
        src.len() == tgt.len()
            && (0..src.len())
                .all(|i| src.below(i) == tgt.below(i) && self.iota(src.tile(i).colour) == tgt.tile(i).colour)
    }

    /// Each signed target colour comes from exactly one source colour.
    pub fn parity_rule_consistent(&self, src: &Region, tgt: &Region) -> bool {
        let mut seen: BTreeMap<(Node, u8), BTreeSet<Node>> = BTreeMap::new();
        for i in 0..tgt.len() {
            let t = tgt.tile(i);
            let sign = match t.parity {
                Parity::Plus => 1,
                Parity::Minus => 2,
                Parity::None => continue,
            };
            seen.entry((t.colour, sign)).or_default().insert(src.tile(i).colour);
        }
        seen.values().all(|s| s.len() == 1)
    }

    pub fn fold_partition(&self, lam: TileSet) -> TileSet {
        lam
    }

    pub fn unfold_partition(&self, lam: TileSet) -> TileSet {
        lam
    }

    /// Image of a source path; `None` if it is not a valid target path.
    pub fn fold_path(&self, tgt: &Region, path: &Path) -> Option<Path> {
        let mut cur = TileSet::EMPTY;
        let mut steps = Vec::with_capacity(path.steps.len());
        let mut word = Vec::with_capacity(path.word.len());
        for (st, &s) in path.steps.iter().zip(&path.word) {
            let t = self.iota(s);
            let ok = match st.kind {
                StepKind::AddUp | StepKind::AddDown => tgt.addable_of(cur, t) == Some(st.tile),
                StepKind::RemUp | StepKind::RemDown => tgt.removable_of(cur, t) == Some(st.tile),
            };
            if !ok {
                return None;
            }
            cur = match st.kind {
                StepKind::AddUp => cur.with(st.tile),
                StepKind::RemDown => cur.without(st.tile),
                _ => cur,
            };
            steps.push(PathStep { kind: st.kind, tile: st.tile });
            word.push(t);
        }
        Some(Path { word, steps, shape: cur, degree: path.degree })
    }

    /// `Path^{+-}(lam, t_mu)` for target partitions, as images of source paths.
    pub fn parity_paths(&self, src: &Region, tgt: &Region, lam: TileSet, mu: TileSet) -> Vec<Path> {
        enumerate_paths(src, self.unfold_partition(lam), self.unfold_partition(mu))
            .iter()
            .map(|p| self.fold_path(tgt, p).expect("folded path is valid"))
            .collect()
    }

    /// Decomposition matrix of the target, computed from source paths.
    pub fn folded_matrix(&self) -> Result<DecompositionMatrix> {
        let (src, tgt) = self.regions()?;
        if !self.check_regions(&src, &tgt) {
            return Err(Error::Precondition(format!("regions of {} and {} do not match", self.source, self.target)));
        }
        let src_poset = src.enumerate_partitions();
        let tgt_poset = tgt.enumerate_partitions();
        let mut d = matrix_from_paths(&src, &src_poset);
        let folded: Vec<TileSet> = d.order.iter().map(|&l| self.fold_partition(l)).collect();
        if folded != tgt_poset.elements() {
            return Err(Error::Precondition("folded posets differ".into()));
        }
        d.pair = self.target;
        d.order = folded;
        Ok(d)
    }

    /// The target word obtained from the source canonical word of `mu`.
    pub fn folded_word(&self, src: &Region, mu: TileSet) -> Vec<Node> {
        canonical_word(src, self.unfold_partition(mu)).into_iter().map(|s| self.iota(s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::canonical_word;

    fn folds() -> Vec<FoldMap> {
        let mut v = Vec::new();
        for n in 2..=5 {
            v.push(FoldMap::c_from_d(n).unwrap());
        }
        for n in 2..=4 {
            v.push(FoldMap::b_from_a(n).unwrap());
        }
        v
    }

    #[test]
    fn node_maps() {
        let f = FoldMap::c_from_d(4).unwrap();
        assert_eq!(f.iota(Node(0)), f.iota(Node(1)));
        let f = FoldMap::b_from_a(4).unwrap();
        for i in 1..8 {
            assert_eq!(f.iota(Node(i)), f.iota(Node(8 - i)));
        }
        assert_eq!(f.iota(Node(4)), Node(1));
        let image: BTreeSet<_> = f.node_map().values().copied().collect();
        assert_eq!(image.len(), 4);
    }

    #[test]
    fn regions_match() {
        for f in folds() {
            let (s, t) = f.regions().unwrap();
            assert!(f.check_regions(&s, &t), "{}", f.target());
            assert!(f.parity_rule_consistent(&s, &t), "{}", f.target());
        }
    }

    #[test]
    fn fork_tiles_fold_to_same_colour() {
        let f = FoldMap::c_from_d(4).unwrap();
        let (s, t) = f.regions().unwrap();
        for i in 0..s.len() {
            if s.tile(i).colour.0 <= 1 {
                assert_eq!(t.tile(i).colour, Node(1));
            }
        }
    }

    #[test]
    fn folded_words_are_target_words() {
        for f in folds() {
            let (s, t) = f.regions().unwrap();
            for &mu in s.enumerate_partitions().elements() {
                assert_eq!(f.folded_word(&s, mu), canonical_word(&t, mu));
            }
        }
    }

    #[test]
    fn parity_paths_injective_and_degree_preserving() {
        for f in folds() {
            let (s, t) = f.regions().unwrap();
            let poset = s.enumerate_partitions();
            for &mu in poset.elements() {
                for &lam in poset.elements() {
                    let src = enumerate_paths(&s, lam, mu);
                    let img = f.parity_paths(&s, &t, lam, mu);
                    assert_eq!(src.len(), img.len());
                    let distinct: BTreeSet<_> = img.iter().map(|p| format!("{:?}", p.steps)).collect();
                    assert_eq!(distinct.len(), img.len());
                    for (a, b) in src.iter().zip(&img) {
                        assert_eq!(a.degree, b.degree);
                        assert_eq!(b.shape, lam);
                    }
                }
            }
        }
    }

    #[test]
    fn plain_paths_overcount_in_type_c() {
        // Without the parity restriction, C_2 has an extra degree-zero path.
        let f = FoldMap::c_from_d(2).unwrap();
        let (s, t) = f.regions().unwrap();
        let poset = t.enumerate_partitions();
        let (a, c) = (poset.get(1), poset.get(3));
        let plain = enumerate_paths(&t, a, c);
        let parity = f.parity_paths(&s, &t, a, c);
        assert!(plain.len() > parity.len());
        assert!(plain.iter().any(|p| p.degree == 0));
    }
}
