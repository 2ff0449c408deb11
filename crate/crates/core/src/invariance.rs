//! Combinatorial invariance on closed subsets of Bruhat posets.
//!
//! A subset is closed when it is the intersection of an up-closed
//! (saturated) and a down-closed (co-saturated) set, i.e. when it is convex.
//! Poset-isomorphic closed subsets of Hermitian pairs should carry equal
//! decomposition submatrices; [`invariance_scan`] checks this exhaustively
//! up to a size bound.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

pub use crate::folding::FoldMap;

use crate::coxeter::{HermitianPair, Node};
use crate::error::{Error, Result};
use crate::hecke_oracle::oracle_matrix;
use crate::klpoly::{decomposition_matrix, DecompositionMatrix};
use crate::tiling::{BruhatPoset, Region};

/// Poset ids are packed into a `u128`, so closed subsets live in posets of
/// at most this many elements.
pub const MAX_POSET: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClosedSubset {
    pub pair: HermitianPair,
    /// Poset ids, ascending.
    pub members: Vec<usize>,
    /// Witness `E`: the up-closure, a saturated set.
    pub saturated: Vec<usize>,
    /// Witness `F`: the down-closure, a co-saturated set.
    pub cosaturated: Vec<usize>,
}

fn ids(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Strict comparability masks of a poset: `below[i]` and `above[i]`.
struct Relations {
    below: Vec<u128>,
    above: Vec<u128>,
}

impl Relations {
    fn new(poset: &BruhatPoset) -> Result<Self> {
        let n = poset.len();
        if n > MAX_POSET {
            return Err(Error::Precondition(format!("poset of {} has {n} > {MAX_POSET} elements", poset.pair())));
        }
        let mask = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&i| f(i)).fold(0u128, |m, i| m | 1 << i);
        let below = (0..n).map(|b| mask(&|a| a != b && poset.leq(a, b))).collect();
        let above = (0..n).map(|a| mask(&|b| a != b && poset.leq(a, b))).collect();
        Ok(Self { below, above })
    }

    fn is_convex(&self, mask: u128) -> bool {
        ids(mask).into_iter().all(|a| {
            // Elements above `a` that lie below some member must be members.
            let mut between = 0;
            for b in ids(self.above[a] & mask) {
                between |= self.above[a] & self.below[b];
            }
            between & !mask == 0
        })
    }

    fn up(&self, mask: u128) -> u128 {
        ids(mask).into_iter().fold(mask, |acc, a| acc | self.above[a])
    }

    fn down(&self, mask: u128) -> u128 {
        ids(mask).into_iter().fold(mask, |acc, a| acc | self.below[a])
    }
}

impl ClosedSubset {
    /// `None` unless `members` is convex.
    pub fn new(poset: &BruhatPoset, members: &[usize]) -> Result<Option<Self>> {
        let rel = Relations::new(poset)?;
        let mask = members.iter().fold(0u128, |m, &i| m | 1 << i);
        Ok(Self::from_mask(poset.pair(), &rel, mask))
    }

    fn from_mask(pair: HermitianPair, rel: &Relations, mask: u128) -> Option<Self> {
        rel.is_convex(mask).then(|| ClosedSubset {
            pair,
            members: ids(mask),
            saturated: ids(rel.up(mask)),
            cosaturated: ids(rel.down(mask)),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `E ∩ F` reproduces the members.
    pub fn witnesses_hold(&self) -> bool {
        let f: HashSet<_> = self.cosaturated.iter().collect();
        self.saturated.iter().filter(|x| f.contains(x)).copied().collect::<Vec<_>>() == self.members
    }

    pub fn whole(poset: &BruhatPoset) -> Self {
        let all: Vec<usize> = (0..poset.len()).collect();
        ClosedSubset { pair: poset.pair(), members: all.clone(), saturated: all.clone(), cosaturated: all }
    }
}

/// The interval `[lam, mu]` of poset ids; `None` if `lam` is not below `mu`.
pub fn interval(poset: &BruhatPoset, lam: usize, mu: usize) -> Option<ClosedSubset> {
    if !poset.leq(lam, mu) {
        return None;
    }
    let members: Vec<usize> = (0..poset.len()).filter(|&x| poset.leq(lam, x) && poset.leq(x, mu)).collect();
    let all: Vec<usize> = (0..poset.len()).collect();
    Some(ClosedSubset {
        pair: poset.pair(),
        saturated: all.iter().copied().filter(|&x| poset.leq(lam, x)).collect(),
        cosaturated: all.into_iter().filter(|&x| poset.leq(x, mu)).collect(),
        members,
    })
}

/// All nonempty closed subsets with at most `max_size` elements. A closed
/// set minus a maximal element is closed, so sets grow one element at a time.
pub fn closed_subsets(poset: &BruhatPoset, max_size: usize) -> Result<Vec<ClosedSubset>> {
    let rel = Relations::new(poset)?;
    let n = poset.len();
    let mut all: Vec<u128> = Vec::new();
    let mut level: Vec<u128> = (0..n).map(|i| 1u128 << i).collect();
    let mut size = 1;
    while size <= max_size && !level.is_empty() {
        all.extend(&level);
        if size == max_size {
            break;
        }
        let next: HashSet<u128> = level
            .par_iter()
            .flat_map_iter(|&m| {
                let rel = &rel;
                (0..n).filter(move |&x| m >> x & 1 == 0).map(move |x| m | 1 << x).filter(move |&m2| {
                    // New element must be maximal in the new set.
                    let x = (m2 & !m).trailing_zeros() as usize;
                    rel.above[x] & m == 0 && rel.is_convex(m2)
                })
            })
            .collect();
        level = next.into_iter().collect();
        level.sort_by_key(|&m| (m.count_ones(), ids(m)));
        size += 1;
    }
    Ok(all.into_iter().map(|m| ClosedSubset::from_mask(poset.pair(), &rel, m).unwrap()).collect())
}

/// The induced order on a closed subset, in local indices.
#[derive(Clone, Debug)]
pub struct SubPoset {
    pub ids: Vec<usize>,
    /// `less[i]`: local indices strictly below `i`.
    less: Vec<u128>,
    greater: Vec<u128>,
    lower_covers: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

const REFINEMENT_ROUNDS: usize = 4;

impl SubPoset {
    pub fn new(poset: &BruhatPoset, subset: &ClosedSubset) -> Self {
        let ids = subset.members.clone();
        let n = ids.len();
        assert!(n <= 128);
        let mut less = vec![0u128; n];
        let mut greater = vec![0u128; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && poset.leq(ids[i], ids[j]) {
                    less[j] |= 1 << i;
                    greater[i] |= 1 << j;
                }
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for j in 0..n {
            for i in ids128(less[j]) {
                if less[j] & greater[i] == 0 {
                    lower_covers[j].push(i);
                    upper_covers[i].push(j);
                }
            }
        }
        let mut labels: Vec<u64> = (0..n)
            .map(|i| {
                hash_of(&(less[i].count_ones(), greater[i].count_ones(), lower_covers[i].len(), upper_covers[i].len()))
            })
            .collect();
        for _ in 0..REFINEMENT_ROUNDS {
            labels = (0..n)
                .map(|i| {
                    let mut lo: Vec<u64> = lower_covers[i].iter().map(|&j| labels[j]).collect();
                    let mut hi: Vec<u64> = upper_covers[i].iter().map(|&j| labels[j]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    hash_of(&(labels[i], lo, hi))
                })
                .collect();
        }
        Self { ids, less, greater, lower_covers, labels }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Isomorphism invariant: size, cover count and refined labels.
    pub fn invariant(&self) -> u64 {
        let mut l = self.labels.clone();
        l.sort_unstable();
        let edges: usize = self.lower_covers.iter().map(Vec::len).sum();
        hash_of(&(self.len(), edges, l))
    }

    /// Local cover edges `(lower, upper)`.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lower_covers.iter().enumerate().flat_map(|(j, v)| v.iter().map(move |&i| (i, j)))
    }
}

fn ids128(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |&i| mask >> i & 1 == 1)
}

/// Local isomorphism: `iso[i]` is the image of local element `i`.
pub type Iso = Vec<usize>;

/// Calls `visit` on each isomorphism until it returns `false`.
fn for_each_iso(a: &SubPoset, b: &SubPoset, visit: &mut dyn FnMut(&Iso) -> bool) {
    let n = a.len();
    if n != b.len() || a.invariant() != b.invariant() {
        return;
    }
    let mut by_label: HashMap<u64, Vec<usize>> = HashMap::new();
    for j in 0..n {
        by_label.entry(b.labels[j]).or_default().push(j);
    }
    // Most constrained elements first, ties by local index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (by_label.get(&a.labels[i]).map_or(0, Vec::len), i));
    let mut iso = vec![usize::MAX; n];
    let mut used = 0u128;

    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        order: &[usize],
        a: &SubPoset,
        b: &SubPoset,
        by_label: &HashMap<u64, Vec<usize>>,
        iso: &mut Vec<usize>,
        used: &mut u128,
        visit: &mut dyn FnMut(&Iso) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(iso);
        }
        let i = order[depth];
        let Some(cands) = by_label.get(&a.labels[i]) else { return true };
        for &j in cands {
            if *used >> j & 1 == 1 {
                continue;
            }
            let consistent = order[..depth].iter().all(|&k| {
                let m = iso[k];
                (a.less[i] >> k & 1) == (b.less[j] >> m & 1) && (a.greater[i] >> k & 1) == (b.greater[j] >> m & 1)
            });
            if !consistent {
                continue;
            }
            iso[i] = j;
            *used |= 1 << j;
            let cont = go(depth + 1, order, a, b, by_label, iso, used, visit);
            *used &= !(1 << j);
            iso[i] = usize::MAX;
            if !cont {
                return false;
            }
        }
        true
    }
    go(0, &order, a, b, &by_label, &mut iso, &mut used, visit);
}

/// Some order isomorphism, if one exists. Deterministic.
pub fn poset_iso(a: &SubPoset, b: &SubPoset) -> Option<Iso> {
    let mut found = None;
    for_each_iso(a, b, &mut |iso| {
        found = Some(iso.clone());
        false
    });
    found
}

/// Up to `limit` automorphisms.
pub fn automorphisms(a: &SubPoset, limit: usize) -> Vec<Iso> {
    let mut out = Vec::new();
    for_each_iso(a, a, &mut |iso| {
        out.push(iso.clone());
        out.len() < limit
    });
    out
}

/// Whether `map` preserves and reflects the order.
pub fn is_order_isomorphism(a: &SubPoset, b: &SubPoset, map: &[usize]) -> bool {
    let n = a.len();
    n == b.len()
        && map.len() == n
        && map.iter().collect::<HashSet<_>>().len() == n
        && map.iter().all(|&j| j < n)
        && (0..n).all(|i| (0..n).all(|k| (a.less[i] >> k & 1) == (b.less[map[i]] >> map[k] & 1)))
}

fn cover_colour(poset: &BruhatPoset, lower: usize, upper: usize) -> Option<Node> {
    poset.cover_between(lower, upper).map(|c| c.colour)
}

/// Within every interval of `a`, cover-edge colours correspond bijectively
/// under `map`: like-coloured tiles of a skew shape go to like-coloured
/// tiles. Fails if `map` does not send covers to covers.
pub fn colour_correspondence(
    pa: &BruhatPoset,
    a: &SubPoset,
    pb: &BruhatPoset,
    b: &SubPoset,
    map: &[usize],
) -> Result<bool> {
    for p in [pa.pair(), pb.pair()] {
        if !p.is_simply_laced() {
            return Err(Error::NotSimplyLaced(p));
        }
    }
    let mut edges = Vec::new();
    for (lo, hi) in a.covers() {
        let ca = cover_colour(pa, a.ids[lo], a.ids[hi]).expect("local covers are covers");
        let Some(cb) = cover_colour(pb, b.ids[map[lo]], b.ids[map[hi]]) else { return Ok(false) };
        edges.push((lo, hi, ca, cb));
    }
    let leq = |x: usize, y: usize| x == y || a.less[y] >> x & 1 == 1;
    for y in 0..a.len() {
        for x in ids128(a.less[y]) {
            let mut fwd: HashMap<Node, Node> = HashMap::new();
            let mut bwd: HashMap<Node, Node> = HashMap::new();
            for &(lo, hi, ca, cb) in &edges {
                if leq(x, lo)
                    && leq(hi, y)
                    && (*fwd.entry(ca).or_insert(cb) != cb || *bwd.entry(cb).or_insert(ca) != ca)
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `D[x][y] = D'[map x][map y]` on the subsets.
pub fn invariance_check(
    da: &DecompositionMatrix,
    a: &SubPoset,
    db: &DecompositionMatrix,
    b: &SubPoset,
    map: &[usize],
) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|k| da.get(a.ids[i], a.ids[k]) == db.get(b.ids[map[i]], b.ids[map[k]])))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanEntry {
    pub pair_a: HermitianPair,
    /// Members as row lengths.
    #[serde(rename = "piA")]
    pub subset_a: Vec<Vec<usize>>,
    pub pair_b: HermitianPair,
    #[serde(rename = "piB")]
    pub subset_b: Vec<Vec<usize>>,
    /// `iso[i]` is the index in `subset_b` of the image of `subset_a[i]`.
    pub iso: Iso,
    pub matrices_equal: bool,
    pub colours_correspond: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanReport {
    pub subsets: usize,
    pub classes: usize,
    pub comparisons: usize,
    pub automorphisms_checked: usize,
    /// Classes whose automorphism enumeration hit the limit.
    pub truncated_classes: usize,
    pub matrix_mismatches: usize,
    pub colour_failures: usize,
    /// Comparisons against the first subset of each class, plus any
    /// automorphism failures (recorded with `pair_a == pair_b`).
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.matrix_mismatches == 0 && self.colour_failures == 0
    }
}

pub const AUTOMORPHISM_LIMIT: usize = 5040;

struct PairData {
    region: Region,
    poset: BruhatPoset,
    matrix: DecompositionMatrix,
}

struct Item {
    pair: usize,
    sub: SubPoset,
}

/// Every isomorphism class of closed subsets (size `<= max_size`) across
/// `pairs` is compared against its first member, and every automorphism of
/// that member is checked; together these cover all isomorphisms within
/// the class.
pub fn invariance_scan(pairs: &[HermitianPair], max_size: usize) -> Result<ScanReport> {
    let data: Vec<PairData> = pairs
        .par_iter()
        .map(|&p| {
            let region = Region::new(p)?;
            let poset = region.enumerate_partitions();
            let matrix = decomposition_matrix(p)?;
            Ok(PairData { region, poset, matrix })
        })
        .collect::<Result<_>>()?;
    let mut items = Vec::new();
    for (k, d) in data.iter().enumerate() {
        for s in closed_subsets(&d.poset, max_size)? {
            items.push(Item { pair: k, sub: SubPoset::new(&d.poset, &s) });
        }
    }
    let mut buckets: BTreeMap<u64, Vec<&Item>> = BTreeMap::new();
    for it in &items {
        buckets.entry(it.sub.invariant()).or_default().push(it);
    }
    let simply = |k: usize| pairs[k].is_simply_laced();
    let rows = |it: &Item| {
        let d = &data[it.pair];
        it.sub.ids.iter().map(|&i| d.region.row_lengths(d.poset.get(i))).collect::<Vec<_>>()
    };
    let entry = |a: &Item, b: &Item, iso: &Iso| -> Result<ScanEntry> {
        let (da, db) = (&data[a.pair], &data[b.pair]);
        let colours_correspond = if simply(a.pair) && simply(b.pair) {
            colour_correspondence(&da.poset, &a.sub, &db.poset, &b.sub, iso)?
        } else {
            true
        };
        Ok(ScanEntry {
            pair_a: pairs[a.pair],
            subset_a: rows(a),
            pair_b: pairs[b.pair],
            subset_b: rows(b),
            iso: iso.clone(),
            matrices_equal: invariance_check(&da.matrix, &a.sub, &db.matrix, &b.sub, iso),
            colours_correspond,
        })
    };

    struct BucketResult {
        classes: usize,
        comparisons: usize,
        autos: usize,
        truncated: usize,
        entries: Vec<ScanEntry>,
    }
    let results: Vec<BucketResult> = buckets
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|bucket| -> Result<BucketResult> {
            let mut reps: Vec<&Item> = Vec::new();
            let mut out = BucketResult { classes: 0, comparisons: 0, autos: 0, truncated: 0, entries: Vec::new() };
            for it in bucket {
                let hit = reps.iter().find_map(|r| poset_iso(&it.sub, &r.sub).map(|iso| (*r, iso)));
                match hit {
                    Some((r, iso)) => {
                        out.comparisons += 1;
                        out.entries.push(entry(it, r, &iso)?);
                    }
                    None => {
                        out.classes += 1;
                        let autos = automorphisms(&it.sub, AUTOMORPHISM_LIMIT);
                        out.autos += autos.len();
                        if autos.len() == AUTOMORPHISM_LIMIT {
                            out.truncated += 1;
                        }
                        for iso in &autos {
                            let e = entry(it, it, iso)?;
                            if !e.matrices_equal || !e.colours_correspond {
                                out.entries.push(e);
                            }
                        }
                        reps.push(it);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut report = ScanReport { subsets: items.len(), ..Default::default() };
    for r in results {
        report.classes += r.classes;
        report.comparisons += r.comparisons;
        report.automorphisms_checked += r.autos;
        report.truncated_classes += r.truncated;
        report.entries.extend(r.entries);
    }
    report.matrix_mismatches = report.entries.iter().filter(|e| !e.matrices_equal).count();
    report.colour_failures = report.entries.iter().filter(|e| !e.colours_correspond).count();
    Ok(report)
}

/// Oracle matrices of source and target coincide under the fold, and the
/// regions match tile for tile.
pub fn folded_oracles_agree(fold: &FoldMap) -> Result<bool> {
    let (src, tgt) = fold.regions()?;
    let a = oracle_matrix(fold.source())?;
    let b = oracle_matrix(fold.target())?;
    let order_ok = a.order.iter().map(|&l| fold.fold_partition(l)).eq(b.order.iter().copied());
    Ok(fold.check_regions(&src, &tgt) && order_ok && a.entries == b.entries)
}
