//! Dynkin data for the seven Hermitian symmetric families and an integral
//! reflection representation used as a length oracle.
//!
//! Node numbering:
//! - `AxA(n,k)`: type `A_n`, nodes `1..=n` in a chain, non-parabolic node `k`.
//! - `CA(n)`, `BB(n)`: nodes `1..=n` in a chain with the double bond between
//!   `1` and `2`. Node `1` is long in type C and short in type B. The
//!   non-parabolic node is `1` for `CA` and `n` for `BB`.
//! - `DA(n)`, `DD(n)`: type `D_n` with fork nodes `0` and `1` both attached to
//!   `2`, then the chain `2..=n-1`. Non-parabolic node `0` for `DA`, `n-1` for `DD`.
//! - `E6D5`: chain `1..=5` with `6` attached to `3`; non-parabolic `1`.
//! - `E7E6`: chain `1..=6` with `7` attached to `4`; non-parabolic `1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple reflection, identified by its diagram label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Node(pub u8);

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    AxA,
    CA,
    BB,
    DA,
    DD,
    E6D5,
    E7E6,
}

/// One of the classified pairs `(W, P)`. Only constructible in a valid state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HermitianPair {
    family: Family,
    n: u8,
    k: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeLabel {
    pub index: Node,
    pub parabolic: bool,
}

impl HermitianPair {
    pub fn new(family: Family, n: u8, k: u8) -> Result<Self> {
        let ok = match family {
            Family::AxA => n >= 1 && k >= 1 && k <= n,
            Family::CA | Family::BB | Family::DA => n >= 2 && k == 0,
            // D_3/D_2 is the smallest member; D_2/D_1 would have index 2, not 2n.
            Family::DD => n >= 3 && k == 0,
            Family::E6D5 => n == 6 && k == 0,
            Family::E7E6 => n == 7 && k == 0,
        };
        if ok {
            Ok(Self { family, n, k })
        } else {
            Err(Error::InvalidPair(format!("{family:?} with n={n}, k={k}")))
        }
    }

    pub fn axa(n: u8, k: u8) -> Result<Self> {
        Self::new(Family::AxA, n, k)
    }
    pub fn ca(n: u8) -> Result<Self> {
        Self::new(Family::CA, n, 0)
    }
    pub fn bb(n: u8) -> Result<Self> {
        Self::new(Family::BB, n, 0)
    }
    pub fn da(n: u8) -> Result<Self> {
        Self::new(Family::DA, n, 0)
    }
    pub fn dd(n: u8) -> Result<Self> {
        Self::new(Family::DD, n, 0)
    }
    pub fn e6d5() -> Self {
        Self { family: Family::E6D5, n: 6, k: 0 }
    }
    pub fn e7e6() -> Self {
        Self { family: Family::E7E6, n: 7, k: 0 }
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn n(&self) -> u8 {
        self.n
    }
    /// Split parameter; zero outside the `AxA` family.
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn is_simply_laced(&self) -> bool {
        !matches!(self.family, Family::CA | Family::BB)
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn nonparabolic(&self) -> Node {
        Node(match self.family {
            Family::AxA => self.k,
            Family::CA | Family::E6D5 | Family::E7E6 => 1,
            Family::BB => self.n,
            Family::DA => 0,
            Family::DD => self.n - 1,
        })
    }

    /// Directory-safe identifier, e.g. `A-n8-k5`.
    pub fn slug(&self) -> String {
        match self.family {
            Family::AxA => format!("A-n{}-k{}", self.n, self.k),
            Family::CA => format!("C-n{}", self.n),
            Family::BB => format!("B-n{}", self.n),
            Family::DA => format!("DA-n{}", self.n),
            Family::DD => format!("DD-n{}", self.n),
            Family::E6D5 => "E6D5".into(),
            Family::E7E6 => "E7E6".into(),
        }
    }
}

/// Printed in the pair-spec syntax accepted by [`FromStr`].
impl fmt::Display for HermitianPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::AxA => write!(f, "A:n={},k={}", self.n, self.k),
            Family::CA => write!(f, "C:n={}", self.n),
            Family::BB => write!(f, "B:n={}", self.n),
            Family::DA => write!(f, "D/A:n={}", self.n),
            Family::DD => write!(f, "D/D:n={}", self.n),
            Family::E6D5 => f.write_str("E6/D5"),
            Family::E7E6 => f.write_str("E7/E6"),
        }
    }
}

impl FromStr for HermitianPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PairSpec(s.to_string());
        let s_trim = s.trim();
        match s_trim {
            "E6/D5" => return Ok(Self::e6d5()),
            "E7/E6" => return Ok(Self::e7e6()),
            _ => {}
        }
        let (head, params) = s_trim.split_once(':').ok_or_else(bad)?;
        let mut n = None;
        let mut k = None;
        for kv in params.split(',') {
            let (key, val) = kv.split_once('=').ok_or_else(bad)?;
            let val: u8 = val.trim().parse().map_err(|_| bad())?;
            let slot = match key.trim() {
                "n" => &mut n,
                "k" => &mut k,
                _ => return Err(bad()),
            };
            if slot.replace(val).is_some() {
                return Err(bad());
            }
        }
        let n = n.ok_or_else(bad)?;
        let family = match head.trim() {
            "A" => Family::AxA,
            "C" => Family::CA,
            "B" => Family::BB,
            "D/A" => Family::DA,
            "D/D" => Family::DD,
            _ => return Err(bad()),
        };
        let k = match (family, k) {
            (Family::AxA, Some(k)) => k,
            (Family::AxA, None) => return Err(bad()),
            (_, Some(_)) => return Err(bad()),
            (_, None) => 0,
        };
        Self::new(family, n, k)
    }
}

impl Serialize for HermitianPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HermitianPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Node labels in deterministic order, with the non-parabolic node marked.
pub fn nodes(pair: HermitianPair) -> Vec<NodeLabel> {
    let np = pair.nonparabolic();
    node_indices(pair).into_iter().map(|index| NodeLabel { index, parabolic: index != np }).collect()
}

fn node_indices(pair: HermitianPair) -> Vec<Node> {
    let n = pair.n;
    match pair.family {
        Family::AxA | Family::CA | Family::BB | Family::E6D5 | Family::E7E6 => (1..=n).map(Node).collect(),
        Family::DA | Family::DD => (0..n).map(Node).collect(),
    }
}

/// Dynkin edges `(s, t, m)` with `m` the bond order (3 or 4).
pub fn edges(pair: HermitianPair) -> Vec<(Node, Node, u8)> {
    let n = pair.n;
    let chain = |from: u8, to: u8| (from..to).map(|i| (Node(i), Node(i + 1), 3)).collect::<Vec<_>>();
    match pair.family {
        Family::AxA => chain(1, n),
        Family::CA | Family::BB => {
            let mut e = vec![(Node(1), Node(2), 4)];
            e.extend(chain(2, n));
            e
        }
        Family::DA | Family::DD => {
            // D_2 is A_1 x A_1: no edges.
            if n < 3 {
                return Vec::new();
            }
            let mut e = vec![(Node(0), Node(2), 3), (Node(1), Node(2), 3)];
            e.extend(chain(2, n - 1));
            e
        }
        Family::E6D5 => {
            let mut e = chain(1, 5);
            e.push((Node(3), Node(6), 3));
            e
        }
        Family::E7E6 => {
            let mut e = chain(1, 6);
            e.push((Node(4), Node(7), 3));
            e
        }
    }
}

pub fn has_node(pair: HermitianPair, s: Node) -> bool {
    node_indices(pair).contains(&s)
}

/// Coxeter bond order `m(s,t)`.
pub fn bond(pair: HermitianPair, s: Node, t: Node) -> Result<u8> {
    for x in [s, t] {
        if !has_node(pair, x) {
            return Err(Error::UnknownNode(x, pair));
        }
    }
    if s == t {
        return Err(Error::SameNode(s));
    }
    Ok(edges(pair).into_iter().find(|&(a, b, _)| (a, b) == (s, t) || (a, b) == (t, s)).map_or(2, |(_, _, m)| m))
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn order_a(n: u128) -> u128 {
    factorial(n + 1)
}
fn order_b(n: u128) -> u128 {
    (1u128 << n) * factorial(n)
}
fn order_d(n: u128) -> u128 {
    (1u128 << (n - 1)) * factorial(n)
}

/// `|W|` by closed formula.
pub fn group_order(pair: HermitianPair) -> u128 {
    let n = pair.n as u128;
    match pair.family {
        Family::AxA => order_a(n),
        Family::CA | Family::BB => order_b(n),
        Family::DA | Family::DD => order_d(n),
        Family::E6D5 => 51_840,
        Family::E7E6 => 2_903_040,
    }
}

/// `|W_P|` by closed formula.
pub fn parabolic_order(pair: HermitianPair) -> u128 {
    let n = pair.n as u128;
    let k = pair.k as u128;
    match pair.family {
        Family::AxA => factorial(k) * factorial(n - k + 1),
        Family::CA | Family::DA => factorial(n),
        Family::BB => order_b(n - 1),
        // D_2 = A_1 x A_1 has order 4 = 2^1 * 2!.
        Family::DD => order_d(n - 1),
        Family::E6D5 => order_d(5),
        Family::E7E6 => 51_840,
    }
}

/// `|W| / |W_P|`, the number of minimal coset representatives.
pub fn quotient_size(pair: HermitianPair) -> u128 {
    group_order(pair) / parabolic_order(pair)
}

/// The standard verification suite: every `AxA(n,k)` with `n <= 6`, `CA(n)`
/// and `BB(n)` with `n <= 5`, `DA(n)` and `DD(n)` with `n <= 6`, and both
/// exceptional pairs.
pub fn suite_pairs() -> Vec<HermitianPair> {
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

/// Effect of right multiplication `w -> ws` on a minimal coset representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetStep {
    /// `ws > w` and `ws` is again minimal.
    Up,
    /// `ws < w`.
    Down,
    /// `ws` is not minimal (it equals `tw` for a parabolic `t`).
    Leaves,
}

/// Reflection representation on the root lattice, with integer Cartan matrix.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    pair: HermitianPair,
    labels: Vec<Node>,
    position: Vec<Option<usize>>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    parabolic: Vec<bool>,
}

impl CoxeterSystem {
    pub fn new(pair: HermitianPair) -> Self {
        let labels = node_indices(pair);
        let max = labels.iter().map(|x| x.0 as usize).max().unwrap_or(0);
        let mut position = vec![None; max + 1];
        for (i, l) in labels.iter().enumerate() {
            position[l.0 as usize] = Some(i);
        }
        let r = labels.len();
        let mut cartan = vec![vec![0i64; r]; r];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (s, t, m) in edges(pair) {
            let (i, j) = (position[s.0 as usize].unwrap(), position[t.0 as usize].unwrap());
            cartan[i][j] = -1;
            cartan[j][i] = -1;
            if m == 4 {
                // Edge (1,2): node 1 long in C, short in B.
                let (long, short) = if pair.family == Family::CA { (i, j) } else { (j, i) };
                cartan[short][long] = -2;
            }
        }
        let np = pair.nonparabolic();
        let parabolic = labels.iter().map(|&l| l != np).collect();
        let mut sys = Self { pair, labels, position, cartan, positive_roots: Vec::new(), parabolic };
        sys.positive_roots = sys.close_roots();
        sys
    }

    pub fn pair(&self) -> HermitianPair {
        self.pair
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    fn pos(&self, s: Node) -> Result<usize> {
        self.position.get(s.0 as usize).copied().flatten().ok_or(Error::UnknownNode(s, self.pair))
    }

    fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// `s_i(v) = v - <alpha_i^vee, v> alpha_i`.
    fn reflect(&self, i: usize, v: &mut [i64]) {
        let pairing: i64 = self.cartan[i].iter().zip(v.iter()).map(|(a, x)| a * x).sum();
        v[i] -= pairing;
    }

    fn close_roots(&self) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..self.rank() {
            let a = self.simple_root(i);
            seen.insert(a.clone());
            queue.push_back(a);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..self.rank() {
                let mut c = b.clone();
                self.reflect(i, &mut c);
                if c.iter().all(|&x| x >= 0) && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut roots: Vec<_> = seen.into_iter().collect();
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        roots
    }

    fn positions(&self, word: &[Node]) -> Result<Vec<usize>> {
        word.iter().map(|&s| self.pos(s)).collect()
    }

    /// Apply the product `word[0] word[1] ...` to `v`.
    fn act(&self, word: &[usize], v: &mut [i64]) {
        for &i in word.iter().rev() {
            self.reflect(i, v);
        }
    }

    /// Apply the inverse of the product to `v`.
    fn act_inverse(&self, word: &[usize], v: &mut [i64]) {
        for &i in word {
            self.reflect(i, v);
        }
    }

    fn length_of(&self, word: &[usize]) -> usize {
        self.positive_roots
            .iter()
            .filter(|b| {
                let mut v = (*b).clone();
                self.act(word, &mut v);
                v.iter().all(|&x| x <= 0)
            })
            .count()
    }

    /// Coxeter length of the product and whether the word is reduced.
    pub fn word_length(&self, word: &[Node]) -> Result<(usize, bool)> {
        let w = self.positions(word)?;
        let l = self.length_of(&w);
        Ok((l, l == word.len()))
    }

    /// Nodes `t` with `l(tw) < l(w)`.
    pub fn left_descents(&self, word: &[Node]) -> Result<Vec<Node>> {
        let w = self.positions(word)?;
        Ok(self.left_descents_of(&w))
    }

    fn left_descents_of(&self, w: &[usize]) -> Vec<Node> {
        (0..self.rank())
            .filter(|&t| {
                let mut v = self.simple_root(t);
                self.act_inverse(w, &mut v);
                v.iter().all(|&x| x <= 0)
            })
            .map(|t| self.labels[t])
            .collect()
    }

    fn is_min_of(&self, w: &[usize]) -> bool {
        self.left_descents_of(w).iter().all(|&t| !self.parabolic[self.position[t.0 as usize].unwrap()])
    }

    /// True iff no left descent of the element is parabolic.
    pub fn is_min_coset_rep(&self, word: &[Node]) -> Result<bool> {
        let w = self.positions(word)?;
        if self.length_of(&w) != w.len() {
            return Err(Error::NotReduced);
        }
        Ok(self.is_min_of(&w))
    }

    /// Classify `w -> ws` for a reduced minimal word `w`.
    pub fn coset_step(&self, word: &[Node], s: Node) -> Result<CosetStep> {
        let mut w = self.positions(word)?;
        let len = self.length_of(&w);
        w.push(self.pos(s)?);
        let l2 = self.length_of(&w);
        Ok(if l2 < len {
            CosetStep::Down
        } else if self.is_min_of(&w) {
            CosetStep::Up
        } else {
            CosetStep::Leaves
        })
    }

    /// Faithful identifier of the group element: images of all simple roots.
    pub fn element_key(&self, word: &[Node]) -> Result<Vec<i64>> {
        let w = self.positions(word)?;
        let mut key = Vec::with_capacity(self.rank() * self.rank());
        for i in 0..self.rank() {
            let mut v = self.simple_root(i);
            self.act(&w, &mut v);
            key.extend(v);
        }
        Ok(key)
    }

    /// Reduced words for all minimal coset representatives, found by
    /// breadth-first search over right multiplication.
    pub fn min_coset_reps(&self) -> Vec<Vec<Node>> {
        let mut seen = HashSet::new();
        let mut out = vec![Vec::new()];
        seen.insert(self.element_key(&[]).unwrap());
        let mut frontier = vec![Vec::<Node>::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for &s in &self.labels {
                    if self.coset_step(w, s).unwrap() != CosetStep::Up {
                        continue;
                    }
                    let mut ws = w.clone();
                    ws.push(s);
                    if seen.insert(self.element_key(&ws).unwrap()) {
                        next.push(ws);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}
