//! Graded multiplicities of linear projective resolutions of standard
//! modules.
//!
//! `p_{lam,mu}(q)` records `P(mu)<n>` in the `n`-th term of the resolution of
//! `Delta(lam)`. Support is `mu <= lam`. For `tau` removable from `lam`:
//!
//! `p_{lam,mu} = q p_{lam - tau, mu} + [tau in Rem(mu)] p'_{lam|tau, mu|tau}`
//!
//! where the second term lives in the contracted pair. The two folded
//! families are computed in their simply-laced source.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::contraction::{contraction_tiling, ContractionTiling};
use crate::coxeter::{HermitianPair, Node};
use crate::error::Result;
use crate::folding::FoldMap;
use crate::klpoly::DecompositionMatrix;
use crate::laurent::LaurentPoly;
use crate::tiling::{BruhatPoset, Region, TilePartition, TileSet};

/// Row `lam` maps `mu` to `p_{lam,mu}`; ids follow the poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionTable {
    pub pair: HermitianPair,
    pub order: Vec<TilePartition>,
    pub rows: Vec<BTreeMap<usize, LaurentPoly>>,
}

/// Term `n` of a resolution: `(mu, multiplicity of P(mu)<n>)`.
pub type ResolutionTerm = Vec<(usize, i64)>;

impl ResolutionTable {
    pub fn len(&self) -> usize {
        self.order.len()
    }
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn p(&self, lam: usize, mu: usize) -> LaurentPoly {
        self.rows[lam].get(&mu).cloned().unwrap_or_default()
    }

    pub fn id_of(&self, lam: TilePartition) -> Option<usize> {
        self.order.binary_search_by_key(&lam.canonical_key(), |x| x.canonical_key()).ok()
    }

    /// Terms `0..=|lam|`; term `n` lists `P(mu)<n>` with multiplicities.
    pub fn resolution(&self, lam: usize) -> Vec<ResolutionTerm> {
        let mut terms = vec![ResolutionTerm::new(); self.order[lam].len() + 1];
        for (&mu, p) in &self.rows[lam] {
            for (n, c) in p.terms() {
                terms[n as usize].push((mu, c));
            }
        }
        while terms.len() > 1 && terms.last().is_some_and(|t| t.is_empty()) {
            terms.pop();
        }
        terms
    }

    /// `p_{lam,lam} = 1`, support `mu <= lam`, coefficients `>= 0`, and
    /// `deg p_{lam,mu} <= |lam| - |mu|`.
    pub fn invariants_hold(&self) -> bool {
        self.rows.iter().enumerate().all(|(lam, row)| {
            row.get(&lam).is_some_and(|p| p.is_one())
                && row.iter().all(|(&mu, p)| {
                    let (l, m) = (self.order[lam], self.order[mu]);
                    m.is_subset(l)
                        && p.has_nonneg_coeffs()
                        && p.min_exp().is_some_and(|e| e >= 0)
                        && p.max_exp().is_some_and(|e| e as usize <= l.len() - m.len())
                })
        })
    }
}

/// Memoizes tables and contraction tilings across the pairs reached by
/// contraction.
#[derive(Default)]
pub struct KoszulSolver {
    tables: HashMap<HermitianPair, Arc<ResolutionTable>>,
    tilings: HashMap<(HermitianPair, Node), Arc<ContractionTiling>>,
}

struct Context {
    region: Region,
    poset: BruhatPoset,
    tilings: BTreeMap<Node, Arc<ContractionTiling>>,
    contracted: BTreeMap<Node, Option<Arc<ResolutionTable>>>,
}

impl KoszulSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, pair: HermitianPair) -> Result<Arc<ResolutionTable>> {
        if let Some(t) = self.tables.get(&pair) {
            return Ok(t.clone());
        }
        let table = if pair.is_simply_laced() {
            let ctx = self.context(pair)?;
            Arc::new(solve(&ctx, |rem| *rem.keys().next().unwrap()))
        } else {
            let fold = FoldMap::for_target(pair)?;
            let src = self.table(fold.source())?;
            let (_, tgt) = fold.regions()?;
            let order: Vec<TileSet> = src.order.iter().map(|&l| fold.fold_partition(l)).collect();
            if order != tgt.enumerate_partitions().elements() {
                return Err(crate::Error::Precondition("folded posets differ".into()));
            }
            Arc::new(ResolutionTable { pair, order, rows: src.rows.clone() })
        };
        self.tables.insert(pair, table.clone());
        Ok(table)
    }

    fn tiling(&mut self, pair: HermitianPair, tau: Node) -> Result<Arc<ContractionTiling>> {
        if let Some(t) = self.tilings.get(&(pair, tau)) {
            return Ok(t.clone());
        }
        let t = Arc::new(contraction_tiling(pair, tau)?);
        self.tilings.insert((pair, tau), t.clone());
        Ok(t)
    }

    fn context(&mut self, pair: HermitianPair) -> Result<Context> {
        let region = Region::new(pair)?;
        let poset = region.enumerate_partitions();
        let mut tilings = BTreeMap::new();
        let mut contracted = BTreeMap::new();
        for tau in region.colours().collect::<Vec<_>>() {
            let ct = self.tiling(pair, tau)?;
            contracted.insert(tau, ct.target.map(|t| self.table(t)).transpose()?);
            tilings.insert(tau, ct);
        }
        Ok(Context { region, poset, tilings, contracted })
    }

    pub fn p_poly(&mut self, pair: HermitianPair, lam: TilePartition, mu: TilePartition) -> Result<LaurentPoly> {
        let t = self.table(pair)?;
        let lam = t.id_of(lam).ok_or(crate::Error::NotPartition)?;
        let mu = t.id_of(mu).ok_or(crate::Error::NotPartition)?;
        Ok(t.p(lam, mu))
    }

    /// Recompute every row with every removable colour and compare.
    pub fn verify_tau_independence(&mut self, pair: HermitianPair) -> Result<bool> {
        let pair = if pair.is_simply_laced() { pair } else { FoldMap::for_target(pair)?.source() };
        let table = self.table(pair)?;
        let ctx = self.context(pair)?;
        Ok((1..table.len()).into_par_iter().all(|lam| {
            ctx.region
                .removable(table.order[lam])
                .keys()
                .all(|&tau| row(&ctx, &table.rows, lam, tau) == table.rows[lam])
        }))
    }
}

fn row(ctx: &Context, rows: &[BTreeMap<usize, LaurentPoly>], lam: usize, tau: Node) -> BTreeMap<usize, LaurentPoly> {
    let l = ctx.poset.get(lam);
    let t = ctx.region.removable_of(l, tau).expect("tau must be removable");
    let smaller = ctx.poset.id_of(l.without(t)).unwrap();
    let mut out: BTreeMap<usize, LaurentPoly> =
        rows[smaller].iter().map(|(&mu, p)| (mu, p * &LaurentPoly::q())).collect();
    let ct = &ctx.tilings[&tau];
    let lam_c = ct.contract(l).expect("tau-removable partitions lie in the image of phi");
    let contracted_row: Vec<(TileSet, LaurentPoly)> = match &ctx.contracted[&tau] {
        None => vec![(TileSet::EMPTY, LaurentPoly::one())],
        Some(tab) => {
            let id = tab.id_of(lam_c).unwrap();
            tab.rows[id].iter().map(|(&mu, p)| (tab.order[mu], p.clone())).collect()
        }
    };
    for (mu_c, p) in contracted_row {
        let mu = ctx.poset.id_of(ct.phi(mu_c)).unwrap();
        let slot = out.entry(mu).or_default();
        *slot += &p;
        if slot.is_zero() {
            out.remove(&mu);
        }
    }
    out
}

fn solve<F>(ctx: &Context, choose: F) -> ResolutionTable
where
    F: Fn(&BTreeMap<Node, usize>) -> Node + Sync,
{
    let order = ctx.poset.elements().to_vec();
    let mut rows: Vec<BTreeMap<usize, LaurentPoly>> = Vec::with_capacity(order.len());
    let mut start = 0;
    while start < order.len() {
        let rank = order[start].len();
        let end = (start..order.len()).find(|&i| order[i].len() != rank).unwrap_or(order.len());
        let level: Vec<_> = (start..end)
            .into_par_iter()
            .map(|lam| {
                if rank == 0 {
                    BTreeMap::from([(lam, LaurentPoly::one())])
                } else {
                    row(ctx, &rows, lam, choose(&ctx.region.removable(order[lam])))
                }
            })
            .collect();
        rows.extend(level);
        start = end;
    }
    ResolutionTable { pair: ctx.region.pair(), order, rows }
}

pub fn resolution_table(pair: HermitianPair) -> Result<Arc<ResolutionTable>> {
    KoszulSolver::new().table(pair)
}

pub fn p_poly(pair: HermitianPair, lam: TilePartition, mu: TilePartition) -> Result<LaurentPoly> {
    KoszulSolver::new().p_poly(pair, lam, mu)
}

pub fn resolution(pair: HermitianPair, lam: TilePartition) -> Result<Vec<ResolutionTerm>> {
    let t = resolution_table(pair)?;
    let id = t.id_of(lam).ok_or(crate::Error::NotPartition)?;
    Ok(t.resolution(id))
}

pub fn verify_tau_independence(pair: HermitianPair) -> Result<bool> {
    KoszulSolver::new().verify_tau_independence(pair)
}

/// `sum_mu p_{lam,mu}(-q) D[nu][mu] = delta_{lam,nu}`. Returns the first
/// failing `(lam, nu)`.
pub fn inverse_violation(table: &ResolutionTable, d: &DecompositionMatrix) -> Option<(usize, usize)> {
    if table.order != d.order {
        return Some((0, 0));
    }
    let n = table.len();
    (0..n).into_par_iter().find_map_first(|lam| {
        let row: Vec<(usize, LaurentPoly)> = table.rows[lam].iter().map(|(&mu, p)| (mu, p.negate_variable())).collect();
        (0..n)
            .find(|&nu| {
                let mut s = LaurentPoly::zero();
                for (mu, p) in &row {
                    let e = d.get(nu, *mu);
                    if !e.is_zero() {
                        s += &(p * e);
                    }
                }
                if lam == nu {
                    !s.is_one()
                } else {
                    !s.is_zero()
                }
            })
            .map(|nu| (lam, nu))
    })
}

pub fn verify_inverse(pair: HermitianPair) -> Result<bool> {
    let t = resolution_table(pair)?;
    let d = crate::klpoly::decomposition_matrix(pair)?;
    Ok(inverse_violation(&t, &d).is_none())
}
