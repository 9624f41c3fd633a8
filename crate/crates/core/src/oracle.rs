//! Ground-truth engines: exact domination and independence numbers for
//! small graphs, and exhaustive enumeration of the random variables behind
//! the probabilistic bounds so that every mean/variance formula can be
//! checked against an independent count.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{binom, Rational};
use crate::graph::{Bipartition, Graph};

pub const DEFAULT_GAMMA_LIMIT: usize = 24;
pub const DEFAULT_ALPHA_LIMIT: usize = 40;
pub const DEFAULT_ENUM_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the configured limit {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("enumeration of {outcomes} outcomes exceeds the limit {limit}")]
    EnumerationLimitExceeded { outcomes: BigInt, limit: u64 },
    #[error("invalid oracle input: {0}")]
    InvalidInput(String),
}

/// Exact distribution of an integer random variable over finitely many
/// equally likely outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    pub support: BTreeMap<i64, BigUint>,
    pub total: BigUint,
    pub mean: Rational,
    pub variance: Rational,
    pub min_val: i64,
    pub max_val: i64,
}

impl ExactDistribution {
    pub fn from_counts(counts: BTreeMap<i64, u64>) -> Self {
        assert!(!counts.is_empty(), "distribution needs at least one outcome");
        let mut total = BigUint::zero();
        let mut sum = BigInt::zero();
        let mut sum_sq = BigInt::zero();
        for (&v, &c) in &counts {
            total += c;
            sum += BigInt::from(v) * c;
            sum_sq += BigInt::from(v) * v * c;
        }
        let total_int = BigInt::from(total.clone());
        let mean = Rational::new(sum, total_int.clone());
        let variance = Rational::new(sum_sq, total_int) - &mean * &mean;
        let min_val = *counts.keys().next().unwrap();
        let max_val = *counts.keys().next_back().unwrap();
        ExactDistribution {
            support: counts
                .into_iter()
                .map(|(v, c)| (v, BigUint::from(c)))
                .collect(),
            total,
            mean,
            variance,
            min_val,
            max_val,
        }
    }

    /// `(mean - min)(max - mean) - variance`, nonnegative for every
    /// bounded distribution by the Bhatia-Davis inequality.
    pub fn bhatia_davis_gap(&self) -> Rational {
        let min = Rational::from_integer(self.min_val.into());
        let max = Rational::from_integer(self.max_val.into());
        (&self.mean - min) * (max - &self.mean) - &self.variance
    }
}

/// Iterates the t-subsets of `0..n` as bitmasks in colex order.
struct SubsetIter {
    next: Option<u64>,
    full: u64,
    t: usize,
}

impl SubsetIter {
    fn new(n: usize, t: usize) -> Self {
        assert!(n <= 63 && t <= n);
        let full = (1u64 << n) - 1;
        let next = if t == 0 { Some(0) } else { Some((1u64 << t) - 1) };
        SubsetIter { next, full, t }
    }
}

impl Iterator for SubsetIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if self.t == 0 || cur.count_ones() as usize == 64 {
            None
        } else {
            // Gosper's hack
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let mask = ripple | (((cur ^ ripple) / low) >> 2);
            if mask > self.full {
                None
            } else {
                Some(mask)
            }
        };
        if cur <= self.full {
            Some(cur)
        } else {
            None
        }
    }
}

fn closed_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|u| {
            let mut m = 1u64 << u;
            for v in g.neighbors(u) {
                m |= 1u64 << v;
            }
            m
        })
        .collect()
}

fn open_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|u| {
            let mut m = 0u64;
            for v in g.neighbors(u) {
                m |= 1u64 << v;
            }
            m
        })
        .collect()
}

/// Exact domination number by iterative deepening over the set size.
pub fn exact_gamma(g: &Graph) -> Result<usize, OracleError> {
    exact_gamma_limited(g, DEFAULT_GAMMA_LIMIT)
}

pub fn exact_gamma_limited(g: &Graph, limit: usize) -> Result<usize, OracleError> {
    let n = g.n();
    if n > limit || n > 63 {
        return Err(OracleError::SizeLimitExceeded {
            n,
            limit: limit.min(63),
        });
    }
    let closed = closed_masks(g);
    let full = (1u64 << n) - 1;

    // greedy upper bound: repeatedly take the vertex covering the most
    // uncovered vertices
    let mut covered = 0u64;
    let mut upper = 0usize;
    while covered != full {
        let best = (0..n)
            .max_by_key(|&u| (closed[u] & !covered).count_ones())
            .unwrap();
        covered |= closed[best];
        upper += 1;
    }

    let max_cover = closed.iter().map(|m| m.count_ones() as usize).max().unwrap();

    fn dfs(closed: &[u64], covered: u64, full: u64, picks: usize, max_cover: usize) -> bool {
        if covered == full {
            return true;
        }
        let uncovered = (full & !covered).count_ones() as usize;
        if picks == 0 || uncovered > picks * max_cover {
            return false;
        }
        let u = (full & !covered).trailing_zeros() as usize;
        // some vertex of N[u] must enter the dominating set
        let mut cands = closed[u];
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if dfs(closed, covered | closed[w], full, picks - 1, max_cover) {
                return true;
            }
        }
        false
    }

    let lower = (full.count_ones() as usize).div_ceil(max_cover);
    for k in lower..upper {
        if dfs(&closed, 0, full, k, max_cover) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Exact independence number by branch and bound on the highest-degree
/// remaining vertex, with the remaining-vertex count as the bound.
pub fn exact_alpha(g: &Graph) -> Result<usize, OracleError> {
    exact_alpha_limited(g, DEFAULT_ALPHA_LIMIT)
}

pub fn exact_alpha_limited(g: &Graph, limit: usize) -> Result<usize, OracleError> {
    let n = g.n();
    if n > limit || n > 63 {
        return Err(OracleError::SizeLimitExceeded {
            n,
            limit: limit.min(63),
        });
    }
    let open = open_masks(g);

    fn bnb(open: &[u64], mut remaining: u64, mut current: usize, best: &mut usize) {
        // vertices isolated in the remaining graph are always taken
        loop {
            if current + remaining.count_ones() as usize <= *best {
                return;
            }
            if remaining == 0 {
                *best = (*best).max(current);
                return;
            }
            let mut forced = 0u64;
            let mut scan = remaining;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if open[v] & remaining == 0 {
                    forced |= 1 << v;
                }
            }
            if forced != 0 {
                current += forced.count_ones() as usize;
                remaining &= !forced;
                continue;
            }
            break;
        }
        let mut pick = 0;
        let mut pick_deg = 0;
        let mut scan = remaining;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let deg = (open[v] & remaining).count_ones();
            if deg >= pick_deg {
                pick_deg = deg;
                pick = v;
            }
        }
        bnb(open, remaining & !(open[pick] | (1 << pick)), current + 1, best);
        bnb(open, remaining & !(1u64 << pick), current, best);
    }

    let mut best = 0usize;
    bnb(&open, (1u64 << n) - 1, 0, &mut best);
    Ok(best)
}

fn check_enum_limit(outcomes: BigInt, limit: u64) -> Result<(), OracleError> {
    if outcomes > BigInt::from(limit) {
        Err(OracleError::EnumerationLimitExceeded { outcomes, limit })
    } else {
        Ok(())
    }
}

/// Distribution of `z = |X| + |Y|` where X ranges over all t-subsets and
/// `Y = {u : N[u] ∩ X = ∅}` is the repair set making `X ∪ Y` dominating.
pub fn exhaustive_dom_distribution(
    g: &Graph,
    t: usize,
    limit: u64,
) -> Result<ExactDistribution, OracleError> {
    let n = g.n();
    if n > 63 {
        return Err(OracleError::SizeLimitExceeded { n, limit: 63 });
    }
    if t < 1 || t > n {
        return Err(OracleError::InvalidInput(format!(
            "t={t} outside 1..={n}"
        )));
    }
    check_enum_limit(binom(n as i64, t as i64), limit)?;

    let closed = closed_masks(g);
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for x in SubsetIter::new(n, t) {
        let repair = closed.iter().filter(|&&m| m & x == 0).count();
        *counts.entry((t + repair) as i64).or_insert(0) += 1;
    }
    Ok(ExactDistribution::from_counts(counts))
}

/// Distribution of `z = |X_A| + |X_B| + |Y_A| + |Y_B|` over independent
/// uniform choices of `X_A` (size a, within side A) and `X_B` (size b).
pub fn exhaustive_bip_distribution(
    g: &Graph,
    bip: &Bipartition,
    a: usize,
    b: usize,
    limit: u64,
) -> Result<ExactDistribution, OracleError> {
    if !g.is_valid_bipartition(bip) {
        return Err(OracleError::InvalidInput(
            "bipartition does not two-color the graph".into(),
        ));
    }
    let (ka, kb) = (bip.side_a.len(), bip.side_b.len());
    if ka > 63 || kb > 63 {
        return Err(OracleError::SizeLimitExceeded { n: ka.max(kb), limit: 63 });
    }
    if a > ka || b > kb {
        return Err(OracleError::InvalidInput(format!(
            "(a,b)=({a},{b}) exceeds side sizes ({ka},{kb})"
        )));
    }
    check_enum_limit(
        binom(ka as i64, a as i64) * binom(kb as i64, b as i64),
        limit,
    )?;

    // neighbor masks indexed within the opposite side
    let index_of = |side: &[usize]| {
        let mut idx = vec![usize::MAX; g.n()];
        for (i, &u) in side.iter().enumerate() {
            idx[u] = i;
        }
        idx
    };
    let idx_a = index_of(&bip.side_a);
    let idx_b = index_of(&bip.side_b);
    let mask_into = |u: usize, idx: &[usize]| -> u64 {
        let mut m = 0u64;
        for v in g.neighbors(u) {
            m |= 1u64 << idx[v];
        }
        m
    };
    let nbrs_in_b: Vec<u64> = bip.side_a.iter().map(|&u| mask_into(u, &idx_b)).collect();
    let nbrs_in_a: Vec<u64> = bip.side_b.iter().map(|&u| mask_into(u, &idx_a)).collect();

    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for xa in SubsetIter::new(ka, a) {
        for xb in SubsetIter::new(kb, b) {
            let ya = (0..ka)
                .filter(|&i| xa >> i & 1 == 0 && nbrs_in_b[i] & xb == 0)
                .count();
            let yb = (0..kb)
                .filter(|&i| xb >> i & 1 == 0 && nbrs_in_a[i] & xa == 0)
                .count();
            *counts.entry((a + b + ya + yb) as i64).or_insert(0) += 1;
        }
    }
    Ok(ExactDistribution::from_counts(counts))
}

/// Distribution of `z = |X \ Y| = |X| - |Y|` where
/// `Y = {u ∈ X : N(u) ∩ X ≠ ∅}`, so `X \ Y` is independent.
pub fn exhaustive_ind_distribution(
    g: &Graph,
    t: usize,
    limit: u64,
) -> Result<ExactDistribution, OracleError> {
    let n = g.n();
    if n > 63 {
        return Err(OracleError::SizeLimitExceeded { n, limit: 63 });
    }
    let t_max = n - g.min_degree();
    if t < 2 || t > t_max {
        return Err(OracleError::InvalidInput(format!(
            "t={t} outside 2..={t_max}"
        )));
    }
    check_enum_limit(binom(n as i64, t as i64), limit)?;

    let open = open_masks(g);
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for x in SubsetIter::new(n, t) {
        let mut kept = 0usize;
        let mut scan = x;
        while scan != 0 {
            let u = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if open[u] & x == 0 {
                kept += 1;
            }
        }
        *counts.entry(kept as i64).or_insert(0) += 1;
    }
    Ok(ExactDistribution::from_counts(counts))
}

/// All labeled simple graphs on `n` vertices (2^C(n,2) of them), as an
/// exhaustive small-order catalog.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!((1..=7).contains(&n), "catalog limited to 1..=7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let total: u64 = 1 << pairs.len();
    (0..total).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("catalog edges are valid")
    })
}
