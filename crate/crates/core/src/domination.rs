//! Upper bounds on the domination number: γ_CSSF, γ_HM1, γ_HM2 for any
//! connected non-complete graph, and γ_HM3 for connected bipartite graphs
//! with both sides of size at least two.
//!
//! All four arise from the alteration principle: pick a random vertex set,
//! add every vertex whose closed neighborhood misses it, and bound the
//! expected size of the repaired dominating set. γ_HM1/γ_HM2/γ_HM3
//! additionally apply the Bhatia-Davis inequality
//! `Var <= (mean - min)(max - mean)` to subtract a variance correction.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{rat, rat_int, ColRef, RatioTable, Rational, SweepCols};
use crate::graph::{Bipartition, GammaClassProof, Graph};

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("graph is not in the required class ({0})")]
    NotInGamma(GammaClassProof),
    #[error("t={t} outside the admissible range {min}..={max}")]
    TOutOfRange { t: usize, min: usize, max: usize },
    #[error("the given bipartition is not a proper two-coloring of the graph")]
    NotBipartite,
    #[error("bipartite side {side} has {size} < 2 vertices")]
    SideTooSmall { side: char, size: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("(a,b)=({a},{b}) outside the grid for sides ({size_a},{size_b})")]
    PointOutsideGrid {
        a: usize,
        b: usize,
        size_a: usize,
        size_b: usize,
    },
    #[error("family decrement count l={l} exceeds the degree sum {max}")]
    PhiOutOfRange { l: u64, max: u64 },
}

/// A bound value together with the sweep argument that attained it.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremum<A> {
    pub value: Rational,
    pub arg: A,
}

/// The exact per-t terms behind γ_CSSF, γ_HM1 and γ_HM2.
#[derive(Debug, Clone, PartialEq)]
pub struct DomTermsAtT {
    pub t: usize,
    /// `a(G,t)`: the expected size of the repaired dominating set.
    pub mean: Rational,
    /// `b(G,t)`: the second moment of the repair-set size `|Y|`.
    pub sq_moment: Rational,
    /// `c(G,t)`: degree-only lower bound on `sq_moment`.
    pub sq_moment_deg: Rational,
    pub hm1_value: Rational,
    pub hm2_value: Rational,
}

/// The three degree/pair histograms a domination sweep consumes: row sizes
/// of the binomials appearing in the vertex sum, the pair-union sum and the
/// degree-sum sum, each with multiplicities.
struct DomHists {
    /// `(n - d(u) - 1, count)` per distinct degree
    vertex: Vec<(i64, u64)>,
    /// `(n - |N[u] ∪ N[v]|, count)` per pair class
    union: Vec<(i64, u64)>,
    /// `(n - d(u) - d(v) - 2, count)` per pair class
    degsum: Vec<(i64, u64)>,
}

fn dom_hists(g: &Graph) -> DomHists {
    let n = g.n() as i64;
    let vertex = g
        .degree_histogram()
        .into_iter()
        .map(|(d, c)| (n - d as i64 - 1, c))
        .collect();
    let mut union: HashMap<i64, u64> = HashMap::new();
    let mut degsum: HashMap<i64, u64> = HashMap::new();
    for pc in g.pair_classes() {
        *union.entry(n - pc.closed_union as i64).or_insert(0) += pc.count;
        *degsum
            .entry(n - pc.du as i64 - pc.dv as i64 - 2)
            .or_insert(0) += pc.count;
    }
    let mut union: Vec<_> = union.into_iter().collect();
    let mut degsum: Vec<_> = degsum.into_iter().collect();
    union.sort_unstable();
    degsum.sort_unstable();
    DomHists {
        vertex,
        union,
        degsum,
    }
}

fn require_gamma(g: &Graph) -> Result<(), BoundError> {
    let proof = g.gamma_class();
    if proof.holds() {
        Ok(())
    } else {
        Err(BoundError::NotInGamma(proof))
    }
}

/// Assembles a(G,t), b(G,t), c(G,t) and the two bound values from the
/// sums; `shifted_mean` is `a - t = Σ_u C(n-d(u)-1,t)/C(n,t)`.
fn dom_values(
    n: usize,
    t: usize,
    shifted_mean: &Rational,
    union_sum: &Rational,
    degsum_sum: &Rational,
) -> DomTermsAtT {
    let mean = rat_int(t as i64) + shifted_mean;
    let sq_moment = shifted_mean + rat_int(2) * union_sum;
    let sq_moment_deg = shifted_mean + rat_int(2) * degsum_sum;
    let variance = &sq_moment - shifted_mean * shifted_mean;
    let n_rat = rat_int(n as i64);

    assert!(
        mean < n_rat,
        "a(G,{t}) = {mean} must stay below n = {n}"
    );
    assert!(
        !variance.is_negative(),
        "b(G,{t}) - (a(G,{t})-{t})^2 = {variance} must be nonnegative"
    );
    assert!(
        sq_moment_deg <= sq_moment,
        "c(G,{t}) must not exceed b(G,{t})"
    );

    let slack = &n_rat - &mean;
    let hm1_value = &mean - variance / &slack;
    let hm2_value = &mean - (&sq_moment_deg - shifted_mean * shifted_mean) / slack;
    DomTermsAtT {
        t,
        mean,
        sq_moment,
        sq_moment_deg,
        hm1_value,
        hm2_value,
    }
}

/// Exact a(G,t), b(G,t), c(G,t) and the per-t values of the HM1/HM2
/// bounds, all read off one ratio table.
pub fn dom_terms(g: &Graph, t: usize) -> Result<DomTermsAtT, BoundError> {
    require_gamma(g)?;
    let n = g.n();
    let t_max = n - g.min_degree();
    if t < 1 || t > t_max {
        return Err(BoundError::TOutOfRange { t, min: 1, max: t_max });
    }

    let table = RatioTable::new(n, t).expect("t <= n");
    let hists = dom_hists(g);
    let sum = |terms: &[(i64, u64)]| -> Rational {
        let mut acc = Rational::zero();
        for &(s, count) in terms {
            let r = table.get(s);
            if !r.is_zero() {
                acc += r * rat_int(count);
            }
        }
        acc
    };
    let shifted_mean = sum(&hists.vertex);
    let union_sum = sum(&hists.union);
    let degsum_sum = sum(&hists.degsum);
    Ok(dom_values(n, t, &shifted_mean, &union_sum, &degsum_sum))
}

/// The three degree-based domination bounds from one sweep over
/// `t = 1..=n-δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomBounds {
    pub cssf: Extremum<usize>,
    pub hm1: Extremum<usize>,
    pub hm2: Extremum<usize>,
}

/// Full sweep computing γ_CSSF, γ_HM1 and γ_HM2 exactly.
///
/// Each distinct binomial row size gets one incrementally-advanced ratio
/// column, so the sweep costs O(classes) rational operations per t. Ties
/// in the minimization resolve toward smaller t.
pub fn domination_bounds(g: &Graph) -> Result<DomBounds, BoundError> {
    require_gamma(g)?;
    let n = g.n();
    let t_max = n - g.min_degree();

    let hists = dom_hists(g);
    let mut cols = SweepCols::new(n, 1);
    let register = |cols: &mut SweepCols, hist: &[(i64, u64)]| -> Vec<(ColRef, Rational)> {
        hist.iter()
            .map(|&(s, count)| (cols.column(s, 0), rat_int(count)))
            .collect()
    };
    let vertex_terms = register(&mut cols, &hists.vertex);
    let union_terms = register(&mut cols, &hists.union);
    let degsum_terms = register(&mut cols, &hists.degsum);

    let mut best: Option<DomBounds> = None;
    for t in 1..=t_max {
        if t > 1 {
            cols.advance();
        }
        debug_assert_eq!(cols.t(), t);
        let shifted_mean = cols.weighted_sum(&vertex_terms);
        let union_sum = cols.weighted_sum(&union_terms);
        let degsum_sum = cols.weighted_sum(&degsum_terms);
        let terms = dom_values(n, t, &shifted_mean, &union_sum, &degsum_sum);

        match &mut best {
            None => {
                best = Some(DomBounds {
                    cssf: Extremum { value: terms.mean, arg: t },
                    hm1: Extremum { value: terms.hm1_value, arg: t },
                    hm2: Extremum { value: terms.hm2_value, arg: t },
                });
            }
            Some(b) => {
                if terms.mean < b.cssf.value {
                    b.cssf = Extremum { value: terms.mean, arg: t };
                }
                if terms.hm1_value < b.hm1.value {
                    b.hm1 = Extremum { value: terms.hm1_value, arg: t };
                }
                if terms.hm2_value < b.hm2.value {
                    b.hm2 = Extremum { value: terms.hm2_value, arg: t };
                }
            }
        }
    }
    let bounds = best.expect("t range is nonempty for graphs in the class");
    debug_assert!(bounds.hm1.value <= bounds.cssf.value);
    debug_assert!(bounds.hm1.value <= bounds.hm2.value);
    Ok(bounds)
}

/// `γ_CSSF(G) = min_t a(G,t)`, the strongest of the degree-only bounds of
/// Clark, Shekhtman, Suen, and Fisher.
pub fn gamma_cssf(g: &Graph) -> Result<Extremum<usize>, BoundError> {
    Ok(domination_bounds(g)?.cssf)
}

/// `γ_HM1(G) = min_t (a - (b - (a-t)^2)/(n - a))`.
pub fn gamma_hm1(g: &Graph) -> Result<Extremum<usize>, BoundError> {
    Ok(domination_bounds(g)?.hm1)
}

/// `γ_HM2(G)`: as γ_HM1 with the degree-only term c(G,t) in place of
/// b(G,t).
pub fn gamma_hm2(g: &Graph) -> Result<Extremum<usize>, BoundError> {
    Ok(domination_bounds(g)?.hm2)
}

/// The exact terms behind γ_HM3 at one grid point (a, b).
#[derive(Debug, Clone, PartialEq)]
pub struct BipTermsAtAb {
    pub a: usize,
    pub b: usize,
    /// `e(G,a,b)`: expected size of the repaired dominating set.
    pub mean: Rational,
    /// `f(G,a,b)`: summed indicator variances over side A.
    pub var_sum_a: Rational,
    /// `g(G,a,b)`: summed indicator variances over side B.
    pub var_sum_b: Rational,
    /// `h(G,a,b)`: summed covariances of pairs inside side A.
    pub cov_sum_aa: Rational,
    /// `i(G,a,b)`: summed covariances of pairs inside side B.
    pub cov_sum_bb: Rational,
    /// `j(G,a,b)`: summed covariances of cross pairs.
    pub cov_sum_ab: Rational,
    /// `k(G,a,b) = f + g + 2(h + i + j)`, the variance of the repaired
    /// set size; nonnegative.
    pub variance: Rational,
    pub hm3_value: Rational,
}

/// Ratio columns `C(x, k) / C(m, k)` for one bipartite side, tabulated
/// over the whole range `k = 0..=m` for every needed row size `x`.
struct SideRatios {
    m: usize,
    cols: HashMap<i64, Vec<Rational>>,
}

impl SideRatios {
    fn new(m: usize, needed: impl IntoIterator<Item = i64>) -> Self {
        let mut cols = HashMap::new();
        for x in needed {
            cols.entry(x).or_insert_with(|| {
                let mut v = Vec::with_capacity(m + 1);
                v.push(if x < 0 {
                    Rational::zero()
                } else {
                    Rational::from_integer(1.into())
                });
                for k in 1..=m as i64 {
                    let prev = &v[k as usize - 1];
                    let next = if prev.is_zero() {
                        Rational::zero()
                    } else {
                        prev * rat(x - k + 1, m as i64 - k + 1)
                    };
                    v.push(next);
                }
                v
            });
        }
        SideRatios { m, cols }
    }

    /// `C(x, k) / C(m, k)`
    fn get(&self, x: i64, k: usize) -> &Rational {
        debug_assert!(k <= self.m);
        &self.cols[&x][k]
    }
}

/// One multiplicity class of same-side vertex pairs.
struct SidePairClass {
    du: usize,
    dv: usize,
    open_union: usize,
    count: u64,
}

/// One multiplicity class of cross pairs (u in A, v in B).
struct CrossPairClass {
    da: usize,
    db: usize,
    adjacent: bool,
    count: u64,
}

/// Shared state for evaluating the γ_HM3 terms on a fixed graph and
/// bipartition at many grid points.
struct BipEvaluator {
    size_a: usize,
    size_b: usize,
    deg_hist_a: Vec<(usize, u64)>,
    deg_hist_b: Vec<(usize, u64)>,
    pairs_aa: Vec<SidePairClass>,
    pairs_bb: Vec<SidePairClass>,
    cross: Vec<CrossPairClass>,
    ratios_a: SideRatios,
    ratios_b: SideRatios,
}

impl BipEvaluator {
    fn new(g: &Graph, bip: &Bipartition) -> Result<Self, BoundError> {
        if !g.is_valid_bipartition(bip) {
            return Err(BoundError::NotBipartite);
        }
        if bip.side_a.len() < 2 {
            return Err(BoundError::SideTooSmall {
                side: 'A',
                size: bip.side_a.len(),
            });
        }
        if bip.side_b.len() < 2 {
            return Err(BoundError::SideTooSmall {
                side: 'B',
                size: bip.side_b.len(),
            });
        }
        if !g.is_connected() {
            return Err(BoundError::NotConnected);
        }

        let mut in_a = vec![false; g.n()];
        for &u in &bip.side_a {
            in_a[u] = true;
        }

        let deg_hist = |side: &[usize]| {
            let mut map: HashMap<usize, u64> = HashMap::new();
            for &u in side {
                *map.entry(g.degree(u)).or_insert(0) += 1;
            }
            let mut v: Vec<_> = map.into_iter().collect();
            v.sort_unstable();
            v
        };
        let deg_hist_a = deg_hist(&bip.side_a);
        let deg_hist_b = deg_hist(&bip.side_b);

        // twin classes split by side; within a class, pairs are never
        // adjacent and share their whole neighborhood
        let classes = g.twin_classes();
        let split: Vec<(usize, Vec<usize>, Vec<usize>)> = classes
            .iter()
            .map(|c| {
                let (a_members, b_members): (Vec<usize>, Vec<usize>) =
                    c.members.iter().partition(|&&u| in_a[u]);
                (c.rep, a_members, b_members)
            })
            .collect();

        let mut pairs_aa: HashMap<(usize, usize, usize), u64> = HashMap::new();
        let mut pairs_bb: HashMap<(usize, usize, usize), u64> = HashMap::new();
        let mut cross: HashMap<(usize, usize, bool), u64> = HashMap::new();

        for (i, (rep_i, a_i, b_i)) in split.iter().enumerate() {
            let d = g.degree(*rep_i);
            for (members, pairs) in [(a_i, &mut pairs_aa), (b_i, &mut pairs_bb)] {
                if members.len() >= 2 {
                    let count = members.len() as u64 * (members.len() as u64 - 1) / 2;
                    *pairs.entry((d, d, d)).or_insert(0) += count; // N(u) = N(v)
                }
            }
            if !a_i.is_empty() && !b_i.is_empty() {
                // only possible for isolated twins, which connectivity
                // rules out, but keep the count exact regardless
                *cross.entry((d, d, false)).or_insert(0) +=
                    a_i.len() as u64 * b_i.len() as u64;
            }
            for (rep_j, a_j, b_j) in split.iter().skip(i + 1) {
                let dj = g.degree(*rep_j);
                let adjacent = g.has_edge(*rep_i, *rep_j);
                let union = g.open_union_size(*rep_i, *rep_j);
                let (dlo, dhi) = (d.min(dj), d.max(dj));
                if !a_i.is_empty() && !a_j.is_empty() {
                    *pairs_aa.entry((dlo, dhi, union)).or_insert(0) +=
                        a_i.len() as u64 * a_j.len() as u64;
                }
                if !b_i.is_empty() && !b_j.is_empty() {
                    *pairs_bb.entry((dlo, dhi, union)).or_insert(0) +=
                        b_i.len() as u64 * b_j.len() as u64;
                }
                if !a_i.is_empty() && !b_j.is_empty() {
                    *cross.entry((d, dj, adjacent)).or_insert(0) +=
                        a_i.len() as u64 * b_j.len() as u64;
                }
                if !a_j.is_empty() && !b_i.is_empty() {
                    *cross.entry((dj, d, adjacent)).or_insert(0) +=
                        a_j.len() as u64 * b_i.len() as u64;
                }
            }
        }

        let collect_side = |map: HashMap<(usize, usize, usize), u64>| -> Vec<SidePairClass> {
            let mut v: Vec<SidePairClass> = map
                .into_iter()
                .map(|((du, dv, open_union), count)| SidePairClass {
                    du,
                    dv,
                    open_union,
                    count,
                })
                .collect();
            v.sort_unstable_by_key(|c| (c.du, c.dv, c.open_union));
            v
        };
        let pairs_aa = collect_side(pairs_aa);
        let pairs_bb = collect_side(pairs_bb);
        let mut cross: Vec<CrossPairClass> = cross
            .into_iter()
            .map(|((da, db, adjacent), count)| CrossPairClass {
                da,
                db,
                adjacent,
                count,
            })
            .collect();
        cross.sort_unstable_by_key(|c| (c.da, c.db, c.adjacent));

        let (ma, mb) = (bip.side_a.len() as i64, bip.side_b.len() as i64);
        let mut need_a: Vec<i64> = Vec::new();
        let mut need_b: Vec<i64> = Vec::new();
        for &(d, _) in &deg_hist_a {
            need_b.push(mb - d as i64);
        }
        for &(d, _) in &deg_hist_b {
            need_a.push(ma - d as i64);
        }
        for c in &pairs_aa {
            need_b.push(mb - c.open_union as i64);
        }
        for c in &pairs_bb {
            need_a.push(ma - c.open_union as i64);
        }
        for c in &cross {
            let shift = if c.adjacent { 0 } else { 1 };
            need_a.push(ma - c.db as i64 - shift);
            need_b.push(mb - c.da as i64 - shift);
            need_a.push(ma - c.db as i64);
            need_b.push(mb - c.da as i64);
        }

        Ok(BipEvaluator {
            size_a: bip.side_a.len(),
            size_b: bip.side_b.len(),
            deg_hist_a,
            deg_hist_b,
            pairs_aa,
            pairs_bb,
            cross,
            ratios_a: SideRatios::new(bip.side_a.len(), need_a),
            ratios_b: SideRatios::new(bip.side_b.len(), need_b),
        })
    }

    fn in_grid(&self, a: usize, b: usize) -> bool {
        a <= self.size_a && b <= self.size_b && a + b > 0 && a + b < self.size_a + self.size_b
    }

    fn eval(&self, a: usize, b: usize) -> BipTermsAtAb {
        let (ma, mb) = (self.size_a as i64, self.size_b as i64);
        // P(u not in X_A) = C(|A|-1,a)/C(|A|,a) = (|A|-a)/|A|
        let miss_a = rat(ma - a as i64, ma);
        let miss_b = rat(mb - b as i64, mb);

        // e: expected |X_A| + |X_B| + |Y_A| + |Y_B|
        let mut survive_a = Rational::zero(); // Σ_{u∈A} C(|B|-d(u),b)/C(|B|,b)
        for &(d, count) in &self.deg_hist_a {
            let r = self.ratios_b.get(mb - d as i64, b);
            if !r.is_zero() {
                survive_a += r * rat_int(count);
            }
        }
        let mut survive_b = Rational::zero();
        for &(d, count) in &self.deg_hist_b {
            let r = self.ratios_a.get(ma - d as i64, a);
            if !r.is_zero() {
                survive_b += r * rat_int(count);
            }
        }
        let mean =
            rat_int((a + b) as i64) + &miss_a * &survive_a + &miss_b * &survive_b;

        // f, g: Σ q(1-q) with q = P(u ∈ Y_side)
        let one = Rational::from_integer(1.into());
        let mut var_sum_a = Rational::zero();
        for &(d, count) in &self.deg_hist_a {
            let q = &miss_a * self.ratios_b.get(mb - d as i64, b);
            var_sum_a += (&q * (&one - &q)) * rat_int(count);
        }
        let mut var_sum_b = Rational::zero();
        for &(d, count) in &self.deg_hist_b {
            let q = &miss_b * self.ratios_a.get(ma - d as i64, a);
            var_sum_b += (&q * (&one - &q)) * rat_int(count);
        }

        // h, i: same-side pair covariances. P(u,v both outside X_A) is
        // C(|A|-2,a)/C(|A|,a) = (|A|-a)(|A|-a-1)/(|A|(|A|-1)); the product
        // of the single-vertex probabilities carries (|A|-a)^2/|A|^2.
        let both_miss_a = rat(
            (ma - a as i64) * (ma - a as i64 - 1),
            ma * (ma - 1),
        );
        let both_miss_b = rat(
            (mb - b as i64) * (mb - b as i64 - 1),
            mb * (mb - 1),
        );
        let miss_a_sq = &miss_a * &miss_a;
        let miss_b_sq = &miss_b * &miss_b;

        let mut cov_sum_aa = Rational::zero();
        for c in &self.pairs_aa {
            let joint = &both_miss_a * self.ratios_b.get(mb - c.open_union as i64, b);
            let indep = &miss_a_sq
                * self.ratios_b.get(mb - c.du as i64, b)
                * self.ratios_b.get(mb - c.dv as i64, b);
            cov_sum_aa += (joint - indep) * rat_int(c.count);
        }
        let mut cov_sum_bb = Rational::zero();
        for c in &self.pairs_bb {
            let joint = &both_miss_b * self.ratios_a.get(ma - c.open_union as i64, a);
            let indep = &miss_b_sq
                * self.ratios_a.get(ma - c.du as i64, a)
                * self.ratios_a.get(ma - c.dv as i64, a);
            cov_sum_bb += (joint - indep) * rat_int(c.count);
        }

        // j: cross covariances; |{u} ∪ N(v)| = d(v) if u ~ v else d(v)+1
        let mut cov_sum_ab = Rational::zero();
        for c in &self.cross {
            let shift = if c.adjacent { 0 } else { 1 };
            let joint = self.ratios_a.get(ma - c.db as i64 - shift, a)
                * self.ratios_b.get(mb - c.da as i64 - shift, b);
            let indep = &miss_a
                * self.ratios_b.get(mb - c.da as i64, b)
                * &miss_b
                * self.ratios_a.get(ma - c.db as i64, a);
            cov_sum_ab += (joint - indep) * rat_int(c.count);
        }

        let variance = &var_sum_a
            + &var_sum_b
            + rat_int(2) * (&cov_sum_aa + &cov_sum_bb + &cov_sum_ab);
        let total = rat_int(ma + mb);
        assert!(
            mean < total,
            "e(G,{a},{b}) = {mean} must stay below |A|+|B| = {}",
            ma + mb
        );
        assert!(
            !variance.is_negative(),
            "k(G,{a},{b}) = {variance} must be nonnegative"
        );
        let hm3_value = &mean - &variance / (total - &mean);

        BipTermsAtAb {
            a,
            b,
            mean,
            var_sum_a,
            var_sum_b,
            cov_sum_aa,
            cov_sum_bb,
            cov_sum_ab,
            variance,
            hm3_value,
        }
    }
}

/// Exact e, f, g, h, i, j, k and the γ_HM3 value at one grid point of
/// `S(|A|,|B|)`.
pub fn bip_terms(
    g: &Graph,
    bip: &Bipartition,
    a: usize,
    b: usize,
) -> Result<BipTermsAtAb, BoundError> {
    let ev = BipEvaluator::new(g, bip)?;
    if !ev.in_grid(a, b) {
        return Err(BoundError::PointOutsideGrid {
            a,
            b,
            size_a: ev.size_a,
            size_b: ev.size_b,
        });
    }
    Ok(ev.eval(a, b))
}

/// `γ_HM3(G) = min over the grid of (e - k/(|A|+|B|-e))`, never above
/// `min(|A|, |B|)`. Ties resolve toward smaller a, then smaller b.
pub fn gamma_hm3(
    g: &Graph,
    bip: &Bipartition,
) -> Result<Extremum<(usize, usize)>, BoundError> {
    let ev = BipEvaluator::new(g, bip)?;
    let mut best: Option<Extremum<(usize, usize)>> = None;
    for a in 0..=ev.size_a {
        for b in 0..=ev.size_b {
            if !ev.in_grid(a, b) {
                continue;
            }
            let terms = ev.eval(a, b);
            let better = match &best {
                None => true,
                Some(cur) => terms.hm3_value < cur.value,
            };
            if better {
                best = Some(Extremum {
                    value: terms.hm3_value,
                    arg: (a, b),
                });
            }
        }
    }
    let best = best.expect("grid is nonempty for sides >= 2");
    assert!(
        best.value <= rat_int(ev.size_a.min(ev.size_b) as i64),
        "gamma_hm3 exceeds min(|A|,|B|)"
    );
    Ok(best)
}
