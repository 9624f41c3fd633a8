//! Lower bounds on the independence number: the classical Caro-Wei bound
//! α_CW, Selkow's α_S, the Angel-Campigotto-Laforest bound α_ACL, the
//! Harant-Rautenbach family-decrement bound α_HR, and the variance-
//! strengthened α_HM.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{binom, rat, rat_int, ColRef, Rational, SweepCols};
use crate::domination::{BoundError, Extremum};
use crate::graph::{GammaClassProof, Graph};

fn require_gamma(g: &Graph) -> Result<(), BoundError> {
    let proof = g.gamma_class();
    if proof.holds() {
        Ok(())
    } else {
        Err(BoundError::NotInGamma(proof))
    }
}

fn not_in_gamma(proof: GammaClassProof) -> BoundError {
    BoundError::NotInGamma(proof)
}

/// `α_CW(G) = Σ_u 1/(d(u)+1)`; exceeds 1 on every admissible graph.
pub fn alpha_cw(g: &Graph) -> Result<Rational, BoundError> {
    require_gamma(g)?;
    Ok(cw_sum(g))
}

fn cw_sum(g: &Graph) -> Rational {
    let mut acc = Rational::zero();
    for (d, count) in g.degree_histogram() {
        acc += rat(count as i64, d as i64 + 1);
    }
    acc
}

/// Selkow's strengthening: α_CW plus, per vertex, the positive part of
/// `d(u)/(d(u)+1) - Σ_{v∈N(u)} 1/(d(v)+1)`, scaled by `1/(d(u)+1)`.
pub fn alpha_s(g: &Graph) -> Result<Rational, BoundError> {
    require_gamma(g)?;
    let mut extra = Rational::zero();
    // the neighbor sum only depends on the neighborhood, so evaluate it
    // once per twin class
    for class in g.twin_classes() {
        let u = class.rep;
        let d = g.degree(u);
        let mut nbr_degs: HashMap<usize, u64> = HashMap::new();
        for v in g.neighbors(u) {
            *nbr_degs.entry(g.degree(v)).or_insert(0) += 1;
        }
        let mut nbr_sum = Rational::zero();
        for (dv, count) in nbr_degs {
            nbr_sum += rat(count as i64, dv as i64 + 1);
        }
        let gap = rat(d as i64, d as i64 + 1) - nbr_sum;
        if gap.is_positive() {
            extra += rat(class.members.len() as i64, d as i64 + 1) * gap;
        }
    }
    Ok(cw_sum(g) + extra)
}

/// The Angel-Campigotto-Laforest bound
/// `α_ACL(G) = α_CW(G) + A(G) / (α_CW(G) - 1)` with the nonnegative
/// correction
/// `A(G) = Σ_u d(u)/(d(u)+1)^2 - Σ_{uv∈E} 2/((d(u)+1)(d(v)+1))
///  + Σ_{uv∉E} 2|N(u)∩N(v)| / ((d(u)+1)(d(v)+1)(2+d(u)+d(v)-|N(u)∩N(v)|))`.
pub fn alpha_acl(g: &Graph) -> Result<Rational, BoundError> {
    require_gamma(g)?;
    let mut correction = Rational::zero();
    for (d, count) in g.degree_histogram() {
        let d = d as i64;
        correction += rat(count as i64 * d, (d + 1) * (d + 1));
    }
    for pc in g.pair_classes() {
        let du = pc.du as i64;
        let dv = pc.dv as i64;
        if pc.adjacent {
            correction -= rat(2 * pc.count as i64, (du + 1) * (dv + 1));
        } else {
            let common = pc.common_neighbors() as i64;
            if common > 0 {
                correction += rat_int(2 * common * pc.count as i64)
                    / rat_int((du + 1) * (dv + 1) * (2 + du + dv - common));
            }
        }
    }
    assert!(
        !correction.is_negative(),
        "A(G) = {correction} must be nonnegative"
    );
    let cw = cw_sum(g);
    let denom = &cw - rat_int(1);
    Ok(&cw + correction / denom)
}

/// Multiset of values `d(u)+1` after `l` greedy decrements of a maximum
/// member; members never drop below 1.
#[derive(Debug, Clone)]
pub struct DegreeFamily {
    /// value -> multiplicity
    counts: BTreeMap<u64, u64>,
    decrements: u64,
}

impl DegreeFamily {
    pub fn new(g: &Graph) -> Self {
        let mut counts = BTreeMap::new();
        for (d, count) in g.degree_histogram() {
            *counts.entry(d as u64 + 1).or_insert(0) += count;
        }
        DegreeFamily {
            counts,
            decrements: 0,
        }
    }

    pub fn decrements(&self) -> u64 {
        self.decrements
    }

    /// Moves `steps` members down by one, always from the current maximum
    /// level. Decrementing one-at-a-time and level-batching produce the
    /// same multiset.
    pub fn decrement(&mut self, mut steps: u64) {
        while steps > 0 {
            let (&vmax, &count) = self
                .counts
                .last_key_value()
                .expect("family is never empty");
            assert!(vmax > 1, "members cannot drop below 1");
            let take = count.min(steps);
            if take == count {
                self.counts.remove(&vmax);
            } else {
                self.counts.insert(vmax, count - take);
            }
            *self.counts.entry(vmax - 1).or_insert(0) += take;
            self.decrements += take;
            steps -= take;
        }
    }

    /// `Σ 1/f` over the family.
    pub fn reciprocal_sum(&self) -> Rational {
        let mut acc = Rational::zero();
        for (&v, &count) in &self.counts {
            acc += rat(count as i64, v as i64);
        }
        acc
    }

    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// `φ(G,l)`: the minimum of `Σ_u 1/(d(u)+1-ψ(u))` over all decrement
/// assignments with `Σψ = l`, computed through its greedy closed form.
/// Defined for `l` up to the degree sum `Σ_u d(u)`.
pub fn phi(g: &Graph, l: u64) -> Result<Rational, BoundError> {
    require_gamma(g)?;
    let degree_sum = 2 * g.edge_count() as u64;
    if l > degree_sum {
        return Err(BoundError::PhiOutOfRange { l, max: degree_sum });
    }
    let mut family = DegreeFamily::new(g);
    family.decrement(l);
    Ok(family.reciprocal_sum())
}

/// `α_HR(G)`: the smallest k with `k >= φ(G, 2(k-1))`, found by the
/// incremental loop from k = 1. Terminates because φ never exceeds n.
pub fn alpha_hr(g: &Graph) -> Result<usize, BoundError> {
    require_gamma(g)?;
    let mut family = DegreeFamily::new(g);
    let mut phi_val = family.reciprocal_sum();
    let mut k: usize = 1;
    while rat_int(k as i64) < phi_val {
        k += 1;
        // connectivity keeps 2(k-1) <= 2(n-1) <= 2|E| within the domain
        family.decrement(2 * (k as u64 - 1) - family.decrements());
        phi_val = family.reciprocal_sum();
        debug_assert!(k <= g.n());
    }
    Ok(k)
}

/// The exact per-t terms behind α_HM, kept as raw binomial sums.
///
/// The pair term conditions on two chosen vertices, so its per-vertex
/// binomials draw from a ground set of `n - d(u) - 2` vertices (the
/// non-neighbors other than the chosen partner). Exhaustive enumeration
/// pins this down: the variance identity fails on C_5 at t = 3 with
/// `n - d(u) - 1` in its place.
#[derive(Debug, Clone, PartialEq)]
pub struct IndTermsAtT {
    pub t: usize,
    /// `Σ_u C(n-d(u)-1, t-1)`: total size of the repaired independent set
    /// over all t-subsets.
    pub vertex_sum: BigInt,
    /// `2 Σ_{uv∉E} (C(n-d(u)-2,t-2) + C(n-d(v)-2,t-2)
    ///  - C(n-|N[u]∪N[v]|,t-2))`
    pub pair_sum: BigInt,
    /// `2t - 1 - pair_sum/vertex_sum`
    pub hm_value: Rational,
}

/// Raw integer sums for one t in `2..=n-δ`.
pub fn ind_terms(g: &Graph, t: usize) -> Result<IndTermsAtT, BoundError> {
    require_gamma(g)?;
    let n = g.n();
    let t_max = n - g.min_degree();
    if t < 2 || t > t_max {
        return Err(BoundError::TOutOfRange { t, min: 2, max: t_max });
    }
    let ni = n as i64;
    let ti = t as i64;

    let mut vertex_sum = BigInt::zero();
    let mut nonedge_vertex = BigInt::zero();
    for (d, count) in g.degree_histogram() {
        let d = d as i64;
        vertex_sum += binom(ni - d - 1, ti - 1) * count;
        // each vertex belongs to n-1-d non-edges
        nonedge_vertex += binom(ni - d - 2, ti - 2) * ((ni - 1 - d) as u64 * count);
    }
    let mut union_part = BigInt::zero();
    for pc in g.pair_classes() {
        if !pc.adjacent {
            union_part += binom(ni - pc.closed_union as i64, ti - 2) * pc.count;
        }
    }
    let pair_sum: BigInt = (nonedge_vertex - union_part) * 2;
    assert!(
        vertex_sum.is_positive(),
        "vertex sum must be positive for t <= n - δ"
    );
    let hm_value =
        rat_int(2 * ti - 1) - Rational::new(pair_sum.clone(), vertex_sum.clone());
    Ok(IndTermsAtT {
        t,
        vertex_sum,
        pair_sum,
        hm_value,
    })
}

/// `α_HM(G) = max over 2 <= t <= n-δ of (2t - 1 - b/a)`, exact. Ties
/// resolve toward smaller t.
///
/// The sweep works with the sums scaled by `1/C(n,t)`; the quotient is
/// unchanged and the scaled columns stay small.
pub fn alpha_hm(g: &Graph) -> Result<Extremum<usize>, BoundError> {
    require_gamma(g)?;
    let n = g.n();
    let t_max = n - g.min_degree();
    debug_assert!(t_max >= 2);
    let ni = n as i64;

    let mut cols = SweepCols::new(n, 2);
    let mut vertex_terms: Vec<(ColRef, Rational)> = Vec::new();
    let mut nonedge_vertex_terms: Vec<(ColRef, Rational)> = Vec::new();
    for (d, count) in g.degree_histogram() {
        let d = d as i64;
        vertex_terms.push((cols.column(ni - d - 1, 1), rat_int(count)));
        nonedge_vertex_terms.push((
            cols.column(ni - d - 2, 2),
            rat_int((ni - 1 - d) as u64 * count),
        ));
    }
    let mut union_weights: HashMap<i64, u64> = HashMap::new();
    for pc in g.pair_classes() {
        if !pc.adjacent {
            *union_weights
                .entry(ni - pc.closed_union as i64)
                .or_insert(0) += pc.count;
        }
    }
    let mut union_weights: Vec<_> = union_weights.into_iter().collect();
    union_weights.sort_unstable();
    let union_terms: Vec<(ColRef, Rational)> = union_weights
        .into_iter()
        .map(|(s, count)| (cols.column(s, 2), rat_int(count)))
        .collect();

    let mut best: Option<Extremum<usize>> = None;
    for t in 2..=t_max {
        if t > 2 {
            cols.advance();
        }
        let scaled_vertex = cols.weighted_sum(&vertex_terms);
        assert!(
            scaled_vertex.is_positive(),
            "a(G,{t}) must be positive for t <= n - δ"
        );
        let scaled_pair =
            rat_int(2) * (cols.weighted_sum(&nonedge_vertex_terms) - cols.weighted_sum(&union_terms));
        let value = rat_int(2 * t as i64 - 1) - scaled_pair / scaled_vertex;
        let better = match &best {
            None => true,
            Some(cur) => value > cur.value,
        };
        if better {
            best = Some(Extremum { value, arg: t });
        }
    }
    best.ok_or_else(|| not_in_gamma(g.gamma_class()))
}

/// All five lower bounds at once.
#[derive(Debug, Clone, PartialEq)]
pub struct IndBounds {
    pub cw: Rational,
    pub s: Rational,
    pub acl: Rational,
    pub hr: usize,
    pub hm: Extremum<usize>,
}

pub fn independence_bounds(g: &Graph) -> Result<IndBounds, BoundError> {
    Ok(IndBounds {
        cw: alpha_cw(g)?,
        s: alpha_s(g)?,
        acl: alpha_acl(g)?,
        hr: alpha_hr(g)?,
        hm: alpha_hm(g)?,
    })
}
