//! Property tests for the structural invariants: codec round-trips,
//! bitset query bounds, exact-arithmetic laws, and the bipartiteness
//! criterion.

use proptest::prelude::*;

use domind::arith::{binom, rat, RatioTable};
use domind::graph::{parse_graph6, Graph};
use domind::Rational;

/// Random labeled graph on 1..=max_n vertices from an edge bitmask.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << pairs)).prop_map(|(n, mask)| {
            let edges = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e);
            Graph::from_edges(n, edges).expect("valid edges")
        })
    })
}

/// Boolean adjacency-matrix powers: an odd closed walk exists iff the
/// graph contains an odd cycle.
fn has_odd_cycle_by_walks(g: &Graph) -> bool {
    let n = g.n();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| u != v && g.has_edge(u, v)).collect())
        .collect();
    let mut power = adj.clone();
    let mut k = 1;
    loop {
        if k % 2 == 1 && (0..n).any(|u| power[u][u]) {
            return true;
        }
        if k >= n {
            return false;
        }
        let mut next = vec![vec![false; n]; n];
        for u in 0..n {
            for w in 0..n {
                if power[u][w] {
                    for (v, cell) in next[u].iter_mut().enumerate() {
                        *cell = *cell || adj[w][v];
                    }
                }
            }
        }
        power = next;
        k += 1;
    }
}

proptest! {
    /// parse(encode(g)) reproduces the adjacency exactly for all graphs
    /// up to 8 vertices.
    #[test]
    fn graph6_roundtrip(g in arb_graph(8)) {
        let back = parse_graph6(&g.to_graph6()).unwrap();
        prop_assert_eq!(back, g);
    }

    /// The degree sum is twice the edge count.
    #[test]
    fn degree_sum_is_twice_edge_count(g in arb_graph(8)) {
        let sum: usize = (0..g.n()).map(|u| g.degree(u)).sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    /// Closed-union sizes sit between max(d)+1 and d(u)+d(v)+2, with the
    /// upper form exactly for non-adjacent pairs with disjoint
    /// neighborhoods.
    #[test]
    fn closed_union_bounds(g in arb_graph(8)) {
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                let s = g.closed_union_size(u, v);
                let (du, dv) = (g.degree(u), g.degree(v));
                prop_assert!(s > du.max(dv));
                prop_assert!(s <= du + dv + 2);
                let loose = !g.has_edge(u, v) && g.common_neighbor_count(u, v) == 0;
                prop_assert_eq!(s == du + dv + 2, loose);
            }
        }
    }

    /// A two-coloring exists exactly when no odd closed walk does.
    #[test]
    fn bipartition_iff_no_odd_cycle(g in arb_graph(7)) {
        let bip = g.find_bipartition();
        prop_assert_eq!(bip.is_some(), !has_odd_cycle_by_walks(&g));
        if let Some(bip) = bip {
            prop_assert!(g.is_valid_bipartition(&bip));
        }
    }

    /// Exact rational addition is associative as reduced fractions.
    #[test]
    fn rational_addition_associative(
        (a, b) in (-1000i64..1000, 1i64..100),
        (c, d) in (-1000i64..1000, 1i64..100),
        (e, f) in (-1000i64..1000, 1i64..100),
    ) {
        let (x, y, z) = (rat(a, b), rat(c, d), rat(e, f));
        prop_assert_eq!((&x + &y) + &z, x + (y + z));
    }

    /// Ratio-table entries multiplied back by C(n,t) recover C(s,t).
    #[test]
    fn ratio_table_recovers_binomials(n in 1usize..60, t_frac in 0.0f64..1.0) {
        let t = ((n as f64) * t_frac) as usize;
        let table = RatioTable::new(n, t).unwrap();
        let total = Rational::from_integer(binom(n as i64, t as i64));
        for s in 0..=n as i64 {
            prop_assert_eq!(
                table.get(s) * &total,
                Rational::from_integer(binom(s, t as i64))
            );
        }
    }
}
