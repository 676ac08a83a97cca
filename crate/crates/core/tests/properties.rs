//! Properties of link graphs and maximal solution-free sets, each checked
//! against a direct computation from the definitions written here.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use sfl::equations::PqEquation;
use sfl::linkgraph::{build_link, count_mis, LinkGraph};
use sfl::oracle::{count_maximal, extension_count};
use sfl::Budget;

/// Whether `{a, b, c}` solves `px + qy = z` in some order. With positive
/// integers every solution is nontrivial.
fn solves(p: u64, q: u64, a: u64, b: u64, c: u64) -> bool {
    let t = |x: u64, y: u64, z: u64| p * x + q * y == z;
    t(a, b, c) || t(b, a, c) || t(a, c, b) || t(c, a, b) || t(b, c, a) || t(c, b, a)
}

fn is_free(p: u64, q: u64, set: &BTreeSet<u64>) -> bool {
    !set.iter().any(|&x| set.iter().any(|&y| set.contains(&(p * x + q * y))))
}

fn is_maximal_free(p: u64, q: u64, n: u64, set: &BTreeSet<u64>) -> bool {
    is_free(p, q, set)
        && (1..=n).filter(|v| !set.contains(v)).all(|v| {
            let mut bigger = set.clone();
            bigger.insert(v);
            !is_free(p, q, &bigger)
        })
}

/// The link graph straight from its definition.
fn link_by_definition(p: u64, q: u64, s: &[u64], b: &[u64]) -> (BTreeSet<(u64, u64)>, BTreeSet<u64>) {
    let mut edges = BTreeSet::new();
    let mut loops = BTreeSet::new();
    for (i, &u) in b.iter().enumerate() {
        for &v in &b[i + 1..] {
            if s.iter().any(|&w| solves(p, q, u, v, w)) {
                edges.insert((u.min(v), u.max(v)));
            }
        }
        let self_loop = s.iter().any(|&w| solves(p, q, u, u, w));
        let seed_loop = s.iter().any(|&w1| s.iter().any(|&w2| solves(p, q, u, w1, w2)));
        if self_loop || seed_loop {
            loops.insert(u);
        }
    }
    (edges, loops)
}

/// Maximal independent sets by scanning all subsets of the loop-free vertices.
fn mis_by_scan(g: &LinkGraph) -> u64 {
    let vs: Vec<u64> = g.vertices().iter().copied().filter(|v| !g.has_loop(*v)).collect();
    let independent = |mask: u64| {
        (0..vs.len()).all(|i| {
            mask >> i & 1 == 0 || (i + 1..vs.len()).all(|j| mask >> j & 1 == 0 || !g.has_edge(vs[i], vs[j]))
        })
    };
    (0u64..1 << vs.len())
        .filter(|&mask| {
            independent(mask) && (0..vs.len()).all(|i| mask >> i & 1 == 1 || !independent(mask | 1 << i))
        })
        .count() as u64
}

fn greedy_free(p: u64, q: u64, order: &[u64], taken: &BTreeSet<u64>) -> BTreeSet<u64> {
    let mut set = taken.clone();
    for &x in order {
        set.insert(x);
        if !is_free(p, q, &set) {
            set.remove(&x);
        }
    }
    set.difference(taken).copied().collect()
}

fn pq_main() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=4).prop_flat_map(|p| (Just(p), 1..=p))
}

/// Disjoint `S` and `B` in `[n]`, each solution-free, from shuffled candidates.
fn free_pair(max_n: u64, max_b: usize) -> impl Strategy<Value = (u64, u64, u64, Vec<u64>, Vec<u64>)> {
    (pq_main(), 4..=max_n).prop_flat_map(move |((p, q), n)| {
        let all: Vec<u64> = (1..=n).collect();
        (
            Just((p, q, n)),
            proptest::sample::subsequence(all.clone(), 0..=(n as usize / 3)),
            Just(all).prop_shuffle(),
        )
            .prop_map(move |((p, q, n), s_pick, order)| {
                let s = greedy_free(p, q, &s_pick, &BTreeSet::new());
                let rest: Vec<u64> = order.into_iter().filter(|x| !s.contains(x)).collect();
                let mut b = greedy_free(p, q, &rest, &BTreeSet::new());
                while b.len() > max_b {
                    let last = *b.iter().next_back().unwrap();
                    b.remove(&last);
                }
                (p, q, n, s.into_iter().collect(), b.into_iter().collect())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn link_graph_matches_its_definition(
        (p, q) in pq_main(),
        s in proptest::collection::btree_set(1u64..=30, 0..4),
        b in proptest::collection::btree_set(1u64..=60, 0..20),
    ) {
        let b: Vec<u64> = b.difference(&s).copied().collect();
        let s: Vec<u64> = s.into_iter().collect();
        let eq = PqEquation::new(p, q).unwrap();
        let g = build_link(&eq, &s, &b).unwrap();
        let (edges, loops) = link_by_definition(p, q, &s, &b);
        prop_assert_eq!(g.edges(), &edges);
        prop_assert_eq!(g.loops(), &loops);
        for &(u, v) in g.edges() {
            let w = g.edge_witness(&eq, u, v).unwrap().elements();
            prop_assert!(solves(p, q, w[0], w[1], w[2]));
        }
        for &x in g.loops() {
            let w = g.loop_witness(&eq, x).unwrap().elements();
            prop_assert!(solves(p, q, w[0], w[1], w[2]) && w.contains(&x));
        }
    }

    /// With `q >= 2`, `q^2 >= p + q`, `A ⊆ [1, u]` and `B ⊆ [u + 1, n]`, the
    /// link graph of `A` on `B` has no triangle.
    #[test]
    fn link_graphs_with_large_q_are_triangle_free(
        (p, q, n, u) in (2u64..=5)
            .prop_flat_map(|q| (q..=q * q - q, Just(q), 4u64..=100))
            .prop_flat_map(|(p, q, n)| (Just(p), Just(q), Just(n), 1..n)),
        a_bits in proptest::collection::vec(proptest::bool::weighted(0.3), 100),
        b_bits in proptest::collection::vec(proptest::bool::weighted(0.6), 100),
    ) {
        let a: Vec<u64> = (1..=u).filter(|&x| a_bits[x as usize - 1]).collect();
        let b: Vec<u64> = (u + 1..=n).filter(|&x| b_bits[x as usize - 1]).collect();
        let (edges, _) = link_by_definition(p, q, &a, &b);
        let triangle = edges.iter().any(|&(x, y)| {
            b.iter().any(|&z| {
                z != x && z != y
                    && edges.contains(&(x.min(z), x.max(z)))
                    && edges.contains(&(y.min(z), y.max(z)))
            })
        });
        prop_assert!(!triangle, "triangle for p = {}, q = {}, A = {:?}", p, q, a);
        let g = build_link(&PqEquation::new(p, q).unwrap(), &a, &b).unwrap();
        prop_assert!(g.is_triangle_free());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Extensions of a free `S` inside a disjoint free `B` are maximal
    /// independent sets of the link graph, so there are at most that many.
    #[test]
    fn extensions_are_bounded_by_link_graph_mis((p, q, n, s, b) in free_pair(16, 14)) {
        let eq = PqEquation::new(p, q).unwrap();
        let budget = Budget::default();
        let s_set: BTreeSet<u64> = s.iter().copied().collect();
        let expected = (0u64..1 << b.len())
            .filter(|&mask| {
                let mut set = s_set.clone();
                set.extend((0..b.len()).filter(|i| mask >> i & 1 == 1).map(|i| b[i]));
                is_maximal_free(p, q, n, &set)
            })
            .count();
        let ext = extension_count(&eq, n, &s, &b, &budget).unwrap();
        prop_assert_eq!(&ext, &BigUint::from(expected));
        let g = build_link(&eq, &s, &b).unwrap();
        let mis = mis_by_scan(&g);
        prop_assert_eq!(count_mis(&g, &budget).unwrap(), BigUint::from(mis));
        prop_assert!(expected as u64 <= mis, "{} > {} for S = {:?}, B = {:?}", expected, mis, s, b);
    }

    /// Any induced subgraph of a link graph of disjoint free `S` and `B` has at
    /// most `f_max(n)` maximal independent sets.
    #[test]
    fn induced_subgraph_mis_at_most_fmax(
        (p, q, n, s, b) in free_pair(24, 24),
        keep in proptest::collection::vec(any::<bool>(), 24),
    ) {
        let eq = PqEquation::new(p, q).unwrap();
        let budget = Budget::default();
        let g = build_link(&eq, &s, &b).unwrap();
        let h = g.induced(b.iter().copied().filter(|&x| keep[x as usize - 1]));
        let mis = count_mis(&h, &budget).unwrap();
        let fmax = count_maximal(&eq, n, &budget).unwrap();
        prop_assert!(mis <= fmax, "{} > {} for S = {:?}, B = {:?}", mis, fmax, s, b);
    }
}

#[test]
fn fmax_agrees_with_a_subset_scan() {
    let budget = Budget::default();
    for (p, q) in [(2, 1), (3, 1), (2, 2), (3, 2), (4, 3)] {
        let eq = PqEquation::new(p, q).unwrap();
        for n in 1..=14u64 {
            let brute = (0u64..1 << n)
                .filter(|&mask| {
                    let set: BTreeSet<u64> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
                    is_maximal_free(p, q, n, &set)
                })
                .count();
            assert_eq!(count_maximal(&eq, n, &budget).unwrap(), BigUint::from(brute), "({p}, {q}, {n})");
        }
    }
}
