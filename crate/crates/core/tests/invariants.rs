use cayley_ci::aut::{
    are_isomorphic, automorphism_group, automorphism_group_with_known,
    regular_subgroups_isomorphic_to, DEFAULT_AUT_CAP,
};
use cayley_ci::graph::{cayley, gamma0, is_undirected, relation_sim, SimVerdict};
use cayley_ci::{BlockSystem, ColoredDigraph, FiniteGroup, PermGroup, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn graph(max_n: usize, colors: u32) -> impl Strategy<Value = ColoredDigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..colors, n * n).prop_map(move |c| {
            let rows = c.chunks(n).map(<[u32]>::to_vec).collect();
            ColoredDigraph::from_matrix(rows).unwrap()
        })
    })
}

fn group(spec: &str) -> FiniteGroup {
    FiniteGroup::build(&spec.parse().unwrap()).unwrap()
}

fn relabel(g: &ColoredDigraph, p: &Permutation) -> ColoredDigraph {
    let inv = p.inverse();
    ColoredDigraph::from_fn(g.n(), |u, v| g.color(inv.apply(u), inv.apply(v)))
}

fn brute_aut_order(g: &ColoredDigraph) -> usize {
    let sym = PermGroup::symmetric(g.n(), usize::MAX).unwrap();
    sym.elements()
        .unwrap()
        .iter()
        .filter(|p| g.preserved_by(p))
        .count()
}

fn brute_isomorphic(a: &ColoredDigraph, b: &ColoredDigraph) -> bool {
    let sym = PermGroup::symmetric(a.n(), usize::MAX).unwrap();
    let found = sym.elements().unwrap().iter().any(|p| relabel(a, p) == *b);
    found
}

const SMALL: [&str; 8] = ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Q8", "E8"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_conjugation(a in perm(8), g in perm(8)) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let c = a.conjugate(&g).unwrap();
        prop_assert_eq!(c.order(), a.order());
        prop_assert_eq!(c, g.inverse().compose(&a).unwrap().compose(&g).unwrap());
    }

    #[test]
    fn cycle_notation_round_trips(a in perm(9)) {
        prop_assert_eq!(Permutation::from_cycles(&a.to_string(), 9).unwrap(), a);
    }

    #[test]
    fn cycle_notation_round_trips_past_nine(a in perm(12)) {
        prop_assert_eq!(Permutation::from_cycles(&a.to_string(), 12).unwrap(), a);
    }

    #[test]
    fn generated_groups_are_closed(gens in prop::collection::vec(perm(6), 1..3)) {
        let h = PermGroup::generate(6, gens, 1000).unwrap();
        let e = h.elements().unwrap();
        prop_assert_eq!(720 % e.len(), 0);
        for x in e.iter().take(12) {
            for y in e.iter().take(12) {
                prop_assert!(h.contains(&x.compose(y).unwrap()).unwrap());
            }
            prop_assert!(h.contains(&x.inverse()).unwrap());
        }
        let orbit_sum: usize = h.orbits().iter().map(Vec::len).sum();
        prop_assert_eq!(orbit_sum, 6);
    }

    #[test]
    fn blocks_are_invariant(gens in prop::collection::vec(perm(8), 1..3), b in 1usize..8) {
        let h = PermGroup::generate(8, gens, 50_000).unwrap();
        if let Ok(blocks) = h.minimal_block_system(0, b) {
            prop_assert!(blocks.blocks().iter().any(|c| c.contains(&0) && c.contains(&b)));
            for g in h.generators() {
                prop_assert!(blocks.is_invariant_under(g));
            }
            // induced action is a homomorphism
            let gs = h.generators();
            for x in gs {
                for y in gs {
                    let xy = blocks.induced(&x.compose(y).unwrap()).unwrap();
                    let split = blocks.induced(x).unwrap().compose(&blocks.induced(y).unwrap()).unwrap();
                    prop_assert_eq!(xy, split);
                }
            }
        } else {
            prop_assert!(!h.is_transitive());
        }
    }

    #[test]
    fn aut_order_matches_brute_force(g in graph(6, 3)) {
        let r = automorphism_group(&g, DEFAULT_AUT_CAP).unwrap();
        prop_assert_eq!(r.order, Some(brute_aut_order(&g) as u128));
        prop_assert_eq!(r.group.order(), Some(brute_aut_order(&g)));
        for p in r.generators() {
            prop_assert!(g.preserved_by(p));
        }
    }

    #[test]
    fn plain_aut_order_matches_brute_force_at_seven(g in graph(7, 2).prop_filter("seven vertices", |g| g.n() == 7)) {
        let r = automorphism_group(&g, DEFAULT_AUT_CAP).unwrap();
        prop_assert_eq!(r.order, Some(brute_aut_order(&g) as u128));
    }

    #[test]
    fn isomorphism_of_relabelled_graphs(g in graph(7, 3), seed in any::<u64>()) {
        let n = g.n();
        let mut images: Vec<usize> = (0..n).collect();
        images.rotate_left((seed as usize) % n);
        if n > 2 {
            images.swap(0, (seed as usize / 7) % n);
        }
        let p = Permutation::from_images(images).unwrap();
        let h = relabel(&g, &p);
        let w = are_isomorphic(&g, &h).unwrap().expect("relabelled graphs are isomorphic");
        prop_assert_eq!(relabel(&g, &w), h.clone());
        let back = are_isomorphic(&h, &g).unwrap().expect("isomorphism is symmetric");
        prop_assert_eq!(relabel(&h, &back), g);
    }

    #[test]
    fn isomorphism_matches_brute_force(a in graph(5, 2), b in graph(5, 2)) {
        prop_assume!(a.n() == b.n());
        let fast = are_isomorphic(&a, &b).unwrap();
        prop_assert_eq!(fast.is_some(), brute_isomorphic(&a, &b));
        if let Some(w) = fast {
            prop_assert_eq!(relabel(&a, &w), b);
        }
    }

    #[test]
    fn cayley_graphs_admit_right_translations(idx in 0..SMALL.len(), mask in any::<u32>()) {
        let g = group(SMALL[idx]);
        let conn: Vec<usize> = (1..g.order()).filter(|&x| mask >> x & 1 == 1).collect();
        let graph = cayley(&g, &conn).unwrap();
        let ghat = g.right_regular_rep();
        for t in ghat.elements().unwrap() {
            prop_assert!(graph.preserved_by(t));
        }
        let aut = automorphism_group_with_known(&graph, ghat.generators(), DEFAULT_AUT_CAP).unwrap();
        if !aut.capped {
            prop_assert!(ghat.is_subgroup_of(&aut.group).unwrap());
        }
        prop_assert_eq!(graph.is_symmetric(), is_undirected(&g, &conn));
    }

    #[test]
    fn left_and_right_translations_commute(idx in 0..SMALL.len(), a in 0usize..8, b in 0usize..8) {
        let g = group(SMALL[idx]);
        let (a, b) = (a % g.order(), b % g.order());
        let l = g.left_translation(a);
        let r = g.right_translation(b);
        prop_assert_eq!(l.compose(&r).unwrap(), r.compose(&l).unwrap());
        prop_assert!(g.right_regular_rep().is_regular().unwrap());
        prop_assert_eq!(g.right_regular_rep().orbits().len(), 1);
    }

    #[test]
    fn sim_is_symmetric_up_to_orientation(g in graph(8, 2), split in 1usize..7) {
        let n = g.n();
        prop_assume!(n >= 2);
        let k = split.min(n - 1);
        let a: Vec<usize> = (0..k).collect();
        let b: Vec<usize> = (k..n).collect();
        let ab = relation_sim(&g, &a, &b).unwrap();
        prop_assert_eq!(relation_sim(&g, &b, &a).unwrap(), ab.reversed());
    }
}

#[test]
fn regular_subgroups_match_brute_force() {
    let cases: Vec<(PermGroup, &str)> = vec![
        (PermGroup::symmetric(4, 100).unwrap(), "Z4"),
        (PermGroup::symmetric(4, 100).unwrap(), "Z2xZ2"),
        (PermGroup::symmetric(6, 1000).unwrap(), "Z6"),
        (PermGroup::symmetric(6, 1000).unwrap(), "Z2xZ3"),
        (
            cayley_ci::suite::leaf_action(
                &automorphism_group(&cayley_ci::suite::build_delta(), 1000).unwrap(),
            )
            .unwrap(),
            "Q8",
        ),
        (
            cayley_ci::suite::leaf_action(
                &automorphism_group(&cayley_ci::suite::build_delta(), 1000).unwrap(),
            )
            .unwrap(),
            "E8",
        ),
    ];
    for (a, spec) in cases {
        let g = group(spec);
        let found = regular_subgroups_isomorphic_to(&a, &g).unwrap();
        for h in &found {
            assert!(h.is_regular().unwrap());
            assert!(g.abstract_isomorphic(h).unwrap().is_some());
            assert!(h.is_subgroup_of(&a).unwrap());
        }
        // brute force: subgroups generated by at most three fixed-point-free elements
        let n = a.degree();
        let fpf: Vec<&Permutation> = a
            .elements()
            .unwrap()
            .iter()
            .filter(|p| p.is_fixed_point_free())
            .collect();
        let mut brute: Vec<Vec<Permutation>> = Vec::new();
        let mut consider = |gens: Vec<Permutation>| {
            let h = PermGroup::generate(n, gens, n + 1).unwrap();
            if h.order() == Some(n)
                && h.is_regular().unwrap()
                && g.abstract_isomorphic(&h).unwrap().is_some()
            {
                let e = h.elements().unwrap().to_vec();
                if !brute.contains(&e) {
                    brute.push(e);
                }
            }
        };
        for (i, x) in fpf.iter().enumerate() {
            consider(vec![(*x).clone()]);
            for (j, y) in fpf.iter().enumerate().skip(i + 1) {
                consider(vec![(*x).clone(), (*y).clone()]);
                for z in fpf.iter().skip(j + 1) {
                    consider(vec![(*x).clone(), (*y).clone(), (*z).clone()]);
                }
            }
        }
        brute.sort();
        let mut fast: Vec<Vec<Permutation>> = found
            .iter()
            .map(|h| h.elements().unwrap().to_vec())
            .collect();
        fast.sort();
        assert_eq!(fast, brute, "{spec} in group of order {:?}", a.order());
    }
}

/// Two blocks `A = 0..p`, `B = p..2p` over Zp with circulant insides and
/// between-block arcs `a → p + (a + x)` for `x ∈ X`, `p + b → (b + y)` for `y ∈ Y`.
fn gadget(p: usize, inner_a: u32, inner_b: u32, x: u32, y: u32) -> ColoredDigraph {
    ColoredDigraph::from_fn(2 * p, |u, v| {
        let (bu, iu) = (u / p, u % p);
        let (bv, iv) = (v / p, v % p);
        let d = (iv + p - iu) % p;
        let bit = |set: u32| set >> d & 1;
        match (bu, bv) {
            _ if u == v => 0,
            (0, 0) => bit(inner_a),
            (1, 1) => bit(inner_b),
            (0, 1) => bit(x),
            _ => bit(y),
        }
    })
}

fn shift_pair(p: usize, b: usize, c: usize) -> Permutation {
    Permutation::from_images(
        (0..2 * p)
            .map(|v| {
                if v < p {
                    (v + b) % p
                } else {
                    p + (v - p + c) % p
                }
            })
            .collect(),
    )
    .unwrap()
}

#[test]
fn lifting_shift_pairs_agree_when_not_sim() {
    let p = 5;
    let full = (1u32 << p) - 1;
    let mut not_sim = 0;
    for x in 0..=full {
        for y in 0..=full {
            // inner circulants never matter for shifts, use the 5-cycle on both sides
            let g = gadget(p, 0b10, 0b10, x, y);
            let a: Vec<usize> = (0..p).collect();
            let b: Vec<usize> = (p..2 * p).collect();
            if relation_sim(&g, &a, &b).unwrap() != SimVerdict::NotSim {
                continue;
            }
            not_sim += 1;
            for s in 0..p {
                for t in 0..p {
                    if g.preserved_by(&shift_pair(p, s, t)) {
                        assert_eq!(s, t, "X={x:b} Y={y:b}");
                    }
                }
            }
        }
    }
    assert_eq!(not_sim, 1024 - 4);
}

#[test]
fn lifting_products_of_block_automorphisms_when_sim() {
    let p = 5;
    let full = (1u32 << p) - 1;
    let uniform = [(full, 0), (0, full), (full, full), (0, 0)];
    let mut products = 0usize;
    for inner_a in (0..=full).step_by(2) {
        for inner_b in (0..=full).step_by(2) {
            for &(x, y) in &uniform {
                let g = gadget(p, inner_a, inner_b, x, y);
                let a: Vec<usize> = (0..p).collect();
                let b: Vec<usize> = (p..2 * p).collect();
                assert_ne!(relation_sim(&g, &a, &b).unwrap(), SimVerdict::NotSim);
                let part = |set: &[usize]| {
                    let sub = ColoredDigraph::from_fn(p, |u, v| g.color(set[u], set[v]));
                    automorphism_group(&sub, 1000).unwrap().group
                };
                let (aut_a, aut_b) = (part(&a), part(&b));
                // every product, exhaustively, for the sparsest and densest insides;
                // generators suffice elsewhere
                let exhaustive = [0, 0b10, full - 1].contains(&inner_a)
                    && [0, 0b110, full - 1].contains(&inner_b);
                let (ea, eb) = if exhaustive {
                    (
                        aut_a.elements().unwrap().to_vec(),
                        aut_b.elements().unwrap().to_vec(),
                    )
                } else {
                    let mut ga = aut_a.generators().to_vec();
                    ga.push(Permutation::identity(p));
                    let mut gb = aut_b.generators().to_vec();
                    gb.push(Permutation::identity(p));
                    (ga, gb)
                };
                for pa in &ea {
                    for pb in &eb {
                        let images = (0..2 * p)
                            .map(|v| {
                                if v < p {
                                    pa.apply(v)
                                } else {
                                    p + pb.apply(v - p)
                                }
                            })
                            .collect();
                        let pi = Permutation::from_images(images).unwrap();
                        assert!(g.preserved_by(&pi));
                        products += 1;
                    }
                }
            }
        }
    }
    assert!(products > 0);
}

#[test]
fn quotient_graph_is_vertex_transitive_under_induced_action() {
    let g = group("Q8xZ5");
    let conn = g.parse_subset("i@0,-i@0,j@1").unwrap();
    let graph = cayley(&g, &conn).unwrap();
    let blocks =
        BlockSystem::new((0..8).map(|k| (5 * k..5 * k + 5).collect()).collect(), 40).unwrap();
    let quotient = g.right_regular_rep().induced_action(&blocks).unwrap();
    assert!(quotient.is_transitive());
    let g0 = gamma0(&graph, &blocks).unwrap();
    for p in quotient.generators() {
        assert!(g0.preserved_by(p));
    }
}
