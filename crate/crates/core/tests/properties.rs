use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;

use coxtrees::cli::{run_text, Command, RunConfig};
use coxtrees::coxeter::{library, CoxeterSystem, Kind, Order};
use coxtrees::davis::{reflections_in_ball, wall_relation};
use coxtrees::elements::{min_coset_rep, multiply, normal_form, Ball, GroupElement, IntMatrix};
use coxtrees::raag::{decompose, dj_embedding, racg_of, DefiningGraph};
use coxtrees::wall_trees::{analyze, TreesConfig};

fn arb_order() -> impl Strategy<Value = Order> {
    prop_oneof![
        3 => Just(Order::Finite(2)),
        3 => Just(Order::Finite(3)),
        1 => Just(Order::Finite(4)),
        1 => Just(Order::Finite(5)),
        1 => Just(Order::Finite(6)),
        1 => Just(Order::Infinite),
    ]
}

/// Random Coxeter matrices of rank 2 to 4.
fn arb_system() -> impl Strategy<Value = CoxeterSystem> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(arb_order(), n * (n - 1) / 2),
            )
        })
        .prop_map(|(n, orders)| {
            let mut m = vec![vec![Order::Finite(1); n]; n];
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    m[a][b] = orders[k];
                    m[b][a] = orders[k];
                    k += 1;
                }
            }
            CoxeterSystem::from_orders(m).unwrap()
        })
}

fn test_system() -> impl Strategy<Value = CoxeterSystem> {
    (0usize..library::test_systems().len()).prop_map(|i| library::test_systems().swap_remove(i))
}

fn arb_graph(max: usize) -> impl Strategy<Value = DefiningGraph> {
    (1usize..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .collect();
            let edges: Vec<_> = pairs
                .into_iter()
                .zip(bits)
                .filter(|(_, keep)| *keep)
                .map(|(e, _)| e)
                .collect();
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            DefiningGraph::new(labels, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn representation_is_exact(sys in arb_system()) {
        let b = sys.gram();
        for s in 0..sys.rank() {
            let sigma = &sys.sigma()[s];
            prop_assert!(sigma.mul(sigma).is_identity());
            prop_assert_eq!(&sigma.transpose().mul(b).mul(sigma), b);
            for t in s + 1..sys.rank() {
                if let Order::Finite(m) = sys.order(s, t) {
                    let word: Vec<usize> = [s, t].iter().copied().cycle().take(2 * m as usize).collect();
                    prop_assert!(sys.word_matrix(&word).is_identity());
                }
            }
        }
    }

    #[test]
    fn classifications_agree(sys in arb_system()) {
        for mask in 1u32..1 << sys.rank() {
            let t: Vec<usize> = (0..sys.rank()).filter(|&s| mask >> s & 1 == 1).collect();
            if sys.components_of(&t).len() == 1 {
                prop_assert_eq!(sys.classify_by_table(&t).unwrap().kind, sys.classify_by_minors(&t).unwrap());
            }
        }
    }

    #[test]
    fn product_rule(a in arb_system(), b in arb_system()) {
        // block sum: every cross pair commutes
        let (n, k) = (a.rank(), b.rank());
        let mut m = vec![vec![Order::Finite(2); n + k]; n + k];
        for i in 0..n + k {
            for j in 0..n + k {
                m[i][j] = match (i < n, j < n) {
                    (true, true) => a.order(i, j),
                    (false, false) => b.order(i - n, j - n),
                    _ => Order::Finite(2),
                };
            }
        }
        let sum = CoxeterSystem::from_orders(m).unwrap();
        let kind = |s: &CoxeterSystem| s.classify_by_minors(&(0..s.rank()).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(
            kind(&sum) == Kind::PositiveDefinite,
            kind(&a) == Kind::PositiveDefinite && kind(&b) == Kind::PositiveDefinite
        );
    }

    #[test]
    fn length_changes_by_one(sys in test_system(), word in proptest::collection::vec(0usize..5, 0..14), s in 0usize..5) {
        let word: Vec<usize> = word.into_iter().map(|x| x % sys.rank()).collect();
        let s = s % sys.rank();
        let w = normal_form(&sys, &word).unwrap();
        let ws = multiply(&sys, &w, &GroupElement::generator(s)).unwrap();
        prop_assert_eq!(ws.length().abs_diff(w.length()), 1);
        prop_assert!(w.length() <= word.len());
        // normal forms agree exactly when matrices do
        let m = IntMatrix::from_word(&sys, &word).unwrap();
        prop_assert_eq!(&m, &w.int_matrix(&sys).unwrap());
    }

    #[test]
    fn root_signs_are_uniform(sys in test_system(), word in proptest::collection::vec(0usize..5, 0..14)) {
        let word: Vec<usize> = word.into_iter().map(|x| x % sys.rank()).collect();
        let m = sys.word_matrix(&word);
        for s in 0..sys.rank() {
            let signs: HashSet<i32> = m.column(s).iter().map(|x| x.signum()).filter(|&x| x != 0).collect();
            prop_assert_eq!(signs.len(), 1);
        }
    }

    #[test]
    fn coset_reps_are_constant_on_cosets(sys in test_system(), word in proptest::collection::vec(0usize..5, 0..10),
                                         mask in 1u32..32, extra in proptest::collection::vec(0usize..5, 0..6)) {
        let word: Vec<usize> = word.into_iter().map(|x| x % sys.rank()).collect();
        let t: Vec<usize> = (0..sys.rank()).filter(|&s| mask >> s & 1 == 1).collect();
        let w = normal_form(&sys, &word).unwrap();
        let u = min_coset_rep(&sys, &w, &t).unwrap();
        // multiply by a word in T; the representative stays put
        let tail: Vec<usize> = if t.is_empty() { vec![] } else { extra.iter().map(|x| t[x % t.len()]).collect() };
        let wv = multiply(&sys, &w, &normal_form(&sys, &tail).unwrap()).unwrap();
        prop_assert_eq!(&min_coset_rep(&sys, &wv, &t).unwrap(), &u);
        for &s in &t {
            prop_assert!(multiply(&sys, &u, &GroupElement::generator(s)).unwrap().length() > u.length());
        }
    }

    #[test]
    fn decomposition_is_coherent(g in arb_graph(7)) {
        let d = decompose(&g).unwrap();
        prop_assert!(d.coherent);
        prop_assert!(d.functorial);
        prop_assert_eq!(d.factors.len(), racg_of(&g).unwrap().components().components.len());
        // factors partition the vertices, pairwise commuting across factors
        let mut all: Vec<usize> = d.factors.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.len()).collect::<Vec<_>>());
        for (i, f) in d.factors.iter().enumerate() {
            for h in &d.factors[i + 1..] {
                prop_assert!(f.iter().all(|&a| h.iter().all(|&b| g.adjacent(a, b))));
            }
        }
    }

    #[test]
    fn verify_is_deterministic(seed in any::<u64>()) {
        let text = library::dihedral(Order::Infinite).to_text();
        let cfg = RunConfig { radius: 8, seed, ..RunConfig::new(Command::Verify, "dihedral") };
        let a = run_text(&cfg, &text);
        prop_assert_eq!(a.status.code(), 0);
        prop_assert_eq!(a.output, run_text(&cfg, &text).output);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dj_index_law(g in arb_graph(4)) {
        let e = dj_embedding(&g, 4, 100_000).unwrap();
        prop_assert_eq!(e.verified_index, Some(1usize << g.len()));
        prop_assert_eq!(e.commuting_pairs, g.edge_count());
    }

    #[test]
    fn dichotomy_holds_for_any_seed(seed in any::<u64>(), prime in prop::sample::select(vec![3u32, 5, 7])) {
        let sys = library::dihedral(Order::Infinite);
        let cfg = TreesConfig { radius: 10, prime: Some(prime), seed, dichotomy_pairs: 2000, ..TreesConfig::default() };
        let r = analyze(&sys, &cfg).unwrap().report;
        prop_assert!(r.passed, "{:?}", r);
        prop_assert_eq!(r.dichotomy.cross, 0);
    }
}

#[test]
fn wall_relation_is_symmetric_and_edges_reflect() {
    for sys in library::test_systems() {
        let ball = Ball::new(&sys, 5, 100_000).unwrap();
        let inv = reflections_in_ball(&sys, &ball).unwrap();
        for a in inv.walls.iter().take(40) {
            for b in inv.walls.iter().take(40) {
                assert_eq!(
                    wall_relation(&sys, a, b).unwrap(),
                    wall_relation(&sys, b, a).unwrap()
                );
            }
        }
        // r maps the edge {w, ws} of its wall to another edge of the same wall
        for wall in &inv.walls {
            let r = wall.reflection.word();
            for &[i, j] in &wall.crossed_edges {
                let left = |k: usize| {
                    let mut word = r.to_vec();
                    word.extend_from_slice(ball.element(k).word());
                    ball.index_of(&sys, &normal_form(&sys, &word).unwrap())
                };
                let (Some(x), Some(y)) = (left(i), left(j)) else {
                    continue;
                };
                let pair = [x.min(y), x.max(y)];
                assert!(wall.crossed_edges.contains(&pair), "{:?}", wall.reflection);
            }
        }
    }
}

#[test]
fn bfs_distance_is_length() {
    for sys in library::test_systems() {
        let ball = Ball::new(&sys, 7, 100_000).unwrap();
        let mut dist = vec![usize::MAX; ball.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for s in 0..sys.rank() {
                if let Some(u) = ball.neighbor(v, s) {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        for (i, w) in ball.elements().iter().enumerate() {
            assert_eq!(dist[i], w.length());
        }
    }
}
