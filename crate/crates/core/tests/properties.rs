use proptest::prelude::*;

use gsu::generators::{barabasi_albert, erdos_renyi, random_regular, watts_strogatz};
use gsu::graph::{build_graph, Graph};
use gsu::io::{format_edge_list, parse_edge_list};
use gsu::mfpt::{mfpt_linear_solve, mfpt_monte_carlo, mfpt_tree_cluster_sum};
use gsu::rng::seeded;
use gsu::searchers::greedy_walk;
use gsu::sweep::{sweep_up, SweepOptions};
use gsu::UncertaintyModel;

fn edges_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..max_m)))
}

/// Tree where node `i > 0` hangs off `parents[i - 1] % i`.
fn tree_from(parents: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = parents
        .iter()
        .enumerate()
        .map(|(i, &p)| (i + 1, p % (i + 1)))
        .collect();
    build_graph(&edges, Some(parents.len() + 1)).unwrap()
}

fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<Option<usize>>> {
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for &(a, b) in edges {
        if a != b {
            d[a][b] = Some(1);
            d[b][a] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|cur| x + y < cur) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn csr_is_symmetric_sorted_and_simple((n, edges) in edges_strategy(40, 120)) {
        let g = build_graph(&edges, Some(n)).unwrap();
        let mut expected: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        expected.sort_unstable();
        expected.dedup();
        prop_assert_eq!(g.edge_count(), expected.len());
        prop_assert_eq!(g.edges().collect::<Vec<_>>(), expected);
        for v in 0..n {
            let row = g.neighbors(v);
            prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!row.contains(&v));
            for &w in row {
                prop_assert!(g.has_edge(w, v));
            }
        }
    }

    #[test]
    fn bfs_matches_floyd_warshall((n, edges) in edges_strategy(30, 60)) {
        let g = build_graph(&edges, Some(n)).unwrap();
        let d = floyd_warshall(n, &edges);
        for (s, row) in d.iter().enumerate() {
            prop_assert_eq!(&g.bfs_distances(s), row);
        }
        if g.is_connected() {
            let diam = d.iter().flatten().map(|x| x.unwrap()).max().unwrap();
            prop_assert_eq!(g.diameter().unwrap(), diam);
            let path = g.bfs_path(0, n - 1).unwrap();
            prop_assert_eq!(Some(path.length), d[0][n - 1]);
            prop_assert_eq!(path.nodes.len(), path.length + 1);
        }
    }

    #[test]
    fn cluster_sum_equals_linear_solve_on_trees(
        parents in prop::collection::vec(0usize..1000, 1..120),
        s in 0usize..1000,
        t in 0usize..1000,
    ) {
        let g = tree_from(&parents);
        let n = g.node_count();
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        let exact = mfpt_linear_solve(&g, t).unwrap().values[s];
        let cluster = mfpt_tree_cluster_sum(&g, s, t).unwrap();
        prop_assert!((cluster - exact).abs() <= 1e-9 * exact.max(1.0), "{} vs {}", cluster, exact);
    }

    #[test]
    fn edge_list_text_round_trip((n, edges) in edges_strategy(50, 100)) {
        let g = build_graph(&edges, Some(n)).unwrap();
        let text = format_edge_list(&g);
        if g.edge_count() > 0 {
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(back.graph.edges().count(), g.edge_count());
            let remapped: Vec<(usize, usize)> = back
                .graph
                .edges()
                .map(|(a, b)| (back.ids[a] as usize, back.ids[b] as usize))
                .collect();
            prop_assert_eq!(remapped, g.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn regular_graphs_are_regular_and_reproducible(half_n in 4usize..40, c in 2usize..6, seed in any::<u64>()) {
        let n = 2 * half_n;
        prop_assume!(c < n);
        let g = random_regular(n, c, &mut seeded(seed)).unwrap();
        prop_assert!(g.degrees().iter().all(|&d| d == c));
        prop_assert!(g.is_connected());
        prop_assert_eq!(g, random_regular(n, c, &mut seeded(seed)).unwrap());
    }

    #[test]
    fn random_families_are_simple_and_reproducible(n in 10usize..80, seed in any::<u64>()) {
        let er = erdos_renyi(n, 0.1, &mut seeded(seed)).unwrap();
        prop_assert_eq!(er.node_count(), n);
        prop_assert_eq!(&er, &erdos_renyi(n, 0.1, &mut seeded(seed)).unwrap());

        let ba = barabasi_albert(n, 2, &mut seeded(seed)).unwrap();
        prop_assert_eq!(ba.node_count(), n);
        prop_assert!(ba.degrees().iter().skip(2).all(|&d| d >= 2));
        prop_assert_eq!(&ba, &barabasi_albert(n, 2, &mut seeded(seed)).unwrap());

        let ws = watts_strogatz(n, 4, 0.2, &mut seeded(seed)).unwrap();
        prop_assert_eq!(ws.edge_count(), 2 * n);
        prop_assert!(ws.is_connected());
        prop_assert_eq!(&ws, &watts_strogatz(n, 4, 0.2, &mut seeded(seed)).unwrap());
    }

    #[test]
    fn uniform_weights_never_favor_the_greedy_walker(seed in any::<u64>(), u in 0.0f64..1e3) {
        let g = random_regular(24, 3, &mut seeded(seed)).unwrap();
        for (u, p) in [(0.0, 0.5), (u, 0.0)] {
            let grid = sweep_up(&g, &[u], &[p], &SweepOptions::new(30, seed)).unwrap();
            prop_assert!(grid.cells[0].stats.as_ref().unwrap().mean_ratio >= 1.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sweeps_do_not_depend_on_worker_count(seed in any::<u64>()) {
        let g = random_regular(30, 4, &mut seeded(seed)).unwrap();
        let mut one = SweepOptions::new(20, seed);
        one.workers = 1;
        let mut many = one.clone();
        many.workers = 8;
        let (u, p) = ([1e2, 1e5], [0.0, 0.1, 0.3]);
        prop_assert_eq!(sweep_up(&g, &u, &p, &one).unwrap(), sweep_up(&g, &u, &p, &many).unwrap());
    }

    /// At `u = 0` the greedy walker is a simple random walk: its mean step
    /// count matches the exact MFPT.
    #[test]
    fn unperturbed_greedy_walk_matches_mfpt(parents in prop::collection::vec(0usize..1000, 2..12), seed in any::<u64>()) {
        let g = tree_from(&parents);
        let t = g.node_count() - 1;
        let exact = mfpt_linear_solve(&g, t).unwrap().values[0];
        let model = UncertaintyModel::new(0.0, 0.5).unwrap();
        let mut rng = seeded(seed);
        let runs = 4000;
        let steps: Vec<f64> = (0..runs)
            .map(|_| greedy_walk(&g, 0, t, &model, &mut rng, 1 << 30).unwrap().steps as f64)
            .collect();
        let mean = steps.iter().sum::<f64>() / runs as f64;
        let var = steps.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (runs as f64 - 1.0);
        let se = (var / runs as f64).sqrt();
        prop_assert!((mean - exact).abs() <= 5.0 * se, "mean {} exact {} se {}", mean, exact, se);

        let mc = mfpt_monte_carlo(&g, 0, t, runs, &mut rng).unwrap();
        prop_assert!((mc.mean - exact).abs() <= 5.0 * mc.std_err.max(1e-12));
    }
}
