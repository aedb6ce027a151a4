//! Acceptance suite: every criterion runs exhaustively at its stated size
//! and tolerance (all comparisons exact unless noted) and prints one
//! PASS line. Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeSet;

use common::{all_dags, random_dag, rng};
use dagassoc::causal::{
    best_of_restarts, best_run, covered_edges, exhaustive_sp, greedy_sp_covered, minimal_imap,
    Oracle, PermUpdate, SpParams,
};
use dagassoc::ci::CiStructure;
use dagassoc::gaussian::{faithful_gaussian, gram, lambda_from_dag, multiinformation, unit_weights};
use dagassoc::graph::{d_separated, essential_graph, Dag};
use dagassoc::linalg::{rat_int, Mat};
use dagassoc::matroid::{
    all_matroid_rank_tables, matroid_semigraphoid, msmp_associahedron, rank_function,
    simplex_rank_function, TableRank,
};
use dagassoc::nodeset::NodeSet;
use dagassoc::setfn::{facet_incidence, float_incidence_heuristic, SetFunction};
use rand::Rng;

fn ns(items: &[usize]) -> NodeSet {
    items.iter().copied().collect()
}

/// The 4-node example DAG 1→3←2, 3→4 (0-based).
fn example_dag() -> Dag {
    Dag::from_edge_list(4, &[(0, 2), (1, 2), (2, 3)]).unwrap()
}

fn dsep_structure(g: &Dag) -> CiStructure {
    CiStructure::from_predicate(g.n(), |i, j, k| d_separated(g, i, j, k))
}

fn dags_up_to_4() -> Vec<Dag> {
    let mut v = all_dags(2);
    v.extend(all_dags(3));
    v.extend(all_dags(4));
    v
}

#[test]
fn criterion_01_example_ci_set() {
    let g = example_dag();
    let ci = dsep_structure(&g);
    let mut expected = CiStructure::new(4);
    expected.insert_parts(0, 1, NodeSet::EMPTY).unwrap();
    expected.insert_parts(0, 3, ns(&[2])).unwrap();
    expected.insert_parts(1, 3, ns(&[2])).unwrap();
    expected.insert_parts(0, 3, ns(&[1, 2])).unwrap();
    expected.insert_parts(1, 3, ns(&[0, 2])).unwrap();
    assert!(ci.same_relations(&expected).unwrap());
    assert_eq!(ci.len(), 5);
    println!("criterion 01: PASS - d-separation emits exactly the 5 listed relations");
}

#[test]
fn criterion_02_example_matrices() {
    let g = example_dag();
    let lambda = lambda_from_dag(&g, &unit_weights(&g)).unwrap();
    let kmat = gram(&lambda);
    assert_eq!(
        lambda,
        Mat::from_i64_rows(&[
            vec![1, 0, -1, 0],
            vec![0, 1, -1, 0],
            vec![0, 0, 1, -1],
            vec![0, 0, 0, 1],
        ])
    );
    assert_eq!(
        kmat,
        Mat::from_i64_rows(&[
            vec![2, 1, -1, 0],
            vec![1, 2, -1, 0],
            vec![-1, -1, 2, -1],
            vec![0, 0, -1, 1],
        ])
    );
    assert_eq!(kmat.submatrix(&[0, 1], &[0, 1]).det(), rat_int(3));
    assert_eq!(kmat.submatrix(&[0, 2], &[0, 2]).det(), rat_int(3));
    assert_eq!(kmat.submatrix(&[0, 1, 2], &[0, 1, 2]).det(), rat_int(4));
    assert_eq!(kmat.det(), rat_int(1));
    println!("criterion 02: PASS - printed matrices and principal minors match exactly");
}

#[test]
fn criterion_03_example_vertex_classes() {
    let g = example_dag();
    let lambda = lambda_from_dag(&g, &unit_weights(&g)).unwrap();
    let primal = multiinformation(&gram(&lambda)).unwrap().dual_flip();
    let summary = primal.permutation_classes().unwrap();
    assert_eq!(summary.class_count(), 16);

    let multi: BTreeSet<BTreeSet<Vec<usize>>> = summary
        .classes
        .iter()
        .filter(|c| c.perms.len() > 1)
        .map(|c| c.perms.iter().cloned().collect())
        .collect();
    let expect: BTreeSet<BTreeSet<Vec<usize>>> = [
        vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]],
        vec![vec![0, 1, 3, 2], vec![1, 0, 3, 2]],
        vec![vec![0, 2, 1, 3], vec![0, 2, 3, 1]],
        vec![vec![1, 2, 0, 3], vec![1, 2, 3, 0]],
        vec![vec![2, 3, 0, 1], vec![2, 0, 3, 1], vec![2, 0, 1, 3]],
        vec![vec![2, 3, 1, 0], vec![2, 1, 3, 0], vec![2, 1, 0, 3]],
    ]
    .into_iter()
    .map(|c| c.into_iter().collect())
    .collect();
    assert_eq!(multi, expect);

    let msmp = msmp_associahedron(g.graph()).unwrap();
    assert!(summary.same_partition(&msmp.permutation_classes().unwrap()));
    println!("criterion 03: PASS - 16 classes; the six multi-permutation classes match; MSMP partition identical");
}

#[test]
fn criterion_04_v_structure_fan() {
    let g = Dag::from_edge_list(3, &[(0, 2), (1, 2)]).unwrap();
    let w = msmp_associahedron(g.graph()).unwrap();
    let summary = w.permutation_classes().unwrap();
    assert_eq!(summary.class_count(), 5);

    // the three-summand decomposition gives the same semigraphoid
    let u23 = SetFunction::rational(3, |s| rat_int(s.len().min(2) as i64)).unwrap();
    let alt = u23
        .sum(&simplex_rank_function(3, ns(&[0, 2])))
        .unwrap()
        .sum(&simplex_rank_function(3, ns(&[1, 2])))
        .unwrap();
    assert!(alt
        .semigraphoid()
        .unwrap()
        .same_relations(&w.semigraphoid().unwrap())
        .unwrap());
    assert!(w.semigraphoid().unwrap().contains(0, 1, NodeSet::EMPTY));
    assert_eq!(w.semigraphoid().unwrap().len(), 1);
    println!("criterion 04: PASS - V-structure fan has 5 maximal cones; 3-summand sum agrees");
}

#[test]
fn criterion_05_non_simple_associahedron() {
    // DAG 1→2, 2→3, 3→4, 1→4, 2→4: gaussoid is the single relation 1⫫3|2
    let g = Dag::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]).unwrap();
    let ci = dsep_structure(&g);
    assert_eq!(ci.len(), 1);
    assert!(ci.contains(0, 2, ns(&[1])));
    let w = msmp_associahedron(g.graph()).unwrap();
    let inc = facet_incidence(&w).unwrap();
    assert_eq!(inc.dim, 3);
    assert!(inc.degrees.contains(&4));
    assert!(!inc.is_simple);
    println!(
        "criterion 05: PASS - contracted vertex of degree 4 on a 3-dimensional polytope; not simple"
    );
}

#[test]
fn criterion_06_canyon_matroid() {
    use dagassoc::graph::{find_bayes_ball_path, simplify_path};
    use dagassoc::matroid::{PathMatroid, RankOracle};
    let g = example_dag();
    let p = find_bayes_ball_path(g.graph(), 0, 1, ns(&[3])).unwrap();
    assert_eq!(p.nodes, vec![0, 2, 3, 2, 1]);
    let (_, d) = simplify_path(g.graph(), &p).unwrap();
    let m = PathMatroid::from_decomposition(&d, 4).unwrap();
    let bases: BTreeSet<NodeSet> = m.bases().into_iter().collect();
    let expected: BTreeSet<NodeSet> = [
        ns(&[0, 1]),
        ns(&[0, 2]),
        ns(&[0, 3]),
        ns(&[1, 2]),
        ns(&[1, 3]),
    ]
    .into_iter()
    .collect();
    assert_eq!(bases, expected);
    assert_eq!(m.rank(ns(&[2, 3])), 1);

    let inc = facet_incidence(&rank_function(&m)).unwrap();
    assert_eq!(inc.vertices.len(), 5);
    let apex = vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)];
    let apex_idx = inc.vertices.iter().position(|v| *v == apex).unwrap();
    assert_eq!(inc.degrees[apex_idx], 4);
    assert_eq!(inc.facet_sets.len(), 5);
    println!("criterion 06: PASS - bases are all pairs except {{3,4}}; square pyramid with apex e1+e2");
}

/// Both directions of the vertex theorem on one DAG.
fn check_vertex_theorem(g: &Dag) {
    use itertools::Itertools;
    let n = g.n();
    let oracle = Oracle::DagDsep(g.clone());
    let w = msmp_associahedron(g.graph()).unwrap();
    let summary = w.permutation_classes().unwrap();

    // imap partition == greedy-vertex partition
    let mut imap_classes: std::collections::BTreeMap<Vec<(usize, usize)>, Vec<Vec<usize>>> =
        Default::default();
    for perm in (0..n).permutations(n) {
        let dag = minimal_imap(&oracle, &perm);
        let mut arcs: Vec<(usize, usize)> = dag.arcs().collect();
        arcs.sort_unstable();
        imap_classes.entry(arcs).or_default().push(perm);
    }
    let mut a: Vec<Vec<Vec<usize>>> = imap_classes.into_values().collect();
    a.sort();
    assert_eq!(a, summary.partition(), "vertex theorem partition mismatch");

    // the class of π is the set of topological orderings of G_π
    for class in &summary.classes {
        let dag = minimal_imap(&oracle, &class.perms[0]);
        let extensions: Vec<Vec<usize>> = (0..n)
            .permutations(n)
            .filter(|perm| {
                let pos = |v: usize| perm.iter().position(|&x| x == v).unwrap();
                dag.arcs().all(|(x, y)| pos(x) < pos(y))
            })
            .collect();
        assert_eq!(class.perms, extensions);
    }
}

/// The covered-edge theorem over all adjacent permutation pairs of one DAG.
fn check_edge_theorem(g: &Dag) {
    use itertools::Itertools;
    let n = g.n();
    let oracle = Oracle::DagDsep(g.clone());
    for perm in (0..n).permutations(n) {
        let gpi = minimal_imap(&oracle, &perm);
        for p in 0..n - 1 {
            let mut tau = perm.clone();
            tau.swap(p, p + 1);
            let gtau = minimal_imap(&oracle, &tau);
            if gpi == gtau {
                continue; // same vertex; not an edge of the fan
            }
            let shrinks = gtau
                .graph()
                .skeleton()
                .is_subset(&gpi.graph().skeleton());
            let covered = covered_edges(&gpi).contains(&(perm[p], perm[p + 1]));
            assert_eq!(
                shrinks, covered,
                "edge theorem mismatch at {:?} pos {}",
                perm, p
            );
        }
    }
}

#[test]
fn criterion_07_vertex_and_edge_theorems() {
    for g in dags_up_to_4() {
        check_vertex_theorem(&g);
        check_edge_theorem(&g);
    }
    let mut r = rng(707);
    for _ in 0..50 {
        let g = random_dag(5, r.gen_range(0.2..0.8), &mut r);
        check_vertex_theorem(&g);
        check_edge_theorem(&g);
    }
    println!("criterion 07: PASS - vertex/edge theorems hold exhaustively (n<=4 all DAGs, 50 random n=5)");
}

#[test]
fn criterion_08_mss_iff_no_v_structure() {
    for g in dags_up_to_4() {
        let ci = dsep_structure(&g);
        let monotone = ci.is_mss_monotone();
        let no_v = g.v_structures().is_empty();
        assert_eq!(
            monotone,
            no_v,
            "MSS monotonicity mismatch for {:?}",
            g.arcs().collect::<Vec<_>>()
        );
    }
    println!("criterion 08: PASS - MSS monotonicity holds iff the DAG has no V-structure (all n<=4)");
}

#[test]
fn criterion_09_fan_agreement() {
    let g = example_dag();
    let lambda = lambda_from_dag(&g, &unit_weights(&g)).unwrap();
    let primal = multiinformation(&gram(&lambda)).unwrap().dual_flip();
    let msmp = msmp_associahedron(g.graph()).unwrap();
    assert!(primal
        .permutation_classes()
        .unwrap()
        .same_partition(&msmp.permutation_classes().unwrap()));

    let mut r = rng(909);
    for t in 0..20 {
        let n = 3 + t % 3;
        let g = random_dag(n, r.gen_range(0.3..0.8), &mut r);
        let f = faithful_gaussian(&g, r.gen()).unwrap();
        let primal = multiinformation(&f.kmat).unwrap().dual_flip();
        let msmp = msmp_associahedron(g.graph()).unwrap();
        assert!(
            primal
                .permutation_classes()
                .unwrap()
                .same_partition(&msmp.permutation_classes().unwrap()),
            "partition mismatch for {:?}",
            g.arcs().collect::<Vec<_>>()
        );
    }
    println!("criterion 09: PASS - multiinformation and MSMP partitions identical (example + 20 random DAGs)");
}

#[test]
fn criterion_10_connected_matroids_are_not_gaussoids() {
    let mut counts = Vec::new();
    for n in [3usize, 4] {
        let tables = all_matroid_rank_tables(n);
        let connected: Vec<&TableRank> =
            tables.iter().filter(|t| t.is_connected()).collect();
        for m in &connected {
            let sg = matroid_semigraphoid(*m);
            assert!(
                !sg.is_gaussoid(),
                "connected matroid on [{n}] with rank table {:?} is a gaussoid",
                m.table
            );
        }
        counts.push((n, tables.len(), connected.len()));
    }
    // enumeration sanity: labeled matroid counts 16 and 68, of which 2 and
    // 9 are connected
    assert_eq!(counts[0], (3, 16, 2));
    assert_eq!(counts[1], (4, 68, 9));
    println!("criterion 10: PASS - no connected matroid on 3 or 4 elements induces a gaussoid");
}

#[test]
fn criterion_11_sparsest_permutation_search() {
    let mut instances: Vec<Dag> = dags_up_to_4();
    let mut r = rng(1111);
    for _ in 0..50 {
        instances.push(random_dag(5, r.gen_range(0.2..0.8), &mut r));
    }
    let mut greedy_hits = 0usize;
    for g in &instances {
        let oracle = Oracle::DagDsep(g.clone());
        let truth = essential_graph(g);
        let ex = exhaustive_sp(&oracle).unwrap();
        assert_eq!(ex.min_edges, g.edge_count(), "exhaustive SP minimum is |edges|");
        assert_eq!(ex.optima.len(), 1, "unique optimal equivalence class");
        assert_eq!(*ex.optima.iter().next().unwrap(), truth);

        let params = SpParams {
            max_steps: 300,
            plateau_budget: 50,
            seed: r.gen(),
        };
        let runs = best_of_restarts(&oracle, 20, params, |start, p| {
            greedy_sp_covered(&oracle, start, p, PermUpdate::MinimalSwap)
        });
        let best = best_run(&runs);
        if best.edge_count == ex.min_edges && best.essential == truth {
            greedy_hits += 1;
        }
    }
    let rate = greedy_hits as f64 / instances.len() as f64;
    assert!(
        rate >= 0.95,
        "greedy success rate {rate:.3} below 0.95 ({greedy_hits}/{})",
        instances.len()
    );
    println!(
        "criterion 11: PASS - exhaustive SP exact on all {} instances; greedy rate {:.3}",
        instances.len(),
        rate
    );
}

#[test]
fn criterion_12_float_heuristic_counts() {
    let check = |g: &Dag, kmat: &Mat| {
        let primal = multiinformation(kmat).unwrap().dual_flip();
        let float = float_incidence_heuristic(&primal, 52, 35).unwrap();
        let exact = facet_incidence(&msmp_associahedron(g.graph()).unwrap()).unwrap();
        assert_eq!(
            (float.vertex_count, float.facet_count),
            exact.f_vector_ends(),
            "heuristic counts diverge for {:?}",
            g.arcs().collect::<Vec<_>>()
        );
    };

    let g = example_dag();
    let lambda = lambda_from_dag(&g, &unit_weights(&g)).unwrap();
    check(&g, &gram(&lambda));

    let mut r = rng(1212);
    for t in 0..10 {
        let n = 2 + t % 3;
        let g = random_dag(n, r.gen_range(0.3..0.9), &mut r);
        let f = faithful_gaussian(&g, r.gen()).unwrap();
        check(&g, &f.kmat);
    }
    println!("criterion 12: PASS - 52/35-bit heuristic reproduces exact vertex and facet counts");
}
