use std::path::PathBuf;

use aco::io::{self, FormatError};
use aco_core::partition::HyperConfig;
use aco_core::{
    generate_bipartite, ground_voter_model, partition_greedy, partition_hyper, partition_random,
    random_quadratic, to_hypergraph, BipartiteGraph, GeneratorConfig, GraphError, VoterConfig,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

// [TRIVIAL] Write then read the three-subproblem star.
#[test]
fn star_round_trip_through_a_file() {
    let g = BipartiteGraph::from_adjacency(1, vec![vec![0], vec![0], vec![0]]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.txt");
    io::write_graph(&path, &g, &["model=star".into()]).unwrap();
    assert_eq!(io::read_graph(&path).unwrap(), g);
}

// [DERIVED] Consensus 2 has a single incident subproblem.
#[test]
fn degree_one_consensus_is_a_validation_error() {
    let err = io::read_graph(&fixture("degree_one.txt")).unwrap_err();
    assert!(
        matches!(err, FormatError::Graph(GraphError::LowConsensusDegree { consensus: 2, degree: 1 })),
        "{err}"
    );
    assert!(err.to_string().contains("consensus 2"));
}

// [DERIVED] The header declares two rows; the third data row sits on line 5.
#[test]
fn header_count_mismatch_names_the_line() {
    let err = io::read_graph(&fixture("header_mismatch.txt")).unwrap_err();
    assert!(matches!(err, FormatError::Parse { line: 5, .. }), "{err}");

    let short = "bipartite 3 1 2\n0\n0\n";
    assert!(matches!(io::parse_graph(short), Err(FormatError::Parse { line: 4, .. })));
    let edges = "bipartite 2 1 3\n0\n0\n";
    assert!(matches!(io::parse_graph(edges), Err(FormatError::Parse { line: 1, .. })));
}

#[test]
fn missing_file_is_an_io_error() {
    let err = io::read_graph(&fixture("no_such_file.txt")).unwrap_err();
    assert!(matches!(err, FormatError::Io { .. }));
}

// [DERIVED] Bit-exact round trips on generated graphs and problems.
#[test]
fn generated_instances_round_trip_exactly() {
    for seed in 0..3 {
        let g = generate_bipartite(&GeneratorConfig::new(2.2, 2.0, 500, seed)).unwrap();
        let text = io::format_graph(&g, &[]);
        assert_eq!(io::parse_graph(&text).unwrap(), g);

        let specs = random_quadratic(&g, seed);
        let text = io::format_problem(&specs, &["model=qp".into()]);
        assert_eq!(io::parse_problem(&text).unwrap(), specs);
    }
    let inst = ground_voter_model(&VoterConfig::new(200, 4)).unwrap();
    let text = io::format_problem(&inst.specs, &[]);
    assert_eq!(io::parse_problem(&text).unwrap(), inst.specs);
    assert_eq!(io::parse_graph(&io::format_graph(&inst.graph, &[])).unwrap(), inst.graph);
}

// [DERIVED] Every scheme's placement survives the assignment format.
#[test]
fn assignments_round_trip() {
    let g = generate_bipartite(&GeneratorConfig::new(2.4, 2.5, 400, 9)).unwrap();
    let h = to_hypergraph(&g);
    for a in [
        partition_random(&g, 5, 1).unwrap(),
        partition_greedy(&g, 4).unwrap(),
        partition_hyper(&h, 8, &HyperConfig::default()).unwrap(),
    ] {
        let text = io::format_assignment(&g, &a);
        assert!(text.starts_with(&format!("assignment {} {}\n", a.machines(), a.scheme())));
        assert_eq!(io::parse_assignment(&text, &g).unwrap(), a);
    }
}

#[test]
fn assignment_must_follow_edge_order() {
    let g = BipartiteGraph::from_adjacency(1, vec![vec![0], vec![0]]).unwrap();
    let swapped = "assignment 2 random\n1 0 0\n0 0 1\n";
    assert!(matches!(io::parse_assignment(swapped, &g), Err(FormatError::Parse { line: 2, .. })));
    let out_of_range = "assignment 2 random\n0 0 0\n1 0 2\n";
    assert!(matches!(io::parse_assignment(out_of_range, &g), Err(FormatError::Assignment(_))));
}

#[test]
fn problem_fixture_parses_and_validates() {
    let specs = io::read_problem(&fixture("toy_problem.txt")).unwrap();
    assert_eq!(specs.len(), 3);
    assert_eq!(specs[1].slots, vec![0, 1]);
    // An asymmetric quadratic is rejected by validation.
    let bad = "quad 2 0 1 1.0 2.0 0.0 1.0 0.0 0.0\n";
    assert!(matches!(io::parse_problem(bad), Err(FormatError::Problem(_))));
}
