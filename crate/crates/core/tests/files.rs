//! Round trips through the filesystem and through JSON.

use std::io::Write;

use hopset_core::*;

fn sample_graph() -> WeightedGraph {
    generate_graph(
        Family::ErdosRenyi { m: 300 },
        120,
        WeightDist::Uniform { lo: 1.0, hi: 20.0 },
        5,
    )
    .unwrap()
}

#[test]
fn saved_graph_loads_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let g = sample_graph();
    save_graph(&g, &path).unwrap();
    let loaded = load_graph(&path, GraphFormat::from_path(&path)).unwrap();
    assert_eq!(loaded.graph, g);
    assert_eq!(loaded.graph.fingerprint(), g.fingerprint());
    assert!(loaded.original_ids.is_none());
}

#[test]
fn dimacs_file_matches_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.gr");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        "c tiny\np sp 4 6\na 1 2 3\na 2 1 3\na 2 3 1\na 3 2 1\na 3 4 2\na 4 3 2"
    )
    .unwrap();
    drop(f);
    assert_eq!(GraphFormat::from_path(&path), GraphFormat::Dimacs);
    let loaded = load_graph(&path, GraphFormat::Dimacs).unwrap();
    let (expected, _) =
        WeightedGraph::from_edges(4, [(0, 1, 3.0), (1, 2, 1.0), (2, 3, 2.0)]).unwrap();
    assert_eq!(loaded.graph, expected);
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = load_graph(&dir.path().join("absent.txt"), GraphFormat::EdgeList).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn stretch_report_survives_json() {
    let g = sample_graph();
    let h = build_hopset(&g, 2, 3).unwrap().hopset;
    let params = derive_params(2, 0.5).unwrap();
    let report = verify_hopset(&g, &h, &params, &PairSpec::uniform(50, 1)).unwrap();
    assert!(report.passed);
    let json = serde_json::to_string(&report).unwrap();
    let back: StretchReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn hopset_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    let h = build_hopset(&sample_graph(), 2, 11).unwrap().hopset;
    std::fs::write(&path, h.to_text()).unwrap();
    let file = std::io::BufReader::new(std::fs::File::open(&path).unwrap());
    assert_eq!(Hopset::parse(file).unwrap(), h);
}
