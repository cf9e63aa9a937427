use std::fs;
use std::path::Path;
use std::process::Command;

use asdim::cover::Cover;
use asdim::graph::WeightedGraph;
use asdim::pathwidth::PathDecomposition;

fn asdim(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_asdim")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("grid8.g");
    let (code, _, err) = asdim(&["gen", "grid", "8", "8", "--out", p(&g)]);
    assert_eq!(code, 0, "{err}");
    let graph = WeightedGraph::parse(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!((graph.vertex_count(), graph.edge_count()), (64, 112));
    assert!(dir.path().join("grid8.emb").exists());
}

#[test]
fn gen_interval_writes_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("iv.g");
    let (code, _, _) = asdim(&["gen", "interval", "--n", "200", "--k", "3", "--seed", "7", "--out", p(&g)]);
    assert_eq!(code, 0);
    let graph = WeightedGraph::parse(&fs::read_to_string(&g).unwrap()).unwrap();
    let pd = PathDecomposition::from_text(200, fs::read(dir.path().join("iv.pd")).unwrap().as_slice()).unwrap();
    pd.validate(&graph).unwrap();
    assert!(pd.width() <= 3);
}

#[test]
fn gen_is_deterministic() {
    let a = asdim(&["gen", "tree", "--n", "50", "--seed", "4"]).1;
    let b = asdim(&["gen", "tree", "--n", "50", "--seed", "4"]).1;
    assert_eq!(a, b);
    let (code, s, _) = asdim(&["gen", "stretch", "--base", "grid4x4", "--k", "8", "--p", "2"]);
    assert_eq!(code, 0);
    assert!(WeightedGraph::parse(&s).unwrap().is_connected());
}

#[test]
fn planar_sweep_writes_one_cover_per_scale() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("grid8.g");
    asdim(&["gen", "grid", "8", "8", "--out", p(&g)]);
    let (code, csv, err) = asdim(&["cover", "--scheme", "planar", "--r", "1,2,4", "--verify", "--strict", p(&g)]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("scheme,r,n,m,sets,min_coverage,max_component_diameter,bound,multiplicity"));
    for r in ["1", "2", "4"] {
        let f = dir.path().join(format!("grid8.planar.r{r}.cover.json"));
        let c = Cover::from_json(&fs::read_to_string(&f).unwrap()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.certificate.param("R2").is_some());
    }
}

#[test]
fn pathwidth_and_banana_schemes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.g");
    asdim(&["gen", "interval", "--n", "120", "--k", "2", "--out", p(&g)]);
    let pd = dir.path().join("g.pd");
    let (code, _, err) = asdim(&["cover", "--scheme", "pathwidth", "--r", "1", p(&g), p(&pd)]);
    assert_eq!(code, 0, "{err}");
    let c = Cover::from_json(&fs::read_to_string(dir.path().join("g.pathwidth.r1.cover.json")).unwrap()).unwrap();
    assert_eq!(c.certificate.claimed_multiplicity, Some(2));

    let t = dir.path().join("tree.g");
    asdim(&["gen", "tree", "--n", "80", "--out", p(&t)]);
    let args = ["cover", "--scheme", "banana", "--m", "3", "--q", "2", "--p", "3", "--r", "1", "--verify", p(&t)];
    let (code, csv, err) = asdim(&args);
    assert_eq!(code, 0, "{err}");
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[4], row[5]), ("3", "2"));
}

#[test]
fn geometric_schemes_take_embeddings() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("pts.g");
    asdim(&["gen", "points", "--n", "60", "--d", "3", "--side", "6", "--out", p(&g)]);
    let emb = dir.path().join("pts.emb");
    let (code, _, err) = asdim(&["cover", "--scheme", "geometric", "--r", "1", "--verify", p(&g), p(&emb)]);
    assert_eq!(code, 0, "{err}");
    // the wrong embedding kind is a usage error
    let (code, _, _) = asdim(&["cover", "--scheme", "unit-ball", "--r", "1", p(&g), p(&emb)]);
    assert_eq!(code, 2);

    let u = dir.path().join("ub.g");
    asdim(&["gen", "unit-ball", "--n", "80", "--d", "2", "--side", "5", "--out", p(&u)]);
    let (code, _, err) =
        asdim(&["cover", "--scheme", "unit-ball", "--r", "1", "--verify", p(&u), p(&dir.path().join("ub.emb"))]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c.g");
    asdim(&["gen", "cycle", "30", "--out", p(&g)]);
    asdim(&["cover", "--scheme", "planar", "--r", "2", p(&g)]);
    let good = dir.path().join("c.planar.r2.cover.json");
    let (code, report, _) = asdim(&["verify", p(&g), p(&good)]);
    assert_eq!(code, 0);
    assert!(report.contains("\"pass\": true"));

    // drop a vertex from every set: coverage fails
    let mut c = Cover::from_json(&fs::read_to_string(&good).unwrap()).unwrap();
    c.sets = c.sets.iter().map(|s| s.filter(|v| v != 0)).collect();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, c.to_json()).unwrap();
    let (code, report, _) = asdim(&["verify", p(&g), p(&bad)]);
    assert_eq!(code, 1);
    assert!(report.contains("\"coverage_ok\": false"));

    // mismatched graph
    let other = dir.path().join("o.g");
    asdim(&["gen", "path", "5", "--out", p(&other)]);
    assert_eq!(asdim(&["verify", p(&other), p(&good)]).0, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(asdim(&["cover", "--scheme", "planar", "--r", "1", "--q", "3", "x.g"]).0, 2);
    assert_eq!(asdim(&["cover", "--scheme", "k3p", "--r", "1", "x.g"]).0, 2);
    assert_eq!(asdim(&["cover", "--scheme", "nope", "--r", "1", "x.g"]).0, 2);
    assert_eq!(asdim(&["verify"]).0, 2);
    assert_eq!(asdim(&["--help"]).0, 0);
}

#[test]
fn heavy_edges_need_subdivide() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("h.g");
    fs::write(&g, "3 2\n0 1 2.5\n1 2 1\n").unwrap();
    assert_eq!(asdim(&["cover", "--scheme", "planar", "--r", "1", p(&g)]).0, 2);
    let (code, _, err) = asdim(&["cover", "--scheme", "planar", "--r", "1", "--subdivide", "--verify", p(&g)]);
    assert_eq!(code, 0, "{err}");
}
