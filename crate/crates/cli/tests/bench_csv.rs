//! Benchmark CSV layout and reproducibility.

use bangbang_cli::bench::CSV_HEADER;
use bangbang_cli::{load_scene, run_bench, BenchSpec, Method};
use std::path::PathBuf;

fn spec(method: Method) -> BenchSpec {
    let m = load_scene(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes/maze_a.json")).unwrap();
    BenchSpec { runs: 6, base_seed: 40, timing: false, ..BenchSpec::new(m, method) }
}

#[test]
fn csv_schema() {
    let stats = run_bench(&spec(Method::BbRrt)).unwrap();
    let csv = stats.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 1 + 6 + 3);
    for (k, line) in lines[1..7].iter().enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 6);
        assert_eq!(f[0], (40 + k).to_string());
        assert_eq!(f[1], "Solution");
        assert_eq!(f[2], "");
        assert!(f[3].parse::<usize>().is_ok() && f[4].parse::<usize>().is_ok());
        assert!(f[5].parse::<f64>().unwrap() > 0.0);
    }
    for (line, name) in lines[7..].iter().zip(["mean", "median", "stddev"]) {
        assert!(line.starts_with(&format!("{name},solved=6/6,")), "{line}");
    }
}

#[test]
fn untimed_runs_are_reproducible() {
    for method in [Method::BbRrt, Method::RrtConnect, Method::BbOpt] {
        let one = run_bench(&spec(method)).unwrap().to_csv();
        let threaded = run_bench(&BenchSpec { threads: 3, ..spec(method) }).unwrap().to_csv();
        assert_eq!(one, threaded, "{}", method.name());
    }
}
