use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const ARTIFACTS: [&str; 5] = [
    "embedding.csv",
    "trace.csv",
    "embedding.svg",
    "centrality.csv",
    "node_map.csv",
];

fn tube() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/tube_proxy.tsv")
}

fn radmds(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radmds"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn embed_writes_all_artifacts() {
    let tmp = TempDir::new().unwrap();
    let out = radmds(
        &["embed", "--input", tube().to_str().unwrap(), "--out", "run"],
        tmp.path(),
    );
    ok(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("final stress") && stdout.contains("iterations"));
    for name in ARTIFACTS.iter().chain(&["manifest.json"]) {
        assert!(
            tmp.path().join("run").join(name).is_file(),
            "{name} missing"
        );
    }
    let m = json(&tmp.path().join("run/manifest.json"));
    assert_eq!(m["dissimilarity"], "ectd");
    assert_eq!(m["centrality"], "betweenness");
    assert_eq!(m["p"], 2);
    assert_eq!(m["max_iters"], 1000);
    assert_eq!(m["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(m["result"]["nodes"], 307);
    assert_eq!(m["result"]["termination"], "converged");
    let svg = fs::read_to_string(tmp.path().join("run/embedding.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 307);
    assert_eq!(svg.matches("<line").count(), 378);
}

#[test]
fn default_output_directory_is_timestamped() {
    let tmp = TempDir::new().unwrap();
    let input = write(tmp.path(), "p.tsv", "1 2\n2 3\n");
    ok(&radmds(
        &[
            "embed",
            "--input",
            &input,
            "--dissimilarity",
            "shortest-path",
        ],
        tmp.path(),
    ));
    let runs: Vec<_> = fs::read_dir(tmp.path().join("runs")).unwrap().collect();
    assert_eq!(runs.len(), 1);
    let name = runs[0].as_ref().unwrap().file_name().into_string().unwrap();
    assert!(name.starts_with("run-") && name.ends_with('Z'), "{name}");
}

#[test]
fn replay_reproduces_artifacts_byte_for_byte() {
    let tmp = TempDir::new().unwrap();
    ok(&radmds(
        &[
            "embed",
            "--input",
            tube().to_str().unwrap(),
            "--lambda",
            "100",
            "--seed",
            "3",
            "--out",
            "a",
        ],
        tmp.path(),
    ));
    ok(&radmds(
        &["replay", "--manifest", "a/manifest.json", "--out", "b"],
        tmp.path(),
    ));
    for name in ARTIFACTS {
        let a = fs::read(tmp.path().join("a").join(name)).unwrap();
        let b = fs::read(tmp.path().join("b").join(name)).unwrap();
        assert!(a == b, "{name} differs after replay");
    }
    let mut ma = json(&tmp.path().join("a/manifest.json"));
    let mb = json(&tmp.path().join("b/manifest.json"));
    ma["out"] = "b".into();
    assert_eq!(ma, mb);
}

#[test]
fn single_lambda_sweep_matches_embed() {
    let tmp = TempDir::new().unwrap();
    let input = tube();
    let input = input.to_str().unwrap();
    ok(&radmds(
        &["embed", "--input", input, "--lambda", "1", "--out", "e"],
        tmp.path(),
    ));
    ok(&radmds(
        &[
            "lambda-sweep",
            "--input",
            input,
            "--lambdas",
            "1",
            "--out",
            "s",
        ],
        tmp.path(),
    ));
    for name in ARTIFACTS {
        let a = fs::read(tmp.path().join("e").join(name)).unwrap();
        let b = fs::read(tmp.path().join("s/lambda-1").join(name)).unwrap();
        assert!(a == b, "{name} differs between embed and sweep");
    }
}

#[test]
fn sweep_summary_penalty_decreases() {
    let tmp = TempDir::new().unwrap();
    let out = radmds(
        &[
            "lambda-sweep",
            "--input",
            tube().to_str().unwrap(),
            "--lambdas",
            "10000,0,100,1",
            "--out",
            "s",
        ],
        tmp.path(),
    );
    ok(&out);
    let text = fs::read_to_string(tmp.path().join("s/summary.csv")).unwrap();
    assert!(text.starts_with("lambda,iters,final_stress,final_penalty\n"));
    let rows = csv_rows(&tmp.path().join("s/summary.csv"));
    let lambdas: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(lambdas, ["0", "1", "100", "10000"]);
    let h: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(h.windows(2).all(|w| w[1] <= w[0]), "{h:?}");
    for l in lambdas {
        assert!(tmp
            .path()
            .join(format!("s/lambda-{l}/embedding.svg"))
            .is_file());
    }
}

#[test]
fn help_lists_every_flag_with_a_default() {
    let tmp = TempDir::new().unwrap();
    for sub in ["embed", "centrality", "lambda-sweep", "replay"] {
        let out = radmds(&[sub, "--help"], tmp.path());
        ok(&out);
        let help = String::from_utf8_lossy(&out.stdout).into_owned();
        // Split into one block per option.
        let mut blocks: Vec<String> = Vec::new();
        for line in help.lines() {
            let t = line.trim_start();
            if t.starts_with("--") || t.starts_with("-h,") || t.starts_with("-V,") {
                blocks.push(String::new());
            }
            if let Some(b) = blocks.last_mut() {
                b.push_str(line);
                b.push('\n');
            }
        }
        assert!(!blocks.is_empty());
        for b in blocks {
            let flag = b.split_whitespace().next().unwrap().to_string();
            if flag == "-h," || flag == "--input" || flag == "--manifest" {
                continue;
            }
            assert!(b.contains("default"), "{sub} {flag} shows no default:\n{b}");
        }
    }
}

#[test]
fn negative_lambda_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let input = write(tmp.path(), "e.tsv", "1 2\n2 3\n");
    let out = radmds(&["embed", "--input", &input, "--lambda", "-1"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("lambda must be nonnegative"));
    assert!(!tmp.path().join("runs").exists());
}

#[test]
fn exit_codes_follow_error_class() {
    let tmp = TempDir::new().unwrap();
    let missing = radmds(&["embed", "--input", "absent.tsv"], tmp.path());
    assert_eq!(missing.status.code(), Some(3));

    let bad = write(tmp.path(), "bad.tsv", "1 2\n2 x y z\n");
    let out = radmds(&["embed", "--input", &bad], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let unknown = radmds(&["embed", "--input", &bad, "--frobnicate"], tmp.path());
    assert_eq!(unknown.status.code(), Some(1));

    // Radii near 1e300 overflow the stress.
    let huge = write(tmp.path(), "huge.csv", "a,b,1e300\nb,c,1e-300\n");
    let out = radmds(
        &["embed", "--input", &huge, "--format", "csv", "--out", "h"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let blocked = write(tmp.path(), "file", "");
    let input = write(tmp.path(), "ok.tsv", "1 2\n2 3\n");
    let out = radmds(
        &[
            "embed",
            "--input",
            &input,
            "--out",
            &format!("{blocked}/sub"),
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn disconnected_closeness_suggests_largest_component() {
    let tmp = TempDir::new().unwrap();
    let input = write(tmp.path(), "split.tsv", "1 2\n2 3\n3 1\n7 8\n");
    let out = radmds(
        &["centrality", "--input", &input, "--centrality", "closeness"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--largest-component"));

    let out = radmds(
        &[
            "centrality",
            "--input",
            &input,
            "--centrality",
            "closeness",
            "--largest-component",
            "--uniform-radius",
            "1",
            "--out",
            "c",
        ],
        tmp.path(),
    );
    ok(&out);
    let map = csv_rows(&tmp.path().join("c/node_map.csv"));
    let ids: Vec<&str> = map.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(ids, ["1", "2", "3"]);
}

#[test]
fn centrality_subcommand_ranks_nodes() {
    let tmp = TempDir::new().unwrap();
    let path = write(tmp.path(), "path.tsv", "a b\nb c\nc d\nd e\n");
    ok(&radmds(
        &["centrality", "--input", &path, "--out", "p"],
        tmp.path(),
    ));
    let rows = csv_rows(&tmp.path().join("p/centrality.csv"));
    let c: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(c, [0.0, 3.0, 4.0, 3.0, 0.0]);
    let f: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(f[2], 0.0);
    assert_eq!(f[0], 2.0);

    let star = write(tmp.path(), "star.tsv", "hub x\nhub y\nhub z\n");
    ok(&radmds(
        &[
            "centrality",
            "--input",
            &star,
            "--centrality",
            "degree",
            "--out",
            "s",
        ],
        tmp.path(),
    ));
    let rows = csv_rows(&tmp.path().join("s/centrality.csv"));
    let c: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(c, [3.0, 1.0, 1.0, 1.0]);
}

#[test]
fn delta_cache_is_reused_and_checked() {
    let tmp = TempDir::new().unwrap();
    let input = tube();
    let input = input.to_str().unwrap();
    let base = [
        "embed",
        "--input",
        input,
        "--delta-cache",
        "cache/delta.bin",
        "--max-iters",
        "20",
    ];
    ok(&radmds(&[&base[..], &["--out", "a"]].concat(), tmp.path()));
    assert!(tmp.path().join("cache/delta.bin").is_file());
    ok(&radmds(&[&base[..], &["--out", "b"]].concat(), tmp.path()));
    assert_eq!(
        fs::read(tmp.path().join("a/embedding.csv")).unwrap(),
        fs::read(tmp.path().join("b/embedding.csv")).unwrap()
    );

    let small = write(tmp.path(), "small.tsv", "1 2\n2 3\n");
    let out = radmds(
        &[
            "embed",
            "--input",
            &small,
            "--delta-cache",
            "cache/delta.bin",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cached matrix is for 307 nodes"));
}

#[test]
fn three_dimensional_runs_skip_the_drawing() {
    let tmp = TempDir::new().unwrap();
    let input = write(tmp.path(), "k4.csv", "src,dst\n1,2\n2,3\n3,4\n4,1\n1,3\n");
    ok(&radmds(
        &[
            "embed", "--input", &input, "--format", "csv", "--p", "3", "--out", "r",
        ],
        tmp.path(),
    ));
    let header = fs::read_to_string(tmp.path().join("r/embedding.csv")).unwrap();
    assert!(header.starts_with("node,original_id,x1,x2,x3,centrality,radius\n"));
    assert!(!tmp.path().join("r/embedding.svg").exists());
}

#[test]
fn timings_are_opt_in() {
    let tmp = TempDir::new().unwrap();
    let input = write(tmp.path(), "p.tsv", "1 2\n2 3\n3 4\n");
    ok(&radmds(
        &["embed", "--input", &input, "--out", "a"],
        tmp.path(),
    ));
    ok(&radmds(
        &["embed", "--input", &input, "--out", "b", "--record-timings"],
        tmp.path(),
    ));
    let a = csv_rows(&tmp.path().join("a/trace.csv"));
    assert!(a.iter().all(|r| r.len() == 5 && r[4].is_empty()));
    let b = csv_rows(&tmp.path().join("b/trace.csv"));
    assert!(b.iter().all(|r| r[4].parse::<f64>().is_ok()));
}
