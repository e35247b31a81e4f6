use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hexdist::points_file::write_points;
use hexdist_core::hexagon::{hexagon_points, HexagonSpec};

fn hexdist(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexdist"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_prints_summary_and_fills_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = hexdist(&cache, &["solve", "--m", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).contains("size=19, optimal=true"),
        "{}",
        stdout(&out)
    );
    let names: Vec<String> = fs::read_dir(&cache)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(
        names.iter().any(|n| n.starts_with("clique-m008-")),
        "{names:?}"
    );
    // second run reads the cache and agrees
    let again = hexdist(&cache, &["solve", "--m", "8", "--seed-lower-bounds"]);
    assert!(stdout(&again).contains("size=19, optimal=true"));
}

#[test]
fn table_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = hexdist(
        dir.path(),
        &["table", "--from", "7", "--to", "12", "--format", "csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let best: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(best, ["16", "19", "21", "24", "27", "27"]);
    assert_eq!(
        text.lines().next(),
        Some("m,clique_size,hexagon_size,best,star,optimal")
    );

    let json_path = dir.path().join("t.json");
    let out = hexdist(
        dir.path(),
        &[
            "table",
            "--from",
            "7",
            "--to",
            "12",
            "--format",
            "json",
            "--out",
            json_path.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    let best: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["best"].as_u64().unwrap())
        .collect();
    assert_eq!(best, [16, 19, 21, 24, 27, 27]);
}

#[test]
fn verify_regular_four() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r4.txt");
    write_points(
        &file,
        &hexagon_points(HexagonSpec::regular(4)).unwrap(),
        Some("regular, side 4"),
    )
    .unwrap();
    let out = hexdist(dir.path(), &["verify", "--points", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).starts_with("61 points, 23 distances\n"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn verify_reproduces_emitted_construction() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.txt");
    let out = hexdist(
        dir.path(),
        &["solve", "--m", "13", "--points-out", file.to_str().unwrap()],
    );
    assert!(stdout(&out).contains("size=31, optimal=true"));
    let out = hexdist(dir.path(), &["verify", "--points", file.to_str().unwrap()]);
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("31 points, "), "{first}");
    let d: usize = first
        .split(", ")
        .nth(1)
        .unwrap()
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(d <= 13);
}

#[test]
fn multiplicity_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let out = hexdist(
        dir.path(),
        &["multiplicity", "--m", "8", "--method", "hexagon"],
    );
    assert!(
        stdout(&out).contains("multiplicities: 42 30 27 36 12 9 12 3"),
        "{}",
        stdout(&out)
    );

    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        let out = hexdist(
            dir.path(),
            &[
                "render",
                "--m",
                "7",
                "--method",
                "clique",
                "--out",
                path.to_str().unwrap(),
            ],
        );
        assert_eq!(out.status.code(), Some(0));
    }
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches("fill=\"black\"").count(), 16);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hexdist(dir.path(), &["solve"]).status.code(), Some(1));
    assert_eq!(
        hexdist(dir.path(), &["solve", "--m", "zero"]).status.code(),
        Some(1)
    );
    assert_eq!(
        hexdist(dir.path(), &["solve", "--m", "2", "--method", "hexagon"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hexdist(dir.path(), &["table", "--from", "9", "--to", "7"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hexdist(dir.path(), &["solve", "--m", "5", "--budget", "-1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hexdist(dir.path(), &["verify", "--points", "/nonexistent/file"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(hexdist(dir.path(), &["--help"]).status.code(), Some(0));
    let starved = hexdist(
        dir.path(),
        &[
            "--no-cache",
            "--require-optimal",
            "solve",
            "--m",
            "30",
            "--budget",
            "0.000001",
        ],
    );
    assert_eq!(starved.status.code(), Some(2));
    let relaxed = hexdist(
        dir.path(),
        &["--no-cache", "solve", "--m", "30", "--budget", "0.000001"],
    );
    assert_eq!(relaxed.status.code(), Some(0));
    assert!(stdout(&relaxed).contains("optimal=false"));
}

#[test]
fn tampered_cache_is_ignored_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    hexdist(dir.path(), &["solve", "--m", "9"]);
    let entry = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| {
            p.file_name()
                .unwrap()
                .to_str()
                .unwrap()
                .starts_with("clique-m009-")
        })
        .unwrap();
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replacen("\"size\":21", "\"size\":99", 1)).unwrap();
    let out = hexdist(dir.path(), &["solve", "--m", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("size=21, optimal=true"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("checksum"));
}
