use std::path::Path;
use std::process::{Command, Output};

fn verkit(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verkit"))
        .args(args)
        .env("VERKIT_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let o = verkit(args, dir.path());
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = verkit(&["report", "-p", "99", "-n", "1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a prime"));
    for args in [
        vec!["fuse", "-p", "3", "-n", "2", "-a", "6", "-b", "0"],
        vec!["fuse", "-p", "3", "-n", "2", "-a", "1", "-b", "1", "--format", "csv"],
        vec!["cartan", "-n", "2"],
        vec!["cartan", "-p", "3", "-n", "0"],
        vec!["ext1", "-p", "2", "-n", "3"],
        vec!["fuse", "-p", "2", "-n", "2", "-a", "1", "-b", "1"],
        vec!["report", "-p", "3", "-n", "2", "--bogus"],
        vec!["report", "-p", "7", "-n", "5"],
    ] {
        assert_eq!(verkit(&args, dir.path()).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(verkit(&["verify", "-p", "3", "-n", "2"], dir.path()).status.code(), Some(0));
}

#[test]
fn fuse_goldens() {
    let out = run_ok(&["fuse", "-p", "3", "-n", "2", "-a", "2", "-b", "2"]);
    assert_eq!(out, "L2 x L2 = L2 + P0\nvector: (2, 0, 1, 0, 1, 0)\n");
    assert!(run_ok(&["fuse", "-p", "5", "-n", "2", "-a", "15", "-b", "10"]).starts_with("L15 x L10 = L5\n"));
    assert!(run_ok(&["fuse", "-p", "3", "-n", "2", "-a", "0", "-b", "5"]).starts_with("L0 x L5 = L5\n"));
    let p2 = run_ok(&["fuse", "-p", "2", "-n", "2", "-a", "1", "-b", "1", "--experimental-p2"]);
    assert!(p2.starts_with("L1 x L1 = "));
}

#[test]
fn ver9_table() {
    // cells L1 x L2 and L4 x L5 hold the cover of L1
    let expect = "\
fusion table of Ver_{3^2}
x   L0       L1       L2  L3       L4       L5
L0  L0       L1       L2  L3       L4       L5
L1  L1  L0 + L2       P1  L4  L3 + L5       P4
L2  L2       P1  L2 + P0  L5       P4  L5 + P3
L3  L3       L4       L5  L0       L1       L2
L4  L4  L3 + L5       P4  L1  L0 + L2       P1
L5  L5       P4  L5 + P3  L2       P1  L2 + P0
";
    assert_eq!(run_ok(&["table", "-p", "3", "-n", "2"]), expect);
}

#[test]
fn even_table_of_ver25_row_l2() {
    let json = run_ok(&["table", "-p", "5", "-n", "2", "--even-only", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let row: Vec<&str> = v["payload"]["cells"][1].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(
        row,
        [
            "L2",
            "L0 + L2 + L4",
            "L4 + P2",
            "L6 + L8",
            "L6 + P8",
            "L12",
            "L10 + L12 + L14",
            "L14 + P12",
            "L16 + L18",
            "L16 + P18"
        ]
    );
}

#[test]
fn cartan_goldens() {
    let expect = "\
cartan of Ver_{3^3}
     L0  L4  L6  L10  L12  L16  L2  L14  L8
L0    4   2   0    1    2    1   0    0   0
L4    2   4   2    2    1    0   0    0   0
L6    0   2   2    1    0    0   0    0   0
L10   1   2   1    4    2    0   0    0   0
L12   2   1   0    2    4    2   0    0   0
L16   1   0   0    0    2    2   0    0   0
L2    0   0   0    0    0    0   2    1   0
L14   0   0   0    0    0    0   1    2   0
L8    0   0   0    0    0    0   0    0   1
";
    assert_eq!(run_ok(&["cartan", "-p", "3", "-n", "3", "--even-only", "--order", "block"]), expect);
    let csv = run_ok(&["cartan", "-p", "3", "-n", "2", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], ",L0,L1,L2,L3,L4,L5");
    assert_eq!(lines[1], "L0,2,0,0,0,1,0");
    assert_eq!(lines.len(), 7);
    let decomp = run_ok(&["decomp", "-p", "3", "-n", "2", "--format", "csv"]);
    assert!(decomp.starts_with(",W0,W1,W2,W3,W4,W5,W6,W7\nT2,"));
}

#[test]
fn report_json_shape() {
    let json = run_ok(&["report", "-p", "3", "-n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema_version"], 1);
    let r = &v["payload"];
    assert_eq!(r["kind"], "report");
    assert_eq!(r["simples"].as_array().unwrap().len(), 6);
    assert_eq!(r["cartan"]["rows"].as_array().unwrap().len(), 6);
    assert_eq!(r["blocks"].as_array().unwrap().len(), 4);
    assert_eq!(r["fpdims"].as_array().unwrap().len(), 6);
    assert_eq!(r["fpdims"][1]["simple_dim"], "1.879385241571817");
    assert_eq!(r["verification"]["all_passed"], true);
}

#[test]
fn report_text_correspondence() {
    let out = run_ok(&["report", "-p", "3", "-n", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    let at = lines.iter().position(|l| l.starts_with("correspondence")).unwrap();
    let labels: Vec<&str> = lines[at + 1].split_whitespace().collect();
    let tiltings: Vec<&str> = lines[at + 2].split_whitespace().collect();
    for (l, t) in [("L0", "T16"), ("L2", "T14"), ("L4", "T12"), ("L6", "T10"), ("L8", "T8"), ("L10", "T24"), ("L12", "T22"), ("L14", "T20"), ("L16", "T18")] {
        let k = labels.iter().position(|x| *x == l).unwrap();
        assert_eq!(tiltings[k], t);
    }
}

#[test]
fn invariants_and_tilting() {
    let out = run_ok(&["invariants", "-p", "3", "-n", "2", "-M", "6"]);
    assert!(out.ends_with("equal: true\n"));
    assert_eq!(out.lines().count(), 10);
    let t = run_ok(&["tilting", "-p", "3", "-m", "6"]);
    assert!(t.contains("dim: 12\nWeyl factors: W6 + W4\n"));
}

#[test]
fn blocks_and_ext1() {
    let b = run_ok(&["blocks", "-p", "3", "-n", "2"]);
    assert!(b.contains("level 0  size 2  det 3  L1 L3  |  T3 T7\n"));
    let e = run_ok(&["ext1", "-p", "3", "-n", "2"]);
    assert!(e.contains("Ext^1(L0, L4) = k\nExt^1(L1, L3) = k\n"));
}

#[test]
fn json_round_trips_for_every_command() {
    for args in [
        vec!["report", "-p", "3", "-n", "2"],
        vec!["report", "-p", "2", "-n", "4"],
        vec!["verify", "-p", "5", "-n", "2"],
        vec!["cartan", "-p", "3", "-n", "3", "--even-only"],
        vec!["decomp", "-p", "3", "-n", "2"],
        vec!["blocks", "-p", "5", "-n", "2"],
        vec!["ext1", "-p", "3", "-n", "3"],
        vec!["fuse", "-p", "5", "-n", "2", "-a", "8", "-b", "8"],
        vec!["table", "-p", "3", "-n", "2"],
        vec!["invariants", "-p", "2", "-n", "3", "-M", "12"],
        vec!["tilting", "-p", "2", "-m", "40"],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json", "--check-roundtrip"]);
        run_ok(&full);
    }
}

#[test]
fn large_integers_serialize_as_strings() {
    let json = run_ok(&["tilting", "-p", "2", "-m", "200", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["payload"]["dim"].is_number());
    let out = run_ok(&["invariants", "-p", "2", "-n", "5", "-M", "40", "--format", "json", "--check-roundtrip"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let last = &v["payload"]["invariant_dims"][40];
    assert!(last.is_string(), "{last}");
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["report", "-p", "3", "-n", "3", "--format", "json"];
    let cold = verkit(&args, dir.path());
    let file = dir.path().join("verpn_3_3_v1.json");
    assert!(file.exists());
    let written = std::fs::metadata(&file).unwrap().modified().unwrap();
    let warm = verkit(&args, dir.path());
    assert_eq!(std::fs::metadata(&file).unwrap().modified().unwrap(), written);
    assert_eq!(cold.stdout, warm.stdout);
    let mut uncached = args.to_vec();
    uncached.push("--no-cache");
    assert_eq!(verkit(&uncached, dir.path()).stdout, cold.stdout);
    let flag = tempfile::tempdir().unwrap();
    let mut explicit = args.to_vec();
    explicit.extend(["--cache-dir", flag.path().to_str().unwrap()]);
    assert_eq!(verkit(&explicit, dir.path()).stdout, cold.stdout);
    assert!(flag.path().join("verpn_3_3_v1.json").exists());
    // other commands served from the warm cache agree with cold runs
    for cmd in [["cartan", "-p", "3", "-n", "3"], ["blocks", "-p", "3", "-n", "3"]] {
        let fresh = tempfile::tempdir().unwrap();
        assert_eq!(verkit(&cmd, dir.path()).stdout, verkit(&cmd, fresh.path()).stdout);
    }
}

#[test]
fn seeded_output_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "-p", "7", "-n", "2", "--samples", "25", "--rng-seed", "9", "--no-cache"];
    let a = verkit(&args, dir.path());
    let b = verkit(&args, dir.path());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("25 sampled pairs, seed 9"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let o = verkit(&["cartan", "-p", "2", "-n", "3", "--format", "csv", "--output", target.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&target).unwrap().starts_with(",L0,L1,L2,L3\n"));
}
