use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const TRIANGLE_334: &str = "rank 3\nm 1 2 3\nm 1 3 3\nm 2 3 4\n";
const ALL_THREE: &str = "rank 4\nm 1 2 3\nm 1 3 3\nm 1 4 3\nm 2 3 3\nm 2 4 3\nm 3 4 3\n";
const IDEAL_EDGE: &str = "rank 3\ninf 1 2\nm 1 3 3\nm 2 3 3\n";
const TETRAHEDRON: &str = "rank 4\nm 1 2 5\nm 2 3 3\nm 3 4 5\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxlim"))
        .args(args)
        .output()
        .expect("spawn coxlim")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn system_file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data rows of a limit-set CSV.
fn rows(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let data = lines
        .map(|l| l.split(',').map(|x| x.trim().parse().unwrap()).collect())
        .collect();
    (header, data)
}

/// `B(v,v)` for the all-3 form, normalized by `(Σ o_i v_i)²` with `o ∝ (1,1,1,1)`.
fn all_three_q(v: &[f64]) -> f64 {
    let sum: f64 = v.iter().sum();
    let sq: f64 = v.iter().map(|x| x * x).sum();
    // B = I − ½(J − I) = 1.5 I − 0.5 J; the chart is Σ v_i / 2 = 1.
    let q = 1.5 * sq - 0.5 * sum * sum;
    let scale = sum / 2.0;
    q / (scale * scale)
}

#[test]
fn analyze_cocompact_triangle() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "t.txt", TRIANGLE_334);
    let o = run(&["analyze", s(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("summary: signature (2,1); cocompact; cusps: none"),
        "{out}"
    );
    assert!(out.contains("irreducible: yes"));
}

#[test]
fn analyze_all_three_has_four_rank_three_cusps() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "a.txt", ALL_THREE);
    let o = run(&["analyze", s(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("with_cusps; 4 cusps (rank 3)"), "{out}");
    assert_eq!(out.matches("  cusp {").count(), 4);
}

#[test]
fn malformed_line_is_a_usage_error_naming_the_line() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "bad.txt", "rank 3\nm 1 2 3\nm 1 3 banana\n");
    let o = run(&["analyze", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_file_and_reducible_system_exit_2() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    assert_eq!(run(&["analyze", s(&missing)]).status.code(), Some(2));
    let f = system_file(&dir, "r.txt", "rank 4\ninf 1 2\ninf 3 4\n");
    assert_eq!(run(&["analyze", s(&f)]).status.code(), Some(2));
}

#[test]
fn wrong_signature_is_rejected() {
    let dir = TempDir::new().unwrap();
    // Affine (3,3,3): signature (2,0,1).
    let f = system_file(&dir, "e.txt", "rank 3\nm 1 2 3\nm 1 3 3\nm 2 3 3\n");
    let o = run(&[
        "limitset",
        s(&f),
        "--depth",
        "3",
        "--out",
        s(&dir.path().join("x.csv")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("signature"), "{}", stderr(&o));
}

#[test]
fn depth_zero_is_empty_with_header() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "t.txt", TRIANGLE_334);
    let out = dir.path().join("z.csv");
    let o = run(&["limitset", s(&f), "--depth", "0", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, data) = rows(&out);
    assert_eq!(header, "# coxeter-limits v1, mode=orbit, depth=0");
    assert!(data.is_empty());
}

#[test]
fn all_three_depth_seven_stays_near_the_boundary() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "a.txt", ALL_THREE);
    let out = dir.path().join("a.csv");
    let o = run(&["limitset", s(&f), "--depth", "7", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, data) = rows(&out);
    assert!(!data.is_empty());
    for r in &data {
        assert_eq!(r.len(), 4);
        assert!(all_three_q(r).abs() <= 0.05, "{r:?}");
    }
}

#[test]
fn affine_dihedral_subgroup_collapses_to_one_point() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "i.txt", IDEAL_EDGE);
    // Parabolic orbits approach the fixed point, normalized a1 + a2, like 1/n.
    let spread = |depth: usize| -> f64 {
        let out = dir.path().join(format!("d{depth}.csv"));
        let d = depth.to_string();
        let o = run(&[
            "limitset",
            s(&f),
            "--depth",
            &d,
            "--subgroup",
            "1 2",
            "--out",
            s(&out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        let (_, data) = rows(&out);
        assert!(!data.is_empty());
        data.iter()
            .map(|r| {
                let sum: f64 = r.iter().sum();
                r.iter()
                    .zip([0.5, 0.5, 0.0])
                    .map(|(x, t)| (x / sum - t).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    };
    let (coarse, fine) = (spread(12), spread(48));
    assert!(fine < 0.5 * coarse, "{coarse} {fine}");
    assert!(fine < 0.02, "{fine}");
}

#[test]
fn svg_outputs_for_rank_three_and_four() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("t", TRIANGLE_334), ("a", ALL_THREE)] {
        let f = system_file(&dir, &format!("{name}.txt"), text);
        let svg = dir.path().join(format!("{name}.svg"));
        let o = run(&["limitset", s(&f), "--depth", "5", "--out", s(&svg)]);
        assert!(o.status.success(), "{}", stderr(&o));
        let picture = fs::read_to_string(&svg).unwrap();
        assert!(picture.starts_with("<svg"));
        assert!(dir.path().join(format!("{name}.csv")).exists());
    }
}

#[test]
fn rank_five_svg_is_unsupported_but_csv_is_written() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("rank 5\n");
    for i in 1..=5 {
        for j in i + 1..=5 {
            text.push_str(&format!("m {i} {j} 3\n"));
        }
    }
    let f = system_file(&dir, "five.txt", &text);
    let svg = dir.path().join("five.svg");
    let o = run(&["limitset", s(&f), "--depth", "3", "--out", s(&svg)]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(!svg.exists());
    let (header, data) = rows(&dir.path().join("five.csv"));
    assert!(header.starts_with("# coxeter-limits v1"));
    assert!(data.iter().all(|r| r.len() == 5));
}

#[test]
fn limitset_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "a.txt", ALL_THREE);
    let a = dir.path().join("1.csv");
    let b = dir.path().join("2.csv");
    assert!(run(&[
        "limitset",
        s(&f),
        "--depth",
        "6",
        "--mode",
        "roots",
        "--out",
        s(&a)
    ])
    .status
    .success());
    assert!(run(&[
        "--sequential",
        "limitset",
        s(&f),
        "--depth",
        "6",
        "--mode",
        "roots",
        "--out",
        s(&b)
    ])
    .status
    .success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn geometry_suite_passes_on_334() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "t.txt", TRIANGLE_334);
    let o = run(&[
        "verify",
        s(&f),
        "--suite",
        "geometry",
        "--seed",
        "1",
        "--depth",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}\n{}", stdout(&o), stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("result: pass"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_report_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "t.txt", TRIANGLE_334);
    let args = [
        "verify",
        s(&f),
        "--suite",
        "words",
        "--seed",
        "3",
        "--depth",
        "6",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn ct_suite_passes_on_all_three_with_tail_diameters() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "a.txt", ALL_THREE);
    let o = run(&["verify", s(&f), "--suite", "ct", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("_tail_diameter ").count(), 20);
}

#[test]
fn failing_suite_exits_1_with_machine_readable_list() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "t.txt", TETRAHEDRON);
    let o = run(&["verify", s(&f), "--suite", "ct", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let failures: Vec<&str> = out.lines().filter(|l| l.starts_with("failure\t")).collect();
    assert!(!failures.is_empty());
    for l in failures {
        let fields: Vec<&str> = l.split('\t').collect();
        assert_eq!(fields.len(), 5);
        assert!(fields[1] == "suite=ct");
        assert!(fields[3].starts_with("value=") && fields[4].starts_with("threshold="));
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "t.txt", TRIANGLE_334);
    assert_eq!(
        run(&["verify", s(&f), "--suite", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn thread_cap_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let f = system_file(&dir, "a.txt", ALL_THREE);
    let a = dir.path().join("1.csv");
    let b = dir.path().join("2.csv");
    assert!(run(&["limitset", s(&f), "--depth", "6", "--out", s(&a)])
        .status
        .success());
    let o = Command::new(env!("CARGO_BIN_EXE_coxlim"))
        .env("COXLIM_THREADS", "1")
        .args(["limitset", s(&f), "--depth", "6", "--out", s(&b)])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
