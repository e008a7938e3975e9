use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncthick")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn f(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

/// Writes a variant of a fixture with one line replaced.
fn variant(dir: &tempfile::TempDir, name: &str, from: &str, to: &str) -> String {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let out: Vec<String> = text
        .lines()
        .filter(|l| !to.is_empty() || !l.starts_with(from))
        .map(|l| if !to.is_empty() && l.starts_with(from) { to.to_string() } else { l.to_string() })
        .collect();
    let path = dir.path().join(name);
    std::fs::write(&path, out.join("\n")).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn demo_passes_at_default_truncation() {
    let o = run(&["demo-hilb2"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.starts_with("# ncthick demo-hilb2 d=3 N=5 basis=deglex-v1\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 10);
    assert!(!text.contains("FAIL"));
}

#[test]
fn demo_with_small_adic_degree_skips_with_notice() {
    let o = run(&["--adic-degree", "2", "demo-hilb2"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(text.contains("SKIP reduced ideal"));
    assert!(text.contains("SKIP explicit map"));
    assert!(text.contains("note: "));
    assert!(!text.contains("FAIL"));
}

#[test]
fn demo_at_nc_degree_zero() {
    let o = run(&["--nc-degree", "0", "demo-hilb2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn thicken_is_byte_stable() {
    let args = ["thicken", &f("chart_a.chart")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("  [1] -b2 + a2*b3\n"));
}

#[test]
fn machine_format() {
    let o = run(&["--format", "machine", "--adic-degree", "3", "thicken", &f("chart_a.chart")]);
    let text = stdout(&o);
    assert!(text.starts_with("format=ncthick-machine-v1\ncommand=thicken\nnc_degree=3\nadic_degree=3\nbasis=deglex-v1\n"));
    assert!(text.contains("generators.count=4\n"));
    assert!(text.contains("eliminated.1=b2 = a2*b3\n"));
    assert!(text.contains("check.abelianization=PASS\n"));
    assert!(text.contains("quotient_dims=1 4 14 48\n"));
}

#[test]
fn free_chart_is_smooth() {
    let o = run(&["thicken", &f("free.chart")]);
    assert!(stdout(&o).contains("smooth: free algebra on 3 generators"));
    let o = run(&["--adic-degree", "3", "complete", &f("free.chart")]);
    assert!(stdout(&o).contains("smooth: free local algebra on 3 generators"));
    assert!(stdout(&o).contains("graded dims: 1 3 9 27"));
}

#[test]
fn malformed_path_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = variant(&dir, "chart_a.chart", "relation:", "relation: x*f - f*x");
    let o = run(&["thicken", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 7, column 11"), "{}", stderr(&o));
}

#[test]
fn unknown_name_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = variant(&dir, "chart_a.chart", "relation:", "relation: x*q - y*x");
    let o = run(&["thicken", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 7, column 13"), "{}", stderr(&o));
}

#[test]
fn off_chart_point() {
    let o = run(&["complete", &f("chart_a.chart"), "--raw", "--point", "a2=1 b3=1 b2=5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("point not on chart"));
}

#[test]
fn completion_of_the_point_chart_is_commutative() {
    let o = run(&["complete", &f("point.chart")]);
    let text = stdout(&o);
    assert!(text.contains("tangent dim: 2\n"));
    assert!(text.contains("graded dims: 1 2 3 4 5 6\n"));
    assert!(text.contains("commutative: yes\n"));
}

#[test]
fn glue_verifies_the_explicit_map() {
    let o = run(&["glue", &f("chart_a.chart"), &f("chart_b.chart"), &f("a_to_b.overlap")]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS point 1 explicit relations preserved"));
    assert!(text.contains("PASS point 2 explicit abelianization"));
    assert!(text.contains("point 1 target: a1'=2 a3'=-1 b2'=-5 b4'=5"));
}

#[test]
fn self_gluing_is_identity() {
    let o = run(&["--nc-degree", "2", "--adic-degree", "4", "glue", &f("chart_a.chart"), &f("chart_a.chart"), &f("a_to_a.overlap")]);
    let text = stdout(&o);
    for c in ["a2", "a4", "b1", "b3"] {
        assert!(text.contains(&format!("] {c} -> {c}\n")), "{text}");
    }
}

#[test]
fn wrong_explicit_map_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = variant(&dir, "a_to_b.overlap", "map b4'", "map b4' = 2*b1 + a4*b3");
    let o = run(&["glue", &f("chart_a.chart"), &f("chart_b.chart"), &wrong]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL point 1 explicit relations preserved"));
}

#[test]
fn inconsistent_hint() {
    let dir = tempfile::tempdir().unwrap();
    let bad = variant(&dir, "a_to_b.overlap", "classical a3'", "classical a3' = 2");
    let o = run(&["glue", &f("chart_a.chart"), &f("chart_b.chart"), &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inconsistent at order 0"), "{}", stderr(&o));
}

#[test]
fn three_chart_cocycle_holds() {
    let o = run(&[
        "--nc-degree", "2", "--adic-degree", "4", "cocycle",
        "--chart", &f("chart_a.chart"), "--chart", &f("chart_b.chart"), "--chart", &f("chart_c.chart"),
        "--overlap", &f("a_to_b.overlap"), "--overlap", &f("b_to_c.overlap"), "--overlap", &f("c_to_a.overlap"),
    ]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("cycle: A B C\n"));
    assert!(text.contains("first defect: none\n"));
    assert!(text.contains("PASS cocycle\n"));
}

#[test]
fn broken_cycle_is_rejected() {
    let o = run(&[
        "cocycle", "--chart", &f("chart_a.chart"), "--chart", &f("chart_b.chart"),
        "--overlap", &f("a_to_b.overlap"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-composable"));
}

#[test]
fn resource_cap() {
    let o = run(&["--adic-degree", "40", "thicken", &f("chart_a.chart")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_file() {
    let o = run(&["thicken", "/nonexistent/chart"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn window_of_the_projective_plane() {
    let o = run(&["window", "--algebra", &f("p2.algebra"), "--p", "0", "--q", "5", "--hilbert", "1"]);
    let text = stdout(&o);
    for (k, m) in [(1, 3), (2, 6), (3, 10), (4, 15), (5, 21)] {
        assert!(text.contains(&format!("] {k}: {m}\n")), "{text}");
    }
    assert!(text.contains("PASS theta pairing"));
}

#[test]
fn window_with_a_module() {
    let o = run(&[
        "window", "--algebra", &f("p1.algebra"), "--p", "1", "--q", "2", "--hilbert", "1,1",
        "--module", &f("p1_structure.module"),
    ]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}{}", stderr(&o));
    assert!(text.contains("theta: -3 2\n"));
    assert!(text.contains("module dims: 2 3\n"));
}

#[test]
fn out_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = run(&["--out", path.to_str().unwrap(), "complete", &f("point.chart")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().contains("commutative: yes"));
}
