use std::process::{Command, Output};

use scattering::ScatteringDiagram;
use scattering_cli::document::DiagramDocument;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scattering"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn scatter_text_for_unit_multiplicities() {
    let t = stdout(&[
        "scatter", "--l1", "1", "--l2", "1", "--order", "6", "--format", "text",
    ]);
    assert_eq!(rows(&t), ["(1,1): 1+z"]);
}

#[test]
fn scatter_json_lists_walls_by_decreasing_slope() {
    let j = stdout(&[
        "scatter", "--l1", "2", "--l2", "2", "--order", "12", "--format", "json",
    ]);
    let doc = DiagramDocument::from_json(&j).unwrap();
    assert_eq!((doc.ell1, doc.ell2, doc.order), (Some(2), Some(2), 12));
    let dirs: Vec<(i64, i64)> = doc.walls.iter().map(|w| (w.a, w.b)).collect();
    assert_eq!(&dirs[..4], &[(1, 2), (2, 3), (3, 4), (4, 5)]);
    assert_eq!(dirs[5], (1, 1));
    assert_eq!(dirs.last(), Some(&(2, 1)));
    let w11 = &doc.walls[5];
    assert_eq!(w11.classification.as_deref(), Some("ConeBoundary"));
    let f: Vec<(u32, &str, &str)> = w11
        .f
        .iter()
        .map(|(k, n, d)| (*k, n.as_str(), d.as_str()))
        .collect();
    assert_eq!(
        f[..4],
        [(0, "1", "1"), (1, "4", "1"), (2, "10", "1"), (3, "20", "1")]
    );
    assert_eq!(
        doc.to_diagram().unwrap(),
        ScatteringDiagram::kronecker(2, 2, 12).unwrap()
    );
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for format in ["json", "svg", "text"] {
        let args = [
            "scatter", "--l1", "2", "--l2", "3", "--order", "9", "--format", format,
        ];
        assert_eq!(stdout(&args), stdout(&args), "{format}");
    }
}

#[test]
fn polynomial_generators_accept_fractions() {
    let j = stdout(&[
        "scatter", "--p1", "1,1/2", "--p2", "1,-2/3", "--order", "6", "--format", "json",
    ]);
    let doc = DiagramDocument::from_json(&j).unwrap();
    assert_eq!(doc.p1, Some(vec!["1".into(), "1/2".into()]));
    let d = doc.to_diagram().unwrap();
    assert_eq!(
        d.wall_function(1, 1).unwrap().coeffs()[1],
        scattering::series::ratio(-1, 3)
    );
}

#[test]
fn svg_has_one_ray_per_wall() {
    let s = stdout(&[
        "scatter", "--l1", "3", "--l2", "3", "--order", "10", "--format", "svg",
    ]);
    let d = ScatteringDiagram::kronecker(3, 3, 10).unwrap();
    assert!(s.starts_with("<svg"));
    assert_eq!(s.matches(r#"class="ray "#).count(), d.len());
    assert!(s.contains(r#"class="ray discrete" data-a="3" data-b="1""#));
    assert!(s.contains(r#"class="ray cone" data-a="1" data-b="1""#));
    assert!(s.contains(r#"class="sector""#));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let p = path.to_str().unwrap();
    let out = stdout(&[
        "scatter", "--l1", "1", "--l2", "2", "--order", "6", "--format", "json", "--out", p,
    ]);
    assert!(out.is_empty());
    let doc = DiagramDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.walls.len(), 2);
}

#[test]
fn argument_errors_exit_with_two() {
    for args in [
        &["scatter", "--l1", "1", "--l2", "1", "--order", "1"][..],
        &["scatter", "--l1", "1"],
        &[
            "scatter", "--l1", "1", "--l2", "1", "--p1", "1,1", "--p2", "1,1",
        ],
        &["scatter", "--p1", "2,1", "--p2", "1,1"],
        &["scatter", "--p1", "1,x", "--p2", "1,1"],
        &[
            "gw", "--l1", "2", "--l2", "2", "--a", "2", "--b", "4", "--order", "8",
        ],
        &["quiver", "--m", "2", "--a", "3", "--b", "3"],
        &["verify", "--filter", "no-such-check"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn gw_table_rows() {
    let t = stdout(&[
        "gw", "--l1", "2", "--l2", "3", "--a", "1", "--b", "1", "--order", "8",
    ]);
    let values: Vec<&str> = rows(&t)
        .iter()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(&values[..3], ["6", "9/2", "20/3"]);

    let t = stdout(&[
        "gw", "--l1", "1", "--l2", "1", "--a", "1", "--b", "1", "--order", "10",
    ]);
    let values: Vec<&str> = rows(&t)
        .iter()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(values, ["1", "-1/4", "1/9", "-1/16", "1/25"]);
}

fn quiver_columns(args: &[&str]) -> Vec<(String, String)> {
    let t = stdout(args);
    rows(&t)
        .iter()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[1].to_string(), f[2].to_string())
        })
        .collect()
}

#[test]
fn quiver_tables() {
    let c = quiver_columns(&[
        "quiver", "--m", "2", "--a", "1", "--b", "1", "--order", "12",
    ]);
    let back: Vec<&str> = c.iter().map(|x| x.0.as_str()).collect();
    assert_eq!(back, ["2", "3", "4", "5", "6", "7"]);

    let c = quiver_columns(&["quiver", "--m", "2", "--a", "1", "--b", "2", "--order", "9"]);
    assert_eq!(
        c,
        [
            ("1".into(), "2".into()),
            ("0".into(), "1".into()),
            ("0".into(), "0".into())
        ]
    );

    let c = quiver_columns(&["quiver", "--m", "1", "--a", "1", "--b", "1"]);
    assert_eq!(c[0], ("1".into(), "1".into()));
    assert!(c[1..]
        .iter()
        .all(|x| x == &("0".to_string(), "0".to_string())));
}

fn permissible_dirs(args: &[&str]) -> Vec<String> {
    let t = stdout(args);
    let mut v: Vec<String> = rows(&t)
        .iter()
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    v.sort();
    v
}

#[test]
fn permissible_tables() {
    assert_eq!(
        permissible_dirs(&[
            "permissible",
            "--l1",
            "1",
            "--l2",
            "3",
            "--max-degree",
            "10"
        ]),
        ["(1,1)", "(1,2)", "(1,3)", "(2,3)"]
    );
    let d = permissible_dirs(&[
        "permissible",
        "--l1",
        "3",
        "--l2",
        "3",
        "--max-degree",
        "12",
    ]);
    for v in [
        "(3,1)", "(8,3)", "(1,3)", "(3,8)", "(1,1)", "(2,3)", "(3,2)",
    ] {
        assert!(d.iter().any(|x| x == v), "{v}");
    }
    let d = permissible_dirs(&["permissible", "--l1", "2", "--l2", "2", "--max-degree", "8"]);
    assert_eq!(
        d,
        ["(1,1)", "(1,2)", "(2,1)", "(2,3)", "(3,2)", "(3,4)", "(4,3)"]
    );
}

#[test]
fn permissible_reports_wall_status() {
    let t = stdout(&[
        "permissible",
        "--l1",
        "2",
        "--l2",
        "2",
        "--max-degree",
        "6",
        "--order",
        "10",
        "--all",
    ]);
    let line = |dir: &str| {
        rows(&t)
            .into_iter()
            .find(|l| l.starts_with(dir))
            .unwrap()
            .to_string()
    };
    assert!(line("(1,1) ").ends_with("nontrivial"));
    assert!(
        line("(1,3) ").contains("NotPermissible") && line("(1,3) ").ends_with("trivial to z^2")
    );
}

#[test]
fn verify_filter_and_fault_injection() {
    let out = run(&["verify", "--filter", "symmetry"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS [ 8] reflection-symmetry"));
    assert_eq!(text.matches("PASS").count(), 1);

    let out = run(&[
        "verify",
        "--filter",
        "two-two",
        "--inject-fault",
        "two-two-family",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("FAIL [ 2] two-two-family"));
}
