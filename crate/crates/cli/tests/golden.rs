use std::path::Path;
use std::process::{Command, Output};

use filtreg_cli::{emit_report, run_manifest, Format};

fn run(manifest: &str, extra: &[&str]) -> (Output, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, manifest).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_filtreg"))
        .arg(&path)
        .args(extra)
        .current_dir(dir.path())
        .output()
        .unwrap();
    (out, dir)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const REMARK_Z: &str = r#"format-version = 1

[ring]
catalog = "remark-2-4"

[ideals]
z = ["z"]

[task]
command = "check-filter-regular"
sequence = "z"
"#;

const PLANE_BOUND: &str = r#"format-version = 1

[ring]
p = 5
vars = ["x", "y"]
order = "auto"

[ideals]
f = ["x"]

[task]
command = "bound-n"
j = "m"
"#;

const REMARK_GR: &str = r#"format-version = 1

[ring]
catalog = "remark-2-4"

[task]
command = "hilbert"
n-max = 3
"#;

#[test]
fn computed_falsehood_exits_clean() {
    let (o, _d) = run(REMARK_Z, &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("false"));
}

#[test]
fn bound_report_and_auto_order() {
    let (o, _d) = run(PLANE_BOUND, &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("t=1 k=1 h=1 N=2"));
    assert!(text.lines().any(|l| l.starts_with("order: ") && l.ends_with("(auto)")));
}

#[test]
fn malformed_manifest_is_an_operational_error() {
    let (o, _d) = run("format-version = 1\n[ring\nvars = 3\n", &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_file_is_an_operational_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_filtreg"))
        .arg("/nonexistent/run.toml")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unsatisfied_precondition_is_an_operational_error() {
    let text = PLANE_BOUND.replace(
        "p = 5\nvars = [\"x\", \"y\"]",
        "p = 5\nvars = [\"x\", \"y\"]\nrelations = [\"x^2\"]",
    );
    let (o, _d) = run(&text, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("not filter-regular"));
}

#[test]
fn violated_verdict_exits_one() {
    let text = r#"format-version = 1

[ring]
catalog = "node-negative"

[task]
command = "verify"
claim = "main"
perturbation = ["x^3"]
n-max = 10
"#;
    let (o, _d) = run(text, &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("main: violated at 4"));
}

#[test]
fn gr_table_as_csv() {
    let (o, _d) = run(REMARK_GR, &["--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        [
            "claim",
            "N",
            "sample",
            "n",
            "value_orig",
            "value_pert",
            "status",
            "certification",
            "seed"
        ]
    );
    let rows: Vec<(String, String)> = rd
        .records()
        .map(|r| r.unwrap())
        .map(|r| (r[3].to_string(), r[4].to_string()))
        .collect();
    let want: Vec<(String, String)> = [("0", "1"), ("1", "1"), ("2", "0"), ("3", "0")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(rows, want);
}

#[test]
fn plot_data_file() {
    let (o, d) = run(REMARK_GR, &["--emit-plot-data", "plot.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let plot = std::fs::read_to_string(Path::new(d.path()).join("plot.csv")).unwrap();
    assert_eq!(plot, "table,n,value\ngr,0,1\ngr,1,1\ngr,2,0\ngr,3,0\n");
}

#[test]
fn koszul_and_ar_commands() {
    let text = "format-version = 1\n\n[ring]\ncatalog = \"remark-2-4\"\n\n[task]\ncommand = \"koszul\"\n";
    let rep = run_manifest(text).unwrap();
    assert_eq!(rep.summary, vec!["H0=2 H1=1 H2=0"]);
    let text = "format-version = 1\n\n[ring]\ncatalog = \"regular-plane-x\"\n\n[task]\ncommand = \"ar-number\"\n";
    let rep = run_manifest(text).unwrap();
    assert!(rep.summary[0].starts_with("k=1"), "{:?}", rep.summary);
}

#[test]
fn sequence_check_reports_position() {
    let text = "format-version = 1\n\n[ring]\ncatalog = \"remark-2-4\"\n\n[task]\ncommand = \"check-filter-regular\"\nsequence = [\"z\", \"x+y\"]\n";
    let rep = run_manifest(text).unwrap();
    assert_eq!(rep.summary, vec!["false at 1"]);
    assert_eq!(rep.exit_status().code(), 0);
}

#[test]
fn table_and_csv_carry_the_same_numbers() {
    let text = "format-version = 1\n\n[ring]\ncatalog = \"node-sum\"\n\n[task]\ncommand = \"find-min-n\"\nn-range = [2, 3]\nsamples = 2\nseed = 9\n";
    let rep = run_manifest(text).unwrap();
    assert!(!rep.rows.is_empty());
    let csv_text = emit_report(&rep, Format::Csv);
    let table = emit_report(&rep, Format::Table);
    let mut rd = csv::Reader::from_reader(csv_text.as_bytes());
    let records: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), rep.rows.len());
    let body: Vec<&str> = table.lines().skip_while(|l| !l.starts_with("claim")).skip(1).collect();
    assert_eq!(body.len(), records.len());
    for (line, (rec, row)) in body.iter().zip(records.iter().zip(&rep.rows)) {
        let cells: Vec<&str> = line.split_whitespace().collect();
        let fields: Vec<&str> = rec.iter().filter(|f| !f.is_empty()).collect();
        assert_eq!(cells, fields);
        assert_eq!(&rec[4], row.value_orig);
        assert_eq!(&rec[5], row.value_pert);
        assert_eq!(rec[1].parse::<usize>().ok(), row.depth);
        assert_eq!(rec[8].parse::<u64>().ok(), row.seed);
    }
}

#[test]
fn empty_sweep_is_header_only() {
    let text = "format-version = 1\n\n[ring]\ncatalog = \"node-sum\"\n\n[task]\ncommand = \"find-min-n\"\n";
    let rep = run_manifest(text).unwrap();
    assert_eq!(
        emit_report(&rep, Format::Csv),
        "claim,N,sample,n,value_orig,value_pert,status,certification,seed\r\n"
    );
}

#[test]
fn reruns_are_byte_identical() {
    let text = "format-version = 1\n\n[ring]\ncatalog = \"node-sum\"\n\n[task]\ncommand = \"experiment\"\nn-range = [1, 2]\nsamples = 3\nseed = 5\n";
    let (a, _d1) = run(text, &["--format", "csv"]);
    let (b, _d2) = run(text, &["--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
