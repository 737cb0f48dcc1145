use std::process::{Command, Output};

use serde_json::Value;

fn delsarte(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delsarte"))
        .args(args)
        .env_remove("DELSARTE_ATLAS_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn height_json_for_octic() {
    let o = delsarte(&[
        "height",
        "--fermat",
        "1,1,1,1,4",
        "-p",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "finite");
    assert_eq!(v["h"], 2);
    assert_eq!(v["d_A"], 8);
    assert_eq!(v["witness"]["norms"], serde_json::json!([0, 1]));
}

#[test]
fn prime_dividing_det_exits_one() {
    let o = delsarte(&["height", "--fermat", "1,1,1,1,4", "-p", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("p divides det A"), "{}", stderr(&o));
}

#[test]
fn invalid_weights_name_the_condition() {
    let o = delsarte(&["reduce", "--fermat", "2,2,2,2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("well-formed"), "{}", stderr(&o));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let doc = serde_json::json!({
        "weights": [1, 1, 1, 1, 1],
        "degree": 5,
        "matrix": [[4, 0, 0, 0, 0], [0, 5, 0, 0, 0], [0, 0, 5, 0, 0], [0, 0, 0, 5, 0], [0, 0, 0, 0, 5]],
        "family": "general"
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = delsarte(&["aset", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("condition (iii)"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        delsarte(&["height", "--fermat", "1,1,1,1,4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        delsarte(&["height", "--fermat", "1,1,1", "-p", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        delsarte(&["spectrum", "--fermat", "1,1,1,1,4", "--unknown"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(delsarte(&["classify", "cubic"]).status.code(), Some(2));
    assert_eq!(delsarte(&[]).status.code(), Some(2));
}

#[test]
fn classify_fermat_lists_nineteen_values() {
    let o = delsarte(&["classify", "fermat"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("147 records"));
    let line = out
        .lines()
        .find(|l| l.starts_with("finite heights:"))
        .unwrap();
    let values: Vec<u64> = line["finite heights:".len()..]
        .trim()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(values.len(), 19);
    assert_eq!(values.last(), Some(&42));
}

/// The table and json forms of a spectrum carry the same groups.
#[test]
fn spectrum_table_matches_json() {
    let args = ["spectrum", "--fermat", "1,42,258,602,903"];
    let table = stdout(&delsarte(&args));
    let json: Value = serde_json::from_str(&stdout(&delsarte(
        &[&args[..], &["--format", "json"]].concat(),
    )))
    .unwrap();

    let rows: Vec<(String, u64, Vec<u64>)> = table
        .lines()
        .skip(3)
        .map(|l| {
            let mut parts = l.split_whitespace();
            let h = parts.next().unwrap().to_string();
            let c = parts.next().unwrap().parse().unwrap();
            let reps = parts
                .collect::<String>()
                .split(',')
                .filter(|s| !s.is_empty() && *s != "...")
                .map(|s| s.parse().unwrap())
                .collect();
            (h, c, reps)
        })
        .collect();
    let groups = json["groups"].as_array().unwrap();
    assert_eq!(rows.len(), groups.len());
    for ((h, c, reps), g) in rows.iter().zip(groups) {
        let jh = match &g["height"] {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        assert_eq!(h, &jh);
        assert_eq!(*c, g["count"].as_u64().unwrap());
        let jr: Vec<u64> = g["representatives"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert_eq!(reps, &jr);
    }
    assert_eq!(json["phi"], 504);
}

#[test]
fn golden_quintic_spectrum_table() {
    let o = delsarte(&["spectrum", "--fermat", "1,1,1,1,1"]);
    let expected = "\
threefold  (1,1,1,1,1)[5]
d_A = 5, phi = 4
height  classes  residues
     1        1  1
   inf        3  2,3,4
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn golden_reduce_and_aset() {
    let o = delsarte(&[
        "reduce",
        "--quasidiagonal",
        "1,1,12,28,42",
        "--exponents",
        "83,84,7,3,2",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "e,d_A,alpha_A\n84,3486,\"42,41,498,1162,1743\"\n"
    );
    let o = delsarte(&["aset", "--fermat", "1,1,1,1,1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"modulus": 3125, "count": 204, "graded_counts": [1, 101, 101, 1]})
    );
}

#[test]
fn mirror_line_for_the_84_example() {
    let o = delsarte(&[
        "height",
        "--quasidiagonal",
        "1,1,12,28,42",
        "--exponents",
        "83,84,7,3,2",
        "-p",
        "43",
    ]);
    let out = stdout(&o);
    assert!(out.contains("height     82"), "{out}");
    assert!(
        out.contains("mirror obstruction (h11=11, h12=491)  yes"),
        "{out}"
    );
}

#[test]
fn document_input_and_general_note() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    let doc = serde_json::json!({
        "weights": [1, 1, 1, 1, 1],
        "degree": 5,
        "matrix": [[4, 1, 0, 0, 0], [0, 5, 0, 0, 0], [0, 0, 5, 0, 0], [0, 0, 0, 5, 0], [0, 0, 0, 0, 5]],
        "family": "general"
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = delsarte(&[
        "reduce",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("quasi-smoothness"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d_A"], 20);

    std::fs::write(&path, "{\"weights\": [1, 1,\n").unwrap();
    let o = delsarte(&["reduce", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn atlas_build_and_diff_through_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_delsarte"))
            .args(args)
            .env("DELSARTE_ATLAS_DIR", dir.path())
            .output()
            .unwrap()
    };
    assert_eq!(run(&["atlas", "build", "fermat"]).status.code(), Some(0));
    assert!(dir.path().join("fermat.json").exists());
    std::fs::copy(
        dir.path().join("fermat.json"),
        dir.path().join("again.json"),
    )
    .unwrap();
    let o = run(&["atlas", "diff", "fermat.json", "again.json"]);
    assert_eq!(stdout(&o).trim(), "atlases are identical");

    let text = std::fs::read_to_string(dir.path().join("fermat.json")).unwrap();
    std::fs::write(dir.path().join("cut.json"), &text[..text.len() / 3]).unwrap();
    let o = run(&["atlas", "diff", "fermat.json", "cut.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}
