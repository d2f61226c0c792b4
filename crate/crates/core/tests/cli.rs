use std::process::{Command, Output};

fn deltaop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltaop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = deltaop(&["apply", "--phi", "[1,1]", "--f", "[0,0,1]", "--theta", "2", "--omega", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[0,6,3]");
    assert!(!o.stderr.is_empty());

    let o = deltaop(&["exp", "--f", "[0,1]", "--theta", "1", "--omega", "0", "--a", "0.5"]);
    assert_eq!(stdout(&o).trim(), "[0.5,1]");

    let o = deltaop(&["solve-nd", "--N", "3", "--d", "0", "--b", "0", "--h", "[0,1]", "--t", "1", "--x", "[1,0,0]"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1,1,0,0,7,0"));
}

#[test]
fn exit_codes() {
    assert_eq!(deltaop(&["apply", "--phi", "[1"]).status.code(), Some(2));
    assert_eq!(deltaop(&["nonsense"]).status.code(), Some(2));
    assert_eq!(deltaop(&["run", "--job", "/nonexistent/job.json"]).status.code(), Some(2));
    let o = deltaop(&["quad", "--theta", "0", "--n", "8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("theta"));
    let o = deltaop(&["solve", "--theta", "1", "--omega", "0", "--t", "5", "--epsilon", "0.2",
        "--h", r#"{"derivs":[[1,0],[0.5,0],[0.25,0]],"bound_b":0.5}"#, "--z", "[[0,0]]"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3.33"));
}

#[test]
fn integral_route_and_quadrature_cap() {
    let args = ["exp", "--f", "[1,2,3]", "--theta", "1.5", "--omega", "0.7", "--a", "0.3", "--route", "int", "--z", "[[0.5,0],[1,1]]"];
    let int = deltaop(&args);
    let mut dec_args = args;
    dec_args[11] = "dec";
    let dec = deltaop(&dec_args);
    let parse = |o: &Output| -> Vec<f64> {
        stdout(o).lines().skip(1).flat_map(|l| l.split(',').skip(2).map(|v| v.parse::<f64>().unwrap()).collect::<Vec<_>>()).collect()
    };
    for (a, b) in parse(&int).iter().zip(parse(&dec)) {
        assert!((a - b).abs() < 1e-8 * b.abs().max(1.0));
    }
    let capped = Command::new(env!("CARGO_BIN_EXE_deltaop")).args(args).env("DS_MAX_QUAD", "abc").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn job_files_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    let out = dir.path().join("report.json");
    std::fs::write(
        &job,
        format!(
            r#"{{"command":"verify","params":{{"suite":"zeros","seed":7,"trials":15}},"output_path":{:?},"precision":{{"class_tol":1e-7}}}}"#,
            out.display().to_string()
        ),
    )
    .unwrap();
    let o = deltaop(&["run", "--job", job.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read(&out).unwrap();
    deltaop(&["run", "--job", job.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&out).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["asserted_violations"], 0);

    std::fs::write(&job, r#"{"command":"quad","params":{"theta":1,"n":4},"typo":1}"#).unwrap();
    assert_eq!(deltaop(&["run", "--job", job.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn quad_dump_round_trips() {
    let o = deltaop(&["quad", "--theta", "2.5", "--n", "12"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    let rule: deltaop::kernel::QuadratureRule = serde_json::from_value(v).unwrap();
    assert_eq!(rule, deltaop::kernel::gauss_laguerre(2.5, 12).unwrap());
}

#[test]
fn kernel_evaluation() {
    let o = deltaop(&["kernel", "--theta", "1", "--xi", "[1,0]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // w_1(1) = I_0(2)
    assert!((v["w"][0].as_f64().unwrap() - 2.279585302336067).abs() < 1e-14);
}
