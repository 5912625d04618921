use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn quivreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivreg")).args(args).output().expect("spawn quivreg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_polynomial_ring_certifies_dimension_two() {
    let path = corpus("kxy.alg");
    let o = quivreg(&["check", path.to_str().unwrap(), "--truncate", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("twisted Calabi-Yau of dimension 2"));
}

#[test]
fn refutations_exit_with_two() {
    for name in ["free2.alg", "a2_preproj.alg"] {
        let path = corpus(name);
        let o = quivreg(&["check", path.to_str().unwrap(), "--truncate", "6"]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stdout(&o).contains("REFUTED"), "{name}");
    }
}

#[test]
fn exhausted_window_is_inconclusive() {
    // cubic relations outrun a small truncation before the resolution closes
    let dir = tempdir();
    let file = dir.join("cubic.alg");
    std::fs::write(&file, "field Q\nvertices 1\narrow x 0 0 1\narrow y 0 0 1\nrelation x.x.y - y.x.x\nrelation x.y.y - y.y.x\n").unwrap();
    let o = quivreg(&["check", file.to_str().unwrap(), "--truncate", "4"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn hilbert_of_mckay_sums_to_twice_polynomial_ring() {
    let path = corpus("mckay.alg");
    let o = quivreg(&["hilbert", path.to_str().unwrap(), "--truncate", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let totals = out.lines().find_map(|l| l.trim().strip_prefix("total: ")).expect("totals line");
    let got: Vec<usize> = totals.split_whitespace().map(|t| t.parse().unwrap()).collect();
    let want: Vec<usize> = (0..=7).map(|d| 2 * (d + 1)).collect();
    assert_eq!(got, want);
}

#[test]
fn generated_presentation_reparses() {
    let o = quivreg(&["gen", "preprojective", "--quiver", "kronecker2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let p = quivreg_core::presentation::parse(&text).expect("reparse");
    assert_eq!(p.quiver().arrows().len(), 4);
    assert_eq!(p.relations().len(), 2);
    assert_eq!(text, std::fs::read_to_string(corpus("kron_preproj.alg")).unwrap());
}

#[test]
fn resolve_prints_koszul_betti_numbers() {
    let path = corpus("kxy.alg");
    let dir = tempdir();
    let json = dir.join("resolve.json");
    let o = quivreg(&["resolve", path.to_str().unwrap(), "--maxstep", "4", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let steps = v["betti"]["rows"][0]["steps"].as_array().unwrap();
    let totals: Vec<u64> = steps
        .iter()
        .map(|s| s["entries"].as_array().unwrap().iter().map(|e| e["count"].as_u64().unwrap()).sum())
        .collect();
    assert_eq!(totals, vec![1, 2, 1, 0, 0]);
}

#[test]
fn json_report_and_field_override() {
    let path = corpus("mckay.alg");
    let dir = tempdir();
    let json = dir.join("check.json");
    let o = quivreg(&["check", path.to_str().unwrap(), "--truncate", "5", "--field", "F7", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"]["dimension"], 2);
    assert_eq!(v["verdict"]["nakayama"]["permutation"], serde_json::json!([1, 0]));
    assert!(v["presentation"].as_str().unwrap().starts_with("field F7"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempdir();
    let file = dir.join("bad.alg");
    std::fs::write(&file, "field Q\nvertices 1\narrow x 0 0 1\narrow y 0 0 2\nrelation x.x - y\nrelation x.x - y.x\n").unwrap();
    let o = quivreg(&["check", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = quivreg(&["check", "/nonexistent/file.alg"]);
    assert_eq!(o.status.code(), Some(1));
}

fn tempdir() -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);
    let d = std::env::temp_dir().join(format!("quivreg-cli-{}-{}", std::process::id(), N.fetch_add(1, Ordering::Relaxed)));
    std::fs::create_dir_all(&d).unwrap();
    d
}
