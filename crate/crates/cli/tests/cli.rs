use std::io::Write;
use std::process::{Command, Output, Stdio};

fn skein(args: &[&str], stdin: &str) -> Output {
    skein_env(args, stdin, None)
}

fn skein_env(args: &[&str], stdin: &str, seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_skein"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("SKEIN_SEED");
    if let Some(s) = seed {
        cmd.env("SKEIN_SEED", s);
    }
    let mut child = cmd.spawn().unwrap();
    // commands that never read stdin may exit before the write
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const UNKNOT: &str = r#"{"version":1,"n":3,"surface":{"ideal_points":0},"nodes":[],"arcs":[],"loops":1}"#;
const EMPTY: &str = r#"{"version":1,"n":2,"surface":{"ideal_points":0},"nodes":[],"arcs":[]}"#;
const ARC: &str = r#"{"version":1,"n":2,"surface":{"ideal_points":2},
  "nodes":[{"kind":"endpoint","edge":0,"height":1,"state":1,"dir":"out"},{"kind":"endpoint","edge":1,"height":1,"state":2,"dir":"in"}],
  "arcs":[{"from":[0,0],"to":[1,0]}]}"#;

#[test]
fn eval_examples() {
    let o = skein(&["eval", "--n", "2", "-i", "-"], UNKNOT);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "-v^4 - v^-4\n"));
    assert_eq!(stdout(&skein(&["eval"], EMPTY)), "1\n");
    assert_eq!(stdout(&skein(&["eval", "--n", "2", "--braid", "1"], "")), "v^10 + v^2\n");
    assert_eq!(stdout(&skein(&["eval", "--n", "2", "--braid", "-1"], "")), "v^-2 + v^-10\n");
    assert_eq!(stdout(&skein(&["eval", "--n", "2", "--spec", "root:4"], UNKNOT)), "-2\n");
}

#[test]
fn value_commands_print_bare_values() {
    assert_eq!(stdout(&skein(&["oq", "det", "--n", "2"], "")), "u[1,1]*u[2,2] - q*u[1,2]*u[2,1]\n");
    assert_eq!(stdout(&skein(&["oq", "normal-form", "--n", "2", "u[2,1]*u[1,1]"], "")), "q^-1*u[1,1]*u[2,1]\n");
    let trefoil = stdout(&skein(&["rmatrix", "statesum", "--n", "2", "--braid", "1,1,1"], ""));
    assert_eq!(trefoil, stdout(&skein(&["eval", "--n", "2", "--braid", "1,1,1"], "")));
}

#[test]
fn json_commands() {
    assert_eq!(stdout(&skein(&["rmatrix", "ybe", "--n", "3"], "")), "{\"ybe\": true}\n");
    assert_eq!(
        stdout(&skein(&["constants", "--n", "2"], "")),
        "{\"a\": \"v^-5\", \"c\": [\"-v^5\", \"v\"], \"n\": 2, \"qint\": \"v^4 + v^-4\", \"t\": \"-v^6\"}\n"
    );
    let h = stdout(&skein(&["rmatrix", "hecke", "--n", "2"], ""));
    assert!(h.contains("\"hecke\": true"), "{h}");
    assert_eq!(stdout(&skein(&["oq", "equal", "--n", "2", "u[1,1]*u[2,2] - q*u[1,2]*u[2,1]", "1"], "")), "{\"equal\": true}\n");
    let pretty = stdout(&skein(&["constants", "--n", "2", "--pretty"], ""));
    assert!(pretty.contains("t: -v^6"), "{pretty}");
}

#[test]
fn split_tags_both_surfaces() {
    let o = skein(&["split", "--arc", "0-1", "--read-oq"], ARC);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v["surfaces"].as_array().unwrap().iter().map(|s| s["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["right:P2[0,1]", "left:P2[0,1]"]);
    for t in v["terms"].as_array().unwrap() {
        for id in &ids {
            assert!(t["diagrams"].get(*id).is_some());
        }
    }
    let hopf: serde_json::Value = serde_json::from_str(&stdout(&skein(&["oq", "hopf", "--n", "2", "u[1,2]"], ""))).unwrap();
    assert_eq!(v["oq"], hopf["delta"]);
    let theta: serde_json::Value = serde_json::from_str(&stdout(&skein(&["split", "--add-point", "1"], ARC))).unwrap();
    assert_eq!(theta["ideal_points"], 3);
}

#[test]
fn signmap_kinds() {
    let o = skein(&["signmap", "--kind", "psi", "--n", "2"], ARC);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["parameter"], "-v");
    assert_eq!(v["result"]["terms"][0]["coefficient"], "-1");
    let o = skein(&["signmap", "--kind", "phi_eps", "--n", "2", "--m", "2", "--eps-order", "4"], ARC);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&skein(&["signmap", "--kind", "phi_spin", "--n", "2"], ARC)), 0);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&skein(&["eval"], "{not json")), 1);
    assert_eq!(code(&skein(&["eval", "--mode", "sideways"], EMPTY)), 1);
    assert_eq!(code(&skein(&["frobnicate"], "")), 1);
    assert_eq!(code(&skein(&["--help"], "")), 0);
    // order 4 needs ε^6 = 1 when m = 3
    let o = skein(&["signmap", "--kind", "phi_eps", "--n", "6", "--m", "3", "--eps-order", "4"], ARC);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("precondition"));
    assert_eq!(code(&skein(&["eval", "--n", "2"], ARC)), 2);
    assert_eq!(code(&skein(&["signmap", "--kind", "psi", "--n", "3"], ARC)), 2);
    assert_eq!(code(&skein(&["split", "--arc", "0-5"], ARC)), 2);
    assert_eq!(code(&skein(&["verify", "--eps-orders", "3"], "")), 2);
}

#[test]
fn verify_report() {
    let o = skein(&["verify", "--n-max", "1"], "");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]));
    for c in v["checks"].as_array().unwrap() {
        for k in ["name", "parameters", "status", "elapsed", "artifacts"] {
            assert!(c.get(k).is_some(), "{k}");
        }
    }
    assert!(v["version"].as_str().unwrap().starts_with("skein-core"));
}

#[test]
fn verify_is_deterministic_and_seeded_from_the_environment() {
    let args = ["verify", "--n-max", "2", "--eps-orders", "1,2", "--seed", "3"];
    let a = skein(&args, "");
    let b = skein(&args, "");
    assert_eq!(a.stdout, b.stdout);
    let env = skein_env(&args, "", Some("11"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&env)).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(code(&skein_env(&args, "", Some("eleven"))), 1);
}

#[test]
fn injected_fault_fails_the_r_matrix_checks() {
    let o = skein(&["verify", "--n-max", "2", "--eps-orders", "1", "--inject-fault"], "");
    assert_eq!(code(&o), 3);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut failed: Vec<&str> =
        v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").map(|c| c["name"].as_str().unwrap()).collect();
    failed.dedup();
    assert_eq!(failed, ["c04-ybe", "c05-hecke", "c07-oracle"]);
}
