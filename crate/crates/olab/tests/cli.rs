use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tree_core::TreeFile;

fn olab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_olab")).args(args).output().expect("olab runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn gen_tree_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.json");
    let o = olab(&["gen", "tree", "--d", "3", "3", "--radius", "3", "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let f = TreeFile::from_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let t = f.to_semiregular().unwrap();
    assert_eq!(TreeFile::from_tree(&t), f);
    assert_eq!(t.len(), 1 + 3 + 6 + 12);
}

#[test]
fn gen_building_passes_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.json");
    let o = olab(&["gen", "building", "--thickness", "3", "3", "--building-depth", "3", "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let f: buildings::BuildingFile = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(f.tree.edges.len(), f.chambers.len() + f.residues.len() - 1);
    assert!(f.residues.values().all(|r| r.block < 2));
}

#[test]
fn thickness_two_is_a_config_error() {
    let o = olab(&["gen", "building", "--thickness", "2", "3", "--building-depth", "1"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&olab(&["verify", "nonsense"])), 2);
    assert_eq!(code(&olab(&["verify", "ipk", "--d", "1", "3"])), 2);
}

#[test]
fn factorization_plus_on_full_aut() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.json");
    let c = dir.path().join("f.csv");
    let o = olab(&[
        "verify", "factorization", "--group", "full-aut", "--d", "3", "3", "--radius", "4", "--family", "sq", "--q", "0", "--depth", "1",
        "--plus", "--out", p.to_str().unwrap(), "--csv", c.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let r = report(&p);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["pass"], true);
    assert_eq!(r["config"]["command"]["Verify"]["family"]["q"], 0);
    assert!(std::fs::read_to_string(&c).unwrap().starts_with("u,v,witness"));
}

#[test]
fn factorization_fails_at_depth_one_for_sfull() {
    let o = olab(&["verify", "factorization", "--family", "sfull", "--depth", "1", "--plus"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["result"]["cond1_pass"], false);
}

#[test]
fn hypothesis_on_sfull() {
    assert_eq!(code(&olab(&["verify", "hypothesis", "--family", "sfull", "--radius", "4"])), 0);
}

#[test]
fn ipk_on_coupled_group_fails_with_witness() {
    let o = olab(&["verify", "ipk", "--k", "1", "--radius", "4", "--coupled"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let bad = r["result"]["identities"].as_array().unwrap().iter().find(|x| x["holds"] == false).unwrap();
    assert!(!bad["witness"].as_array().unwrap().is_empty());
    assert_eq!(code(&olab(&["verify", "ipk", "--k", "1", "--radius", "4"])), 0);
}

#[test]
fn building_checks() {
    let b = ["--thickness", "3", "3", "--building-depth", "3", "--group", "universal"];
    let run = |extra: &[&str]| code(&olab(&[&["verify"], extra, &b].concat()));
    assert_eq!(run(&["delta2t", "--check-radius", "3"]), 0);
    assert_eq!(run(&["delta2t", "--check-radius", "2", "--local", "cyc"]), 1);
    assert_eq!(run(&["delta2t", "--check-radius", "4"]), 3);
    assert_eq!(run(&["ipv1", "--check-radius", "3"]), 0);
    assert_eq!(run(&["ipv1", "--check-radius", "3", "--coupled"]), 1);
    assert_eq!(run(&["hypothesis", "--family", "sv1", "--window", "5"]), 0);
}

#[test]
fn reps_counts() {
    let o = olab(&["reps", "--seed-subtree", "ball:base:1", "--family", "sq", "--q", "0", "--radius", "4"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["result"]["count"], 1);
    assert_eq!(r["result"]["aut_order"], 6);

    let o = olab(&["reps", "--seed-subtree", "edge:0,1:0", "--family", "sq", "--q", "0", "--radius", "4"]);
    assert_eq!(code(&o), 2);

    let o = olab(&["reps", "--thickness", "3", "3", "--building-depth", "2", "--group", "universal", "--chamber", "0", "--family", "sv1"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["result"]["correspondence"].as_str().unwrap().contains("B_T(0,2)"));
    assert_eq!(r["result"]["count"], 1);
}

#[test]
fn group_capacity_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_olab"))
        .args(["reps", "--seed-subtree", "ball:base:1", "--family", "sq", "--q", "0", "--radius", "4"])
        .env("OLAB_MAX_GROUP_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_olab")).args(["verify", "hypothesis"]).env("OLAB_MAX_GROUP_ORDER", "lots").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "factorization", "--family", "sq", "--q", "0", "--depth", "2", "--plus", "--budget", "5", "--seed", "7"];
    let mut outs = Vec::new();
    let p = dir.path().join("r.json");
    let c = dir.path().join("r.csv");
    for _ in 0..2 {
        let o = olab(&[&args[..], &["--out", p.to_str().unwrap(), "--csv", c.to_str().unwrap()]].concat());
        assert_eq!(code(&o), 0);
        outs.push((std::fs::read(&p).unwrap(), std::fs::read(&c).unwrap()));
    }
    assert_eq!(outs[0], outs[1]);
    let s = &report(&p)["result"]["sampling"];
    let used = s["used"].as_u64().unwrap();
    assert!(used >= 5 && used < s["total"].as_u64().unwrap(), "{s}");
}
