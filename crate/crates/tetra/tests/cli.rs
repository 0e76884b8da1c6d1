use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::Command;
use tetra::forge::*;
use tetra::leibniz2::Leibniz2Algebra;
use tetra::ratmat::{kron_all, Mat, Rat};
use tetra::zte::from_central_leibniz;

fn tetra(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tetra")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, s) = tetra(args);
    (code, serde_json::from_str(&s).unwrap_or_else(|e| panic!("{e}: {s}")))
}

fn put(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let (a, e) = fix_a();
    let fa = put(dir.path(), "fixA.json", &a.to_leibniz2().to_json(Some(&e)));
    let (code, r) = report(&["check", "leibniz2", s(&fa), "--no-timing"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["passed"], json!(true));
    assert_eq!(r["command"], json!("check"));
    assert_eq!(r["version"], json!(1));
    assert!(r.get("timing_ms").is_none());

    let flat = json!({"dim": 2, "bracket": a.bracket.to_json(), "central": ["0", "1"]});
    let ff = put(dir.path(), "flat.json", &flat);
    assert_eq!(tetra(&["check", "flat-leibniz", s(&ff)]).0, 0);

    let fd = put(dir.path(), "fixD.json", &fix_d().to_json());
    assert_eq!(tetra(&["check", "rack2", s(&fd)]).0, 0);

    let (x, lhd) = fix_f();
    let rack = tetra::finrack::FinRack::strict(x, lhd);
    let ff = put(dir.path(), "fixF.json", &rack.to_json());
    let (code, r) = report(&["check", "finrack", s(&ff)]);
    assert_eq!(code, 0);
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tetra(&["check", "leibniz2", "/nonexistent/file.json"]).0, 2);
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    let (code, r) = report(&["verify-zte", s(&junk)]);
    assert_eq!(code, 2);
    assert!(r["error"].is_string());
    assert_eq!(tetra(&["frobnicate"]).0, 2);
    assert_eq!(tetra(&["forge", "sample", "--dims", "two"]).0, 2);
    assert_eq!(tetra(&["--help"]).0, 0);
    let wrong = put(dir.path(), "wrong.json", &json!({"dim": 2, "B": [["1"]]}));
    assert_eq!(tetra(&["verify-ybe", s(&wrong)]).0, 2);
}

#[test]
fn mutated_jacobiator_fails_z5() {
    let dir = tempfile::tempdir().unwrap();
    let (l, e) = fix_e();
    let good = from_central_leibniz(&l, &e).unwrap().to_json();
    let fg = put(dir.path(), "good.json", &good);
    assert_eq!(tetra(&["verify-zte", s(&fg)]).0, 0);

    // perturb one Jacobiator entry so the pentagon fails, and carry it into
    // Y = ι_e ⊗ ι_e ⊗ J by hand
    let mutated = (0..8)
        .map(|k| {
            let mut l3 = l.l3.to_dense();
            l3[0][k] = &l3[0][k] + &Rat::one();
            Leibniz2Algebra { l3: Mat::from_rows(l3).unwrap(), ..l.clone() }
        })
        .find(|m| !tetra::leibniz2::check_leibniz2(m).passed())
        .unwrap();
    let ec = Mat::col_vector(&e);
    let delta = &mutated.l3 - &l.l3;
    let v = l.space();
    let blk = &kron_all(&[&ec, &ec, &Mat::identity(v.dim_arr())]) * &delta;
    let y = &Mat::from_json(&good["y"], v.arr_dim(3), v.obj_dim(3)).unwrap()
        + &Mat::embed(v.arr_dim(3), v.obj_dim(3), 2 * v.slot_dim(3), 0, &blk);
    let mut bad = good.clone();
    bad["y"] = y.to_json();
    let fb = put(dir.path(), "bad.json", &bad);
    let (code, r) = report(&["verify-zte", s(&fb)]);
    assert_eq!(code, 1);
    assert_eq!(r["flags"]["z5_equal"], json!(false));
    assert_eq!(r["flags"]["z1_invertible"], json!(true));
    let v = r["violations"].as_array().unwrap();
    assert!(v.iter().any(|x| x["flag"] == json!("z5_equal") && x["tuple"].as_array().unwrap().len() == 4));

    // the algebra itself is rejected before building
    let fl = put(dir.path(), "badl.json", &mutated.to_json(Some(&e)));
    assert_eq!(tetra(&["build-zte", "--from", "leibniz2", s(&fl)]).0, 1);
    assert_eq!(tetra(&["check", "leibniz2", s(&fl)]).0, 1);
}

#[test]
fn build_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (c, e) = fix_c();
    let fc = put(dir.path(), "fixC.json", &c.to_json(Some(&e)));
    let out = dir.path().join("sol.json");
    assert_eq!(tetra(&["build-zte", "--from", "leibniz2", s(&fc), "--out", s(&out)]).0, 0);
    assert_eq!(tetra(&["verify-zte", s(&out)]).0, 0);

    let (code, r) = report(&["decat", "--from", "leibniz2", s(&fc), "--square"]);
    assert_eq!(code, 0, "{r}");
    let n = r["dim"].as_u64().unwrap() as usize;
    assert_eq!(r["Bbar"].as_array().unwrap().len(), n * n);
    let ybe = put(dir.path(), "ybe.json", &json!({"dim": n, "B": r["Bbar"]}));
    assert_eq!(tetra(&["verify-ybe", s(&ybe)]).0, 0);

    let fd = put(dir.path(), "fixD.json", &fix_d().to_json());
    let (code, r) = report(&["decat", "--from", "rack2", s(&fd), "--square"]);
    assert_eq!(code, 0, "{r}");
    let fr = put(dir.path(), "flat_rack.json", &r["flat_rack"]);
    assert_eq!(tetra(&["check", "flat-rack", s(&fr)]).0, 0);
}

#[test]
fn split_reports() {
    let dir = tempfile::tempdir().unwrap();
    let smp = sample_splittable(1, (3, 1), 3, true).unwrap();
    let mut v = smp.algebra.to_json(Some(&smp.central));
    v["sigma0"] = smp.sigma0.to_json();
    let f = put(dir.path(), "split.json", &v);
    let (code, r) = report(&["split", s(&f)]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["flags"]["homomorphism"], json!(true));
    assert_eq!(r["leibniz_section"], json!(true));
    assert!(r["rack"].is_object());

    // U = 𝕂², W = 𝕂, d = (1,0)ᵀ, e = (1,0): every section has c ≠ 0
    let space = tetra::twovec::TwoVec::new(Mat::from_i64(&[&[1], &[0]]));
    let l = Leibniz2Algebra::new(tetra::leibniz2::BilinearOp::zero(&space), Mat::zeros(1, 8)).unwrap();
    let mut v = l.to_json(Some(&[Rat::one(), Rat::zero()]));
    v["sigma0"] = json!([["0"], ["1"]]);
    let f = put(dir.path(), "imd.json", &v);
    let (code, r) = report(&["split", s(&f)]);
    assert_eq!(code, 1);
    assert_eq!(r["c"], json!([["-1"]]));
    assert!(r.get("rack").is_none());
}

#[test]
fn finite_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g2 = dir.path().join("g2.json");
    let (code, r) = report(&["finrack", "build-2group", "--out", s(&g2)]);
    assert_eq!(code, 0, "{r}");
    let out = dir.path().join("rack.json");
    assert_eq!(tetra(&["finrack", "conjugation", s(&g2), "--out", s(&out)]).0, 0);
    assert_eq!(tetra(&["finrack", "check", s(&out)]).0, 0);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v["lhd"]["morphisms"].as_array_mut().unwrap();
    let other = rows[1][2].clone();
    rows[40][2] = other;
    let mutated = put(dir.path(), "mutated.json", &v);
    let (code, r) = report(&["finrack", "check", s(&mutated)]);
    assert_eq!(code, 1);
    assert!(!r["violations"].as_array().unwrap().is_empty());

    let nonabelian = json!({
        "G": {"elements": ["1"], "table": [["1"]]},
        "H": {"elements": ["e", "a", "b", "c", "d", "f"], "table": [
            ["e","a","b","c","d","f"], ["a","e","d","f","b","c"], ["b","f","e","d","c","a"],
            ["c","d","f","e","a","b"], ["d","c","a","b","f","e"], ["f","b","c","a","e","d"]]},
        "boundary": {"e": "1", "a": "1", "b": "1", "c": "1", "d": "1", "f": "1"},
        "action": {"1": {"e": "e", "a": "a", "b": "b", "c": "c", "d": "d", "f": "f"}}
    });
    let f = put(dir.path(), "s3.json", &nonabelian);
    let (code, r) = report(&["finrack", "build-2group", s(&f)]);
    assert_eq!(code, 1, "{r}");
    assert_eq!(r["flags"]["crossed_peiffer"], json!(false));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (kind, dims) in [("leibniz2", "3,2"), ("rack2", "3,1")] {
        let (c1, s1) = tetra(&["forge", "sample", "--kind", kind, "--dims", dims, "--seed", "7", "--out", s(&a), "--no-timing"]);
        let (c2, _) = tetra(&["forge", "sample", "--kind", kind, "--dims", dims, "--seed", "7", "--out", s(&b), "--no-timing"]);
        assert_eq!((c1, c2), (0, 0), "{s1}");
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        let from = if kind == "leibniz2" { "leibniz2" } else { "rack2" };
        let r1 = tetra(&["build-zte", "--from", from, s(&a), "--no-timing"]);
        let r2 = tetra(&["build-zte", "--from", from, s(&b), "--no-timing"]);
        assert_eq!(r1.0, 0);
        assert_eq!(r1.1, r2.1);
        assert!(r1.1.contains("\"/") || r1.1.contains("\"0\"") || r1.1.contains("\"1\""));
    }
    let (_, r) = report(&["forge", "sample", "--kind", "rack2", "--dims", "0,1"]);
    assert_eq!(r["passed"], json!(false));
}

#[test]
fn in_process_runner_matches_binary() {
    let (code, out) = tetra::cli::run(["tetra", "finrack", "build-2group", "--no-timing"]);
    assert_eq!(code, 0);
    assert_eq!(out, tetra(&["finrack", "build-2group", "--no-timing"]).1);
}
