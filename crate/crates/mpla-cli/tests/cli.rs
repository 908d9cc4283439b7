use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use mpla::exact_linalg::kernel_basis;
use mpla::matched_pair::fixtures::{mpa, valid_suite};
use mpla::mp_cohomology::{mpl_matrix, MPCochain};
use mpla::mp_rep::MPRepresentation;
use num_traits::Zero;
use serde_json::{json, Value};
use tempfile::TempDir;

/// g abelian of dim 2, ρ_{e0} h = h, ψ_h = id: the ψ compatibility fails at (e0, e1).
const BAD: &str = r#"{"g": {"dim": 2}, "h": {"dim": 1}, "rho": [[0,0,0,"1"]], "psi": [[0,0,0,"1"],[0,1,1,"1"]]}"#;

const MPA: &str = r#"{"g": {"dim": 1}, "h": {"dim": 1}, "rho": [[0, 0, 0, "1"]]}"#;

fn mpla(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpla")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn setup() -> TempDir {
    let d = TempDir::new().unwrap();
    write(d.path(), "mpa.json", MPA);
    d
}

#[test]
fn validate_mpa() {
    let d = setup();
    let o = mpla(&["validate", "mpa.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("matched pair: VALID (6/6 axiom groups)\n"));
}

#[test]
fn invalid_pair_exits_one_with_witnesses() {
    let d = setup();
    write(d.path(), "bad.json", BAD);
    let o = mpla(&["validate", "bad.json"], d.path());
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(out.starts_with("matched pair: INVALID"));
    assert!(out.contains("failed at"));
    let o = mpla(&["validate", "bad.json", "--format", "json"], d.path());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], json!(false));
}

#[test]
fn malformed_input_exits_two_naming_the_field() {
    let d = setup();
    write(d.path(), "bad.json", r#"{"g": {"dim": 1}, "h": {"dim": 1}, "rho": [[0, 3, 0, "1"]]}"#);
    let o = mpla(&["validate", "bad.json"], d.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.json") && err.contains("$.rho[0][1]"), "{err}");

    write(d.path(), "junk.json", "{not json");
    assert_eq!(mpla(&["validate", "junk.json"], d.path()).status.code(), Some(2));
    assert_eq!(mpla(&["validate", "missing.json"], d.path()).status.code(), Some(2));
    assert_eq!(mpla(&["frobnicate", "mpa.json"], d.path()).status.code(), Some(2));
}

#[test]
fn cohomology_table() {
    let d = setup();
    let o = mpla(&["cohomology", "mpa.json", "--max-degree", "3", "--format", "json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    assert_eq!(table[0]["degree"], json!(0));
    assert_eq!(table[0]["cochain_dim"], json!(2));
    let text = stdout(&mpla(&["cohomology", "mpa.json"], d.path()));
    assert_eq!(text.lines().count(), 2 + 5);
}

#[test]
fn bicross_then_validate_as_lie() {
    let d = setup();
    let o = mpla(&["bicross", "mpa.json", "-o", "out.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&d.path().join("out.json"));
    assert_eq!(v["dim"], json!(2));
    assert_eq!(mpla(&["validate", "out.json", "--as", "lie"], d.path()).status.code(), Some(0));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mpla"))
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(MPA.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("matched pair: VALID"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let d = setup();
    let big = valid_suite().into_iter().max_by_key(|mp| mp.g.dim + mp.h.dim).unwrap();
    write(d.path(), "big.json", &serde_json::to_string(&big.to_json()).unwrap());
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_mpla"))
            .args(["cohomology", "big.json", "--max-degree", "3", "--format", "json"])
            .env("MPLA_THREADS", threads)
            .current_dir(d.path())
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn mc_check_agrees_with_validate() {
    let d = setup();
    let o = mpla(&["mc-check", "mpa.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    write(d.path(), "bad.json", BAD);
    assert_eq!(mpla(&["mc-check", "bad.json"], d.path()).status.code(), Some(1));
}

/// A nonzero closed 2-cochain of the mpa fixture with adjoint coefficients.
fn mpa_cocycle() -> MPCochain {
    let rep = MPRepresentation::adjoint(&mpa());
    let v = kernel_basis(&mpl_matrix(&rep, 2)).remove(0);
    MPCochain::unflatten([1, 1, 1, 1], 2, &v).unwrap()
}

#[test]
fn extend_then_extract_reproduces_the_cocycle() {
    let d = setup();
    let c = mpa_cocycle();
    write(d.path(), "cocycle.json", &serde_json::to_string_pretty(&c.to_json()).unwrap());
    let o = mpla(&["extend", "mpa.json", "cocycle.json", "-o", "ext.json"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(mpla(&["validate", "ext.json", "--as", "extension"], d.path()).status.code(), Some(0));
    let o = mpla(&["extract-cocycle", "ext.json", "-o", "back.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&d.path().join("back.json")), read_json(&d.path().join("cocycle.json")));
}

#[test]
fn extend_rejects_a_non_cocycle() {
    let d = setup();
    let (mp, j) = valid_suite()
        .into_iter()
        .find_map(|mp| {
            let m = mpl_matrix(&MPRepresentation::adjoint(&mp), 2);
            (0..m.cols).find(|&j| m.column(j).iter().any(|x| !x.is_zero())).map(|j| (mp, j))
        })
        .unwrap();
    let (m, n) = mp.dims();
    let c = MPCochain::basis_element([m, n, m, n], 2, j);
    write(d.path(), "mp.json", &mp.to_json().to_string());
    write(d.path(), "c.json", &c.to_json().to_string());
    let o = mpla(&["extend", "mp.json", "c.json"], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not a cocycle"));
}

#[test]
fn deformation_commands() {
    let d = setup();
    // rescaling the action: rho1 = rho
    write(d.path(), "d1.json", r#"{"rho1": [[0,0,0,"1"]]}"#);
    write(d.path(), "d0.json", "{}");
    let o = mpla(&["deform-check", "mpa.json", "d1.json"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mpla(&["deform-check", "mpa.json", "d1.json", "--format", "json"], d.path());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["routes_agree"], json!(true));
    write(d.path(), "id_g.json", r#"{"f": [["1"]], "g": [["0"]]}"#);
    write(d.path(), "id_h.json", r#"{"f": [["0"]], "g": [["1"]]}"#);
    assert_eq!(mpla(&["deform-equiv", "mpa.json", "d1.json", "d0.json", "id_g.json"], d.path()).status.code(), Some(0));
    assert_eq!(mpla(&["deform-equiv", "mpa.json", "d1.json", "d0.json", "id_h.json"], d.path()).status.code(), Some(1));
}

#[test]
fn representation_commands() {
    let d = setup();
    assert_eq!(mpla(&["validate", "mpa.json", "--coefficients", "coadjoint"], d.path()).status.code(), Some(0));
    let o = mpla(&["dual", "mpa.json", "-o", "dual.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        mpla(&["validate", "mpa.json", "--coefficients", "dual.json"], d.path()).status.code(),
        Some(0)
    );
    assert_eq!(mpla(&["cohomology", "mpa.json", "--coefficients", "dual.json"], d.path()).status.code(), Some(0));
    let o = mpla(&["semidirect", "mpa.json", "--coefficients", "dual.json", "-o", "sd.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&d.path().join("sd.json"))["g"]["dim"], json!(2));
    assert_eq!(mpla(&["validate", "sd.json"], d.path()).status.code(), Some(0));

    // whatever the verdict on this candidate, semidirect must agree with it
    write(d.path(), "bad_rep.json", r#"{"dims": [1, 1], "rho_V": [[0,0,0,"1"]], "rho_W": [[0,0,0,"2"]]}"#);
    let o = mpla(&["validate", "mpa.json", "--coefficients", "bad_rep.json"], d.path());
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let verdict = o.status.code() == Some(0);
    let sd = mpla(&["semidirect", "mpa.json", "--coefficients", "bad_rep.json", "-o", "sd2.json"], d.path());
    assert_eq!(sd.status.code() == Some(0), verdict);
}

#[test]
fn lie_rep_validation() {
    let d = setup();
    write(
        d.path(),
        "rep.json",
        r#"{"algebra": {"dim": 2, "bracket": [[0,1,1,"1"]]}, "representation": {"space_dim": 1, "action": [[0,0,0,"1"]]}}"#,
    );
    assert_eq!(mpla(&["validate", "rep.json", "--as", "lie-rep"], d.path()).status.code(), Some(0));
    write(
        d.path(),
        "bad.json",
        r#"{"algebra": {"dim": 2, "bracket": [[0,1,1,"1"]]}, "representation": {"space_dim": 1, "action": [[1,0,0,"1"]]}}"#,
    );
    assert_eq!(mpla(&["validate", "bad.json", "--as", "lie-rep"], d.path()).status.code(), Some(1));
}

#[test]
fn rota_baxter_and_bialgebra() {
    let d = setup();
    let aff = r#"{"dim": 2, "bracket": [[0,1,1,"1"]]}"#;
    write(d.path(), "rb.json", &format!(r#"{{"algebra": {aff}, "R": [["-1","0"],["0","-1"]]}}"#));
    let o = mpla(&["rota-baxter", "rb.json", "-o", "rbmp.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(mpla(&["validate", "rbmp.json"], d.path()).status.code(), Some(0));
    // R = id is not of weight 1 on a non-abelian algebra
    write(d.path(), "rb_bad.json", &format!(r#"{{"algebra": {aff}, "R": [["1","0"],["0","1"]]}}"#));
    assert_eq!(mpla(&["rota-baxter", "rb_bad.json"], d.path()).status.code(), Some(1));

    write(d.path(), "bi.json", &format!(r#"{{"g": {aff}, "cobracket": [[1,0,1,"1"]]}}"#));
    assert_eq!(mpla(&["validate", "bi.json", "--as", "bialgebra"], d.path()).status.code(), Some(0));
    let o = mpla(&["bialgebra", "bi.json", "-o", "bimp.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(mpla(&["validate", "bimp.json"], d.path()).status.code(), Some(0));
}

#[test]
fn skeletal_roundtrip_through_files() {
    let d = setup();
    let t = json!({
        "matched_pair": serde_json::from_str::<Value>(MPA).unwrap(),
        "representation": MPRepresentation::adjoint(&mpa()).to_json(),
        "cocycle": MPCochain::zero([1, 1, 1, 1], 3).to_json(),
    });
    write(d.path(), "triple.json", &t.to_string());
    let o = mpla(&["skeletal-correspond", "triple.json", "-o", "skel.json"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mpla(&["skeletal-validate", "skel.json"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mpla(&["skeletal-correspond", "skel.json", "-o", "back.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let back = read_json(&d.path().join("back.json"));
    let again = mpla(&["skeletal-correspond", "back.json", "-o", "skel2.json"], d.path());
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(read_json(&d.path().join("skel.json")), read_json(&d.path().join("skel2.json")));
    assert_eq!(back["cocycle"]["degree"], json!(3));

    // the two-term algebra G alone
    let skel = read_json(&d.path().join("skel.json"));
    write(d.path(), "G.json", &skel["G"].to_string());
    assert_eq!(mpla(&["skeletal-validate", "G.json"], d.path()).status.code(), Some(0));
    assert_eq!(mpla(&["validate", "G.json", "--as", "two-term"], d.path()).status.code(), Some(0));
}

#[test]
fn report_to_file() {
    let d = setup();
    let o = mpla(&["validate", "mpa.json", "--format", "json", "-o", "report.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(read_json(&d.path().join("report.json"))["valid"], json!(true));
}
