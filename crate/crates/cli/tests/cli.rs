use std::path::PathBuf;
use std::process::Command;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name).to_string_lossy().into_owned()
}

fn conehom(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_conehom")).args(args).env_remove("WORKBENCH_TRUNCATE").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn temp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("conehom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn ucf_on_doubling_is_exact() {
    let report = temp("ucf.json");
    let (code, out, _) = conehom(&["ucf-verify", &corpus("valid/doubling.json"), "--coeff", &corpus("valid/integers.json"), "--all-degrees", "--report", &report]);
    assert_eq!(code, 0);
    assert!(out.contains("degree 0: Z/2 → Z/2 → 0  pass"), "{out}");
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["pass"], true);
    assert_eq!(r["degrees"][1]["chi_bar"], serde_json::json!([["1"]]));
}

#[test]
fn lim1_of_doubling_tower() {
    let (code, out, _) = conehom(&["tower", "lim1", &corpus("valid/times_two.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("Nonzero"));
    let (code, out, _) = conehom(&["tower", "lim", &corpus("valid/times_two.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "lim = 0");
}

#[test]
fn malformed_corpus_exits_with_two() {
    let dir = PathBuf::from(corpus("malformed"));
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(files.len() >= 20);
    let (complex, coeff) = (corpus("valid/doubling.json"), corpus("valid/integers.json"));
    for f in files {
        let p = f.to_string_lossy().into_owned();
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        let args: Vec<&str> = match name.split('_').next().unwrap() {
            "complex" => vec!["cohomology", &p, "--degree", "0"],
            "coeff" => vec!["ucf-verify", &complex, "--coeff", &p],
            "tower" => vec!["tower", "lim1", &p],
            "facets" => vec!["simplicial", "import", &p],
            "system" => vec!["system", "verify", "--lemma2", &p, "--coeff", &coeff],
            other => panic!("unsorted corpus entry {other}"),
        };
        let (code, _, err) = conehom(&args);
        assert_eq!(code, 2, "{name}: {err}");
        assert!(err.contains(&name), "{name}: diagnostic does not name the file: {err}");
    }
}

#[test]
fn diagnostics_point_at_the_field() {
    let (_, _, err) = conehom(&["cohomology", &corpus("malformed/complex_wrong_type.json"), "--degree", "0"]);
    assert!(err.contains("groups[0].free_rank") && err.contains("line 1"), "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(conehom(&["ucf-verify"]).0, 2);
    assert_eq!(conehom(&["cohomology", "/nonexistent/complex.json", "--degree", "0"]).0, 2);
    assert_eq!(conehom(&["system", "verify", &corpus("valid/circle_degree_two.json"), "--coeff", &corpus("valid/integers.json")]).0, 2);
    assert_eq!(conehom(&["--help"]).0, 0);
}

#[test]
fn classical_compare_needs_free_complex() {
    let c = temp("torsion.json");
    std::fs::write(&c, r#"{"lo": 0, "groups": [{"free_rank": 0, "torsion": [4]}], "differentials": []}"#).unwrap();
    assert_eq!(conehom(&["classical-compare", &c, "--coeff", &corpus("valid/integers.json")]).0, 2);
    let (code, out, _) = conehom(&["classical-compare", &corpus("valid/doubling.json"), "--coeff", &corpus("valid/z_plus_z4.json")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn projective_plane_through_the_cli() {
    let c = temp("rp2.json");
    let (code, _, _) = conehom(&["simplicial", "import", &corpus("valid/projective_plane.json"), "--out", &c]);
    assert_eq!(code, 0);
    let (code, out, _) = conehom(&["cone-homology", &c, "--coeff", &corpus("valid/integers.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("H̄_1 = Z/2") && out.contains("H̄_2 = 0"), "{out}");
    let (_, out, _) = conehom(&["cohomology", &c, "--degree", "2"]);
    assert_eq!(out.trim(), "H^2 = Z/2");
}

#[test]
fn relative_cochains_of_disk() {
    let (code, out, _) = conehom(&["simplicial", "import", &corpus("valid/disk.json"), "--pair", &corpus("valid/triangle.json")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["groups"].as_array().unwrap().len(), 3);
    assert_eq!(v["groups"][2]["free_rank"], 1);
    assert_eq!(v["groups"][0]["free_rank"], 0);
}

#[test]
fn system_checks_on_circle() {
    let (s, z) = (corpus("valid/circle_degree_two.json"), corpus("valid/integers.json"));
    for check in ["--lemma2", "--cor2", "--lemma4", "--cor3", "--theorem3", "--milnor"] {
        let (code, out, err) = conehom(&["system", "verify", check, &s, "--coeff", &z, "--degree", "0"]);
        assert_eq!(code, 0, "{check}: {out}{err}");
    }
    let report = temp("milnor.json");
    conehom(&["system", "verify", "--milnor", &s, "--coeff", &z, "--degree", "0", "--report", &report]);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["result"]["lim1_next"]["verdict"], "Nonzero");
    assert_eq!(r["result"]["lim1_hom"]["evidence"]["kind"], "index-growth");
    // no colimit here, so the divisible-coefficient check has nothing to compare
    assert_eq!(conehom(&["system", "verify", "--cor5", &s, "--coeff", &corpus("valid/circle.json")]).0, 2);
}

#[test]
fn truncation_from_environment() {
    let report = temp("lemma2.json");
    let out = Command::new(env!("CARGO_BIN_EXE_conehom"))
        .args(["system", "verify", "--lemma2", &corpus("valid/circle_degree_two.json"), "--coeff", &corpus("valid/integers.json"), "--report", &report])
        .env("WORKBENCH_TRUNCATE", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["result"]["mode"]["truncated"], 3);
}

#[test]
fn sign_flip_system_and_divisible_coefficients() {
    let s = corpus("valid/doubling_sign_flip.json");
    let (code, _, _) = conehom(&["system", "verify", "--cor5", &s, "--coeff", &corpus("valid/circle.json")]);
    assert_eq!(code, 0);
    let report = temp("exact.json");
    conehom(&["system", "verify", "--lemma2", &s, "--coeff", &corpus("valid/integers.json"), "--report", &report]);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["result"]["mode"], "exact");
}

#[test]
fn naturality_under_tripling() {
    let (code, out, _) = conehom(&["naturality-verify", &corpus("valid/triple_on_doubling.json"), "--coeff", &corpus("valid/z_plus_z4.json")]);
    assert_eq!(code, 0, "{out}");
}
