#[path = "../../core/tests/common/mod.rs"]
mod common;
mod support;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use conehom::cone::{verify_classical, verify_ker_xi, ConeComplex, InjectiveResolution};
use conehom::document::write;
use conehom::lattice::{FgAbGroup, FgMorphism};
use conehom::limits::*;
use conehom::qz::{is_isomorphism, QZGroup};
use conehom::simplicial::{cochain_of, SimplicialComplex};
use num_bigint::BigInt;
use rand::Rng;
use serde_json::Value;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conehom-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn ucf_exactness() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = rng(101);
    let coeffs: Vec<PathBuf> = coefficient_groups()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let p = scratch(&format!("coeff{i}.json"));
            std::fs::write(&p, write(g)).unwrap();
            p
        })
        .collect();
    let (complex, report) = (scratch("complex.json"), scratch("ucf.json"));
    let mut degrees = 0;
    for i in 0..200 {
        let lo = rng.gen_range(-2..=2);
        let c = random_complex(&mut rng, 4, 4, true, lo);
        std::fs::write(&complex, write(&c)).unwrap();
        for g in &coeffs {
            let args = ["conehom", "ucf-verify", complex.to_str().unwrap(), "--coeff", g.to_str().unwrap(), "--report", report.to_str().unwrap()];
            let out = conehom_cli::run(args);
            ensure(out.code == 0, || format!("complex {i}: exit {} {}{}", out.code, out.stdout, out.stderr))?;
            let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
            for d in r["degrees"].as_array().unwrap() {
                let ok = ["chi_bar_injective", "xi_bar_surjective", "middle_exact"].iter().all(|k| d[k] == true);
                ensure(ok, || format!("complex {i} degree {}: {d}", d["degree"]))?;
                degrees += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("200 complexes × 5 groups, {degrees} degrees exact"))
}

fn anchors() -> Result<String, String> {
    let z = FgAbGroup::free(1);
    let doubling = conehom::complex::CochainComplex::new(0, vec![z.clone(), z.clone()], vec![FgMorphism::scalar(&z, 2)]).unwrap();
    let cone = ConeComplex::from_fg(&doubling, &z).map_err(|e| e.to_string())?;
    let h0 = cone.homology(0).map_err(|e| e.to_string())?.group().canonical();
    let h1 = cone.homology(1).map_err(|e| e.to_string())?.group().canonical();
    ensure(h0 == QZGroup::from_fg(&FgAbGroup::cyclic(2)), || format!("doubling H̄0 = {h0}"))?;
    ensure(h1.is_zero(), || format!("doubling H̄1 = {h1}"))?;
    for n in -2..=3 {
        let c = conehom::complex::CochainComplex::new(n, vec![FgAbGroup::cyclic(4)], vec![]).unwrap();
        let cone = ConeComplex::from_fg(&c, &z).map_err(|e| e.to_string())?;
        let h = cone.homology(n - 1).map_err(|e| e.to_string())?.group().canonical();
        ensure(h == QZGroup::from_fg(&FgAbGroup::cyclic(4)), || format!("Z/4 in degree {n}: H̄{} = {h}", n - 1))?;
    }
    Ok("doubling gives Z/2, 0; Z/4 shifts down one degree".into())
}

fn divisible_coefficients() -> Result<String, String> {
    let mut rng = rng(103);
    for i in 0..50 {
        let c = random_complex(&mut rng, 4, 4, true, 0);
        for g in [QZGroup::rationals(1), QZGroup::circle(1)] {
            let cone = ConeComplex::new(&c, &InjectiveResolution::standard(&g)).map_err(|e| e.to_string())?;
            for n in cone.lo()..=cone.hi() {
                let xi = cone.ucf_maps(n).map_err(|e| e.to_string())?.xi_bar;
                ensure(is_isomorphism(&xi), || format!("complex {i}, G = {g}, degree {n}"))?;
            }
        }
    }
    Ok("50 complexes, ξ̄ iso for Q and Q/Z".into())
}

fn classical_comparison() -> Result<String, String> {
    let mut rng = rng(107);
    let groups = coefficient_groups();
    for i in 0..100 {
        let c = random_complex(&mut rng, 4, 4, false, 0);
        let g = &groups[i % groups.len()];
        let cone = ConeComplex::from_fg(&c, g).map_err(|e| e.to_string())?;
        for n in cone.lo()..=cone.hi() {
            let r = verify_classical(&cone, n).map_err(|e| e.to_string())?;
            ensure(r.alpha_star_iso && r.chi_triangle && r.xi_triangle && r.all_pass(), || format!("complex {i}, G = {g}, degree {n}: {r:?}"))?;
        }
    }
    Ok("100 free complexes, ᾱ* iso and both triangles commute".into())
}

fn ker_xi() -> Result<String, String> {
    let mut rng = rng(109);
    let groups = coefficient_groups();
    for i in 0..100 {
        let c = random_complex(&mut rng, 4, 4, true, 0);
        let g = &groups[i % groups.len()];
        let cone = ConeComplex::from_fg(&c, g).map_err(|e| e.to_string())?;
        for n in cone.lo()..=cone.hi() {
            let r = verify_ker_xi(&cone, n).map_err(|e| e.to_string())?;
            ensure(r.all_pass(), || format!("complex {i}, G = {g}, degree {n}: {r:?}"))?;
        }
    }
    Ok("100 instances".into())
}

fn lemma2() -> Result<String, String> {
    let mut rng = rng(113);
    let groups = coefficient_groups();
    for i in 0..20 {
        let s = eventually_iso_system(&mut rng);
        let res = InjectiveResolution::from_fg(&groups[i % groups.len()]);
        let r = verify_lemma2(&s, &res, SystemMode::Exact).map_err(|e| e.to_string())?;
        ensure(r.all_pass(), || format!("eventually-iso system {i}: {r:?}"))?;
    }
    let mut systems: Vec<_> = [2, 3, 5].into_iter().map(degree_p_circle_system).collect();
    while systems.len() < 20 {
        systems.push(non_stabilizing_system(&mut rng));
    }
    for (i, s) in systems.iter().enumerate() {
        let res = InjectiveResolution::from_fg(&groups[i % groups.len()]);
        let r = verify_lemma2(s, &res, SystemMode::Truncated(6)).map_err(|e| e.to_string())?;
        ensure(r.all_pass(), || format!("non-stabilizing system {i}: {r:?}"))?;
    }
    Ok("20 exact, 20 truncated at depth 6 (circles p = 2, 3, 5 included)".into())
}

fn derived_limits() -> Result<String, String> {
    let mut rng = rng(127);
    for i in 0..100 {
        let t = random_finite_tower(&mut rng);
        let cert = lim1_tower(&t);
        ensure(cert.verdict == Lim1Verdict::Zero && cert.recheck(t.as_qz()), || format!("tower {i}: {cert:?}"))?;
        let lim = lim_tower(&t).map_err(|e| e.to_string())?;
        let (stats, at_zero, _) = enumerated_limit(&t);
        let elements = lim.group.elements().ok_or("limit is infinite")?;
        ensure(lim.complete && order_statistics(&lim.group, &elements) == stats, || format!("tower {i}: lim = {}", lim.group))?;
        let projected: BTreeSet<Vec<BigInt>> = apply_set(&lim.projection(0), &elements.into_iter().collect());
        ensure(projected == at_zero, || format!("tower {i}: projection image differs"))?;
    }
    for p in [2, 3, 5] {
        let z = FgAbGroup::free(1);
        let t = TowerOfGroups::periodic(&z, &FgMorphism::scalar(&z, p)).unwrap();
        let lim = lim_tower(&t).map_err(|e| e.to_string())?;
        let cert = lim1_tower(&t);
        ensure(lim.group.is_zero(), || format!("×{p}: lim = {}", lim.group))?;
        ensure(cert.verdict == Lim1Verdict::Nonzero && cert.recheck(t.as_qz()), || format!("×{p}: {cert:?}"))?;
    }
    Ok("100 finite towers match enumeration; (Z, ×p) rechecked for p = 2, 3, 5".into())
}

fn limit_sequences() -> Result<String, String> {
    let mut rng = rng(131);
    let groups = coefficient_groups();
    let circle = InjectiveResolution::standard(&QZGroup::circle(1));
    for i in 0..40 {
        let eventually_iso = i >= 20;
        let s = if eventually_iso { eventually_iso_system(&mut rng) } else { surjective_system(&mut rng) };
        let res = InjectiveResolution::from_fg(&groups[i % groups.len()]);
        for n in 0..=1 {
            let t = verify_theorem3(&s, &res, n, 0).map_err(|e| e.to_string())?;
            ensure(t.all_pass(), || format!("system {i} degree {n}: {t:?}"))?;
            let m = verify_main_sequence(&s, &res, n).map_err(|e| e.to_string())?;
            ensure(m.exact(), || format!("system {i} degree {n}: {m:?}"))?;
            if eventually_iso {
                ensure((m.pi_injective, m.pi_surjective) == (Some(true), Some(true)), || format!("system {i} degree {n}: π not iso"))?;
                let c = verify_cor5(&s, &circle, n).map_err(|e| e.to_string())?;
                ensure(c.all_pass(), || format!("system {i} degree {n}: {c:?}"))?;
            }
        }
    }
    Ok("20 surjective + 20 eventually-iso systems, π iso, Q/Z collapse".into())
}

fn simplicial() -> Result<String, String> {
    let start = Instant::now();
    let z = FgAbGroup::free(1);
    let hbar = |k: &SimplicialComplex, n: i32| -> Result<QZGroup, String> {
        let cone = ConeComplex::from_fg(&cochain_of(k), &z).map_err(|e| e.to_string())?;
        Ok(cone.homology(n).map_err(|e| e.to_string())?.group().canonical())
    };
    let (s1, rp2) = (SimplicialComplex::triangle_circle(), SimplicialComplex::projective_plane());
    let zq = QZGroup::from_fg(&z);
    ensure(hbar(&s1, 0)? == zq && hbar(&s1, 1)? == zq, || "circle".into())?;
    let (h1, h2) = (hbar(&rp2, 1)?, hbar(&rp2, 2)?);
    ensure(h1 == QZGroup::from_fg(&FgAbGroup::cyclic(2)) && h2.is_zero(), || format!("RP²: H̄1 = {h1}, H̄2 = {h2}"))?;
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok("circle Z, Z; RP² Z/2, 0".into())
}

fn documents() -> Result<String, String> {
    let mut rng = rng(137);
    for i in 0..540 {
        support::random_round_trip(&mut rng, i).map_err(|e| format!("document {i}: {e}"))?;
    }
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let valid = |name: &str| corpus.join("valid").join(name).to_string_lossy().into_owned();
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_conehom")).args(args).env_remove("WORKBENCH_TRUNCATE").output().unwrap();
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus.join("malformed")).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for f in &files {
        let p = f.to_string_lossy().into_owned();
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        let (complex, coeff) = (valid("doubling.json"), valid("integers.json"));
        let args: Vec<&str> = match name.split('_').next().unwrap() {
            "complex" => vec!["cohomology", &p, "--degree", "0"],
            "coeff" => vec!["ucf-verify", &complex, "--coeff", &p],
            "tower" => vec!["tower", "lim1", &p],
            "facets" => vec!["simplicial", "import", &p],
            _ => vec!["system", "verify", "--lemma2", &p, "--coeff", &coeff],
        };
        let out = run(&args);
        let err = String::from_utf8_lossy(&out.stderr);
        ensure(out.status.code() == Some(2) && err.contains(&name), || format!("{name}: exit {:?}, {err}", out.status.code()))?;
    }
    ensure(run(&["ucf-verify", &valid("doubling.json"), "--coeff", &valid("integers.json")]).status.code() == Some(0), || "valid input".into())?;
    ensure(run(&["--help"]).status.code() == Some(0), || "--help".into())?;
    ensure(run(&["ucf-verify"]).status.code() == Some(2), || "missing arguments".into())?;
    ensure(run(&["cohomology", "/nonexistent/file.json"]).status.code() == Some(2), || "missing file".into())?;
    Ok(format!("540 round trips, {} malformed files exit 2", files.len()))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("UCF exactness over random complexes", ucf_exactness),
        ("anchor groups", anchors),
        ("ξ̄ iso for divisible coefficients", divisible_coefficients),
        ("classical comparison on free complexes", classical_comparison),
        ("kernel of ξ̄ sequence", ker_xi),
        ("colimit comparison, exact and truncated", lemma2),
        ("lim and lim¹ of towers", derived_limits),
        ("limit sequences for systems", limit_sequences),
        ("simplicial anchors", simplicial),
        ("document round trips and exit codes", documents),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let t = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({t:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({t:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
