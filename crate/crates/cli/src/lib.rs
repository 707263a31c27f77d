//! Command-line front end: reads JSON documents, runs the verifiers and
//! reports verdicts. Exit code 0 when every verdict passes, 1 when one fails,
//! 2 on malformed input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use conehom::complex::{CochainComplex, CochainMap, TowerOfComplexes};
use conehom::cone::{
    alpha_star, naturality_check, omega, sigma, verify_classical, verify_ker_xi, verify_ucf, ConeComplex, InjectiveResolution,
};
use conehom::document::{parse_json, read, to_json, write, Document};
use conehom::lattice::FgAbGroup;
use conehom::limits::{
    lim1_tower, lim_tower, verify_cor2, verify_cor3, verify_cor5, verify_lemma2, verify_lemma4, verify_main_sequence,
    verify_theorem3, SystemMode, TowerOfGroups,
};
use conehom::qz::QZGroup;
use conehom::simplicial::{cochain_of, cochain_of_pair, SimplicialComplex};
use conehom::Error;
use serde_json::{json, Value};

pub mod report;

pub const DEFAULT_TRUNCATION: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "conehom", version, about = "Verify homology generated by cochain complexes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Degrees {
    /// Degree to check; every degree of the support when omitted.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<i32>,
    /// Check every degree of the support.
    #[arg(long, conflicts_with = "degree")]
    all_degrees: bool,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the machine-readable report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hⁿ of a complex.
    Cohomology {
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i32,
        #[command(flatten)]
        out: Output,
    },
    /// H̄ₙ(C; G) from the cone.
    ConeHomology {
        complex: PathBuf,
        #[arg(long)]
        coeff: PathBuf,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// The universal coefficient sequence 0 → Ext → H̄ₙ → Hom → 0.
    UcfVerify {
        complex: PathBuf,
        #[arg(long)]
        coeff: PathBuf,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// H̄ₙ against the homology of Hom(C, G) for a free complex.
    ClassicalCompare {
        complex: PathBuf,
        #[arg(long)]
        coeff: PathBuf,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// Exactness of 0 → Hom(C^{n+1}/B, G′) → … → Ker ξ → 0.
    KerXiVerify {
        complex: PathBuf,
        #[arg(long)]
        coeff: PathBuf,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// Naturality of the sequences under a cochain map.
    NaturalityVerify {
        map: PathBuf,
        #[arg(long)]
        coeff: PathBuf,
        #[command(flatten)]
        degrees: Degrees,
        #[command(flatten)]
        out: Output,
    },
    /// lim and lim¹ of a tower of groups.
    Tower {
        #[command(subcommand)]
        op: TowerOp,
    },
    /// Checks on a direct system of complexes.
    System {
        #[command(subcommand)]
        op: SystemOp,
    },
    /// Cochain complexes of simplicial complexes.
    Simplicial {
        #[command(subcommand)]
        op: SimplicialOp,
    },
}

#[derive(Subcommand, Debug)]
enum TowerOp {
    Lim {
        tower: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    Lim1 {
        tower: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Check {
    /// H̄ of the colimit against the homology of the product of levels
    #[arg(long)]
    lemma2: bool,
    /// lim and lim¹ of Hom into an injective vanish
    #[arg(long)]
    cor2: bool,
    /// lim¹ of the middle and Ker ξ towers
    #[arg(long)]
    lemma4: bool,
    /// lim¹ of Hom towers against lim¹ of cycles
    #[arg(long)]
    cor3: bool,
    /// The UCF sequence after applying lim or lim¹
    #[arg(long)]
    theorem3: bool,
    /// 0 → lim¹ H̄ₙ₊₁ → H̄ₙ(colim) → lim H̄ₙ → 0
    #[arg(long)]
    milnor: bool,
    /// H̄ of the colimit is lim H̄ for divisible coefficients
    #[arg(long)]
    cor5: bool,
}

#[derive(Subcommand, Debug)]
enum SystemOp {
    Verify {
        #[command(flatten)]
        check: Check,
        system: PathBuf,
        #[arg(long)]
        coeff: PathBuf,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i32,
        /// Use the first k levels instead of the colimit.
        #[arg(long)]
        truncate: Option<usize>,
        /// lim (0) or lim¹ (1) for --theorem3.
        #[arg(long, default_value_t = 0)]
        index: u8,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum SimplicialOp {
    /// Prints the cochain complex document of a facet list.
    Import {
        facets: PathBuf,
        /// Subcomplex for relative cochains.
        #[arg(long)]
        pair: Option<PathBuf>,
        /// Write the complex here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Document(_)
            | Error::InvalidInput(_)
            | Error::IllegalBlock { .. }
            | Error::NotWellDefined(_)
            | Error::NotFree(_)
            | Error::NotDivisibleTarget
            | Error::NotFinitelyGeneratedColimit { .. }
            | Error::InvalidSubcomplex(_)
            | Error::NotSimplicial(_) => Failure::Input(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Run = std::result::Result<bool, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome { code, stdout: text, ..Default::default() } } else { Outcome { code, stderr: text, ..Default::default() } };
        }
    };
    let mut out = Outcome::default();
    match execute(cli.command, &mut out.stdout) {
        Ok(true) => out.code = 0,
        Ok(false) => out.code = 1,
        Err(Failure::Input(m)) => {
            out.code = 2;
            out.stderr = format!("error: {m}\n");
        }
        Err(Failure::Compute(m)) => {
            out.code = 1;
            out.stderr = format!("error: {m}\n");
        }
    }
    out
}

fn load(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_doc<T: Document>(path: &Path) -> std::result::Result<T, Failure> {
    read(&load(path)?).map_err(|e| Failure::Input(format!("{}: {}", path.display(), strip(e))))
}

fn strip(e: Error) -> String {
    match e {
        Error::Document(m) => m,
        e => e.to_string(),
    }
}

/// `{"summands": [...]}` or a finitely generated group `{"free_rank": r, "torsion": [...]}`.
fn load_coefficients(path: &Path) -> std::result::Result<QZGroup, Failure> {
    let text = load(path)?;
    let value: Value = parse_json(&text).map_err(|e| Failure::Input(format!("{}: {}", path.display(), strip(e))))?;
    let g = if value.get("summands").is_some() {
        read::<QZGroup>(&text)
    } else {
        read::<FgAbGroup>(&text).map(|g| QZGroup::from_fg(&g))
    };
    g.map_err(|e| Failure::Input(format!("{}: {}", path.display(), strip(e))))
}

fn save(out: &Output, report: &Value) -> std::result::Result<(), Failure> {
    if let Some(p) = &out.report {
        fs::write(p, to_json(report)).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn degrees_of(cone: &ConeComplex, d: &Degrees) -> Vec<i32> {
    match d.degree {
        Some(n) if !d.all_degrees => vec![n],
        _ => (cone.lo()..=cone.hi()).collect(),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn truncation(flag: Option<usize>) -> std::result::Result<usize, Failure> {
    if let Some(k) = flag {
        return Ok(k);
    }
    match std::env::var("WORKBENCH_TRUNCATE") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("WORKBENCH_TRUNCATE must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_TRUNCATION),
    }
}

fn execute(cmd: Command, so: &mut String) -> Run {
    match cmd {
        Command::Cohomology { complex, degree, out } => {
            let c: CochainComplex = load_doc(&complex)?;
            let h = c.cohomology(degree);
            writeln!(so, "H^{degree} = {}", h.h).ok();
            save(
                &out,
                &json!({
                    "command": "cohomology",
                    "degree": degree,
                    "group": serde_json::to_value(h.h.to_doc()).expect("group"),
                    "cocycle_representatives": report::int_matrix(&h.cocycles()),
                    "pass": true,
                }),
            )?;
            Ok(true)
        }
        Command::ConeHomology { complex, coeff, degrees, out } => {
            let cone = cone_of(&complex, &coeff)?;
            let mut rows = Vec::new();
            for n in degrees_of(&cone, &degrees) {
                let h = cone.homology(n)?;
                writeln!(so, "H̄_{n} = {}", h.group().canonical()).ok();
                let reps = h.presentation.lift_matrix();
                rows.push(json!({
                    "degree": n,
                    "group": report::group(h.group()),
                    "representatives": report::matrix_in(cone.group(n).group(), reps),
                    "boundary_in": report::morphism(&cone.boundary(n - 1)),
                    "boundary_out": report::morphism(&cone.boundary(n)),
                }));
            }
            save(&out, &json!({ "command": "cone-homology", "degrees": rows, "pass": true }))?;
            Ok(true)
        }
        Command::UcfVerify { complex, coeff, degrees, out } => {
            let cone = cone_of(&complex, &coeff)?;
            let mut all = true;
            let mut rows = Vec::new();
            for n in degrees_of(&cone, &degrees) {
                let r = verify_ucf(&cone, n)?;
                writeln!(so, "degree {n}: {} → {} → {}  {}", r.ext.canonical(), r.hbar.canonical(), r.hom.canonical(), verdict(r.all_pass())).ok();
                all &= r.all_pass();
                rows.push(report::ucf(&r));
            }
            writeln!(so, "{}", if all { "exact" } else { "NOT EXACT" }).ok();
            save(&out, &json!({ "command": "ucf-verify", "degrees": rows, "pass": all }))?;
            Ok(all)
        }
        Command::ClassicalCompare { complex, coeff, degrees, out } => {
            let cone = cone_of(&complex, &coeff)?;
            if let Some(n) = cone.complex().first_non_free_degree() {
                return Err(Failure::Input(Error::NotFree(n).to_string()));
            }
            let mut all = true;
            let mut rows = Vec::new();
            for n in degrees_of(&cone, &degrees) {
                let r = verify_classical(&cone, n)?;
                let a = alpha_star(&cone, n)?;
                writeln!(so, "degree {n}: H_n(Hom(C, G)) = {}, H̄_n = {}  {}", r.classical.canonical(), r.hbar.canonical(), verdict(r.all_pass())).ok();
                all &= r.all_pass();
                rows.push(report::classical(&r, Some(&a)));
            }
            save(&out, &json!({ "command": "classical-compare", "degrees": rows, "pass": all }))?;
            Ok(all)
        }
        Command::KerXiVerify { complex, coeff, degrees, out } => {
            let cone = cone_of(&complex, &coeff)?;
            let mut all = true;
            let mut rows = Vec::new();
            for n in degrees_of(&cone, &degrees) {
                let r = verify_ker_xi(&cone, n)?;
                writeln!(so, "degree {n}: Ker ξ = {}  {}", r.ker_xi.canonical(), verdict(r.all_pass())).ok();
                all &= r.all_pass();
                rows.push(report::ker_xi(&r, &sigma(&cone, n)?, &omega(&cone, n)?));
            }
            save(&out, &json!({ "command": "ker-xi-verify", "degrees": rows, "pass": all }))?;
            Ok(all)
        }
        Command::NaturalityVerify { map, coeff, degrees, out } => {
            let f: CochainMap = load_doc(&map)?;
            let res = InjectiveResolution::standard(&load_coefficients(&coeff)?);
            let cone = ConeComplex::new(f.source(), &res)?;
            let cone2 = ConeComplex::new(f.target(), &res)?;
            let lo = cone.lo().min(cone2.lo());
            let hi = cone.hi().max(cone2.hi());
            let ns: Vec<i32> = match degrees.degree {
                Some(n) if !degrees.all_degrees => vec![n],
                _ => (lo..=hi).collect(),
            };
            let mut all = true;
            let mut rows = Vec::new();
            for n in ns {
                let r = naturality_check(&f, &cone, &cone2, n)?;
                let on_h = ConeComplex::induced_map(&f, &cone2, &cone)?.on_homology(n)?;
                writeln!(so, "degree {n}: {}", verdict(r.all_pass())).ok();
                all &= r.all_pass();
                rows.push(report::naturality(&r, &on_h));
            }
            save(&out, &json!({ "command": "naturality-verify", "degrees": rows, "pass": all }))?;
            Ok(all)
        }
        Command::Tower { op: TowerOp::Lim { tower, out } } => {
            let t: TowerOfGroups = load_doc(&tower)?;
            let lim = lim_tower(&t)?;
            let note = if lim.complete { "" } else { " (lower bound: torsion may be missing)" };
            writeln!(so, "lim = {}{note}", lim.group).ok();
            save(
                &out,
                &json!({
                    "command": "tower lim",
                    "group": serde_json::to_value(lim.group.to_doc()).expect("group"),
                    "complete": lim.complete,
                    "level": lim.as_qz().level,
                    "projection_to_level_0": report::int_matrix(lim.projection(0).matrix()),
                    "pass": true,
                }),
            )?;
            Ok(true)
        }
        Command::Tower { op: TowerOp::Lim1 { tower, out } } => {
            let t: TowerOfGroups = load_doc(&tower)?;
            let cert = lim1_tower(&t);
            let ok = cert.recheck(t.as_qz());
            writeln!(so, "lim¹ verdict: {:?} (evidence {})", cert.verdict, if ok { "rechecked" } else { "FAILED recheck" }).ok();
            save(&out, &json!({ "command": "tower lim1", "certificate": report::certificate(&cert), "rechecked": ok, "pass": ok }))?;
            Ok(ok)
        }
        Command::System { op: SystemOp::Verify { check, system, coeff, degree, truncate, index, out } } => {
            let s: TowerOfComplexes = load_doc(&system)?;
            let res = InjectiveResolution::standard(&load_coefficients(&coeff)?);
            let depth = truncation(truncate)?;
            if depth == 0 {
                return Err(Failure::Input("truncation depth must be positive".into()));
            }
            let (name, ok, value) = if check.lemma2 {
                let mode = if truncate.is_none() && s.colimit().is_ok() { SystemMode::Exact } else { SystemMode::Truncated(depth) };
                let r = verify_lemma2(&s, &res, mode)?;
                ("lemma2", r.all_pass(), report::lemma2(&r))
            } else if check.cor2 {
                let r = verify_cor2(&s, &res, degree)?;
                ("cor2", r.all_pass(), report::cor2(&r))
            } else if check.lemma4 {
                let r = verify_lemma4(&s, &res, degree)?;
                ("lemma4", r.all_pass(), report::lemma4(&r))
            } else if check.cor3 {
                let r = verify_cor3(&s, &res, degree, depth)?;
                ("cor3", r.all_pass(), report::cor3(&r))
            } else if check.theorem3 {
                let r = verify_theorem3(&s, &res, degree, index)?;
                ("theorem3", r.all_pass(), report::theorem3(&r))
            } else if check.milnor {
                let r = verify_main_sequence(&s, &res, degree)?;
                ("milnor", r.exact(), report::milnor(&r))
            } else {
                let r = verify_cor5(&s, &res, degree)?;
                ("cor5", r.all_pass(), report::cor5(&r))
            };
            writeln!(so, "{name}: {}", verdict(ok)).ok();
            save(&out, &json!({ "command": format!("system verify --{name}"), "result": value, "pass": ok }))?;
            Ok(ok)
        }
        Command::Simplicial { op: SimplicialOp::Import { facets, pair, out } } => {
            let k: SimplicialComplex = load_doc(&facets)?;
            let c = match pair {
                Some(p) => cochain_of_pair(&k, &load_doc(&p)?)?,
                None => cochain_of(&k),
            };
            let text = write(&c);
            match out {
                Some(p) => fs::write(&p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => so.push_str(&text),
            }
            Ok(true)
        }
    }
}

fn cone_of(complex: &Path, coeff: &Path) -> std::result::Result<ConeComplex, Failure> {
    let c: CochainComplex = load_doc(complex)?;
    let g = load_coefficients(coeff)?;
    Ok(ConeComplex::new(&c, &InjectiveResolution::standard(&g))?)
}
