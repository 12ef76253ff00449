//! Command-line surface. `run` maps parsed arguments to a report and an
//! exit code: 0 on success, 1 when a verification fails, 2 on bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::chain::{homology, sigma_tower_report, ChainComplex, HomologyGroup};
use crate::error::Error;
use crate::hconstr::{cylinder, homotopy_pushout, skeleton_pushout_check, weq_certificate, wrap, PushoutDiagram};
use crate::io::{self, Document};
use crate::simpab::{bar_b, check_kn, check_nk, dold_kan_k, ez_maps, normalize_n, SimplicialAbGroup};
use crate::simpset::chains::{normalized_chains_with, unnormalized_chains_with};
use crate::simpset::groupoid::{groupoid_presentation, pi0};
use crate::simpset::{pushout_inj, SimplicialMap, SimplicialSet};
use crate::suite::{kunneth_groups, run_suite, Size, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "skernel", version, about = "Exact simplicial homotopy and homological algebra kernel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input document (repeat for commands taking two inputs).
    #[arg(long = "in", global = true, value_name = "PATH")]
    pub inputs: Vec<PathBuf>,
    /// Where to write the constructed object (or the report).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Dimension cap D for truncated constructions.
    #[arg(long, global = true, default_value_t = 4)]
    pub dim: usize,
    /// Degree range for certificates.
    #[arg(long, global = true, default_value_t = 3)]
    pub range: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value = "small", value_parser = ["small", "medium"])]
    pub size: String,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Homology of a chain complex or (normalized chains of) a simplicial set.
    Homology,
    /// Normalized, unnormalized and reduced homology of a simplicial set.
    SpaceHomology,
    /// N(K(C)) = C for a complex, K(N(A)) = A for a simplicial abelian group.
    NkRoundtrip,
    /// Checks H(N(B A)) = H(N A)[1].
    Bar,
    /// Shuffle and Alexander–Whitney maps for A ⊗ B (B defaults to A).
    EzVerify,
    /// Certificate for the counit Wr(X) → X, plus skeletal squares.
    WrVerify,
    /// Homotopy pushout of two maps f: K → L, g: K → M.
    Pushout,
    /// Mapping cylinder of f: K → L and its retraction.
    Cylinder,
    /// Truncation tower Hom(σ≤n K, L) for complexes K, L.
    TowerReport,
    /// The seeded verification suite.
    Suite {
        /// Corrupt one differential; the suite must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

/// Report text and exit code of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg), code: EXIT_INPUT }
    }
}

struct Report {
    text: String,
    ok: bool,
    object: Option<String>,
}

impl Report {
    fn new() -> Self {
        Report { text: String::new(), ok: true, object: None }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn verdict(&mut self, what: &str, ok: bool) {
        self.line(format!("{}: {}", what, if ok { "pass" } else { "FAIL" }));
        self.ok &= ok;
    }
}

/// `H0=Z H1=0 …` over the given degrees.
pub fn format_homology(c: &ChainComplex, degrees: impl IntoIterator<Item = i64>) -> String {
    degrees.into_iter().map(|n| format!("H{}={}", n, homology(c, n))).collect::<Vec<_>>().join(" ")
}

fn format_groups(groups: &[(i64, HomologyGroup)]) -> String {
    groups.iter().map(|(n, g)| format!("H{}={}", n, g)).collect::<Vec<_>>().join(" ")
}

fn load(path: &Path) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
    io::parse_document(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {}", path.display(), m)),
        Error::Identity(m) => Error::Identity(format!("{}: {}", path.display(), m)),
        other => other,
    })
}

fn wrong_kind(d: &Document, want: &str) -> Error {
    Error::Parse(format!("expected a {} document, got a {}", want, d.kind()))
}

fn need_inputs(cli: &Cli, lo: usize, hi: usize) -> Result<Vec<Document>, Error> {
    let n = cli.inputs.len();
    if n < lo || n > hi {
        let want = if lo == hi { lo.to_string() } else { format!("{} to {}", lo, hi) };
        return Err(Error::Parameter(format!("this command takes {} --in document(s), got {}", want, n)));
    }
    cli.inputs.iter().map(|p| load(p)).collect()
}

fn space(d: Document) -> Result<SimplicialSet, Error> {
    match d {
        Document::Space(x) => Ok(x),
        other => Err(wrong_kind(&other, "simplicial set")),
    }
}

fn complex(d: Document) -> Result<ChainComplex, Error> {
    match d {
        Document::Complex(c) => Ok(c),
        other => Err(wrong_kind(&other, "chain complex")),
    }
}

fn group(d: Document) -> Result<SimplicialAbGroup, Error> {
    match d {
        Document::Group(a) => Ok(a),
        other => Err(wrong_kind(&other, "simplicial abelian group")),
    }
}

fn map(d: Document) -> Result<SimplicialMap, Error> {
    match d {
        Document::Map(f) => Ok(f),
        other => Err(wrong_kind(&other, "simplicial map")),
    }
}

fn space_degrees(x: &SimplicialSet) -> std::ops::RangeInclusive<i64> {
    0..=x.top_dim().unwrap_or(0) as i64
}

fn cmd_homology(cli: &Cli) -> Result<Report, Error> {
    let mut r = Report::new();
    match need_inputs(cli, 1, 1)?.remove(0) {
        Document::Complex(c) => r.line(format_homology(&c, c.degrees())),
        Document::Space(x) => r.line(format_homology(&normalized_chains_with(&x, false), space_degrees(&x))),
        Document::Group(a) => r.line(format_homology(&normalize_n(&a), 0..a.trunc_dim() as i64)),
        other => return Err(wrong_kind(&other, "complex, simplicial set or group")),
    }
    Ok(r)
}

fn cmd_space_homology(cli: &Cli) -> Result<Report, Error> {
    let x = space(need_inputs(cli, 1, 1)?.remove(0))?;
    let mut r = Report::new();
    let cap = cli.dim.max(x.top_dim().unwrap_or(0) + 1);
    let norm = normalized_chains_with(&x, false);
    let unnorm = unnormalized_chains_with(&x, cap, false);
    let degrees = 0..cap as i64;
    r.line(format!("normalized: {}", format_homology(&norm, degrees.clone())));
    r.line(format!("unnormalized (cap {}): {}", cap, format_homology(&unnorm, degrees.clone())));
    if x.is_pointed() {
        r.line(format!("reduced: {}", format_homology(&normalized_chains_with(&x, true), degrees.clone())));
    }
    r.line(format!("components: {}", pi0(&x).count));
    r.verdict("normalization theorem", degrees.clone().all(|n| homology(&norm, n) == homology(&unnorm, n)));
    Ok(r)
}

fn cmd_nk(cli: &Cli) -> Result<Report, Error> {
    let mut r = Report::new();
    match need_inputs(cli, 1, 1)?.remove(0) {
        Document::Complex(c) => {
            let k = dold_kan_k(&c, cli.dim);
            r.line(format!("K(C) ranks: {:?}", k.ranks()));
            r.verdict("N(K(C)) = C", check_nk(&c, cli.dim)?);
            r.object = Some(io::group_to_json(&k));
        }
        Document::Group(a) => {
            let n = normalize_n(&a);
            r.line(format!("N(A): {}", format_homology(&n, n.degrees())));
            r.verdict("K(N(A)) = A", check_kn(&a)?);
            r.object = Some(io::complex_to_json(&n));
        }
        other => return Err(wrong_kind(&other, "chain complex or simplicial abelian group")),
    }
    Ok(r)
}

fn cmd_bar(cli: &Cli) -> Result<Report, Error> {
    let a = group(need_inputs(cli, 1, 1)?.remove(0))?;
    let d = a.trunc_dim() as i64;
    let b = bar_b(&a);
    let (na, nb) = (normalize_n(&a), normalize_n(&b));
    let mut r = Report::new();
    r.line(format!("N(A):   {}", format_homology(&na, 0..d)));
    r.line(format!("N(B A): {}", format_homology(&nb, 0..d)));
    let ok = (0..d).all(|n| homology(&nb, n) == if n == 0 { HomologyGroup::zero() } else { homology(&na, n - 1) });
    r.verdict("H(N(B A)) = H(N A)[1]", ok);
    r.object = Some(io::group_to_json(&b));
    Ok(r)
}

fn cmd_ez(cli: &Cli) -> Result<Report, Error> {
    let mut docs = need_inputs(cli, 1, 2)?;
    let a = group(docs.remove(0))?;
    let b = if docs.is_empty() { a.clone() } else { group(docs.remove(0))? };
    let ez = ez_maps(&a, &b)?;
    let mut r = Report::new();
    r.verdict("AW∘shuffle = id", ez.strict());
    let t = a.trunc_dim().min(b.trunc_dim()) as i64;
    let (na, nb, nab) = (normalize_n(&a), normalize_n(&b), normalize_n(&a.tensor(&b)));
    r.line(format!("N(A⊗B): {}", format_homology(&nab, 0..t)));
    let ok = (0..t).all(|n| homology(&nab, n) == kunneth_groups(|i| homology(&na, i), |j| homology(&nb, j), (0, 0), (t, t), n));
    r.verdict("Kunneth", ok);
    Ok(r)
}

fn cmd_wr(cli: &Cli) -> Result<Report, Error> {
    let x = space(need_inputs(cli, 1, 1)?.remove(0))?;
    let w = wrap(&x, cli.dim)?;
    let cert = weq_certificate(&w.counit, cli.range)?;
    let mut r = Report::new();
    r.line(format!("Wr(X) cells: {:?}", w.object.cell_counts()));
    r.line(format!("certificate: {}", cert.to_json()));
    r.verdict("counit weak equivalence", cert.pass);
    let gw = groupoid_presentation(&w.object).transport(&w.counit).canonical();
    r.verdict("groupoid presentations equal", gw == groupoid_presentation(&x).canonical());
    if x.is_pointed() {
        for n in 0..cli.dim.min(3) {
            let s = skeleton_pushout_check(&x, n, cli.dim)?;
            r.verdict(&format!("skeletal square n={}", n), s.isomorphic);
        }
    }
    r.object = Some(io::space_to_json(&w.object));
    Ok(r)
}

fn reduced_line(x: &SimplicialSet) -> String {
    let c = normalized_chains_with(x, true);
    let top = x.top_dim().unwrap_or(0) as i64;
    format_groups(&(0..=top).map(|n| (n, homology(&c, n))).collect::<Vec<_>>())
}

fn cmd_pushout(cli: &Cli) -> Result<Report, Error> {
    let mut docs = need_inputs(cli, 2, 2)?;
    let f = map(docs.remove(0))?;
    let g = map(docs.remove(0))?;
    let q = PushoutDiagram::new(f, g)?;
    let h = homotopy_pushout(&q)?;
    let mut r = Report::new();
    r.line(format!("K_Q cells: {:?}", h.object.cell_counts()));
    r.line(format!("reduced: {}", reduced_line(&h.object)));
    r.verdict("bisimplicial diagonal", h.bisimplicial_check()?);
    let comparison = if q.f.is_injective() {
        let p = pushout_inj(&q.f, &q.g)?;
        Some(h.comparison(&p.from_x, &p.from_y)?)
    } else if q.g.is_injective() {
        let p = pushout_inj(&q.g, &q.f)?;
        Some(h.comparison(&p.from_y, &p.from_x)?)
    } else {
        None
    };
    match comparison {
        Some(cmp) => {
            let cert = weq_certificate(&cmp, cli.range)?;
            r.line(format!("comparison certificate: {}", cert.to_json()));
            r.verdict("K_Q → strict pushout", cert.pass);
        }
        None => r.line("comparison: skipped (neither leg is injective)"),
    }
    r.object = Some(io::space_to_json(&h.object));
    Ok(r)
}

fn cmd_cylinder(cli: &Cli) -> Result<Report, Error> {
    let f = map(need_inputs(cli, 1, 1)?.remove(0))?;
    let c = cylinder(&f)?;
    let mut r = Report::new();
    r.line(format!("cyl(f) cells: {:?}", c.object.cell_counts()));
    r.line(format!("reduced: {}", reduced_line(&c.object)));
    r.verdict("retraction ∘ (L → cyl) = id", c.retraction.compose_after(&c.from_l)? == SimplicialMap::identity(f.target()));
    r.verdict("retraction ∘ (K → cyl) = f", c.retraction.compose_after(&c.from_k)? == f);
    let cert = weq_certificate(&c.retraction, cli.range)?;
    r.line(format!("certificate: {}", cert.to_json()));
    r.verdict("cyl(f) → L weak equivalence", cert.pass);
    r.object = Some(io::space_to_json(&c.object));
    Ok(r)
}

fn cmd_tower(cli: &Cli) -> Result<Report, Error> {
    let mut docs = need_inputs(cli, 2, 2)?;
    let k = complex(docs.remove(0))?;
    let l = complex(docs.remove(0))?;
    let t = sigma_tower_report(&k, &l);
    let mut r = Report::new();
    for (n, g) in &t.tower {
        r.line(format!("n={} Hom(σ≤n K, L)={}", n, g));
    }
    r.line(format!("stabilization_index={}", t.stabilization_index));
    r.line(format!("limit={} hom_full={}", t.limit_group, t.hom_full));
    r.verdict("lim1 vanishes", t.lim1_vanishes);
    r.verdict("exactness", t.exactness_verified);
    Ok(r)
}

/// Runs a parsed command with the given suite parallelism.
pub fn run(cli: &Cli, threads: usize) -> Outcome {
    let result = match &cli.command {
        Command::Homology => cmd_homology(cli),
        Command::SpaceHomology => cmd_space_homology(cli),
        Command::NkRoundtrip => cmd_nk(cli),
        Command::Bar => cmd_bar(cli),
        Command::EzVerify => cmd_ez(cli),
        Command::WrVerify => cmd_wr(cli),
        Command::Pushout => cmd_pushout(cli),
        Command::Cylinder => cmd_cylinder(cli),
        Command::TowerReport => cmd_tower(cli),
        Command::Suite { inject_fault } => {
            let size = if cli.size == "medium" { Size::Medium } else { Size::Small };
            let report = run_suite(SuiteOptions { seed: cli.seed, size, threads, inject_fault: *inject_fault });
            let mut r = Report::new();
            r.text = report.render();
            r.ok = report.passed();
            Ok(r)
        }
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let mut stdout = report.text;
    if let Some(path) = &cli.out {
        let body = report.object.as_deref().unwrap_or(&stdout);
        if let Err(e) = std::fs::write(path, body) {
            return Outcome::input_error(format!("{}: {}", path.display(), e));
        }
        if report.object.is_some() {
            let _ = writeln!(stdout, "wrote {}", path.display());
        }
    }
    Outcome { stdout, stderr: String::new(), code: if report.ok { EXIT_OK } else { EXIT_VERIFY } }
}

/// `SKERNEL_THREADS`: unset or 0 means sequential.
pub fn threads_from_env() -> Result<usize, Error> {
    match std::env::var("SKERNEL_THREADS") {
        Err(_) => Ok(0),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| Error::Parameter(format!("SKERNEL_THREADS must be a nonnegative integer, got {:?}", v))),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match threads_from_env() {
        Ok(t) => run(&cli, t),
        Err(e) => Outcome::input_error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{standard_space, StandardSpace};

    fn tmp(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("skernel-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn run_on(cmd: &str, inputs: &[&Path], extra: &[&str]) -> Outcome {
        let mut args = vec!["skernel".to_string(), cmd.to_string()];
        for p in inputs {
            args.push("--in".into());
            args.push(p.display().to_string());
        }
        args.extend(extra.iter().map(|s| s.to_string()));
        run_args(args)
    }

    #[test]
    fn sphere_homology_line() {
        let s2 = tmp("s2.json", &io::space_to_json(&standard_space(StandardSpace::Sphere(2)).unwrap()));
        let o = run_on("homology", &[&s2], &[]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "H0=Z H1=0 H2=Z\n");
    }

    #[test]
    fn wr_verify_circle() {
        let s1 = tmp("s1.json", &io::space_to_json(&standard_space(StandardSpace::Sphere(1)).unwrap()));
        let o = run_on("wr-verify", &[&s1], &["--dim", "4", "--range", "3"]);
        assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
        assert!(o.stdout.contains("\"pass\":true"));
    }

    #[test]
    fn input_errors_exit_2() {
        let bad = tmp("bad.json", r#"{"min":0,"max":2,"ranks":{"0":1,"1":1,"2":1},"d":{"1":[[1]],"2":[[1]]}}"#);
        let o = run_on("homology", &[&bad], &[]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("d(1)·d(2)"), "{}", o.stderr);
        let o = run_on("homology", &[Path::new("/nonexistent/x.json")], &[]);
        assert_eq!(o.code, 2);
        assert_eq!(run_args(["skernel", "frobnicate"]).code, 2);
        let o = run_on("pushout", &[], &[]);
        assert_eq!(o.code, 2);
    }
}
