//! Command-line front end for `apolarity-lab`.
//!
//! [`run_with`] parses arguments, runs one subcommand and writes text or JSON.
//! Exit codes: 0 on success, 1 when a mathematical check fails, 2 on a usage
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use apolarity_lab::apolarity::{apolar_component, catalecticant, sylvester_lower_bound};
use apolarity_lab::certify::{
    certify_border_rank_q3_with_window, classify_ternary_quadratic, decompose_q2, generic_points_hilbert,
    q2_apolar_generator, verify_apolar_ideal_theorem, ApolarTheoremReport, BorderRankCertificate, Q2Decomposition,
};
use apolarity_lab::groebner::{buchberger_colon_check, leading_ideal, BuchbergerWitness, GradedIdealPresentation};
use apolarity_lab::harmonic::{harmonic_basis, harmonic_basis_element, harmonic_dim};
use apolarity_lab::{binomial, parse_poly, CertifyError, Poly, VariableFrame};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Environment variable naming a directory for cached harmonic bases.
pub const CACHE_ENV: &str = "APOLARITY_LAB_CACHE";

#[derive(Parser, Debug)]
#[command(name = "apolarity-lab", version, about = "Exact apolarity, harmonic and Gröbner computations for powers of quadratic forms")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output to FILE instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A form given either as text in variables `x1..xn` or as `q_n^s`.
#[derive(Args, Debug)]
pub struct FormArgs {
    /// Form in x1..xn, e.g. "x1^2 + x2*x3"
    pub form: Option<String>,
    /// Use q_n^s = (x1^2 + ... + xn^2)^s
    #[arg(long)]
    pub s: Option<usize>,
    /// Number of variables
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded components of the apolar ideal of a form
    Apolar {
        #[command(flatten)]
        form: FormArgs,
        /// Only this degree, with a basis
        #[arg(long)]
        j: Option<usize>,
    },
    /// Catalecticant matrices and their ranks
    Catalecticant {
        #[command(flatten)]
        form: FormArgs,
        /// Only this catalecticant, with its matrix
        #[arg(long)]
        j: Option<usize>,
    },
    /// Harmonic forms of degree d; for n = 3 the canonical basis p_{d,d}, ..., p_{d,0}
    HarmonicBasis {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// For n = 3, list all 2d+1 elements p_{d,d}, ..., p_{d,-d}
        #[arg(long)]
        all: bool,
    },
    /// Buchberger's criterion with colon ideals, lex z > u > v
    GroebnerCheck {
        /// Generators in u, z, v, in checking order; defaults to p_{d,0}, ..., p_{d,d}
        generators: Vec<String>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Hilbert function of I_{s+1} = (p_{s+1,s+1}, ..., p_{s+1,0})
    Hilbert {
        #[arg(long)]
        s: usize,
        /// Last degree to check (default 2s+4)
        #[arg(long)]
        window: Option<usize>,
    },
    /// Border-rank certificate for q_3^s
    Certify {
        #[arg(long, conflicts_with = "s_range", required_unless_present = "s_range")]
        s: Option<usize>,
        /// Inclusive range a..b, one worker thread per s
        #[arg(long, value_name = "A..B")]
        s_range: Option<String>,
        /// Last Hilbert-function degree to check (default 2s+4)
        #[arg(long)]
        window: Option<usize>,
    },
    /// Rank of a ternary quadratic and the border rank of its powers
    Classify {
        /// Quadratic form in x1, x2, x3
        form: String,
        /// Also evaluate the border rank of the s-th power
        #[arg(long)]
        s: Option<usize>,
    },
    /// Decomposition of q_2^s into s+1 powers of linear forms
    DecomposeQ2 {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        k: f64,
        #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
        tol: f64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Parse(p) => Failure::Usage(p.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<apolarity_lab::AlgebraError> for Failure {
    fn from(e: apolarity_lab::AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// A rendered result and whether every check in it held.
struct Report {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Report {
    fn new<T: Serialize>(text: String, value: &T, ok: bool) -> Self {
        Self { text, json: serde_json::to_value(value).expect("serializable output"), ok }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentOutput {
    pub m: usize,
    pub dim: usize,
    pub basis: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApolarOutput {
    pub form: String,
    pub n: usize,
    pub components: Vec<ComponentOutput>,
    pub theorem: Option<ApolarTheoremReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalecticantOutput {
    pub form: String,
    pub n: usize,
    pub degree: usize,
    pub ranks: Vec<(usize, usize)>,
    pub matrix: Option<Vec<Vec<String>>>,
    pub sylvester_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub canonical: String,
    pub pretty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicBasisOutput {
    pub n: usize,
    pub d: usize,
    pub dim: usize,
    pub elements: Vec<BasisElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerOutput {
    pub witness: BuchbergerWitness,
    pub leading_ideal: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub a: usize,
    pub value: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertOutput {
    pub s: usize,
    pub generators: Vec<String>,
    pub rows: Vec<HilbertRow>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub form: String,
    pub matrix_rank: usize,
    pub brk_formula: String,
    pub s: Option<usize>,
    pub brk: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposeQ2Output {
    pub decomposition: Q2Decomposition,
    pub lambda: Complex64,
    pub exact_generator: Option<String>,
    pub exact_annihilates: Option<bool>,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            return 1;
        }
    };
    let body = match cli.format {
        Format::Text => report.text,
        Format::Json => serde_json::to_string_pretty(&report.json).expect("json") + "\n",
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &body).map_err(|e| format!("--out {}: {e}", path.display())),
        None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    if report.ok {
        0
    } else {
        let _ = writeln!(err, "check failed");
        1
    }
}

fn resolve_form(args: &FormArgs) -> Result<(Poly, String), Failure> {
    if args.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let frame = VariableFrame::x(args.n);
    match (&args.form, args.s) {
        (Some(text), None) => {
            let f = parse_poly(text, frame).map_err(|e| Failure::Usage(format!("FORM: {e}")))?;
            if f.is_zero() || !f.is_homogeneous() {
                return Err(Failure::Usage("FORM must be a nonzero homogeneous form".into()));
            }
            Ok((f, text.clone()))
        }
        (None, Some(s)) => Ok((Poly::sum_of_squares(frame).pow(s as u32), format!("q_{}^{s}", args.n))),
        (Some(_), Some(_)) => Err(Failure::Usage("give either FORM or --s, not both".into())),
        (None, None) => Err(Failure::Usage("a FORM or --s is required".into())),
    }
}

fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Apolar { form, j } => apolar(form, *j),
        Command::Catalecticant { form, j } => catalecticant_cmd(form, *j),
        Command::HarmonicBasis { d, n, all } => harmonic(*d, *n, *all),
        Command::GroebnerCheck { generators, d } => groebner(generators, *d),
        Command::Hilbert { s, window } => hilbert(*s, *window),
        Command::Certify { s, s_range, window } => certify(*s, s_range.as_deref(), *window),
        Command::Classify { form, s } => classify(form, *s),
        Command::DecomposeQ2 { s, theta, k, tol } => q2(*s, *theta, *k, *tol),
    }
}

fn apolar(args: &FormArgs, j: Option<usize>) -> Result<Report, Failure> {
    let (f, label) = resolve_form(args)?;
    let d = f.homogeneous_degree().expect("checked");
    let degrees: Vec<usize> = match j {
        Some(j) => vec![j],
        None => (0..=d + 1).collect(),
    };
    let mut components = Vec::new();
    for m in degrees {
        let comp = apolar_component(&f, m)?;
        let basis = j.map(|_| comp.basis.iter().map(Poly::to_string).collect());
        components.push(ComponentOutput { m, dim: comp.dim, basis });
    }
    let theorem = match (args.s, j) {
        (Some(s), None) => Some(verify_apolar_ideal_theorem(args.n, s, 3)?),
        _ => None,
    };
    let mut text = format!("apolar ideal of {label} (n = {})\n", args.n);
    for c in &components {
        text += &format!("  degree {}: dim {}\n", c.m, c.dim);
        for b in c.basis.iter().flatten() {
            text += &format!("    {b}\n");
        }
    }
    let ok = theorem.as_ref().is_none_or(|t| t.holds);
    if let Some(t) = &theorem {
        let verdict = if t.holds { "equal" } else { "NOT equal" };
        text += &format!(
            "  ideal generated by harmonics of degree {} in degrees 0..={}: {verdict}\n",
            t.s + 1,
            2 * t.s + 3
        );
    }
    let output = ApolarOutput { form: label, n: args.n, components, theorem };
    Ok(Report::new(text, &output, ok))
}

fn catalecticant_cmd(args: &FormArgs, j: Option<usize>) -> Result<Report, Failure> {
    let (f, label) = resolve_form(args)?;
    let d = f.homogeneous_degree().expect("checked");
    let mut ranks = Vec::new();
    let mut matrix = None;
    let mut text = format!("catalecticants of {label} (degree {d})\n");
    match j {
        Some(j) => {
            let cat = catalecticant(&f, j)?;
            ranks.push((j, cat.rank));
            let rows: Vec<Vec<String>> =
                (0..cat.matrix.rows()).map(|r| cat.matrix.row(r).iter().map(ToString::to_string).collect()).collect();
            text += &format!("  j = {j}: {}x{}, rank {}\n", cat.matrix.rows(), cat.matrix.cols(), cat.rank);
            for row in &rows {
                text += &format!("    [{}]\n", row.join(", "));
            }
            matrix = Some(rows);
        }
        None => {
            for j in 0..=d {
                let rank = catalecticant(&f, j)?.rank;
                ranks.push((j, rank));
                text += &format!("  j = {j}: rank {rank}\n");
            }
        }
    }
    let sylvester_bound = sylvester_lower_bound(&f)?;
    text += &format!("  lower bound for (border) rank: {sylvester_bound}\n");
    let output = CatalecticantOutput { form: label, n: args.n, degree: d, ranks, matrix, sylvester_bound };
    Ok(Report::new(text, &output, true))
}

fn cache_path(n: usize, d: usize, all: bool) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let tag = if all { "all" } else { "half" };
    Some(Path::new(&dir).join(format!("harmonic-basis-n{n}-d{d}-{tag}.json")))
}

fn compute_harmonic(d: usize, n: usize, all: bool) -> HarmonicBasisOutput {
    let element = |label: String, p: Poly| BasisElement { label, canonical: p.to_string(), pretty: p.pretty() };
    let elements: Vec<BasisElement> = if n == 3 {
        let lowest = if all { -(d as i64) } else { 0 };
        (lowest..=d as i64).rev().map(|k| element(format!("p_{{{d},{k}}}"), harmonic_basis_element(d, k))).collect()
    } else {
        harmonic_basis(VariableFrame::x(n), d)
            .into_iter()
            .enumerate()
            .map(|(i, p)| element(format!("h_{}", i + 1), p))
            .collect()
    };
    HarmonicBasisOutput { n, d, dim: harmonic_dim(n, d), elements }
}

fn harmonic(d: usize, n: usize, all: bool) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let path = cache_path(n, d, all);
    let cached = path
        .as_ref()
        .and_then(|p| std::fs::read_to_string(p).ok())
        .and_then(|s| serde_json::from_str::<HarmonicBasisOutput>(&s).ok());
    let output = match cached {
        Some(o) => o,
        None => {
            let o = compute_harmonic(d, n, all);
            if let Some(p) = &path {
                // a cache that cannot be written is not an error
                let _ = std::fs::write(p, serde_json::to_string(&o).expect("json"));
            }
            o
        }
    };
    let mut text = String::new();
    if n == 3 {
        text += &format!("harmonic forms of degree {d} in u, z, v (dim {})\n", output.dim);
    } else {
        text += &format!("harmonic forms of degree {d} in x1..x{n} (dim {})\n", output.dim);
    }
    for e in &output.elements {
        text += &format!("{} = {}\n", e.label, e.pretty);
    }
    Ok(Report::new(text, &output, true))
}

fn canonical_half(d: usize) -> Vec<Poly> {
    (0..=d as i64).map(|k| harmonic_basis_element(d, k)).collect()
}

fn groebner(generators: &[String], d: Option<usize>) -> Result<Report, Failure> {
    let gens: Vec<Poly> = match (generators.is_empty(), d) {
        (true, Some(0)) => return Err(Failure::Usage("--d must be at least 1".into())),
        (true, Some(d)) => canonical_half(d),
        (false, None) => generators
            .iter()
            .map(|g| parse_poly(g, VariableFrame::uvz()).map_err(|e| Failure::Usage(format!("generator `{g}`: {e}"))))
            .collect::<Result<_, _>>()?,
        (false, Some(_)) => return Err(Failure::Usage("give either generators or --d, not both".into())),
        (true, None) => return Err(Failure::Usage("generators or --d are required".into())),
    };
    if gens.iter().any(Poly::is_zero) {
        return Err(Failure::Usage("generators must be nonzero".into()));
    }
    let witness = buchberger_colon_check(&gens)?;
    let lead = if witness.passed { Some(leading_ideal(&gens)?.to_strings(VariableFrame::uvz())) } else { None };
    let mut text = String::new();
    for step in &witness.steps {
        text += &format!("g{} (LT {}): colon ideal ({})\n", step.j, step.leading_term, step.colon_generators.join(", "));
        for r in &step.reductions {
            let steps = if r.chain.len() == 1 { "step" } else { "steps" };
            text += &format!("  {}*g{} -> {} in {} {steps}\n", r.multiplier, step.j, r.remainder, r.chain.len());
        }
    }
    text += &format!("Gröbner basis: {}\n", if witness.passed { "yes" } else { "no" });
    if let Some(l) = &lead {
        text += &format!("leading ideal: ({})\n", l.join(", "));
    }
    let ok = witness.passed;
    Ok(Report::new(text, &GroebnerOutput { witness, leading_ideal: lead }, ok))
}

fn hilbert(s: usize, window: Option<usize>) -> Result<Report, Failure> {
    if s == 0 {
        return Err(Failure::Usage("--s must be at least 1".into()));
    }
    let window = window.unwrap_or(2 * s + 4);
    let gens: Vec<Poly> = canonical_half(s + 1).into_iter().rev().collect();
    let presentation = GradedIdealPresentation::new(VariableFrame::uvz(), gens.clone())?;
    let (mut p, witness) = presentation.attach_groebner_basis(gens.iter().rev().cloned().collect())?;
    if !witness.passed {
        return Err(Failure::Check("generators are not a Gröbner basis".into()));
    }
    let r = binomial(s + 2, 2);
    let mut rows = Vec::new();
    for a in 0..=window {
        let value = p.hilbert_function(a).map_err(|e| Failure::Check(e.to_string()))?;
        rows.push(HilbertRow { a, value, expected: generic_points_hilbert(r, a) });
    }
    let matches = rows.iter().all(|row| row.value == row.expected);
    let mut text = format!("Hilbert function of I_{} (rank and standard-monomial methods agree)\n", s + 1);
    for row in &rows {
        text += &format!("  a = {:>2}: {:>3}  (min(C(a+2,2), {r}) = {})\n", row.a, row.value, row.expected);
    }
    text += &format!("matches generic points: {}\n", if matches { "yes" } else { "no" });
    let output = HilbertOutput { s, generators: gens.iter().map(Poly::to_string).collect(), rows, matches };
    Ok(Report::new(text, &output, matches))
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("--s-range `{text}`: expected A..B with 1 <= A <= B"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn certificate_text(c: &BorderRankCertificate) -> String {
    let ch = &c.checks;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let h = &ch.hilbert_matches_h_r;
    let mut t = format!("s = {}: brk(q_3^{}) = {}\n", c.s, c.s, c.conclusion);
    t += &format!(
        "  apolar membership: {}/{} generators (harmonic: {}/{})\n",
        ch.apolar_membership.iter().filter(|b| **b).count(),
        c.generator_count,
        ch.harmonic.iter().filter(|b| **b).count(),
        c.generator_count
    );
    t += &format!("  Gröbner basis (colon criterion): {}\n", yes(ch.groebner_ok));
    t += &format!("  leading ideal = J_{}: {}\n", c.s + 1, yes(ch.leading_ideal_equals_jd));
    t += &format!("  saturated: {} ({} iteration(s))\n", yes(ch.saturated), ch.saturation_iterations);
    let values: Vec<String> = h.values.iter().map(ToString::to_string).collect();
    t += &format!("  Hilbert function a = {}..={}: {}\n", h.from, h.to, values.join(" "));
    t += &format!("  Hilbert function = {} for all a >= {}\n", h.stable_value, h.stable_from);
    t += &format!("  catalecticant rank: {}\n", ch.catalecticant_rank);
    t += &format!("  lower bound {} / upper bound {}\n", c.lower_bound.value, c.upper_bound.value);
    t
}

fn certify(s: Option<usize>, range: Option<&str>, window: Option<usize>) -> Result<Report, Failure> {
    let (lo, hi) = match (s, range) {
        (Some(0), _) => return Err(Failure::Usage("--s must be at least 1".into())),
        (Some(s), None) => (s, s),
        (None, Some(r)) => parse_range(r)?,
        _ => return Err(Failure::Usage("give exactly one of --s and --s-range".into())),
    };
    let results: Vec<Result<BorderRankCertificate, CertifyError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (lo..=hi)
            .map(|s| scope.spawn(move || certify_border_rank_q3_with_window(s, window.unwrap_or(2 * s + 4))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut certs = Vec::new();
    for (s, r) in (lo..=hi).zip(results) {
        certs.push(r.map_err(|e| Failure::Check(format!("s = {s}: {e}")))?);
    }
    let text: String = certs.iter().map(certificate_text).collect();
    if range.is_none() {
        let cert = certs.pop().expect("one certificate");
        Ok(Report::new(text, &cert, true))
    } else {
        Ok(Report::new(text, &certs, true))
    }
}

fn classify(form: &str, s: Option<usize>) -> Result<Report, Failure> {
    let g = parse_poly(form, VariableFrame::x(3)).map_err(|e| Failure::Usage(format!("FORM: {e}")))?;
    let c = classify_ternary_quadratic(&g)?;
    let brk = s.map(|s| c.brk(s));
    let mut text = format!("{form}: rank {}, brk(g^s) = {}\n", c.matrix_rank, c.brk_formula());
    if let (Some(s), Some(b)) = (s, brk) {
        text += &format!("brk(g^{s}) = {b}\n");
    }
    let output =
        ClassifyOutput { form: g.to_string(), matrix_rank: c.matrix_rank, brk_formula: c.brk_formula().into(), s, brk };
    Ok(Report::new(text, &output, true))
}

fn q2(s: usize, theta: f64, k: f64, tol: f64) -> Result<Report, Failure> {
    if s == 0 {
        return Err(Failure::Usage("--s must be at least 1".into()));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Failure::Usage("--tol must be a positive number".into()));
    }
    if !theta.is_finite() || !k.is_finite() {
        return Err(Failure::Usage("--theta and --k must be finite".into()));
    }
    let generator = q2_apolar_generator(s, theta, k)?;
    let decomposition = decompose_q2(s, theta, k, tol)?;
    let fmt_c = |z: Complex64| if z.im == 0.0 { format!("{:.12}", z.re) } else { format!("{:.12}{:+.12}i", z.re, z.im) };
    let mut text = format!(
        "q_2^{s} as a sum of {} powers (radius r = {:.12}, residual {:.3e})\n",
        decomposition.points.len(),
        decomposition.radius,
        decomposition.residual
    );
    for (i, p) in decomposition.points.iter().enumerate() {
        text += &format!("  point {}: ({}, {})\n", i + 1, fmt_c(p[0]), fmt_c(p[1]));
    }
    let exact_generator = generator.exact.as_ref().map(Poly::to_string);
    if let Some(annihilates) = generator.exact_annihilates {
        text += &format!("  u^{0} - v^{0} annihilates q_2^{s} exactly: {1}\n", s + 1, if annihilates { "yes" } else { "no" });
    }
    let ok = generator.exact_annihilates != Some(false);
    let output = DecomposeQ2Output {
        decomposition,
        lambda: generator.lambda,
        exact_generator,
        exact_annihilates: generator.exact_annihilates,
    };
    Ok(Report::new(text, &output, ok))
}
