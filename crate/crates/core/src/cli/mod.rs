//! The `ga2` command line: argument parsing, input loading, dispatch, and
//! rendering. [`run`] does everything except touching the process, so it can
//! be driven from tests.

mod output;

use std::ffi::OsString;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{FieldCtx, Scalar};
use crate::amalgam::{cyclically_reduce, decompose, normalize, parse_word, word_inline, CRStatus, NormalForm, Word};
use crate::conjugacy::{crnf_conjugacy_necessary, crnf_conjugate, order_of_element, DEFAULT_ORDER_CAP};
use crate::dynamics::{
    cycle_statistics, fixed_points_fp_with, induced_permutation_with, reversor_cycle_pairing_with,
    symmetry_orbit_check_with, ScanOptions, DEFAULT_PRIME_CAP,
};
use crate::error::{same_field, Error, Result};
use crate::generators::{classify_letter, ElementaryMap, LetterClass, PolyMap};
use crate::parse::{parse_map_expr, parse_scalar};
use crate::symmetry::{
    build_reversible_involutory, build_reversible_order4, fixed_point_spectrum_check, involutory_symmetry_of_crnf,
    reverses, reversibility_necessary, reversor_order_nf, InvolutoryForm, InvolutoryParams, Order4Params,
    ReversorWitness,
};

pub use output::{parse_machine_line, Record};

/// Exit status for a completed command with a positive answer.
pub const EXIT_OK: i32 = 0;
/// Exit status for a negative answer, such as "not reversible".
pub const EXIT_NEGATIVE: i32 = 1;
/// Exit status for errors, including bad arguments.
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ga2", version, about = "Normal forms, symmetries and reversors of planar polynomial automorphisms")]
struct Cli {
    /// `Q` or `Fp:<prime>`.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Print `key=value` records instead of the human layout.
    #[arg(long, global = true)]
    machine: bool,
    /// Worker threads for point scans; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest prime a point scan accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_CAP)]
    prime_cap: u64,
    /// Compare the expanded map against the normal form at every scanned point.
    #[arg(long, global = true)]
    cross_check: bool,
    #[command(subcommand)]
    verb: Verb,
}

/// Inputs are map expressions like `(y, x + y^2)`, letter lists in the
/// `B`/`A`/`E`/`AFF`/`ELE` text form, or `@path` to read either from a file.
#[derive(Subcommand, Debug)]
enum Verb {
    /// Normal form of a polynomial map.
    Decompose { map: String },
    /// Normal form of a map or a letter list.
    Normalform { input: String },
    /// Number of non-basic letters.
    Length { input: String },
    /// Degrees of the elementary letters.
    Polydeg { input: String },
    /// Degree, the product of the poly-degree.
    Degree { input: String },
    /// Cyclically reduced conjugate and the conjugator.
    Cyclereduce { input: String },
    /// Order of the element.
    Order {
        input: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: u64,
    },
    /// Decide whether two elements are conjugate.
    Conjtest { first: String, second: String },
    /// Look for a point-reflection symmetry.
    Symcheck { input: String },
    /// Necessary reversibility test, and verification of a given reversor.
    Revcheck {
        input: String,
        #[arg(long)]
        reversor: Option<String>,
    },
    /// Build a reversible element `h ∘ c ∘ h⁻¹ ∘ d` from `h`.
    Buildrev {
        h: String,
        #[arg(long, value_enum)]
        form: FormArg,
        /// Elementary involution in the middle.
        #[arg(long)]
        centre: Option<String>,
        /// Elementary involution at the end.
        #[arg(long)]
        outer: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Cycle report of the permutation induced on F_p².
    Orbits {
        map: String,
        /// Also report how this reversor pairs the cycles.
        #[arg(long)]
        reversor: Option<String>,
        /// Also check that this symmetry preserves the cycles.
        #[arg(long)]
        symmetry: Option<String>,
    },
    /// Fixed points on F_p².
    Fixpoints { map: String },
    /// Check that the linearizations at a fixed point and its image under a
    /// reversor have reciprocal spectra.
    Spectrum {
        map: String,
        #[arg(long)]
        reversor: String,
        /// `x,y`
        #[arg(long)]
        point: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Swap,
    Centre,
    Both,
    Order4,
}

/// Everything a command prints, and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    records: Vec<Record>,
    code: i32,
}

impl Report {
    fn ok(records: Vec<Record>) -> Self {
        Report { records, code: EXIT_OK }
    }

    fn negative(records: Vec<Record>) -> Self {
        Report { records, code: EXIT_NEGATIVE }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => CliOutput {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: format!("ERROR Usage: {}\n", text.trim_end()),
                },
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let mut stdout = String::new();
            for r in &report.records {
                stdout.push_str(&if cli.machine { r.machine() } else { r.human() });
                stdout.push('\n');
            }
            CliOutput { code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => CliOutput { code: EXIT_ERROR, stdout: String::new(), stderr: format!("ERROR {}: {e}\n", e.kind()) },
    }
}

fn load(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read `{path}`: {e}")))
        }
        None => Ok(arg.to_string()),
    }
}

fn is_map_expr(text: &str) -> bool {
    text.trim_start().starts_with('(')
}

fn element(arg: &str, ctx: FieldCtx) -> Result<NormalForm> {
    let text = load(arg)?;
    if is_map_expr(&text) {
        Ok(normalize(&decompose(&parse_map_expr(&text, ctx)?)?))
    } else {
        Ok(normalize(&parse_word(&text, ctx)?))
    }
}

fn poly_map(arg: &str, ctx: FieldCtx) -> Result<PolyMap> {
    let text = load(arg)?;
    if is_map_expr(&text) {
        parse_map_expr(&text, ctx)
    } else {
        Ok(parse_word(&text, ctx)?.to_polymap())
    }
}

fn elementary(arg: &str, ctx: FieldCtx) -> Result<ElementaryMap> {
    match classify_letter(&poly_map(arg, ctx)?) {
        LetterClass::Elementary(e) => Ok(e),
        LetterClass::InJ(rep) => Ok(rep.to_elementary()),
        LetterClass::Basic(b) => Ok(b.to_elementary()),
        _ => Err(Error::InvalidArgument(format!("`{arg}` is not an elementary map"))),
    }
}

fn scalar_arg(arg: Option<&String>, name: &str, ctx: FieldCtx) -> Result<Scalar> {
    let text = arg.ok_or_else(|| Error::InvalidArgument(format!("--{name} is required")))?;
    parse_scalar(text, ctx)
}

fn point_arg(text: &str, ctx: FieldCtx) -> Result<(Scalar, Scalar)> {
    let (x, y) =
        text.split_once(',').ok_or_else(|| Error::InvalidArgument(format!("expected `x,y`, found `{text}`")))?;
    Ok((parse_scalar(x, ctx)?, parse_scalar(y, ctx)?))
}

fn kv(k: &'static str, v: impl ToString) -> (&'static str, String) {
    (k, v.to_string())
}

fn nf_records(nf: &NormalForm) -> Vec<Record> {
    let text = nf.serialize();
    text.lines()
        .enumerate()
        .map(|(i, line)| Record::new(vec![kv("index", i), kv("letter", line)]).with_human(line))
        .collect()
}

/// The cyclically reduced conjugate with `conjugator ∘ crnf ∘ conjugator⁻¹`
/// equal to the input.
fn reduced(nf: &NormalForm) -> Result<(Word, NormalForm)> {
    match cyclically_reduce(nf) {
        CRStatus::CR { conjugator, crnf } => Ok((conjugator, crnf)),
        _ => Err(Error::NotCyclicallyReduced),
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let ctx: FieldCtx = cli.field.parse()?;
    let scan = ScanOptions { prime_cap: cli.prime_cap, threads: cli.threads, cross_check: cli.cross_check };
    match &cli.verb {
        Verb::Decompose { map } => {
            let text = load(map)?;
            let nf = normalize(&decompose(&parse_map_expr(&text, ctx)?)?);
            Ok(Report::ok(nf_records(&nf)))
        }
        Verb::Normalform { input } => Ok(Report::ok(nf_records(&element(input, ctx)?))),
        Verb::Length { input } => Ok(Report::ok(vec![Record::new(vec![kv("length", element(input, ctx)?.length())])])),
        Verb::Polydeg { input } => {
            let pd = element(input, ctx)?.poly_degree()?;
            Ok(Report::ok(vec![Record::new(vec![kv("polydeg", pd)])]))
        }
        Verb::Degree { input } => Ok(Report::ok(vec![Record::new(vec![kv("degree", element(input, ctx)?.degree())])])),
        Verb::Cyclereduce { input } => cyclereduce(&element(input, ctx)?),
        Verb::Order { input, cap } => {
            let order = match order_of_element(&element(input, ctx)?, *cap) {
                Some(o) => o.to_string(),
                None => "unknown".to_string(),
            };
            Ok(Report::ok(vec![Record::new(vec![kv("order", order)])]))
        }
        Verb::Conjtest { first, second } => conjtest(&element(first, ctx)?, &element(second, ctx)?),
        Verb::Symcheck { input } => symcheck(&element(input, ctx)?),
        Verb::Revcheck { input, reversor } => {
            let r = reversor.as_deref().map(|r| element(r, ctx)).transpose()?;
            revcheck(&element(input, ctx)?, r.as_ref())
        }
        Verb::Buildrev { h, form, centre, outer, alpha, gamma } => {
            let h = element(h, ctx)?;
            let centre = centre.as_deref().map(|c| elementary(c, ctx)).transpose()?;
            let outer = outer.as_deref().map(|c| elementary(c, ctx)).transpose()?;
            let (f, rev) = match form {
                FormArg::Order4 => {
                    if !h.b().is_identity() {
                        return Err(Error::InvalidLetters("the order-4 form takes no leading basic map".into()));
                    }
                    build_reversible_order4(&Order4Params {
                        letters: h.letters().to_vec(),
                        alpha: scalar_arg(alpha.as_ref(), "alpha", ctx)?,
                        gamma: scalar_arg(gamma.as_ref(), "gamma", ctx)?,
                    })?
                }
                _ => {
                    let form = match form {
                        FormArg::Swap => InvolutoryForm::Swap,
                        FormArg::Centre => InvolutoryForm::ElementaryCentre,
                        _ => InvolutoryForm::ElementaryBoth,
                    };
                    build_reversible_involutory(&InvolutoryParams {
                        form,
                        b: h.b().clone(),
                        letters: h.letters().to_vec(),
                        centre,
                        outer,
                    })?
                }
            };
            let mut records = vec![rev_record(&rev)];
            records.extend(nf_records(&f));
            Ok(Report::ok(records))
        }
        Verb::Orbits { map, reversor, symmetry } => {
            let f = poly_map(map, ctx)?;
            orbits(&f, reversor.as_deref(), symmetry.as_deref(), &scan)
        }
        Verb::Fixpoints { map } => {
            let pts = fixed_points_fp_with(&poly_map(map, ctx)?, &scan)?;
            let mut records: Vec<Record> = pts
                .iter()
                .map(|(x, y)| Record::new(vec![kv("x", x), kv("y", y)]).with_human(format!("POINT {x} {y}")))
                .collect();
            records.push(Record::new(vec![kv("fixed", pts.len())]).with_human(format!("FIXED {}", pts.len())));
            Ok(Report::ok(records))
        }
        Verb::Spectrum { map, reversor, point } => {
            let f = poly_map(map, ctx)?;
            let r = poly_map(reversor, ctx)?;
            let holds = fixed_point_spectrum_check(&f, &r, &point_arg(point, ctx)?)?;
            let word = if holds { "holds" } else { "fails" };
            let rec = Record::new(vec![kv("spectrum", word)]).with_human(format!("SPECTRUM {word}"));
            Ok(if holds { Report::ok(vec![rec]) } else { Report::negative(vec![rec]) })
        }
    }
}

fn rev_record(rev: &ReversorWitness) -> Record {
    let text = rev.r.serialize();
    let word = text.lines().map(str::trim).collect::<Vec<_>>().join("; ");
    Record::new(vec![kv("reversor", "verified"), kv("order", rev.order), kv("word", word)]).with_human(rev.to_string())
}

fn cyclereduce(nf: &NormalForm) -> Result<Report> {
    Ok(Report::ok(match cyclically_reduce(nf) {
        CRStatus::Basic => vec![Record::new(vec![kv("status", "basic")])],
        CRStatus::InFactorConjugate { conjugator, letter } => vec![Record::new(vec![
            kv("status", "in-factor"),
            kv("letter", letter),
            kv("conjugator", word_inline(&conjugator)),
        ])],
        CRStatus::CR { conjugator, crnf } => {
            let mut out = vec![Record::new(vec![kv("status", "cr"), kv("conjugator", word_inline(&conjugator))])];
            out.extend(nf_records(&crnf));
            out
        }
    }))
}

fn conjtest(g1: &NormalForm, g2: &NormalForm) -> Result<Report> {
    same_field(g1.ctx(), g2.ctx())?;
    let (c1, r1) = reduced(g1)?;
    let (c2, r2) = reduced(g2)?;
    let not = |reason: &str| {
        Report::negative(vec![Record::new(vec![kv("conjugate", false), kv("reason", reason)])
            .with_human(format!("NOT-CONJUGATE ({reason})"))])
    };
    if !crnf_conjugacy_necessary(&r1, &r2)? {
        return Ok(not("poly-degree"));
    }
    match crnf_conjugate(&r1, &r2)? {
        // h r1 h⁻¹ = r2, so (c2 h c1⁻¹) g1 (c2 h c1⁻¹)⁻¹ = g2
        Some(h) => {
            let whole = normalize(&c2.concat(&h).concat(&c1.inverse()));
            let text = word_inline(&whole.to_word());
            Ok(Report::ok(vec![Record::new(vec![kv("conjugate", true), kv("conjugator", &text)])
                .with_human(format!("CONJUGATE conjugator={text}"))]))
        }
        None => Ok(not("no-conjugator")),
    }
}

fn symcheck(nf: &NormalForm) -> Result<Report> {
    let (c, crnf) = reduced(nf)?;
    match involutory_symmetry_of_crnf(&crnf)? {
        Some(w) => {
            let mut records = vec![Record::new(vec![kv("symmetry", "point-reflection"), kv("u", &w.u), kv("v", &w.v)])
                .with_human(w.to_string())];
            if !c.is_empty() {
                // the witness is for the cyclically reduced conjugate
                records.push(Record::new(vec![kv("conjugator", word_inline(&c))]));
            }
            Ok(Report::ok(records))
        }
        None => Ok(Report::negative(vec![Record::new(vec![kv("symmetry", "none")]).with_human("NO-SYMMETRY")])),
    }
}

fn revcheck(nf: &NormalForm, reversor: Option<&NormalForm>) -> Result<Report> {
    let (_, crnf) = reduced(nf)?;
    if !reversibility_necessary(&crnf)? {
        let pd = crnf.poly_degree()?;
        let reason = if pd.reversed().is_cyclic_shift_of(&pd) { "determinant" } else { "poly-degree" };
        return Ok(Report::negative(vec![Record::new(vec![kv("reversible", false), kv("reason", reason)])
            .with_human(format!("NOT-REVERSIBLE ({reason})"))]));
    }
    let pass = Record::new(vec![kv("reversible", "necessary-holds")]).with_human("PASSES-NECESSARY");
    let Some(r) = reversor else {
        return Ok(Report::ok(vec![pass]));
    };
    same_field(nf.ctx(), r.ctx())?;
    if !reverses(&nf.to_word(), &r.to_word()) {
        let rec = Record::new(vec![kv("reversor", "rejected")]).with_human("NOT-A-REVERSOR");
        return Ok(Report::negative(vec![pass, rec]));
    }
    let order = reversor_order_nf(r, 8)?;
    Ok(Report::ok(vec![pass, rev_record(&ReversorWitness { r: r.clone(), order })]))
}

fn orbits(f: &PolyMap, reversor: Option<&str>, symmetry: Option<&str>, scan: &ScanOptions) -> Result<Report> {
    let ctx = f.ctx();
    let perm = induced_permutation_with(f, scan)?;
    let mut records = vec![Record::new(vec![kv("field", ctx), kv("points", perm.len())])
        .with_human(format!("POINTS {} over {ctx}", perm.len()))];
    let stats = cycle_statistics(&perm);
    for (len, count) in stats.histogram() {
        records.push(
            Record::new(vec![kv("cycle_len", len), kv("count", count)])
                .with_human(format!("CYCLE len={len} count={count}")),
        );
    }
    records.push(
        Record::new(vec![kv("fixed", stats.fixed_point_count)])
            .with_human(format!("FIXED {}", stats.fixed_point_count)),
    );
    let mut code = EXIT_OK;
    if let Some(r) = reversor {
        let report = reversor_cycle_pairing_with(f, &poly_map(r, ctx)?, scan)?;
        records.push(
            Record::new(vec![kv("invariant_cycles", report.invariant_cycles), kv("involutory", report.involutory)])
                .with_human(format!("INVARIANT {} involutory={}", report.invariant_cycles, report.involutory)),
        );
        if let Some(sym) = &report.symmetric_points {
            let total: usize = sym.iter().map(|&(_, k)| k).sum();
            records.push(Record::new(vec![kv("symmetric_points", total)]).with_human(format!("SYMMETRIC {total}")));
        }
    }
    if let Some(s) = symmetry {
        let preserved = symmetry_orbit_check_with(f, &poly_map(s, ctx)?, scan)?;
        records.push(
            Record::new(vec![kv("symmetry_preserves_cycles", preserved)])
                .with_human(format!("SYMMETRY-ORBITS {}", if preserved { "preserved" } else { "broken" })),
        );
        if !preserved {
            code = EXIT_NEGATIVE;
        }
    }
    Ok(Report { records, code })
}
