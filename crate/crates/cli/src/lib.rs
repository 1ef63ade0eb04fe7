//! Command-line front end: ad-hoc queries and named verification suites.

pub mod report;
pub mod suites;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use biserial::arquiver::{self, ComponentView, SweepOptions};
use biserial::field::FieldSpec;
use biserial::homology::{self, ext1_dim, hom_basis_string, intertwiner_space, stable_end_dim, stable_hom_dim};
use biserial::mod2defo;
use biserial::par;
use biserial::presentations::{Family, QuiverPresentation};
use biserial::repmod::{band_module, projective_module, string_module, Representation};
use biserial::strings::{self, ar_neighbors, canonical_band, canonical_string, enumerate_bands, enumerate_strings, format_word, parse_word};
use biserial::wittrings;
use biserial::Error;

pub use report::SuiteReport;
pub use suites::{Params, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "biserial", version, about = "Exact computations for the psl1, psl2 and a7 special biserial algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Block family.
    #[arg(long, global = true, value_parser = ["psl1", "psl2", "a7"])]
    pub family: Option<String>,
    /// Defect parameter (defect group of order 2^d).
    #[arg(long, global = true)]
    pub d: Option<u32>,
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Work over GF(2^e).
    #[arg(long, global = true)]
    pub field_ext: Option<u32>,
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for randomized sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and validate a presentation and show its projectives.
    Algebra,
    /// Enumerate strings and bands, or inspect one word.
    Strings {
        #[arg(long)]
        word: Option<String>,
    },
    /// Construct a string, band or projective module and inspect it.
    Module {
        #[arg(long)]
        word: Option<String>,
        /// Treat the word as a band.
        #[arg(long)]
        band: bool,
        #[arg(long, default_value_t = 1)]
        lambda: u8,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Projective indecomposable at this vertex instead of a word.
        #[arg(long)]
        projective: Option<usize>,
    },
    /// Hom, stable Hom and Ext^1 between two string modules.
    Hom {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Stable End = k sweep.
    Classify {
        /// Write the component graphs (node-link JSON) here.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Mod-2 universal deformation verifier for a uniserial string module.
    Udr {
        #[arg(long)]
        word: Option<String>,
    },
    /// Witt-ring identities over Z.
    Witt,
    /// Run a named verification suite.
    Suite { name: String },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: msg }
    }
}

struct Rendered {
    json: Value,
    md: Option<String>,
    text: Option<String>,
    passed: bool,
}

impl Rendered {
    fn plain(json: Value, passed: bool) -> Rendered {
        Rendered { json, md: None, text: None, passed }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn text_of(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {}\n", compact(v))).collect(),
        other => format!("{}\n", compact(other)),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::InvalidParameter(_) | Error::Parse(_) | Error::UnknownArrow(_) | Error::InvalidString(_) | Error::NotABand(_) | Error::ZeroLambda)
}

/// Parse `argv` (including the program name) and execute.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 { Outcome { code, stdout: msg, stderr: String::new() } } else { Outcome::usage(msg) };
        }
    };
    let jobs = cli.jobs;
    let result = par::with_jobs(jobs, || dispatch(&cli));
    match result {
        Ok(r) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&r.json).expect("serializable") + "\n",
                Format::Md => r.md.unwrap_or_else(|| format!("```json\n{}\n```\n", serde_json::to_string_pretty(&r.json).expect("serializable"))),
                Format::Text => r.text.unwrap_or_else(|| text_of(&r.json)),
            };
            let code = if r.passed { 0 } else { 1 };
            match &cli.out {
                Some(path) => match fs::write(path, &body) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
                },
                None => Outcome { code, stdout: body, stderr: String::new() },
            }
        }
        Err(e) if is_usage(&e) => Outcome::usage(format!("error: {e}\n")),
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn family(cli: &Cli) -> biserial::Result<Family> {
    Family::parse(cli.family.as_deref().unwrap_or("psl1"))
}

fn presentation(cli: &Cli) -> biserial::Result<QuiverPresentation> {
    let f = family(cli)?;
    f.build(cli.d.unwrap_or(3))
}

fn field(cli: &Cli) -> biserial::Result<FieldSpec> {
    FieldSpec::new(cli.field_ext.unwrap_or(1))
}

fn params(cli: &Cli) -> biserial::Result<Params> {
    Ok(Params {
        family: cli.family.as_deref().map(Family::parse).transpose()?,
        d: cli.d,
        max_len: cli.max_len,
        field_ext: cli.field_ext,
        radius: cli.radius,
        seed: cli.seed,
    })
}

fn module_summary(p: &QuiverPresentation, m: &Representation) -> biserial::Result<Value> {
    let om = homology::omega(p, m)?;
    Ok(json!({
        "provenance": mod2defo::describe(&m.provenance),
        "field_extension": m.field.e,
        "dimension": m.dim(),
        "dimension_vector": m.dims,
        "radical_series": m.radical_series(p),
        "top": m.top(p),
        "socle": m.socle(p),
        "uniserial": m.is_uniserial(p),
        "dim_end": intertwiner_space(p, m, m)?.dim(),
        "dim_stable_end": stable_end_dim(p, m)?,
        "dim_ext1": ext1_dim(p, m, m)?,
        "omega_dimension": om.dim(),
    }))
}

fn dispatch(cli: &Cli) -> biserial::Result<Rendered> {
    match &cli.command {
        Command::Algebra => {
            let p = presentation(cli)?;
            let v = p.validate();
            let mut projs = Vec::new();
            for u in 0..p.vertices {
                let m = projective_module(&p, u, field(cli)?)?;
                projs.push(json!({"vertex": u, "dimension": m.dim(), "radical_series": m.radical_series(&p), "top": m.top(&p), "socle": m.socle(&p)}));
            }
            let text = {
                let mut s = format!("{} ({})\nvalidation: {}\n", p.tag(), p.fingerprint(), if v.passed { "pass" } else { "FAIL" });
                for c in &v.checks {
                    s.push_str(&format!("  {} {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name));
                }
                for u in 0..p.vertices {
                    let m = projective_module(&p, u, FieldSpec::default())?;
                    let rs: Vec<String> = m.radical_series(&p).iter().map(|l| format!("{l:?}")).collect();
                    s.push_str(&format!("P{u}: dim {}, radical series {}\n", m.dim(), rs.join(" ")));
                }
                s
            };
            let json = json!({"presentation": to_json(&p.to_document()), "fingerprint": p.fingerprint(), "validation": to_json(&v), "projectives": projs});
            Ok(Rendered { json, md: None, text: Some(text), passed: v.passed })
        }
        Command::Strings { word } => {
            let p = presentation(cli)?;
            match word {
                Some(w) => {
                    let s = parse_word(&p, w)?;
                    let valid = strings::is_valid_string(&p, &s);
                    let band = strings::is_band(&p, &s);
                    let mut v = json!({"word": w, "valid_string": valid, "band": band, "length": s.len()});
                    if valid {
                        let c = canonical_string(&p, &s)?;
                        v["canonical"] = json!(format_word(&p, &c));
                        v["dimension_vector"] = json!(s.dimension_vector(&p));
                        v["projective"] = json!(strings::is_projective_string(&p, &s));
                        if let Ok(n) = ar_neighbors(&p, &s) {
                            let f = |x: &Option<strings::StringWord>| x.as_ref().map(|x| format_word(&p, x));
                            v["hooks"] = json!({"right": f(&n.h_right), "left": f(&n.h_left)});
                            v["cohooks"] = json!({"right": f(&n.c_right), "left": f(&n.c_left)});
                            v["tau"] = json!(strings::tau_string(&p, &s).map(|t| format_word(&p, &t)));
                        }
                    }
                    Ok(Rendered::plain(v, valid || band))
                }
                None => {
                    let max_len = cli.max_len.unwrap_or(4);
                    let ss = enumerate_strings(&p, max_len);
                    let bs = enumerate_bands(&p, max_len);
                    let v = json!({
                        "presentation": p.tag(),
                        "max_len": max_len,
                        "string_count": ss.len(),
                        "band_count": bs.len(),
                        "strings": ss.iter().map(|s| format_word(&p, s)).collect::<Vec<_>>(),
                        "bands": bs.iter().map(|b| format_word(&p, &b.word)).collect::<Vec<_>>(),
                    });
                    let text = format!(
                        "{}: {} strings and {} bands of length <= {max_len}\n{}\n",
                        p.tag(),
                        ss.len(),
                        bs.len(),
                        ss.iter().map(|s| format_word(&p, s)).collect::<Vec<_>>().join("\n")
                    );
                    Ok(Rendered { json: v, md: None, text: Some(text), passed: true })
                }
            }
        }
        Command::Module { word, band, lambda, m, projective } => {
            let p = presentation(cli)?;
            let f = field(cli)?;
            let module = match (projective, word) {
                (Some(u), _) => projective_module(&p, *u, f)?,
                (None, Some(w)) if *band => band_module(&p, &canonical_band(&p, &parse_word(&p, w)?)?, *lambda, *m, f)?,
                (None, Some(w)) => string_module(&p, &parse_word(&p, w)?, f)?,
                (None, None) => return Err(Error::InvalidParameter("module needs --word or --projective".into())),
            };
            let mut v = module_summary(&p, &module)?;
            v["document"] = to_json(&module.to_document(&p));
            Ok(Rendered::plain(v, true))
        }
        Command::Hom { from, to } => {
            let p = presentation(cli)?;
            let f = field(cli)?;
            let (s, t) = (parse_word(&p, from)?, parse_word(&p, to)?);
            let (ms, mt) = (string_module(&p, &s, f)?, string_module(&p, &t, f)?);
            let solver = intertwiner_space(&p, &ms, &mt)?.dim();
            let comb = hom_basis_string(&p, &s, &t, f)?.dim();
            let v = json!({
                "from": format_word(&p, &s),
                "to": format_word(&p, &t),
                "dim_hom": solver,
                "dim_hom_combinatorial": comb,
                "dim_stable_hom": stable_hom_dim(&p, &ms, &mt)?,
                "dim_ext1": ext1_dim(&p, &ms, &mt)?,
            });
            Ok(Rendered::plain(v, solver == comb))
        }
        Command::Classify { emit_graph } => {
            let p = presentation(cli)?;
            let mut opts = SweepOptions::new(cli.max_len.unwrap_or(10));
            if let Some(e) = cli.field_ext {
                opts.field_ext = e;
            }
            let t = arquiver::classify_with(&p, &opts)?;
            if let Some(path) = emit_graph {
                let radius = cli.radius.unwrap_or(4);
                let mut graphs = Vec::new();
                for s in arquiver::family_seeds(&p) {
                    let view = ComponentView::explore(&p, &s.word, radius)?;
                    graphs.push(json!({"label": s.label, "component": to_json(&view), "graph": view.to_adjacency_json()}));
                }
                let doc = json!({"format_version": biserial::FORMAT_VERSION, "presentation": p.tag(), "components": graphs});
                fs::write(path, serde_json::to_string_pretty(&doc).expect("serializable"))
                    .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))?;
            }
            let md = t.to_markdown();
            Ok(Rendered { passed: t.violations().is_empty(), json: to_json(&t), text: Some(md.clone()), md: Some(md) })
        }
        Command::Udr { word } => {
            let p = presentation(cli)?;
            let default = match family(cli)? {
                Family::Psl1 => "be- de- et-",
                Family::Psl2 => "de",
                Family::A7 => "1_1",
            };
            let y = string_module(&p, &parse_word(&p, word.as_deref().unwrap_or(default))?, FieldSpec::default())?;
            let r = mod2defo::examine_uniserial(&p, &y, cli.seed.unwrap_or(suites::DEFAULT_SEED))?;
            let mut text = format!("{} on {}\n", r.subject, r.presentation);
            for c in &r.checks {
                text.push_str(&format!("  {} {}: {} ({})\n", if c.passed { "pass" } else { "FAIL" }, c.id, c.description, c.observed));
            }
            text.push_str(&format!("verdict: {}\n", r.verdict.clone().unwrap_or_else(|| "no verdict".into())));
            Ok(Rendered { passed: r.passed(), json: to_json(&r), md: None, text: Some(text) })
        }
        Command::Witt => {
            let ds: Vec<u32> = match cli.d {
                Some(d) => vec![d],
                None => (3..=12).collect(),
            };
            let reports = wittrings::witt_sweep(&ds, false)?;
            let passed = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("p_{}(t) = {}\n", r.d, r.pd_poly));
                text.push_str(&format!(
                    "  degree {}, monic {}, lower coefficients even {}, mod 2 = {}\n  rho identity {}, theta identity {}\n",
                    r.degree,
                    r.monic,
                    r.lower_coefficients_even,
                    r.mod2_image,
                    verdict(r.rho.passed()),
                    verdict(r.theta_ok)
                ));
                for l in &r.lattices {
                    text.push_str(&format!("  {:?} rank {} torsion-free {} certified {}\n", l.kind, l.rank, l.torsion_free, l.certified));
                }
                text.push_str(&format!("  mod-2 ring {}\n", r.mod2_presentation.ring));
            }
            let json = if reports.len() == 1 { to_json(&reports[0]) } else { to_json(&reports) };
            Ok(Rendered { json, md: None, text: Some(text), passed })
        }
        Command::Suite { name } => {
            let r = suites::run_suite(name, &params(cli)?)?;
            Ok(Rendered { passed: r.passed(), json: to_json(&r), md: Some(r.to_markdown()), text: Some(r.to_text()) })
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}
