//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library, and returns the exit status with a JSON (or `--human`) report.
//!
//! Exit status: 0 decided, 1 usage or input error, 2 a search cap was hit.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::{minimize, verify_decomposition, Decomposition, DEFAULT_VERIFY_CAP};
use crate::commutative::{
    decomposition_from_words, is_composite_commutative, k_factor_words, width_commutative,
};
use crate::dfa::{classify, Dfa};
use crate::error::{Error, Result};
use crate::generators::{
    gen_gridmod, gen_hitting_set, gen_random, gen_requests, HittingSetInstance, RandomFlags,
};
use crate::oracle::{brute_composite, brute_k_factor_witness, FactorPool, OracleCaps};
use crate::orbit::{extract_orbit_decomposition, is_composite_permutation, CompositeVerdict};
use crate::unary::{unary_decision, unary_structure};

#[derive(Parser, Debug)]
#[command(name = "dfa-decompose", version, about = "Decide and build DFA decompositions")]
struct Cli {
    /// Render the report as plain text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct CapArgs {
    /// Fall back to brute-force enumeration for unsupported classes.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 5)]
    max_states: usize,
    #[arg(long, default_value_t = 2)]
    max_letters: usize,
    #[arg(long, default_value_t = 50_000)]
    max_factor_enum: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_product_states: usize,
}

impl CapArgs {
    fn caps(&self) -> OracleCaps {
        OracleCaps {
            max_states: self.max_states,
            max_letters: self.max_letters,
            max_factor_enum: self.max_factor_enum,
            max_product_states: self.max_product_states,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report size and structural class.
    Classify { input: PathBuf },
    /// Decide composite or prime.
    Check {
        input: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Write factor DFAs as numbered JSON files and verify them.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Minimum number of factors.
    Width {
        input: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Decide whether at most k factors suffice.
    Bounded {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Build a named family or a random DFA.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Brute-force composite check, or k-factor check with --k.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Convert between JSON and DOT.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    Gridmod {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    HittingSet {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Requests {
        #[arg(long)]
        clients: usize,
        /// Directory for the monolith and its factors.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        permutation: bool,
        #[arg(long)]
        commutative: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

fn read_dfa(path: &Path) -> Result<Dfa> {
    let text = std::fs::read_to_string(path)?;
    let dfa = if text.trim_start().starts_with('{') {
        Dfa::from_json(&text)
    } else {
        Dfa::from_dot(&text)
    };
    dfa.map_err(|e| match e {
        Error::Parse { path: p, message } => Error::Parse {
            path: format!("{}: {p}", path.display()),
            message,
        },
        other => other,
    })
}

fn summary(dfa: &Dfa) -> Value {
    json!({
        "states": dfa.len(),
        "letters": dfa.letters(),
        "class": classify(dfa),
    })
}

fn write_or_embed(report: &mut Map<String, Value>, dfa: &Dfa, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, dfa.to_json())?;
            report.insert("written".into(), json!(path.display().to_string()));
        }
        None => {
            report.insert("dfa".into(), dfa.to_json_value());
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    Trim,
    Unary,
    Commutative,
    Orbit,
    Oracle,
}

impl Route {
    fn name(self) -> &'static str {
        match self {
            Route::Trim => "trim",
            Route::Unary => "unary",
            Route::Commutative => "commutative",
            Route::Orbit => "orbit",
            Route::Oracle => "oracle",
        }
    }
}

fn route(dfa: &Dfa, caps: &CapArgs) -> Result<Route> {
    if !dfa.is_trim() {
        return Ok(Route::Trim);
    }
    if dfa.is_unary() {
        return Ok(Route::Unary);
    }
    if dfa.is_permutation() && dfa.is_commutative() {
        return Ok(Route::Commutative);
    }
    if dfa.is_permutation() {
        return Ok(Route::Orbit);
    }
    if caps.oracle {
        return Ok(Route::Oracle);
    }
    Err(Error::ClassMismatch(
        "no dedicated algorithm for this class; rerun with --oracle".into(),
    ))
}

fn verdict_json(v: &CompositeVerdict) -> Value {
    json!({ "composite": v.composite, "reason": v.reason })
}

fn check(dfa: &Dfa, caps: &CapArgs) -> Result<(Route, Value)> {
    let r = route(dfa, caps)?;
    let result = match r {
        // the trimmed automaton is a smaller equivalent factor
        Route::Trim => json!({ "composite": true, "reason": "not-trim" }),
        Route::Unary => {
            let d = unary_decision(dfa, dfa.len())?;
            json!({ "composite": d.composite, "unary": d })
        }
        Route::Commutative => verdict_json(&is_composite_commutative(dfa)?),
        Route::Orbit => verdict_json(&is_composite_permutation(dfa)?),
        Route::Oracle => json!({ "composite": brute_composite(dfa, caps.caps())? }),
    };
    Ok((r, result))
}

fn unary_caps(dfa: &Dfa) -> OracleCaps {
    OracleCaps {
        max_states: dfa.len(),
        max_letters: 1,
        ..OracleCaps::default()
    }
}

/// Factors for `dfa`, or `None` when it is prime.
fn build_factors(dfa: &Dfa, caps: &CapArgs) -> Result<(Route, Option<Decomposition>)> {
    let r = route(dfa, caps)?;
    let verify = |factors| verify_decomposition(dfa, factors, DEFAULT_VERIFY_CAP).map(Some);
    let dec = match r {
        Route::Trim => verify(vec![minimize(dfa)])?,
        Route::Commutative => build_factors_commutative(dfa)?,
        Route::Orbit => {
            let v = is_composite_permutation(dfa)?;
            if v.composite {
                Some(extract_orbit_decomposition(dfa, &v)?)
            } else {
                None
            }
        }
        Route::Unary => {
            let shape = unary_structure(dfa)?;
            if shape.chain_len == 0 {
                return build_factors_commutative(dfa).map(|d| (r, d));
            }
            if minimize(dfa).len() < dfa.len() {
                verify(vec![minimize(dfa)])?
            } else {
                match brute_k_factor_witness(dfa, 2, unary_caps(dfa))? {
                    Some(f) => verify(f)?,
                    None => None,
                }
            }
        }
        Route::Oracle => match brute_k_factor_witness(dfa, usize::MAX, caps.caps())? {
            Some(f) => verify(f)?,
            None => None,
        },
    };
    Ok((r, dec))
}

fn build_factors_commutative(dfa: &Dfa) -> Result<Option<Decomposition>> {
    if dfa.trivial_language().is_some() && dfa.len() > 1 {
        return verify_decomposition(dfa, vec![minimize(dfa)], DEFAULT_VERIFY_CAP).map(Some);
    }
    match width_commutative(dfa) {
        Ok(w) => decomposition_from_words(dfa, &w.words).map(Some),
        Err(Error::Precondition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn decompose(dfa: &Dfa, out_dir: &Path, caps: &CapArgs) -> Result<(Route, Value)> {
    let (r, dec) = build_factors(dfa, caps)?;
    let Some(dec) = dec else {
        return Ok((r, json!({ "composite": false })));
    };
    std::fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    for (i, f) in dec.factors.iter().enumerate() {
        let path = out_dir.join(format!("factor_{}.json", i + 1));
        std::fs::write(&path, f.to_json())?;
        files.push(json!({ "file": path.display().to_string(), "states": f.len() }));
    }
    if !dec.verified {
        return Err(Error::VerificationFailed(format!("{:?}", dec.issue)));
    }
    Ok((
        r,
        json!({
            "composite": true,
            "factors": files,
            "verified": dec.verified,
        }),
    ))
}

fn oracle_width(dfa: &Dfa, caps: OracleCaps) -> Result<Option<usize>> {
    let pool = FactorPool::new(dfa, caps)?;
    for k in 1..=pool.factors.len().max(1) {
        if pool.k_factor_witness(k)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn width(dfa: &Dfa, caps: &CapArgs) -> Result<(Route, Value)> {
    let r = route(dfa, caps)?;
    let commutative_like =
        r == Route::Commutative || (r == Route::Unary && unary_structure(dfa)?.chain_len == 0);
    if commutative_like {
        return Ok(match width_commutative(dfa) {
            Ok(w) => {
                let words: Vec<String> = w.words.iter().map(|p| p.render(dfa.alphabet())).collect();
                (
                    Route::Commutative,
                    json!({ "composite": true, "width": w.width, "words": words, "parikh": w.words }),
                )
            }
            Err(Error::Precondition(_)) => (Route::Commutative, json!({ "composite": false })),
            Err(e) => return Err(e),
        });
    }
    if r == Route::Unary {
        let d = unary_decision(dfa, 2)?;
        let w = if !d.composite {
            None
        } else if unary_decision(dfa, 1)?.composite {
            Some(1)
        } else {
            Some(2)
        };
        return Ok((r, json!({ "composite": w.is_some(), "width": w })));
    }
    if !caps.oracle {
        return Err(Error::ClassMismatch(
            "exact width needs a commutative permutation or unary DFA; rerun with --oracle".into(),
        ));
    }
    let w = oracle_width(dfa, caps.caps())?;
    Ok((Route::Oracle, json!({ "composite": w.is_some(), "width": w })))
}

fn bounded(dfa: &Dfa, k: usize, caps: &CapArgs) -> Result<(Route, Value)> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let r = route(dfa, caps)?;
    let answer = match r {
        Route::Trim => true,
        Route::Unary => unary_decision(dfa, k)?.composite,
        Route::Commutative => k_factor_words(dfa, k)?.is_some(),
        Route::Orbit | Route::Oracle => {
            if !caps.oracle {
                return Err(Error::ClassMismatch(
                    "bounded decomposition for non-commutative permutation DFAs needs --oracle".into(),
                ));
            }
            brute_k_factor_witness(dfa, k, caps.caps())?.is_some()
        }
    };
    let r = if r == Route::Orbit { Route::Oracle } else { r };
    Ok((r, json!({ "k": k, "k_factor_composite": answer })))
}

fn generate(family: &Family) -> Result<Value> {
    let mut report = Map::new();
    match family {
        Family::Gridmod { n, m, out } => {
            let d = gen_gridmod(*n, *m)?;
            report.insert("input".into(), summary(&d));
            write_or_embed(&mut report, &d, out)?;
        }
        Family::HittingSet { instance, out } => {
            let inst = HittingSetInstance::from_json(&std::fs::read_to_string(instance)?)?;
            let r = gen_hitting_set(&inst)?;
            report.insert("mu".into(), json!(r.mu));
            report.insert("tau".into(), json!(r.tau));
            report.insert("factor_bound".into(), json!(r.factor_bound));
            report.insert("input".into(), summary(&r.dfa));
            write_or_embed(&mut report, &r.dfa, out)?;
        }
        Family::Requests { clients, out_dir } => {
            let (mono, factors) = gen_requests(*clients)?;
            let dec = verify_decomposition(&mono, factors.clone(), DEFAULT_VERIFY_CAP)?;
            report.insert("input".into(), summary(&mono));
            report.insert("verified".into(), json!(dec.verified));
            report.insert("issue".into(), json!(dec.issue));
            match out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    std::fs::write(dir.join("monolith.json"), mono.to_json())?;
                    for (i, f) in factors.iter().enumerate() {
                        std::fs::write(dir.join(format!("factor_{}.json", i + 1)), f.to_json())?;
                    }
                    report.insert("written".into(), json!(dir.display().to_string()));
                }
                None => {
                    report.insert("dfa".into(), mono.to_json_value());
                    report.insert(
                        "factors".into(),
                        Value::Array(factors.iter().map(Dfa::to_json_value).collect()),
                    );
                }
            }
        }
        Family::Random {
            n,
            letters,
            seed,
            permutation,
            commutative,
            out,
        } => {
            let flags = RandomFlags {
                permutation: *permutation,
                commutative: *commutative,
            };
            let d = gen_random(*n, *letters, *seed, flags)?;
            report.insert("input".into(), summary(&d));
            write_or_embed(&mut report, &d, out)?;
        }
    }
    Ok(Value::Object(report))
}

fn oracle(dfa: &Dfa, k: Option<usize>, caps: &CapArgs) -> Result<Value> {
    Ok(match k {
        None => json!({ "composite": brute_composite(dfa, caps.caps())? }),
        Some(k) => {
            let w = brute_k_factor_witness(dfa, k, caps.caps())?;
            json!({
                "k": k,
                "k_factor_composite": w.is_some(),
                "factor_sizes": w.map(|f| f.iter().map(Dfa::len).collect::<Vec<_>>()),
            })
        }
    })
}

fn convert(input: &Path, to: Format, out: &Option<PathBuf>) -> Result<Value> {
    let dfa = read_dfa(input)?;
    let text = match to {
        Format::Json => dfa.to_json(),
        Format::Dot => dfa.to_dot(),
    };
    Ok(match out {
        Some(p) => {
            std::fs::write(p, &text)?;
            json!({ "written": p.display().to_string() })
        }
        None => json!({ "output": text }),
    })
}

fn dispatch(cli: &Cli) -> Result<Value> {
    let with_input = |name: &str, dfa: &Dfa, r: Route, result: Value| {
        json!({ "command": name, "input": summary(dfa), "path": r.name(), "result": result })
    };
    Ok(match &cli.command {
        Command::Classify { input } => {
            let d = read_dfa(input)?;
            json!({ "command": "classify", "input": summary(&d) })
        }
        Command::Check { input, caps } => {
            let d = read_dfa(input)?;
            let (r, v) = check(&d, caps)?;
            with_input("check", &d, r, v)
        }
        Command::Decompose {
            input,
            out_dir,
            caps,
        } => {
            let d = read_dfa(input)?;
            let (r, v) = decompose(&d, out_dir, caps)?;
            with_input("decompose", &d, r, v)
        }
        Command::Width { input, caps } => {
            let d = read_dfa(input)?;
            let (r, v) = width(&d, caps)?;
            with_input("width", &d, r, v)
        }
        Command::Bounded { input, k, caps } => {
            let d = read_dfa(input)?;
            let (r, v) = bounded(&d, *k, caps)?;
            with_input("bounded", &d, r, v)
        }
        Command::Generate { family } => {
            let mut v = generate(family)?;
            v["command"] = json!("generate");
            v
        }
        Command::Oracle { input, k, caps } => {
            let d = read_dfa(input)?;
            let v = oracle(&d, *k, caps)?;
            with_input("oracle", &d, Route::Oracle, v)
        }
        Command::Convert { input, to, out } => {
            let mut v = convert(input, *to, out)?;
            v["command"] = json!("convert");
            v
        }
    })
}

fn render_human(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{:indent$}{k}:\n", ""));
                        render_human(val, indent + 2, out);
                    }
                    _ => out.push_str(&format!("{:indent$}{k}: {}\n", "", flat(val))),
                }
            }
        }
        other => out.push_str(&format!("{:indent$}{}\n", "", flat(other))),
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.to_string());
        }
    };
    let start = Instant::now();
    let (code, mut report) = match dispatch(&cli) {
        Ok(v) => (0, v),
        Err(e) => {
            let code = if e.is_inconclusive() { 2 } else { 1 };
            let status = if code == 2 { "inconclusive" } else { "error" };
            (code, json!({ "status": status, "error": e.to_string() }))
        }
    };
    report["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    let text = if cli.human {
        let mut s = String::new();
        render_human(&report, 0, &mut s);
        s
    } else {
        serde_json::to_string_pretty(&report).expect("report serializes")
    };
    (code, text)
}
