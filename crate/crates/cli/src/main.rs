use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use monvar::blocks::{classify_block, decompose, full_decompose};
use monvar::derive::{derives, DeriveLimits, DeriveOutcome};
use monvar::families::{
    b_zeta_swap, build_a_capped, build_a_prime_capped, build_b, build_b_prime, build_b_variant,
    build_c_capped, build_d_capped, build_e, build_f, sigma1, sigma2, sigma3, sigma_k, variety_basis,
    DEFAULT_LETTER_CAP,
};
use monvar::monoid::satisfies_identity;
use monvar::verify::{run_all, run_check, Mode, VerifyReport};
use monvar::word::Substitution;
use monvar::{holds_in, is_isoterm, parse_word, FiniteMonoid, Identity, IdentitySystem, VarietyId, Word};
use serde_json::json;

mod cache;

/// Word problems, block decompositions and Rees quotient monoids for small
/// monoid varieties.
#[derive(Parser)]
#[command(name = "monvar", version)]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the block/subblock decomposition of a word
    Decompose { word: String },
    /// Decide an identity in a variety
    Decide {
        #[arg(long)]
        variety: VarietyId,
        #[arg(long)]
        identity: String,
    },
    /// Decide whether a reduced word is an isoterm for M or N
    Isoterm {
        #[arg(long)]
        variety: VarietyId,
        word: String,
    },
    /// Build Rees quotient monoids S(W)
    Sw {
        #[command(subcommand)]
        action: SwAction,
    },
    /// Check an identity in a finite monoid
    Check(CheckArgs),
    /// Print words of the indexed families, variety bases and a_n systems
    Gen(GenArgs),
    /// Search for a derivation of an identity from an identity system
    Derive(DeriveArgs),
    /// Run the acceptance battery
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
        /// Run a single check by number
        #[arg(long)]
        check: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SwAction {
    /// Print size and basic facts; optionally save the table
    Build {
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the multiplication table
    Table {
        #[arg(required = true)]
        words: Vec<String>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Monoid table in JSON
    #[arg(long, conflicts_with = "sw", required_unless_present = "sw")]
    monoid: Option<PathBuf>,
    /// Use S(W) for these words instead of a table file
    #[arg(long, num_args = 1..)]
    sw: Vec<String>,
    #[arg(long)]
    identity: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    Basis,
    #[value(name = "sigmaK")]
    SigmaK,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// Index arguments: n for a, b, c; n k for d; m for e, f; a variety for
    /// basis; comma-separated n values for sigmaK
    args: Vec<String>,
    /// The primed word (leading pair swapped)
    #[arg(long)]
    prime: bool,
    /// For b: `swap:l` exchanges x_{2l+1} and y_{2l+1} in the trailing factors
    #[arg(long)]
    zeta: Vec<String>,
    /// Largest n kept by sigmaK
    #[arg(long, default_value_t = 2)]
    cap: usize,
    /// Largest word length produced
    #[arg(long, default_value_t = DEFAULT_LETTER_CAP)]
    max_letters: usize,
}

#[derive(Args)]
struct DeriveArgs {
    /// Identity file: one `[name:] LHS = RHS` per line
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    system: Option<PathBuf>,
    /// sigma1, sigma2, sigma3 or a variety name for its basis
    #[arg(long)]
    builtin: Option<String>,
    #[arg(long)]
    identity: String,
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Defaults to the longer side plus 2
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    max_states: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn parse_identity(text: &str) -> Result<Identity> {
    text.parse().with_context(|| format!("bad identity {text:?}"))
}

fn parse_words(texts: &[String]) -> Result<Vec<Word>> {
    texts
        .iter()
        .map(|t| parse_word(t).with_context(|| format!("bad word {t:?}")))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Decompose { word } => decompose_cmd(&word, json)?,
        Command::Decide { variety, identity } => {
            let id = parse_identity(&identity)?;
            let v = holds_in(variety, &id)?;
            if json {
                print_json(&json!({ "variety": variety.to_string(), "identity": id, "verdict": v }));
            } else {
                let method = serde_json::to_value(v.method)?;
                let method = method.as_str().unwrap_or_default();
                let verb = if v.holds { "holds" } else { "fails" };
                println!("{verb} in {variety} ({method})");
                if let Some(w) = &v.witness {
                    println!("witness: {w}");
                }
            }
        }
        Command::Isoterm { variety, word } => {
            let w = parse_word(&word)?;
            let iso = is_isoterm(variety, &w)?;
            if json {
                print_json(&json!({ "variety": variety.to_string(), "word": w, "isoterm": iso }));
            } else {
                println!("{w} is {}an isoterm for {variety}", if iso { "" } else { "not " });
            }
        }
        Command::Sw { action } => sw_cmd(action, json)?,
        Command::Check(args) => check_cmd(args, json)?,
        Command::Gen(args) => gen_cmd(args, json)?,
        Command::Derive(args) => derive_cmd(args, json)?,
        Command::Verify { full, check, .. } => {
            let mode = if full { Mode::Full } else { Mode::Quick };
            let report = match check {
                Some(id) => VerifyReport {
                    mode,
                    checks: vec![run_check(mode, id).ok_or_else(|| anyhow!("no check numbered {id}"))?],
                },
                None => run_all(mode),
            };
            if json {
                print_json(&serde_json::to_value(&report)?);
            } else {
                println!("{report}");
            }
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn decompose_cmd(word: &str, json: bool) -> Result<()> {
    let w = parse_word(word)?;
    match full_decompose(&w) {
        Ok(f) => {
            if json {
                print_json(&json!({
                    "word": w,
                    "reduced": true,
                    "display": f.to_string(),
                    "dividers": f.dividers,
                    "blocks": f.blocks,
                }));
            } else {
                println!("{f}");
            }
        }
        Err(_) => {
            let d = decompose(&w);
            let classes: Vec<_> = (0..d.num_blocks()).map(|i| classify_block(&w, &d, i)).collect();
            if json {
                let blocks: Vec<_> = d
                    .blocks
                    .iter()
                    .zip(&classes)
                    .map(|(b, c)| json!({ "letters": b, "class": c }))
                    .collect();
                print_json(&json!({
                    "word": w,
                    "reduced": false,
                    "dividers": d.dividers,
                    "blocks": blocks,
                }));
            } else {
                let mut parts = Vec::new();
                for (t, b) in d.dividers.iter().zip(&d.blocks) {
                    if let Some(t) = t {
                        parts.push(format!("_{t}_"));
                    }
                    if !b.is_empty() {
                        parts.push(b.to_string());
                    }
                }
                println!("{} (not reduced)", parts.join(" "));
            }
        }
    }
    Ok(())
}

fn describe(m: &FiniteMonoid) -> serde_json::Value {
    json!({
        "size": m.size(),
        "identity": m.name(m.identity()),
        "zero": m.zero().map(|z| m.name(z).to_owned()),
        "commutative": m.is_commutative(),
    })
}

fn sw_cmd(action: SwAction, json: bool) -> Result<()> {
    match action {
        SwAction::Build { words, out } => {
            let ws = parse_words(&words)?;
            let m = cache::load_or_build(&ws)?;
            if let Some(path) = &out {
                fs::write(path, serde_json::to_string_pretty(&m)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let names: Vec<String> = cache::normalize(&ws).iter().map(Word::to_string).collect();
            if json {
                let mut v = describe(&m);
                v["words"] = json!(names);
                v["key"] = json!(cache::key(&ws));
                print_json(&v);
            } else {
                println!("S({}): {} elements", names.join(", "), m.size());
                println!("identity: {}", m.name(m.identity()));
                match m.zero() {
                    Some(z) => println!("zero: {}", m.name(z)),
                    None => println!("zero: none"),
                }
                println!("commutative: {}", if m.is_commutative() { "yes" } else { "no" });
            }
        }
        SwAction::Table { words } => {
            let m = cache::load_or_build(&parse_words(&words)?)?;
            if json {
                print_json(&serde_json::to_value(&m)?);
            } else {
                print!("{}", render_table(&m));
            }
        }
    }
    Ok(())
}

fn render_table(m: &FiniteMonoid) -> String {
    let width = m.names().iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("{:>width$} |", "");
    for n in m.names() {
        out.push_str(&format!(" {n:>width$}"));
    }
    out.push('\n');
    out.push_str(&"-".repeat(width + 2 + (width + 1) * m.size()));
    out.push('\n');
    for a in 0..m.size() {
        out.push_str(&format!("{:>width$} |", m.name(a)));
        for &p in m.row(a) {
            out.push_str(&format!(" {:>width$}", m.name(p)));
        }
        out.push('\n');
    }
    out
}

fn check_cmd(args: CheckArgs, json: bool) -> Result<()> {
    let m = match &args.monoid {
        Some(path) => cache::read_monoid(path)?,
        None => cache::load_or_build(&parse_words(&args.sw)?)?,
    };
    let id = parse_identity(&args.identity)?;
    let s = satisfies_identity(&m, &id);
    if json {
        print_json(&json!({ "identity": id, "size": m.size(), "holds": s.holds, "witness": s.witness }));
    } else if s.holds {
        println!("holds");
    } else {
        println!("fails");
        if let Some(w) = &s.witness {
            println!("witness: {w}");
        }
    }
    Ok(())
}

fn index_arg(args: &[String], i: usize, what: &str) -> Result<usize> {
    let text = args.get(i).ok_or_else(|| anyhow!("missing {what}"))?;
    text.parse().with_context(|| format!("{what} must be a non-negative integer, got {text:?}"))
}

fn gen_cmd(args: GenArgs, json: bool) -> Result<()> {
    let a = &args.args;
    let cap = args.max_letters;
    if !args.zeta.is_empty() && !matches!(args.family, Family::B) {
        bail!("--zeta applies to b only");
    }
    let (label, word) = match args.family {
        Family::A => {
            let n = index_arg(a, 0, "n")?;
            let w = if args.prime { build_a_prime_capped(n, cap) } else { build_a_capped(n, cap) }?;
            (format!("a_{n}{}", if args.prime { "'" } else { "" }), w)
        }
        Family::B => {
            let n = index_arg(a, 0, "n")?;
            if !args.zeta.is_empty() {
                if args.prime {
                    bail!("--zeta and --prime cannot be combined");
                }
                let mut zetas = vec![Substitution::identity(); n];
                for z in &args.zeta {
                    let l: usize = z
                        .strip_prefix("swap:")
                        .and_then(|l| l.parse().ok())
                        .ok_or_else(|| anyhow!("--zeta expects swap:l, got {z:?}"))?;
                    if l >= n {
                        bail!("swap:{l} is out of range for n = {n}");
                    }
                    zetas[l] = b_zeta_swap(l);
                }
                (format!("b_{n} variant"), build_b_variant(n, &zetas)?)
            } else if args.prime {
                (format!("b_{n}'"), build_b_prime(n)?)
            } else {
                (format!("b_{n}"), build_b(n)?)
            }
        }
        Family::C => {
            let n = index_arg(a, 0, "n")?;
            (format!("c_{n}"), build_c_capped(n, cap)?)
        }
        Family::D => {
            let (n, k) = (index_arg(a, 0, "n")?, index_arg(a, 1, "k")?);
            (format!("d_{n}^({k})"), build_d_capped(n, k, cap)?)
        }
        Family::E => {
            let m = index_arg(a, 0, "m")?;
            (format!("e_{m}"), build_e(m))
        }
        Family::F => {
            let m = index_arg(a, 0, "m")?;
            (format!("f_{m}"), build_f(m))
        }
        Family::Basis => {
            let v: VarietyId = a.first().ok_or_else(|| anyhow!("missing variety"))?.parse()?;
            return print_system(&variety_basis(v), json);
        }
        Family::SigmaK => {
            let list = a.first().ok_or_else(|| anyhow!("missing comma-separated n values"))?;
            let k = list
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<BTreeSet<_>, _>>()
                .with_context(|| format!("bad n list {list:?}"))?;
            return print_system(&sigma_k(&k, args.cap)?, json);
        }
    };
    if json {
        print_json(&json!({
            "family": label,
            "word": word,
            "length": word.len(),
            "letters": word.content().len(),
        }));
    } else {
        println!("{word}");
    }
    Ok(())
}

fn print_system(sys: &IdentitySystem, json: bool) -> Result<()> {
    if json {
        print_json(&serde_json::to_value(sys)?);
    } else {
        print!("{sys}");
    }
    Ok(())
}

fn builtin_system(name: &str) -> Result<IdentitySystem> {
    let single = |id: Identity| IdentitySystem::from_identities(name, [id]).expect("one identity");
    Ok(match name {
        "sigma1" => single(sigma1()),
        "sigma2" => single(sigma2()),
        "sigma3" => single(sigma3()),
        other => variety_basis(
            other
                .parse()
                .map_err(|_| anyhow!("unknown builtin {other:?}: use sigma1, sigma2, sigma3 or a variety"))?,
        ),
    })
}

fn derive_cmd(args: DeriveArgs, json: bool) -> Result<()> {
    let sys = match (&args.system, &args.builtin) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            text.parse::<IdentitySystem>()
                .with_context(|| format!("parsing {}", path.display()))?
        }
        (None, Some(name)) => builtin_system(name)?,
        (None, None) => unreachable!("clap requires one of --system, --builtin"),
    };
    let id = parse_identity(&args.identity)?;
    let mut limits = DeriveLimits::for_identity(&id);
    limits.max_depth = args.depth;
    limits.max_states = args.max_states;
    if let Some(l) = args.max_len {
        limits.max_len = l;
    }
    let out = derives(&sys, &id, limits)?;
    if json {
        print_json(&json!({ "identity": id, "limits": limits, "outcome": out }));
        return Ok(());
    }
    match out {
        DeriveOutcome::Derived(t) => print!("{t}"),
        DeriveOutcome::Exhausted(e) => {
            let reason = serde_json::to_value(e.reason)?;
            println!(
                "no derivation found within bounds ({}; {} states, depth {})",
                reason.as_str().unwrap_or_default(),
                e.states,
                e.depth
            );
        }
    }
    Ok(())
}
