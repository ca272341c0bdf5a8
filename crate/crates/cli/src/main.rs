//! `shiftlab`: entropy, block counts, balance diagnostics and β-expansions
//! from the command line.
//!
//! Every command prints a JSON report (or CSV with `--format csv`) to stdout
//! or to `--out PATH`. Exit codes: 0 success, 2 usage or input error,
//! 3 numerical failure, 4 budget exceeded. `SHIFTLAB_MAX_CELLS` caps the
//! number of leaves or cells a command may produce.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use shiftlab_core::beta::{
    continuum_navigator, digits_from_sgap, ehj_classify, enumerate_expansions_of_one, expansion_from_sgap,
    greedy_expansion, komornik_loreti_constant, lazy_expansion, sgap_from_expansion, spec_construction_lazy,
    univoque_check, BetaContext, DigitSequence, EhjClassification, ExpansionPrefix, UnivoqueStatus,
};
use shiftlab_core::blocks::{
    build_sft_automaton, even_shift_automaton, follower_count, sgap_count_table, BlockCountTable, Word,
    DEFAULT_SUBSET_BUDGET,
};
use shiftlab_core::entropy::{solve_sgap_entropy_in_base, LogBase};
use shiftlab_core::numeric::{log2_big, rational_to_f64};
use shiftlab_core::props::{balanced_scan, bsm_estimate, gibbs_diagnostics_with_band};
use shiftlab_core::sgap::SGapSpec;

use report::{csv, emit, json, Failure, Format};

const DEFAULT_MAX_CELLS: usize = 100_000;

#[derive(Parser)]
#[command(name = "shiftlab", version, about = "S-gap shifts, block counts and β-expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of X(S) from Σ_{n∈S} λ^{-(n+1)} = 1.
    Entropy(EntropyArgs),
    /// SFT, mixing, almost specification and specification for X(S).
    Classify(ClassifyArgs),
    /// Exact block counts |B_n|.
    Blocks(BlocksArgs),
    /// Bounded supermultiplicativity constant over a window.
    CheckBsm(BsmArgs),
    /// Balance constant over a window of words and follower lengths.
    CheckBalanced(BalancedArgs),
    /// Finite-level Gibbs inequalities.
    Gibbs(GibbsArgs),
    /// Greedy, lazy or constructed expansion in base λ.
    Expand(ExpandArgs),
    /// All expansions of 1 up to a depth.
    EnumerateOne(EnumerateArgs),
    /// Komornik–Loreti constant.
    Kl(KlArgs),
    /// Expansion of 1 ↔ gap set.
    Bridge(BridgeArgs),
}

#[derive(Args, Serialize)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ShiftArgs {
    /// Gap set: `{0,2,5}`, `co{0}` or `ep:pre=1,0;pat=0,1`.
    #[arg(long = "s", conflicts_with_all = ["sft", "even_shift"])]
    s: Option<String>,
    /// Comma-separated forbidden blocks.
    #[arg(long, requires = "alphabet", conflicts_with = "even_shift")]
    sft: Option<String>,
    /// Letters of the SFT alphabet, e.g. `abcd`.
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long)]
    even_shift: bool,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum Base {
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
    #[value(name = "e")]
    #[serde(rename = "e")]
    E,
}

#[derive(Args, Serialize)]
struct EntropyArgs {
    #[arg(long = "s")]
    s: String,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Base::Two)]
    base: Base,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct ClassifyArgs {
    #[arg(long = "s")]
    s: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct BlocksArgs {
    #[command(flatten)]
    shift: ShiftArgs,
    #[arg(long)]
    n: usize,
    /// Also count followers of length n of this word (gap sets only).
    #[arg(long)]
    word: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct BsmArgs {
    #[command(flatten)]
    shift: ShiftArgs,
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct BalancedArgs {
    #[arg(long = "s")]
    s: String,
    /// Largest follower length r.
    #[arg(long, default_value_t = 12)]
    depth: usize,
    /// Largest word length tested.
    #[arg(long, default_value_t = 34)]
    word_length: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct GibbsArgs {
    #[arg(long = "s")]
    s: String,
    #[arg(long, default_value_t = 14)]
    depth: usize,
    /// Entropy in bits; computed from S when omitted.
    #[arg(long)]
    h: Option<f64>,
    /// Fixed band `c1,c2` instead of the observed constants.
    #[arg(long)]
    band: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Greedy,
    Lazy,
    /// `1, 1` then the lazy map, for λ ≥ φ.
    Construction,
    /// The continuum construction for λ < φ, driven by `--choices`.
    Navigator,
}

#[derive(Args, Serialize)]
struct ExpandArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    x: f64,
    #[arg(long, default_value_t = 20)]
    depth: usize,
    #[arg(long, value_enum, default_value_t = Mode::Greedy)]
    mode: Mode,
    /// Choice bits for the navigator, e.g. `0110`.
    #[arg(long, default_value = "")]
    choices: String,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct EnumerateArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 12)]
    depth: usize,
    /// Leaf budget; defaults to SHIFTLAB_MAX_CELLS.
    #[arg(long)]
    max_leaves: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Uncertainty of λ used in orbit error bounds.
    #[arg(long)]
    lambda_uncertainty: Option<f64>,
    /// Attach the golden-base family of each leaf.
    #[arg(long)]
    ehj: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct KlArgs {
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Depth of the uniqueness check on the computed base.
    #[arg(long, default_value_t = 40)]
    depth: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct BridgeArgs {
    /// Digits `a_1 a_2 …`, e.g. `11(0)` or `0(1)`.
    #[arg(long, conflicts_with = "s", required_unless_present = "s")]
    digits: Option<String>,
    #[arg(long = "s")]
    s: Option<String>,
    /// Length of the indicator word printed for `--s`.
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn max_cells() -> Result<usize, Failure> {
    match std::env::var("SHIFTLAB_MAX_CELLS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("SHIFTLAB_MAX_CELLS={v} is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

fn check_cells(n: usize) -> Result<(), Failure> {
    let cap = max_cells()?;
    if n > cap {
        return Err(Failure::budget(format!(
            "{n} cells exceed SHIFTLAB_MAX_CELLS = {cap}"
        )));
    }
    Ok(())
}

fn parse_spec(s: &str) -> Result<SGapSpec, Failure> {
    Ok(s.parse::<SGapSpec>()?)
}

fn context(lambda: f64, tol: f64) -> Result<BetaContext, Failure> {
    Ok(BetaContext::new(lambda)?.with_tolerance(tol))
}

fn bits(s: &str) -> Result<Vec<u8>, Failure> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Failure::usage(format!("'{c}' is not a binary digit"))),
        })
        .collect()
}

fn finish(text: String, output: &OutputArgs) -> Result<(), Failure> {
    emit(&text, output.out.as_deref())
}

/// Counts for whichever shift the flags describe, with its canonical name.
fn count_table(shift: &ShiftArgs, n_max: usize) -> Result<(String, BlockCountTable), Failure> {
    if let Some(s) = &shift.s {
        let spec = parse_spec(s)?;
        return Ok((format!("sgap {spec}"), sgap_count_table(&spec, n_max)));
    }
    if let Some(list) = &shift.sft {
        let alphabet: Vec<char> = shift.alphabet.as_deref().unwrap_or_default().chars().collect();
        let forbidden: Vec<String> = list.split(',').map(|w| w.trim().to_string()).collect();
        let aut = build_sft_automaton(&alphabet, &forbidden)?;
        let name = format!("sft alphabet={} forbidden={}", shift.alphabet.as_deref().unwrap_or(""), forbidden.join(","));
        return Ok((name, aut.count_table(n_max, DEFAULT_SUBSET_BUDGET)?));
    }
    if shift.even_shift {
        let table = even_shift_automaton().count_table(n_max, DEFAULT_SUBSET_BUDGET)?;
        return Ok(("even shift".into(), table));
    }
    Err(Failure::usage("one of --s, --sft or --even-shift is required"))
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    count: String,
    log2_count: f64,
    log2_count_over_n: f64,
}

fn count_rows(table: &BlockCountTable) -> Vec<CountRow> {
    table
        .counts()
        .map(|(n, c)| {
            let l = log2_big(c);
            CountRow {
                n,
                count: c.to_string(),
                log2_count: l,
                log2_count_over_n: if n == 0 { 0.0 } else { l / n as f64 },
            }
        })
        .collect()
}

fn entropy(args: &EntropyArgs) -> Result<(), Failure> {
    let spec = parse_spec(&args.s)?;
    let base = match args.base {
        Base::Two => LogBase::Two,
        Base::E => LogBase::Natural,
    };
    let r = solve_sgap_entropy_in_base(&spec, args.tol, base)?;
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                spec: String,
                #[serde(flatten)]
                entropy: &'a shiftlab_core::entropy::EntropyResult,
            }
            json("entropy", args, Out { spec: spec.to_string(), entropy: &r })?
        }
        Format::Csv => csv(
            "spec,lambda,entropy,log_base,entropy_log2,entropy_ln,residual,tail_bound,truncation_depth",
            [[
                format!("\"{spec}\""),
                r.lambda.to_string(),
                r.entropy.to_string(),
                if base == LogBase::Two { "2" } else { "e" }.into(),
                r.entropy_log2.to_string(),
                r.entropy_ln.to_string(),
                r.residual.to_string(),
                r.tail_bound.to_string(),
                r.truncation_depth.to_string(),
            ]],
        ),
    };
    finish(text, &args.output)
}

fn classify(args: &ClassifyArgs) -> Result<(), Failure> {
    let spec = parse_spec(&args.s)?;
    let c = spec.classify();
    let opt = |v: Option<u64>| v.map_or_else(String::new, |v| v.to_string());
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                spec: String,
                #[serde(flatten)]
                classification: &'a shiftlab_core::sgap::Classification,
            }
            json("classify", args, Out { spec: spec.to_string(), classification: &c })?
        }
        Format::Csv => csv(
            "spec,is_sft,is_almost_specified,is_mixing,has_specification,gap_sup,gcd_value,connector_length",
            [[
                format!("\"{spec}\""),
                c.is_sft.to_string(),
                c.is_almost_specified.to_string(),
                c.is_mixing.to_string(),
                c.has_specification.to_string(),
                opt(c.gap_sup),
                c.gcd_value.to_string(),
                opt(c.connector_length),
            ]],
        ),
    };
    finish(text, &args.output)
}

fn blocks(args: &BlocksArgs) -> Result<(), Failure> {
    if args.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let (shift, table) = count_table(&args.shift, args.n)?;
    let followers = match (&args.word, &args.shift.s) {
        (Some(w), Some(s)) => {
            let word: Word = w.parse()?;
            Some(follower_count(&parse_spec(s)?, &word, args.n)?.to_string())
        }
        (Some(_), None) => return Err(Failure::usage("--word needs --s")),
        _ => None,
    };
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                shift: String,
                n: usize,
                count: String,
                followers: Option<String>,
                table: Vec<CountRow>,
            }
            let count = table.require(args.n)?.to_string();
            json("blocks", args, Out { shift, n: args.n, count, followers, table: count_rows(&table) })?
        }
        Format::Csv => table.to_csv(),
    };
    finish(text, &args.output)
}

fn check_bsm(args: &BsmArgs) -> Result<(), Failure> {
    if args.depth == 0 {
        return Err(Failure::usage("--depth must be at least 1"));
    }
    let (shift, table) = count_table(&args.shift, 2 * args.depth)?;
    let r = bsm_estimate(&table, args.depth)?;
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                shift: String,
                k_estimate_value: f64,
                #[serde(flatten)]
                report: &'a shiftlab_core::props::PropertyReport,
            }
            let value = r.k_estimate.as_ref().map_or(f64::NAN, rational_to_f64);
            json("check-bsm", args, Out { shift, k_estimate_value: value, report: &r })?
        }
        Format::Csv => {
            let c = |n: usize| table.count(n).expect("table filled to 2·depth");
            let rows = (1..=args.depth).flat_map(|m| {
                (1..=args.depth).map(move |n| {
                    let q = num_rational::BigRational::new((c(m) * c(n)).into(), c(m + n).clone().into());
                    vec![m.to_string(), n.to_string(), q.to_string(), rational_to_f64(&q).to_string()]
                })
            });
            csv("m,n,ratio,ratio_value", rows.collect::<Vec<_>>())
        }
    };
    finish(text, &args.output)
}

fn check_balanced(args: &BalancedArgs) -> Result<(), Failure> {
    let spec = parse_spec(&args.s)?;
    check_cells(2 * (args.word_length + 1) * args.depth)?;
    let (r, cells) = balanced_scan(&spec, args.word_length, args.depth)?;
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                spec: String,
                b_estimate_value: f64,
                #[serde(flatten)]
                report: &'a shiftlab_core::props::PropertyReport,
                cells_tested: usize,
            }
            let value = r.b_estimate.as_ref().map_or(f64::NAN, rational_to_f64);
            json(
                "check-balanced",
                args,
                Out { spec: spec.to_string(), b_estimate_value: value, report: &r, cells_tested: cells.len() },
            )?
        }
        Format::Csv => csv(
            "word,r,followers,blocks,ratio",
            cells.iter().map(|c| {
                [c.word.to_string(), c.r.to_string(), c.followers.to_string(), c.blocks.to_string(), c.ratio.to_string()]
            }),
        ),
    };
    finish(text, &args.output)
}

fn parse_band(s: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| Failure::usage(format!("bad band value '{t}'")));
    match parts.as_slice() {
        [a, b] => Ok((parse(a)?, parse(b)?)),
        _ => Err(Failure::usage("--band expects c1,c2")),
    }
}

fn gibbs(args: &GibbsArgs) -> Result<(), Failure> {
    let spec = parse_spec(&args.s)?;
    check_cells(args.depth * args.depth * (args.depth + 1) / 2)?;
    let h = match args.h {
        Some(h) => h,
        None => solve_sgap_entropy_in_base(&spec, args.tol, LogBase::Two)?.entropy_log2,
    };
    let band = args.band.as_deref().map(parse_band).transpose()?;
    let g = gibbs_diagnostics_with_band(&spec, h, args.depth, band)?;
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                spec: String,
                #[serde(flatten)]
                diagnostics: &'a shiftlab_core::props::GibbsDiagnostics,
            }
            json("gibbs", args, Out { spec: spec.to_string(), diagnostics: &g })?
        }
        Format::Csv => csv(
            "word,r,k,mu,scaled,lower,upper,pass",
            g.cells.iter().map(|c| {
                [
                    c.word.to_string(),
                    c.r.to_string(),
                    c.k.to_string(),
                    c.mu.to_string(),
                    c.scaled.to_string(),
                    c.lower.to_string(),
                    c.upper.to_string(),
                    c.pass.to_string(),
                ]
            }),
        ),
    };
    finish(text, &args.output)
}

#[derive(Serialize)]
struct ExpansionOut<'a> {
    lambda: f64,
    start: f64,
    digits: &'a Word,
    digit_sequence: String,
    branch_flags: &'a [shiftlab_core::beta::BranchFlag],
    residual: f64,
    orbit_point: f64,
    orbit_error: f64,
    max_zero_run: usize,
    ambiguous_at: Option<usize>,
    eventual_period: Option<(usize, usize)>,
}

impl<'a> ExpansionOut<'a> {
    fn new(p: &'a ExpansionPrefix) -> Self {
        ExpansionOut {
            lambda: p.lambda,
            start: p.start,
            digits: &p.digits,
            digit_sequence: p.digit_sequence().to_string(),
            branch_flags: &p.branch_flags,
            residual: p.residual(),
            orbit_point: p.orbit_point(),
            orbit_error: p.orbit_error,
            max_zero_run: p.max_zero_run(),
            ambiguous_at: p.ambiguous_at,
            eventual_period: p.eventual_period,
        }
    }
}

fn orbit_csv(p: &ExpansionPrefix) -> String {
    csv(
        "k,digit,flag,orbit_point",
        p.branch_flags.iter().enumerate().map(|(k, f)| {
            [
                (k + 1).to_string(),
                p.digits.symbols()[k].to_string(),
                serde_json::to_value(f).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                p.orbit[k + 1].to_string(),
            ]
        }),
    )
}

fn expand(args: &ExpandArgs) -> Result<(), Failure> {
    let ctx = context(args.lambda, args.tol)?;
    let mut navigator = None;
    let p = match args.mode {
        Mode::Greedy => greedy_expansion(args.x, &ctx, args.depth)?,
        Mode::Lazy => lazy_expansion(args.x, &ctx, args.depth)?,
        Mode::Construction => spec_construction_lazy(&ctx, args.depth)?,
        Mode::Navigator => {
            let run = continuum_navigator(&ctx, &bits(&args.choices)?, args.depth)?;
            let p = run.prefix.clone();
            navigator = Some(run);
            p
        }
    };
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Nav {
                trap: (f64, f64),
                entry_index: Option<usize>,
                choices_used: usize,
                choices_exhausted: bool,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                expansion: ExpansionOut<'a>,
                #[serde(skip_serializing_if = "Option::is_none")]
                navigator: Option<Nav>,
            }
            let nav = navigator.map(|r| Nav {
                trap: r.trap,
                entry_index: r.entry_index,
                choices_used: r.choices_used,
                choices_exhausted: r.choices_exhausted,
            });
            json("expand", args, Out { expansion: ExpansionOut::new(&p), navigator: nav })?
        }
        Format::Csv => orbit_csv(&p),
    };
    finish(text, &args.output)
}

fn enumerate_one(args: &EnumerateArgs) -> Result<(), Failure> {
    let mut ctx = context(args.lambda, args.tol)?;
    if let Some(d) = args.lambda_uncertainty {
        ctx = ctx.with_lambda_uncertainty(d);
    }
    let max_leaves = match args.max_leaves {
        Some(m) => m.min(max_cells()?),
        None => max_cells()?,
    };
    let e = enumerate_expansions_of_one(&ctx, args.depth, max_leaves)?;
    let ehj = |p: &ExpansionPrefix| args.ehj.then(|| ehj_classify(p.digits.symbols()));
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Leaf<'a> {
                #[serde(flatten)]
                expansion: ExpansionOut<'a>,
                #[serde(skip_serializing_if = "Option::is_none")]
                ehj: Option<EhjClassification>,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                leaf_count: usize,
                budget_exhausted: bool,
                univoque: UnivoqueStatus,
                leaves: Vec<Leaf<'a>>,
            }
            let leaves = e.leaves.iter().map(|p| Leaf { expansion: ExpansionOut::new(p), ehj: ehj(p) }).collect();
            let out = Out {
                leaf_count: e.leaves.len(),
                budget_exhausted: e.budget_exhausted,
                univoque: univoque_check(&ctx, args.depth),
                leaves,
            };
            json("enumerate-one", args, out)?
        }
        Format::Csv => csv(
            "digits,ambiguous_at,partial_sum,family",
            e.leaves.iter().map(|p| {
                [
                    p.digits.to_string(),
                    p.ambiguous_at.map_or_else(String::new, |k| k.to_string()),
                    p.partial_sum().to_string(),
                    ehj(p).map_or_else(String::new, |c| format!("{:?}", c.family)),
                ]
            }),
        ),
    };
    finish(text, &args.output)?;
    if e.budget_exhausted {
        return Err(Failure::budget(format!("leaf budget of {max_leaves} exhausted; output is partial")));
    }
    Ok(())
}

fn kl(args: &KlArgs) -> Result<(), Failure> {
    let r = komornik_loreti_constant(args.tol)?;
    let ctx = BetaContext::new(r.lambda)?.with_lambda_uncertainty(args.tol.max(r.lambda * f64::EPSILON));
    let status = univoque_check(&ctx, args.depth);
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                entropy: &'a shiftlab_core::entropy::EntropyResult,
                univoque: UnivoqueStatus,
            }
            json("kl", args, Out { entropy: &r, univoque: status })?
        }
        Format::Csv => csv(
            "lambda,log2_lambda,ln_lambda,residual,tail_bound,truncation_depth",
            [[
                r.lambda.to_string(),
                r.entropy_log2.to_string(),
                r.entropy_ln.to_string(),
                r.residual.to_string(),
                r.tail_bound.to_string(),
                r.truncation_depth.to_string(),
            ]],
        ),
    };
    finish(text, &args.output)
}

fn bridge(args: &BridgeArgs) -> Result<(), Failure> {
    let (spec, digits) = match (&args.digits, &args.s) {
        (Some(d), _) => {
            let digits: DigitSequence = d.parse()?;
            (sgap_from_expansion(&digits)?, digits)
        }
        (None, Some(s)) => {
            let spec = parse_spec(s)?;
            let digits = digits_from_sgap(&spec);
            (spec, digits)
        }
        (None, None) => return Err(Failure::usage("one of --digits or --s is required")),
    };
    let r = solve_sgap_entropy_in_base(&spec, args.tol, LogBase::Two)?;
    let word = expansion_from_sgap(&spec, args.n);
    // Σ a_j λ^{-j} − 1 over the first n digits
    let residual = shiftlab_core::beta::partial_sum(word.symbols(), r.lambda) - 1.0;
    let text = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                spec: String,
                digits: String,
                prefix: Word,
                lambda: f64,
                entropy_log2: f64,
                prefix_residual: f64,
            }
            let out = Out {
                spec: spec.to_string(),
                digits: digits.to_string(),
                prefix: word,
                lambda: r.lambda,
                entropy_log2: r.entropy_log2,
                prefix_residual: residual,
            };
            json("bridge", args, out)?
        }
        Format::Csv => csv(
            "spec,digits,prefix,lambda,entropy_log2,prefix_residual",
            [[
                format!("\"{spec}\""),
                digits.to_string(),
                word.to_string(),
                r.lambda.to_string(),
                r.entropy_log2.to_string(),
                residual.to_string(),
            ]],
        ),
    };
    finish(text, &args.output)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Entropy(a) => entropy(a),
        Command::Classify(a) => classify(a),
        Command::Blocks(a) => blocks(a),
        Command::CheckBsm(a) => check_bsm(a),
        Command::CheckBalanced(a) => check_balanced(a),
        Command::Gibbs(a) => gibbs(a),
        Command::Expand(a) => expand(a),
        Command::EnumerateOne(a) => enumerate_one(a),
        Command::Kl(a) => kl(a),
        Command::Bridge(a) => bridge(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
