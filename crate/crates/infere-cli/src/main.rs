//! `infere` — command-line front end for the regex chain-of-inference
//! toolkit: representation conversion, DFA equivalence, self-consistency
//! voting, metric evaluation and fixture generation.
//!
//! Exit codes: 0 success (or a true verdict), 1 negative verdict,
//! 2 usage or data errors.

use clap::{Parser, Subcommand, ValueEnum};
use infere_core::chain::{decompose, parse_chain, render_chain, revert};
use infere_core::dfa::{compile_with_cap, derive_alphabet, equivalent_with_cap};
use infere_core::dsl::{parse_functional, parse_plain, render_functional, render_plain, RegexAst};
use infere_core::eval::{
    evaluate, load_candidates, load_dataset, write_candidates, write_dataset, EvalConfig, EvalMode,
};
use infere_core::gen::generate_fixture;
use infere_core::vote::vote_with_cap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "infere", version, about = "Regex chain-of-inference toolkit")]
struct Cli {
    /// Unrolling cap for counted repetition during DFA compilation.
    #[arg(long, global = true, env = "INFERE_UNROLL_CAP", default_value_t = 100)]
    unroll_cap: u32,

    /// Print extra progress information to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Plain,
    Functional,
    Chain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[value(alias = "self_consistency")]
    SelfConsistency,
    Ranked,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a regex in one form and print all three renderings.
    Parse {
        #[arg(long, value_enum, default_value_t = Form::Plain)]
        form: Form,
        text: String,
    },
    /// Convert a regex into its chain of inference.
    Decompose {
        #[arg(long, value_enum, default_value_t = Form::Plain)]
        form: Form,
        text: String,
    },
    /// Rebuild the plain regex denoted by a chain of inference.
    Revert { text: String },
    /// Decide DFA equivalence of two regexes (exit 0 if equivalent, 1 if not).
    Eq {
        #[arg(long, value_enum, default_value_t = Form::Plain)]
        form: Form,
        a: String,
        b: String,
        /// Also dump both minimal DFAs in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Run the plurality vote for one record of a candidate file.
    Vote {
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long)]
        id: usize,
        /// Keep at most this many candidates per source.
        #[arg(long)]
        k_cap: Option<usize>,
    },
    /// Score a candidate file against a dataset and write a report.
    Eval {
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        regexes: PathBuf,
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::SelfConsistency)]
        mode: Mode,
        /// DFA-EQ@m cutoffs; repeatable.
        #[arg(long = "m", default_values_t = vec![1usize, 5])]
        m: Vec<usize>,
        /// Report file path.
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
        /// Include the per-example verdict array in the report.
        #[arg(long)]
        per_example: bool,
        #[arg(long)]
        k_cap: Option<usize>,
    },
    /// Generate a synthetic dataset plus candidate file.
    Fixtures {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Maximum gold AST depth (at most 8).
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Print the minimal DFA of a regex in DOT format.
    Dot {
        #[arg(long, value_enum, default_value_t = Form::Plain)]
        form: Form,
        text: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_form(form: Form, text: &str) -> Result<RegexAst, String> {
    match form {
        Form::Plain => parse_plain(text).map_err(|e| e.to_string()),
        Form::Functional => parse_functional(text).map_err(|e| e.to_string()),
        Form::Chain => {
            let chain = parse_chain(text).map_err(|e| e.to_string())?;
            revert(&chain).map_err(|e| e.to_string())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let unroll_cap = cli.unroll_cap;
    match cli.command {
        Command::Parse { form, text } => {
            let ast = parse_form(form, &text)?;
            println!("plain: {}", render_plain(&ast));
            println!("functional: {}", render_functional(&ast));
            println!("chain: {}", render_chain(&decompose(&ast)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { form, text } => {
            if form == Form::Chain {
                return Err("decompose expects --form plain or functional".into());
            }
            let ast = parse_form(form, &text)?;
            println!("{}", render_chain(&decompose(&ast)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Revert { text } => {
            let chain = parse_chain(&text).map_err(|e| e.to_string())?;
            let ast = revert(&chain).map_err(|e| e.to_string())?;
            println!("{}", render_plain(&ast));
            Ok(ExitCode::SUCCESS)
        }
        Command::Eq { form, a, b, dot } => {
            let ast_a = parse_form(form, &a)?;
            let ast_b = parse_form(form, &b)?;
            let verdict =
                equivalent_with_cap(&ast_a, &ast_b, unroll_cap).map_err(|e| e.to_string())?;
            println!("{verdict}");
            if dot {
                let alphabet = derive_alphabet(&[&ast_a, &ast_b]);
                let da = compile_with_cap(&ast_a, &alphabet, unroll_cap)
                    .map_err(|e| e.to_string())?;
                let db = compile_with_cap(&ast_b, &alphabet, unroll_cap)
                    .map_err(|e| e.to_string())?;
                println!("// a");
                print!("{}", da.to_dot(&alphabet));
                println!("// b");
                print!("{}", db.to_dot(&alphabet));
            }
            Ok(if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Vote {
            candidates,
            id,
            k_cap,
        } => {
            if k_cap == Some(0) {
                return Err("--k-cap must be at least 1".into());
            }
            let sets = load_candidates(&candidates).map_err(|e| e.to_string())?;
            let set = sets
                .iter()
                .find(|set| set.id == id)
                .ok_or_else(|| format!("no record with id {id}"))?;
            let mut pool = set.candidates.clone();
            if let Some(cap) = k_cap {
                pool = cap_per_source(pool, cap);
            }
            match vote_with_cap(&pool, unroll_cap) {
                Ok(outcome) => {
                    println!("winner: {}", render_plain(&outcome.winner));
                    println!("votes: {}", outcome.winner_votes);
                    println!("classes:");
                    let mut ranked: Vec<(usize, &RegexAst)> = outcome
                        .class_sizes
                        .iter()
                        .map(|(ast, votes)| (*votes, ast))
                        .collect();
                    ranked.sort_by_key(|(votes, _)| std::cmp::Reverse(*votes));
                    for (votes, ast) in ranked {
                        println!("  {votes}  {}", render_plain(ast));
                    }
                    println!("invalid: {}", outcome.invalid_count);
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Eval {
            queries,
            regexes,
            candidates,
            mode,
            m,
            out,
            per_example,
            k_cap,
        } => {
            if m.is_empty() || m.contains(&0) {
                return Err("--m values must be at least 1".into());
            }
            if k_cap == Some(0) {
                return Err("--k-cap must be at least 1".into());
            }
            let records = load_dataset(&queries, &regexes).map_err(|e| e.to_string())?;
            let sets = load_candidates(&candidates).map_err(|e| e.to_string())?;
            if cli.verbose {
                eprintln!("loaded {} records, {} candidate sets", records.len(), sets.len());
            }
            let config = EvalConfig {
                m_values: m,
                mode: match mode {
                    Mode::SelfConsistency => EvalMode::SelfConsistency,
                    Mode::Ranked => EvalMode::Ranked,
                },
                unroll_cap,
                k_cap,
            };
            let report = evaluate(&records, &sets, &config);
            print!("{}", report.to_table());
            std::fs::write(&out, report.to_json(per_example))
                .map_err(|e| format!("{}: {e}", out.display()))?;
            if cli.verbose {
                eprintln!("report written to {}", out.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures {
            seed,
            count,
            depth,
            out_dir,
        } => {
            if depth == 0 || depth > 8 {
                return Err("--depth must be between 1 and 8".into());
            }
            if count == 0 {
                return Err("--count must be at least 1".into());
            }
            let fixture = generate_fixture(seed, count, depth);
            std::fs::create_dir_all(&out_dir).map_err(|e| format!("{}: {e}", out_dir.display()))?;
            let queries_path = out_dir.join("queries.txt");
            let regexes_path = out_dir.join("regexes.txt");
            let candidates_path = out_dir.join("candidates.jsonl");
            write_dataset(&queries_path, &regexes_path, &fixture.records)
                .map_err(|e| e.to_string())?;
            let queries: Vec<String> =
                fixture.records.iter().map(|r| r.query.clone()).collect();
            write_candidates(&candidates_path, &fixture.candidate_sets, Some(&queries))
                .map_err(|e| e.to_string())?;
            println!(
                "wrote {count} records to {}",
                out_dir.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot { form, text } => {
            let ast = parse_form(form, &text)?;
            let alphabet = derive_alphabet(&[&ast]);
            let dfa = compile_with_cap(&ast, &alphabet, unroll_cap).map_err(|e| e.to_string())?;
            print!("{}", dfa.to_dot(&alphabet));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cap_per_source(
    candidates: Vec<infere_core::vote::Candidate>,
    cap: usize,
) -> Vec<infere_core::vote::Candidate> {
    let mut counts = std::collections::HashMap::new();
    let mut kept = Vec::new();
    for candidate in candidates {
        let count = counts.entry(candidate.source.name()).or_insert(0usize);
        if *count < cap {
            *count += 1;
            kept.push(candidate);
        }
    }
    for (order, candidate) in kept.iter_mut().enumerate() {
        candidate.order = order;
    }
    kept
}
