//! `amgrowth`: growth series, normal forms and geodesics of
//! `G(p_1, ..., p_n)` from the command line.
//!
//! Exit status is 0 on success, 1 when `verify` finds a mismatch or a
//! computation fails, and 2 when the arguments cannot be parsed.

use std::process::ExitCode;

use amalgam_growth::geodesics::{geodesic_length, suitable_spread};
use amalgam_growth::normal_forms::r_nu;
use amalgam_growth::word::{parse_word, to_lambda_syllables};
use amalgam_growth::{
    bfs_spheres, canonical_key_word, canonical_spread, classify, gamma_membership, garside_nf,
    growth_series, modified_nf, reindex, Error, ModifiedNF, Presentation, RationalFunction,
    SyllableWord,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "amgrowth", version, about = "Spherical growth series of G(p_1, ..., p_n)")]
struct Cli {
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the growth series as a rational function.
    Series {
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print the sphere sizes up to a length.
    Coeffs {
        #[arg(long)]
        p: String,
        #[arg(long)]
        upto: usize,
    },
    /// Compare the series against breadth-first search.
    Verify {
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Show the normal forms of a word.
    Normalform {
        #[arg(long)]
        p: String,
        #[arg(long)]
        word: String,
    },
    /// List the geodesic representatives of a word's element.
    Geodesics {
        #[arg(long)]
        p: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Show the canonical geodesic of a word's element and its class.
    Canonical {
        #[arg(long)]
        p: String,
        #[arg(long)]
        word: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Factored,
}

/// Failures mapped to exit codes.
enum Failure {
    Usage(String),
    Runtime(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPresentation(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct SeriesEnvelope {
    p: Vec<u32>,
    numerator_coeffs: Vec<Value>,
    denominator_coeffs: Vec<Value>,
    coefficients: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bfs: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

fn number(x: &impl ToString) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn envelope(pres: &Presentation, s: &RationalFunction, coeffs: &[impl ToString]) -> SeriesEnvelope {
    SeriesEnvelope {
        p: pres.p().to_vec(),
        numerator_coeffs: s.num().coeffs().iter().map(number).collect(),
        denominator_coeffs: s.den().coeffs().iter().map(number).collect(),
        coefficients: coeffs.iter().map(number).collect(),
        bfs: None,
        matches: None,
    }
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn element(pres: &Presentation, text: &str) -> Result<(SyllableWord, ModifiedNF), Failure> {
    let w = parse_word(pres, text)?;
    let lam = to_lambda_syllables(pres, w.runs, w.delta_pow);
    let m = modified_nf(pres, &garside_nf(pres, &lam)?);
    Ok((lam, m))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Series { p, format } => {
            let pres = Presentation::parse(&p)?;
            let s = growth_series(&pres);
            if json {
                print_json(&envelope(&pres, &s, &Vec::<String>::new()));
            } else {
                println!(
                    "{}",
                    match format {
                        Format::Plain => s.plain(),
                        Format::Latex => s.latex(),
                        Format::Factored => s.factored(),
                    }
                );
            }
        }
        Command::Coeffs { p, upto } => {
            let pres = Presentation::parse(&p)?;
            let s = growth_series(&pres);
            let c = s.taylor(upto)?;
            if json {
                print_json(&envelope(&pres, &s, &c));
            } else {
                println!("length,count");
                for (l, x) in c.iter().enumerate() {
                    println!("{l},{x}");
                }
            }
        }
        Command::Verify { p, depth } => {
            let pres = Presentation::parse(&p)?;
            let s = growth_series(&pres);
            let c = s.taylor(depth)?;
            let bfs = bfs_spheres(&pres, depth, false)?.counts;
            let bad: Vec<usize> = (0..=depth).filter(|&l| c[l] != bfs[l].into()).collect();
            if json {
                let mut env = envelope(&pres, &s, &c);
                env.bfs = Some(bfs);
                env.matches = Some(bad.is_empty());
                print_json(&env);
            } else {
                println!("length,series,bfs");
                for l in 0..=depth {
                    println!("{l},{},{}", c[l], bfs[l]);
                }
                if bad.is_empty() {
                    println!("all {} coefficients match", depth + 1);
                } else {
                    println!("mismatch at lengths {bad:?}");
                }
            }
            if !bad.is_empty() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Normalform { p, word } => {
            let pres = Presentation::parse(&p)?;
            let (lam, m) = element(&pres, &word)?;
            let g = garside_nf(&pres, &lam)?;
            let r = r_nu(&pres, &m);
            let r1: Vec<usize> = r.r_set.iter().map(|j| j + 1).collect();
            let tag = classify(&pres, &m);
            let len = geodesic_length(&pres, &m);
            if json {
                print_json(&serde_json::json!({
                    "p": pres.p(),
                    "lambda": lam.to_string(),
                    "garside": g.to_string(),
                    "modified": m.to_string(),
                    "r_set": r1,
                    "r_nu": r.r_nu,
                    "type": tag.to_string(),
                    "length": len,
                }));
            } else {
                println!("lambda:   {lam}");
                println!("garside:  {g}");
                println!("modified: {m}");
                println!("R:        {r1:?}");
                println!("r_nu:     {}", r.r_nu);
                println!("type:     {tag}");
                println!("length:   {len}");
            }
        }
        Command::Geodesics { p, word, cap } => {
            let pres = Presentation::parse(&p)?;
            let (_, m) = element(&pres, &word)?;
            let ss = suitable_spread(&pres, &m, cap);
            let words: Vec<String> = ss.words.iter().map(ToString::to_string).collect();
            if json {
                print_json(&serde_json::json!({
                    "p": pres.p(),
                    "length": geodesic_length(&pres, &m),
                    "count": number(&ss.count),
                    "truncated": ss.truncated,
                    "geodesics": words,
                }));
            } else {
                println!("count:  {}", ss.count);
                println!("length: {}", geodesic_length(&pres, &m));
                for w in &words {
                    println!("{w}");
                }
                if ss.truncated {
                    println!("(listing cut at {})", words.len());
                }
            }
        }
        Command::Canonical { p, word } => {
            let pres = Presentation::parse(&p)?;
            let rx = reindex(&pres);
            let (_, m) = element(&pres, &word)?;
            let hat = canonical_spread(&pres, &rx, &m);
            debug_assert_eq!(canonical_key_word(&pres, &hat), m);
            let class = gamma_membership(&pres, &rx, &hat);
            if json {
                print_json(&serde_json::json!({
                    "p": pres.p(),
                    "canonical": hat.to_string(),
                    "relabelled": rx.relabel(&hat),
                    "length": hat.len(&pres),
                    "class": class.to_string(),
                }));
            } else {
                println!("canonical:  {hat}");
                println!("relabelled: {}", rx.relabel(&hat));
                println!("length:     {}", hat.len(&pres));
                println!("class:      {class}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
