use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use canalyze::canalyzing::{sample, triples, FamilySpec, Triple};
use canalyze::counting::{
    asymptote, asymptote_ratio, count_brute, count_formula, identity_sides, upper_bound,
    FormulaId,
};
use canalyze_cli::format::{anf_terms, anf_to_string, FunctionFile};
use canalyze_cli::output::{
    render_table, to_json, yes_no, AnalyzeDoc, AsymptoteDoc, BoundDoc, CountDoc, IdentityDoc,
    IdentityRowDoc, RatioDoc, TripleDoc, VerifyDoc, VerifyRowDoc,
};
use canalyze_cli::parallel::count_brute_parallel;
use canalyze_cli::{CliError, EXIT_MISMATCH, EXIT_OK};

/// Analyze, construct, count, and verify canalyzing functions over finite
/// fields.
#[derive(Parser)]
#[command(name = "canalyze", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Brute,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Count a canalyzing family by closed formula, brute force, or both.
    Count {
        /// Field order (a prime power).
        #[arg(long)]
        q: u64,
        /// Number of variables.
        #[arg(long)]
        n: u64,
        /// Family pattern `i=<k|*>,a=<c|*>,b=<c|*>`, e.g. "i=*,a=0,b=*".
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        /// Emit one JSON document instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Count a family by exhaustive enumeration only.
    Brute {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        family: FamilySpec,
        /// Parallel workers for the enumeration.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check all eight family formulas against brute force at one (q, n).
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        json: bool,
    },
    /// Read a function file and report its ANF, degrees, essential
    /// variables, and canalyzing triples.
    Analyze {
        /// Path to a JSON function record.
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emit seeded random members of a pinned family `<i:a:b>`.
    Sample {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        /// Canalyzing variable index (1-based).
        #[arg(long)]
        i: usize,
        /// Canalyzing input value.
        #[arg(long)]
        a: u8,
        /// Canalyzed output value.
        #[arg(long)]
        b: u8,
        /// Stream seed; record j uses seed + j.
        #[arg(long)]
        seed: u64,
        /// Number of records to emit, one JSON line each.
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Evaluate both sides of the Boolean-case combinatorial identity.
    Identity {
        /// Check every n from 1 to this value.
        #[arg(long = "n-max")]
        n_max: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exact ratio of a family count to its leading-term approximation.
    Asymptote {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        family: FamilySpec,
        /// Fractional digits in the decimal rendering.
        #[arg(long, default_value_t = 12)]
        digits: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the all-family count against the union bound n q^2 q^((q-1)q^(n-1)).
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(err.exit_code());
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Count {
            q,
            n,
            family,
            method,
            json,
        } => run_count(q, n, family, method, json),
        Command::Brute {
            q,
            n,
            family,
            workers,
            json,
        } => run_brute(q, n, family, workers, json),
        Command::Verify { q, n, workers, json } => run_verify(q, n, workers, json),
        Command::Analyze { file, json } => run_analyze(&file, json),
        Command::Sample {
            q,
            n,
            i,
            a,
            b,
            seed,
            count,
        } => run_sample(q, n, i, a, b, seed, count),
        Command::Identity { n_max, json } => run_identity(n_max, json),
        Command::Asymptote {
            q,
            n,
            family,
            digits,
            json,
        } => run_asymptote(q, n, family, digits, json),
        Command::Bound { q, n, json } => run_bound(q, n, json),
    }
}

fn run_count(q: u64, n: u64, family: FamilySpec, method: Method, json: bool) -> Result<i32, CliError> {
    let formula = match method {
        Method::Formula | Method::Both => Some(count_formula(&family, q, n)?),
        Method::Brute => None,
    };
    let brute = match method {
        Method::Brute | Method::Both => Some(count_brute(&family, q, n)?),
        Method::Formula => None,
    };
    let theorem = FormulaId::for_family(&family).label().to_string();
    let matches = match (&formula, &brute) {
        (Some(f), Some(b)) => Some(f.formula == *b),
        _ => None,
    };
    let doc = CountDoc {
        family: family.to_string(),
        q,
        n,
        theorem,
        formula: formula.as_ref().map(|r| r.formula.to_string()),
        brute: brute.as_ref().map(|b| b.to_string()),
        matches,
    };
    if json {
        println!("{}", to_json(&doc));
    } else {
        let headers = ["FAMILY", "Q", "N", "THEOREM", "FORMULA", "BRUTE", "MATCH"];
        let row = vec![
            doc.family.clone(),
            q.to_string(),
            n.to_string(),
            doc.theorem.clone(),
            doc.formula.clone().unwrap_or_else(|| "-".into()),
            doc.brute.clone().unwrap_or_else(|| "-".into()),
            doc.matches.map(yes_no).unwrap_or_else(|| "-".into()),
        ];
        print!("{}", render_table(&headers, &[row]));
    }
    Ok(if matches == Some(false) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

fn run_brute(q: u64, n: u64, family: FamilySpec, workers: usize, json: bool) -> Result<i32, CliError> {
    let count = count_brute_parallel(&family, q, n, workers)?;
    if json {
        let doc = CountDoc {
            family: family.to_string(),
            q,
            n,
            theorem: FormulaId::for_family(&family).label().to_string(),
            formula: None,
            brute: Some(count.to_string()),
            matches: None,
        };
        println!("{}", to_json(&doc));
    } else {
        let headers = ["FAMILY", "Q", "N", "BRUTE"];
        let row = vec![
            family.to_string(),
            q.to_string(),
            n.to_string(),
            count.to_string(),
        ];
        print!("{}", render_table(&headers, &[row]));
    }
    Ok(EXIT_OK)
}

fn run_verify(q: u64, n: u64, workers: usize, json: bool) -> Result<i32, CliError> {
    let mut rows = Vec::new();
    let mut all_match = true;
    for family in FamilySpec::canonical_shapes() {
        let report = count_formula(&family, q, n)?;
        let brute = count_brute_parallel(&family, q, n, workers)?;
        let matches = report.formula == canalyze::counting::BigUint::from(brute);
        all_match &= matches;
        rows.push(VerifyRowDoc {
            family: family.to_string(),
            theorem: report.id.label().to_string(),
            formula: report.formula.to_string(),
            brute: brute.to_string(),
            matches,
        });
    }
    if json {
        let doc = VerifyDoc {
            q,
            n,
            rows,
            all_match,
        };
        println!("{}", to_json(&doc));
    } else {
        let headers = ["FAMILY", "THEOREM", "FORMULA", "BRUTE", "MATCH"];
        let table_rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.family.clone(),
                    r.theorem.clone(),
                    r.formula.clone(),
                    r.brute.clone(),
                    yes_no(r.matches),
                ]
            })
            .collect();
        print!("{}", render_table(&headers, &table_rows));
        println!("result: {}", if all_match { "ok" } else { "mismatch" });
    }
    Ok(if all_match { EXIT_OK } else { EXIT_MISMATCH })
}

fn run_analyze(path: &std::path::Path, json: bool) -> Result<i32, CliError> {
    let text = fs::read_to_string(path)?;
    let record = FunctionFile::parse(&text)?;
    let table = record.into_table()?;
    let anf = table.to_anf();
    let variable_degrees: Vec<i64> = (1..=table.n())
        .map(|i| anf.degree_in(i).unwrap())
        .collect();
    let doc = AnalyzeDoc {
        q: table.q() as u64,
        n: table.n(),
        anf: anf_terms(&anf),
        anf_string: anf_to_string(&anf),
        degree: anf.degree(),
        variable_degrees,
        essential_variables: table.essential_variables(),
        triples: triples(&table)
            .into_iter()
            .map(|t| TripleDoc {
                i: t.var,
                a: t.input,
                b: t.output,
            })
            .collect(),
    };
    if json {
        println!("{}", to_json(&doc));
    } else {
        println!("q: {}", doc.q);
        println!("n: {}", doc.n);
        println!("anf: {}", doc.anf_string);
        println!("degree: {}", doc.degree);
        let per_var: Vec<String> = doc
            .variable_degrees
            .iter()
            .enumerate()
            .map(|(k, d)| format!("x{}={}", k + 1, d))
            .collect();
        println!("degree per variable: {}", per_var.join(" "));
        let essential: Vec<String> = doc
            .essential_variables
            .iter()
            .map(|i| format!("x{i}"))
            .collect();
        println!(
            "essential variables: {}",
            if essential.is_empty() {
                "none".into()
            } else {
                essential.join(" ")
            }
        );
        let shown: Vec<String> = doc
            .triples
            .iter()
            .map(|t| format!("<{}:{}:{}>", t.i, t.a, t.b))
            .collect();
        println!(
            "canalyzing triples: {}",
            if shown.is_empty() {
                "none".into()
            } else {
                shown.join(" ")
            }
        );
    }
    Ok(EXIT_OK)
}

fn run_sample(q: u64, n: u64, i: usize, a: u8, b: u8, seed: u64, count: u64) -> Result<i32, CliError> {
    let field = std::sync::Arc::new(canalyze::make_field(q)?);
    for j in 0..count {
        let table = sample(
            &field,
            n as usize,
            Triple {
                var: i,
                input: a,
                output: b,
            },
            seed.wrapping_add(j),
        )?;
        println!("{}", FunctionFile::from_table(&table).to_json());
    }
    Ok(EXIT_OK)
}

fn run_identity(n_max: u64, json: bool) -> Result<i32, CliError> {
    let mut rows = Vec::new();
    let mut all_match = true;
    for n in 1..=n_max {
        let (lhs, rhs) = identity_sides(n)?;
        let matches = lhs == rhs;
        all_match &= matches;
        rows.push(IdentityRowDoc {
            n,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            matches,
        });
    }
    if json {
        let doc = IdentityDoc { rows, all_match };
        println!("{}", to_json(&doc));
    } else {
        let headers = ["N", "LHS", "RHS", "MATCH"];
        let table_rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.lhs.clone(),
                    r.rhs.clone(),
                    yes_no(r.matches),
                ]
            })
            .collect();
        print!("{}", render_table(&headers, &table_rows));
    }
    Ok(if all_match { EXIT_OK } else { EXIT_MISMATCH })
}

fn run_asymptote(q: u64, n: u64, family: FamilySpec, digits: usize, json: bool) -> Result<i32, CliError> {
    let count = count_formula(&family, q, n)?.formula;
    let approx = asymptote(&family, q, n)?;
    let ratio = asymptote_ratio(&family, q, n)?;
    let doc = AsymptoteDoc {
        family: family.to_string(),
        q,
        n,
        count: count.to_string(),
        asymptote: approx.to_string(),
        ratio: RatioDoc {
            numerator: ratio.numer().to_string(),
            denominator: ratio.denom().to_string(),
        },
        decimal: ratio.to_decimal(digits),
    };
    if json {
        println!("{}", to_json(&doc));
    } else {
        let headers = ["FAMILY", "Q", "N", "COUNT", "ASYMPTOTE", "RATIO", "DECIMAL"];
        let row = vec![
            doc.family.clone(),
            q.to_string(),
            n.to_string(),
            doc.count.clone(),
            doc.asymptote.clone(),
            format!("{}/{}", doc.ratio.numerator, doc.ratio.denominator),
            doc.decimal.clone(),
        ];
        print!("{}", render_table(&headers, &[row]));
    }
    Ok(EXIT_OK)
}

fn run_bound(q: u64, n: u64, json: bool) -> Result<i32, CliError> {
    let count = count_formula(&FamilySpec::any(), q, n)?.formula;
    let bound = upper_bound(q, n)?;
    let holds = count <= bound;
    let doc = BoundDoc {
        q,
        n,
        count: count.to_string(),
        bound: bound.to_string(),
        holds,
    };
    if json {
        println!("{}", to_json(&doc));
    } else {
        let headers = ["Q", "N", "COUNT", "BOUND", "HOLDS"];
        let row = vec![
            q.to_string(),
            n.to_string(),
            doc.count.clone(),
            doc.bound.clone(),
            yes_no(holds),
        ];
        print!("{}", render_table(&headers, &[row]));
    }
    Ok(if holds { EXIT_OK } else { EXIT_MISMATCH })
}
