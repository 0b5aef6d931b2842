//! Command-line surface for the vincular library: counting, listing,
//! classification, swap-map checks, recurrence tables, filling sweeps, and
//! the reference-table diff. Exit status is 0 when the requested check
//! succeeds, 1 when a verification fails, and 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vincular::bijection::{
    make_quasi_swap_spec, make_swap_spec, verify_involution, verify_wilf_via_psi, SwapSpec,
};
use vincular::classify::{
    classify_quasi_consecutive, ek_lift_check, sandcastle_pair, verify_against_paper_tables,
    ClassTable, ClassifyError,
};
use vincular::enumerate::{
    count_avoiders_capped, count_avoiders_naive, list_avoiders, DEFAULT_N_CAP,
};
use vincular::fillings::check_filling_shape_wilf;
use vincular::recursion::{build_tables_sigma, build_tables_tau, verify_easy_h, verify_thm_h};
use vincular::{Permutation, VincularPattern};

#[derive(Parser)]
#[command(name = "vincular", version)]
#[command(about = "Pattern avoidance in permutations: counting, bijections, fillings, classification")]
#[command(
    after_help = "The environment variable VW_MAX_N raises the depth cap used by `count` \
                  (default 12, hard maximum 20)."
)]
struct Cli {
    /// Output format (csv only where a schema is documented)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count the permutations in S_n avoiding a pattern
    Count {
        pattern: String,
        n: usize,
        /// Use the naive filter instead of the pruned counter (n <= 9)
        #[arg(long)]
        oracle: bool,
    },
    /// List the permutations in S_n avoiding a pattern, lexicographically
    List { pattern: String, n: usize },
    /// Group all quasi-consecutive patterns of one length by avoider counts
    Classify {
        k: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Extend the count signatures to n = 11
        #[arg(long)]
        extended: bool,
    },
    /// Recompute the length-5 classification and diff it against the embedded table
    VerifyTable {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Check the box-swap map for a pattern pair exhaustively over S_n
    Bijection {
        sigma: String,
        tau: String,
        #[arg(long)]
        n: usize,
        /// Append this dashed letter to both patterns before checking
        #[arg(long)]
        dashed_tail: Option<u8>,
    },
    /// Build the first-two-letter avoider tables for 2153-4 and 3154-2
    Recursion {
        #[arg(long)]
        n_max: usize,
        /// Restrict the output to one of the two patterns
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Verify the relations tying the two table families together
    VerifyThmH {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
    /// Compare two patterns over all fillings of small Young diagrams
    FillingsCheck {
        sigma: String,
        tau: String,
        #[arg(long, default_value_t = 10)]
        max_cells: usize,
        /// Compare standard fillings only
        #[arg(long)]
        shape_only: bool,
    },
    /// Apply the tail-swap rule to a quasi-consecutive pattern
    Sandcastle { pattern: String },
    /// Check a consecutive pattern pair and its dashed-letter lift numerically
    EkLift {
        sigma: String,
        tau: String,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn parse_pattern(s: &str) -> VincularPattern {
    s.parse()
        .unwrap_or_else(|e| usage_error(&format!("pattern {s:?}: {e}")))
}

fn parse_perm(s: &str) -> Permutation {
    Permutation::parse(s).unwrap_or_else(|e| usage_error(&format!("permutation {s:?}: {e}")))
}

fn depth_cap() -> usize {
    match std::env::var("VW_MAX_N") {
        Ok(v) => v
            .parse()
            .unwrap_or_else(|_| usage_error(&format!("VW_MAX_N = {v:?} is not a number"))),
        Err(_) => DEFAULT_N_CAP,
    }
}

fn emit_json(command: &str, inputs: Value, result: Value, violations: &[String]) {
    let doc = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "violations": violations,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
}

fn main() {
    // die quietly when the read end of a pipe closes, like other unix tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            usage_error("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool is configured once");
    }
    let code = dispatch(cli.command, cli.format);
    std::process::exit(code);
}

fn dispatch(command: Command, format: Format) -> i32 {
    match command {
        Command::Count { pattern, n, oracle } => run_count(&pattern, n, oracle, format),
        Command::List { pattern, n } => run_list(&pattern, n, format),
        Command::Classify { k, n_max, extended } => run_classify(k, n_max, extended, format),
        Command::VerifyTable { n_max } => run_verify_table(n_max, format),
        Command::Bijection {
            sigma,
            tau,
            n,
            dashed_tail,
        } => run_bijection(&sigma, &tau, n, dashed_tail, format),
        Command::Recursion { n_max, pattern } => run_recursion(n_max, pattern.as_deref(), format),
        Command::VerifyThmH { n_max } => run_verify_thm_h(n_max, format),
        Command::FillingsCheck {
            sigma,
            tau,
            max_cells,
            shape_only,
        } => run_fillings_check(&sigma, &tau, max_cells, shape_only, format),
        Command::Sandcastle { pattern } => run_sandcastle(&pattern, format),
        Command::EkLift { sigma, tau, n_max } => run_ek_lift(&sigma, &tau, n_max, format),
    }
}

fn run_count(pattern: &str, n: usize, oracle: bool, format: Format) -> i32 {
    let p = parse_pattern(pattern);
    let count = if oracle {
        count_avoiders_naive(&p, n)
    } else {
        count_avoiders_capped(&p, n, depth_cap())
    }
    .unwrap_or_else(|e| usage_error(&e.to_string()));
    match format {
        Format::Text => println!("{count}"),
        Format::Csv => println!("pattern,n,count\n{p},{n},{count}"),
        Format::Json => emit_json(
            "count",
            json!({ "pattern": p.to_string(), "n": n, "oracle": oracle }),
            json!({ "count": count }),
            &[],
        ),
    }
    0
}

fn run_list(pattern: &str, n: usize, format: Format) -> i32 {
    let p = parse_pattern(pattern);
    let avoiders = list_avoiders(&p, n).unwrap_or_else(|e| usage_error(&e.to_string()));
    let words: Vec<String> = avoiders.iter().map(|w| w.to_string()).collect();
    match format {
        Format::Text => {
            for w in &words {
                println!("{w}");
            }
        }
        Format::Csv => usage_error("list has no csv form"),
        Format::Json => emit_json(
            "list",
            json!({ "pattern": p.to_string(), "n": n }),
            json!({ "avoiders": words, "count": words.len() }),
            &[],
        ),
    }
    0
}

fn class_table_csv(table: &ClassTable) -> String {
    let mut out = String::from("label,member");
    for n in table.n_min..=table.n_max {
        out.push_str(&format!(",n{n}"));
    }
    out.push('\n');
    for class in &table.classes {
        for member in &class.members {
            out.push_str(&format!("{},{}", class.label, member));
            for count in &class.counts {
                out.push_str(&format!(",{count}"));
            }
            out.push('\n');
        }
    }
    out
}

fn run_classify(k: usize, n_max: usize, extended: bool, format: Format) -> i32 {
    let n_max = if extended { n_max.max(11) } else { n_max };
    let table = match classify_quasi_consecutive(k, n_max) {
        Ok(table) => table,
        Err(e @ ClassifyError::UnderSeparated { .. }) => {
            return report_failure("classify", json!({ "k": k, "n_max": n_max }), &e, format)
        }
        Err(e) => usage_error(&e.to_string()),
    };
    match format {
        Format::Text => print!("{}", table.to_text()),
        Format::Csv => print!("{}", class_table_csv(&table)),
        Format::Json => emit_json(
            "classify",
            json!({ "k": k, "n_max": n_max }),
            serde_json::to_value(&table).expect("serializable"),
            &[],
        ),
    }
    0
}

fn report_failure(command: &str, inputs: Value, error: &dyn std::fmt::Display, format: Format) -> i32 {
    let msg = error.to_string();
    match format {
        Format::Json => emit_json(command, inputs, Value::Null, &[msg]),
        _ => eprintln!("{msg}"),
    }
    1
}

fn run_verify_table(n_max: usize, format: Format) -> i32 {
    let inputs = json!({ "n_max": n_max });
    let table = match classify_quasi_consecutive(5, n_max) {
        Ok(table) => table,
        Err(e @ ClassifyError::UnderSeparated { .. }) => {
            return report_failure("verify-table", inputs, &e, format)
        }
        Err(e) => usage_error(&e.to_string()),
    };
    let diff = verify_against_paper_tables(&table).expect("length-5 table");
    let verified = diff.holds();
    match format {
        Format::Json => emit_json(
            "verify-table",
            inputs,
            json!({
                "classes": table.classes.len(),
                "n_compared": diff.n_compared,
                "verified": verified,
            }),
            &diff.mismatches,
        ),
        _ => {
            if verified {
                println!("{} classes verified", table.classes.len());
            } else {
                for line in &diff.mismatches {
                    println!("{line}");
                }
            }
        }
    }
    i32::from(!verified)
}

fn lift_with_tail(perm: &Permutation, d: u8) -> VincularPattern {
    let k = perm.len() as u8;
    if d == 0 || d > k + 1 {
        usage_error(&format!("--dashed-tail {d} out of range 1..={}", k + 1));
    }
    let mut values: Vec<u8> = perm
        .values()
        .iter()
        .map(|&v| if v >= d { v + 1 } else { v })
        .collect();
    values.push(d);
    VincularPattern::quasi_consecutive(Permutation::new(values).expect("lift keeps distinctness"))
        .expect("lifted length is at least 2")
}

fn build_spec(sigma: &str, tau: &str, dashed_tail: Option<u8>) -> Result<SwapSpec, String> {
    if sigma.contains('-') || tau.contains('-') {
        if dashed_tail.is_some() {
            usage_error("--dashed-tail conflicts with patterns that already carry a dash");
        }
        make_quasi_swap_spec(&parse_pattern(sigma), &parse_pattern(tau))
            .map_err(|e| e.to_string())
    } else {
        let (s, t) = (parse_perm(sigma), parse_perm(tau));
        match dashed_tail {
            Some(d) => make_quasi_swap_spec(&lift_with_tail(&s, d), &lift_with_tail(&t, d))
                .map_err(|e| e.to_string()),
            None => make_swap_spec(&s, &t).map_err(|e| e.to_string()),
        }
    }
}

fn run_bijection(sigma: &str, tau: &str, n: usize, dashed_tail: Option<u8>, format: Format) -> i32 {
    let inputs = json!({
        "sigma": sigma, "tau": tau, "n": n, "dashed_tail": dashed_tail,
    });
    let spec = match build_spec(sigma, tau, dashed_tail) {
        Ok(spec) => spec,
        Err(msg) => {
            return report_failure(
                "bijection",
                inputs,
                &format!("pair rejected: {msg}"),
                format,
            )
        }
    };
    let dashed = spec.dashed_tail().is_some();
    let verified = if dashed {
        verify_wilf_via_psi(&spec, n, true)
    } else {
        verify_involution(&spec, n)
    }
    .unwrap_or_else(|e| usage_error(&e.to_string()));
    let checked: u64 = (1..=n as u64).product();
    let what = if dashed {
        "containment exchange"
    } else {
        "involution"
    };
    match format {
        Format::Json => emit_json(
            "bijection",
            inputs,
            json!({
                "spec": spec.to_string(),
                "i": spec.i(),
                "j": spec.j(),
                "permutations_checked": checked,
                "verified": verified,
            }),
            &if verified {
                vec![]
            } else {
                vec![format!("swap map fails over S_{n}")]
            },
        ),
        _ => {
            if verified {
                println!("{what} verified over {checked} permutations: {spec}");
            } else {
                println!("swap map fails over S_{n}: {spec}");
            }
        }
    }
    i32::from(!verified)
}

fn run_recursion(n_max: usize, pattern: Option<&str>, format: Format) -> i32 {
    let selected: Vec<&str> = match pattern {
        None => vec!["2153-4", "3154-2"],
        Some(p @ ("2153-4" | "3154-2")) => vec![p],
        Some(other) => usage_error(&format!(
            "recursion tables exist for 2153-4 and 3154-2 only, not {other:?}"
        )),
    };
    let mut families = Vec::new();
    for name in &selected {
        let tables = if *name == "2153-4" {
            build_tables_sigma(n_max)
        } else {
            build_tables_tau(n_max)
        }
        .unwrap_or_else(|e| usage_error(&e.to_string()));
        families.push((*name, tables));
    }
    match format {
        Format::Text => {
            for (name, tables) in &families {
                for table in tables {
                    println!("{name}, n = {} (total {})", table.n(), table.total());
                    let width = table
                        .entries()
                        .iter()
                        .flatten()
                        .map(|v| v.to_string().len())
                        .max()
                        .unwrap_or(1);
                    for k in 1..=table.n() {
                        let row: Vec<String> = (1..=table.n())
                            .map(|l| format!("{:>width$}", table.entry(k, l)))
                            .collect();
                        println!("  {}", row.join(" "));
                    }
                }
            }
        }
        Format::Csv => {
            if families.len() != 1 {
                usage_error("csv output needs --pattern to select one table family");
            }
            println!("n,k,l,value");
            for table in &families[0].1 {
                for k in 1..=table.n() {
                    for l in 1..=table.n() {
                        println!("{},{k},{l},{}", table.n(), table.entry(k, l));
                    }
                }
            }
        }
        Format::Json => {
            let result: Value = families
                .iter()
                .map(|(name, tables)| {
                    (
                        name.to_string(),
                        serde_json::to_value(tables).expect("serializable"),
                    )
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            emit_json(
                "recursion",
                json!({ "n_max": n_max, "pattern": pattern }),
                result,
                &[],
            );
        }
    }
    0
}

fn run_verify_thm_h(n_max: usize, format: Format) -> i32 {
    let easy = verify_easy_h(n_max).unwrap_or_else(|e| usage_error(&e.to_string()));
    let hard = verify_thm_h(n_max).unwrap_or_else(|e| usage_error(&e.to_string()));
    let mut violations = easy.violations.clone();
    violations.extend(hard.violations.iter().cloned());
    let checks = easy.checks + hard.checks;
    let verified = violations.is_empty();
    match format {
        Format::Json => emit_json(
            "verify-thm-h",
            json!({ "n_max": n_max }),
            json!({ "checks": checks, "verified": verified }),
            &violations,
        ),
        _ => {
            if verified {
                println!("relations verified for n = 5..={n_max} ({checks} checks)");
            } else {
                for line in &violations {
                    println!("{line}");
                }
            }
        }
    }
    i32::from(!verified)
}

fn run_fillings_check(
    sigma: &str,
    tau: &str,
    max_cells: usize,
    shape_only: bool,
    format: Format,
) -> i32 {
    let report = check_filling_shape_wilf(
        &parse_pattern(sigma),
        &parse_pattern(tau),
        max_cells,
        shape_only,
    )
    .unwrap_or_else(|e| usage_error(&e.to_string()));
    let verified = report.holds();
    let violations: Vec<String> = report
        .counterexamples
        .iter()
        .map(|c| c.to_string())
        .collect();
    match format {
        Format::Json => emit_json(
            "fillings-check",
            json!({
                "sigma": sigma, "tau": tau,
                "max_cells": max_cells, "shape_only": shape_only,
            }),
            serde_json::to_value(&report).expect("serializable"),
            &violations,
        ),
        _ => {
            if verified {
                println!(
                    "no counterexamples among {} diagrams ({} filling classes)",
                    report.diagrams_checked, report.classes_checked
                );
            } else {
                for line in &violations {
                    println!("{line}");
                }
            }
        }
    }
    i32::from(!verified)
}

fn run_sandcastle(pattern: &str, format: Format) -> i32 {
    let p = parse_pattern(pattern);
    let partner = sandcastle_pair(&p);
    match format {
        Format::Json => emit_json(
            "sandcastle",
            json!({ "pattern": p.to_string() }),
            json!({ "partner": partner.as_ref().map(|q| q.to_string()) }),
            &[],
        ),
        _ => match &partner {
            Some(q) => println!("{p} <-> {q}"),
            None => println!("no tail swap applies to {p}"),
        },
    }
    0
}

fn run_ek_lift(sigma: &str, tau: &str, n_max: usize, format: Format) -> i32 {
    let s = parse_pattern(sigma);
    let t = parse_pattern(tau);
    let equivalent = match ek_lift_check(&s, &t, n_max) {
        Ok(answer) => answer,
        Err(e) => usage_error(&e.to_string()),
    };
    match format {
        Format::Json => emit_json(
            "ek-lift",
            json!({ "sigma": sigma, "tau": tau, "n_max": n_max }),
            json!({ "equivalent": equivalent }),
            &if equivalent {
                vec![]
            } else {
                vec![format!("counts diverge somewhere in n <= {n_max}")]
            },
        ),
        _ => {
            if equivalent {
                println!("counts agree through n = {n_max}, dashed lift included");
            } else {
                println!("counts diverge somewhere in n <= {n_max}");
            }
        }
    }
    i32::from(!equivalent)
}
