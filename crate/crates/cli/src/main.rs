use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use reltype::script::{run_text, Report, RunOptions, Status};
use reltype::{Field, MonomialOrder};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Lex,
    Degrevlex,
}

/// Relation type of polynomial ideals, driven by small scripts.
#[derive(Debug, Parser)]
#[command(name = "reltype", version)]
struct Cli {
    /// Script files; standard input when none are given.
    files: Vec<PathBuf>,
    /// Field override: QQ or GF(p).
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    /// Monomial order of the script ring.
    #[arg(long, value_enum, default_value = "degrevlex")]
    order: Order,
    /// Abort Gröbner runs that need pairs above this degree.
    #[arg(long, default_value_t = 60)]
    degree_bound: u32,
    /// Per-command timeout in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// One JSON object per report.
    #[arg(long)]
    json: bool,
    /// Include engine statistics.
    #[arg(long)]
    stats: bool,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_field(s: &str) -> Result<Field, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("QQ") {
        return Ok(Field::Rational);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected QQ or GF(p), got `{s}`"))?;
    let p: u64 = inner.trim().parse().map_err(|_| format!("bad characteristic `{inner}`"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn diagnostic(source: &str, r: &Report) -> Option<String> {
    let res = r.result.as_object()?;
    let msg = res.get("error")?.as_str()?;
    match (res.get("line"), res.get("column"), res.get("message")) {
        (Some(l), Some(c), Some(m)) => Some(format!("{source}:{l}:{c}: {}", m.as_str().unwrap_or(msg))),
        _ => Some(format!("{source}: {}: {msg}", r.command.as_deref().unwrap_or("script"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if cli.timeout.is_some_and(|t| !(t.is_finite() && t > 0.0)) {
        eprintln!("error: --timeout must be a positive number of seconds");
        return ExitCode::from(1);
    }
    let opts = RunOptions {
        field: cli.field,
        order: match cli.order {
            Order::Lex => MonomialOrder::Lex,
            Order::Degrevlex => MonomialOrder::DegRevLex,
        },
        degree_bound: Some(cli.degree_bound),
        timeout: cli.timeout.map(Duration::from_secs_f64),
        seed: cli.seed,
        stats: cli.stats,
    };

    let mut inputs: Vec<(String, Result<String, String>)> = Vec::new();
    if cli.files.is_empty() {
        let mut s = String::new();
        let r = io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| e.to_string());
        inputs.push(("<stdin>".into(), r));
    } else {
        for f in &cli.files {
            let r = std::fs::read_to_string(f).map_err(|e| e.to_string());
            inputs.push((f.display().to_string(), r));
        }
    }

    // independent scripts run on their own threads; output keeps file order
    let results: Vec<Result<(Vec<Report>, i32), String>> = std::thread::scope(|sc| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|(_, text)| {
                let opts = &opts;
                sc.spawn(move || text.as_ref().map(|t| run_text(t, opts)).map_err(Clone::clone))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut code = 0;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let many = inputs.len() > 1;
    for ((name, _), res) in inputs.iter().zip(results) {
        match res {
            Err(e) => {
                eprintln!("error: cannot read {name}: {e}");
                if code == 0 {
                    code = 1;
                }
            }
            Ok((reports, c)) => {
                if many && !cli.json {
                    let _ = writeln!(out, "== {name}");
                }
                for r in &reports {
                    let _ = if cli.json {
                        writeln!(out, "{}", r.json_line())
                    } else {
                        write!(out, "{}", r.to_text())
                    };
                    if r.status != Status::Ok {
                        if let Some(d) = diagnostic(name, r) {
                            eprintln!("error: {d}");
                        }
                    }
                }
                if code == 0 {
                    code = c;
                }
            }
        }
    }
    let _ = out.flush();
    ExitCode::from(code as u8)
}
