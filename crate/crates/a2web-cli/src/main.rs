use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use a2web::invariants::{jones_torus_laurent, ColoredLinkSpec};
use a2web::tails::tail_series;
use a2web::twist::{antiparallel_multi, parallel_multi, BasisConvention, Orientation, TwistExpansion};
use a2web::verify::{self, Limits, Suite, SuiteReport};
use a2web::webcore::{build_web, evaluate_closed, evaluate_open, render_web};
use a2web::{QLaurent, QRational};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "a2web", version, about = "Exact A2 (sl3) web computations")]
struct Cli {
    /// Output format. Machine output is JSON; every polynomial is a list of
    /// [exponent, coefficient] pairs with exponents in units of q^(1/6).
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    K,
    L,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Colored sl3 Jones polynomial of the (2,2m) torus link.
    Jones {
        #[arg(long)]
        orientation: Orientation,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Tail series of the normalized invariants up to q^order.
    Tail {
        #[arg(long)]
        orientation: Orientation,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        order: usize,
    },
    /// Coefficients of m full twists in the basis webs.
    Twist {
        #[arg(long)]
        orientation: Orientation,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Index entries by clasped turnbacks (k) or by loops (l).
        #[arg(long, value_enum, default_value_t = Form::K)]
        form: Form,
    },
    /// Reduces a web file (or stdin with `-`) to basis webs or a scalar.
    Reduce { file: PathBuf },
    /// Runs verification suites; exits 1 if any check fails.
    Verify {
        /// qcomb, skein, clasp, twist, torus, tails or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        max_color: usize,
        #[arg(long, default_value_t = 2)]
        max_twists: usize,
    },
}

fn terms_json(p: &QLaurent) -> Value {
    Value::Array(p.terms().iter().map(|&(e, c)| json!([e, c])).collect())
}

fn rational_json(r: &QRational) -> Value {
    json!({ "num": terms_json(r.num()), "den": terms_json(r.den()) })
}

/// Output text and whether the command succeeded.
type Outcome = Result<(String, bool), String>;

fn jones(fmt: Format, orientation: Orientation, m: usize, s: usize, t: usize) -> Outcome {
    let spec = ColoredLinkSpec::new(orientation, m, s, t).map_err(|e| e.to_string())?;
    let j = jones_torus_laurent(&spec).map_err(|e| e.to_string())?;
    let out = match fmt {
        Format::Text => format!("{}\n{}\n", spec, j),
        Format::Machine => json!({
            "command": "jones",
            "orientation": orientation.to_string(),
            "m": m, "s": s, "t": t,
            "terms": terms_json(&j),
        })
        .to_string()
            + "\n",
    };
    Ok((out, true))
}

fn tail(fmt: Format, orientation: Orientation, m: usize, order: usize) -> Outcome {
    let series = tail_series(orientation, m, order).map_err(|e| e.to_string())?;
    let out = match fmt {
        Format::Text => format!("{} m={}\n{}\n", orientation, m, series),
        Format::Machine => json!({
            "command": "tail",
            "orientation": orientation.to_string(),
            "m": m, "order": order,
            "terms": terms_json(&series.series),
        })
        .to_string()
            + "\n",
    };
    Ok((out, true))
}

fn twist(fmt: Format, orientation: Orientation, s: usize, t: usize, m: usize, form: Form) -> Outcome {
    let exp = match orientation {
        Orientation::Parallel => parallel_multi(s, t, m),
        Orientation::Antiparallel => antiparallel_multi(s, t, m),
    }
    .map_err(|e| e.to_string())?;
    let exp: TwistExpansion = match form {
        Form::K => exp.to_k_form(),
        Form::L => exp.to_l_form(),
    };
    let name = if exp.basis_convention == BasisConvention::KForm { "k" } else { "l" };
    let out = match fmt {
        Format::Text => {
            let mut s_ = format!("{} s={} t={} m={}\n", orientation, s, t, m);
            for (i, c) in &exp.entries {
                s_ += &format!("{}={}: {}\n", name, i, c);
            }
            s_
        }
        Format::Machine => json!({
            "command": "twist",
            "orientation": orientation.to_string(),
            "s": s, "t": t, "m": m, "form": name,
            "entries": exp.entries.iter().map(|(i, c)| json!({ "index": i, "terms": terms_json(c) })).collect::<Vec<_>>(),
        })
        .to_string()
            + "\n",
    };
    Ok((out, true))
}

fn reduce(fmt: Format, file: &PathBuf) -> Outcome {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{}: {}", file.display(), e))?
    };
    let w = build_web(&text).map_err(|e| e.to_string())?;
    if w.is_closed() {
        let v = evaluate_closed(&w).map_err(|e| e.to_string())?;
        let out = match fmt {
            Format::Text => format!("{}\n", v),
            Format::Machine => json!({ "command": "reduce", "scalar": rational_json(&v) }).to_string() + "\n",
        };
        return Ok((out, true));
    }
    let sum = evaluate_open(&w).map_err(|e| e.to_string())?;
    let out = match fmt {
        Format::Text => {
            let mut s = String::new();
            if sum.is_empty() {
                s += "0\n";
            }
            for (_, d, c) in sum.sorted() {
                s += &format!("coefficient: {}\n{}\n", c, render_web(d));
            }
            s
        }
        Format::Machine => json!({
            "command": "reduce",
            "terms": sum.sorted().into_iter().map(|(_, d, c)| json!({ "coefficient": rational_json(c), "web": render_web(d) })).collect::<Vec<_>>(),
        })
        .to_string()
            + "\n",
    };
    Ok((out, true))
}

fn run_verify(fmt: Format, suite: &str, limits: Limits) -> Result<Outcome, String> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let reports: Vec<SuiteReport> = suites
        .into_iter()
        .map(|s| verify::run(s, limits))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let passed = reports.iter().all(|r| r.passed());
    let out = match fmt {
        Format::Text => {
            let mut s = String::new();
            let mut total = 0;
            let mut failed = 0;
            for r in &reports {
                s += &format!("[{}]\n", r.suite);
                for c in &r.checks {
                    s += &format!("  {}\n", c);
                    total += 1;
                    failed += usize::from(!c.passed);
                }
            }
            s += &format!("{} checks, {} failed\n", total, failed);
            s
        }
        Format::Machine => json!({
            "command": "verify",
            "passed": passed,
            "suites": reports.iter().map(|r| json!({
                "suite": r.suite.to_string(),
                "checks": r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
        .to_string()
            + "\n",
    };
    Ok(Ok((out, passed)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.format;
    let outcome = match cli.cmd {
        Cmd::Jones { orientation, m, s, t } => jones(fmt, orientation, m, s, t),
        Cmd::Tail { orientation, m, order } => tail(fmt, orientation, m, order),
        Cmd::Twist { orientation, s, t, m, form } => twist(fmt, orientation, s, t, m, form),
        Cmd::Reduce { file } => reduce(fmt, &file),
        Cmd::Verify { suite, max_color, max_twists } => {
            match run_verify(fmt, &suite, Limits { max_color, max_twists }) {
                Ok(o) => o,
                Err(usage) => {
                    eprintln!("error: {}\n\nSuites: qcomb, skein, clasp, twist, torus, tails, all", usage);
                    return ExitCode::from(2);
                }
            }
        }
    };
    match outcome {
        Ok((out, ok)) => {
            print!("{}", out);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
