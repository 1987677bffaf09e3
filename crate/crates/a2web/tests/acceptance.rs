//! Acceptance criteria 1 to 9, one line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use a2web::verify::{
    clasp_braiding, clasp_properties, closure_values, confluence_suite, kink_framing, recurrence_checks,
    reidemeister_corpus, reidemeister_suite, skein_ground_truth, tail_stabilization, torus_oracles, twist_forms,
    twist_oracles, Check, REIDEMEISTER_PER_MOVE, REIDEMEISTER_SEED,
};

type Outcome = Result<Vec<Check>, String>;

fn checks<E: std::fmt::Display>(r: Result<Vec<Check>, E>) -> Outcome {
    r.map_err(|e| e.to_string())
}

fn skein() -> Outcome {
    checks(skein_ground_truth())
}

fn reidemeister() -> Outcome {
    let corpus = reidemeister_corpus(REIDEMEISTER_PER_MOVE, REIDEMEISTER_SEED).map_err(|e| e.to_string())?;
    let mut max_cross = 0;
    for inst in &corpus {
        for p in [&inst.lhs, &inst.rhs] {
            let w = p.materialize().map_err(|e| e.to_string())?;
            if !w.is_closed() {
                return Err("corpus diagram is not closed".into());
            }
            max_cross = max_cross.max(w.num_crossings());
        }
    }
    let mut out = checks(reidemeister_suite(REIDEMEISTER_PER_MOVE, REIDEMEISTER_SEED))?;
    out.extend(checks(kink_framing())?);
    out.extend(checks(confluence_suite(20, REIDEMEISTER_SEED))?);
    let size_ok = 2 * corpus.len() >= 50 && max_cross <= 6;
    out.push(Check {
        name: "corpus size and crossing bound".into(),
        passed: size_ok,
        detail: format!("{} closed diagrams, at most {} crossings", 2 * corpus.len(), max_cross),
    });
    Ok(out)
}

fn clasps() -> Outcome {
    let mut out = checks(clasp_properties(3))?;
    out.extend(checks(clasp_braiding(2))?);
    Ok(out)
}

fn forms() -> Outcome {
    checks(twist_forms(5))
}

fn oracles() -> Outcome {
    checks(twist_oracles(2, 2))
}

fn torus() -> Outcome {
    checks(torus_oracles(&[(1, 1), (1, 2), (2, 2)], &[1, 2]))
}

fn closures() -> Outcome {
    checks(closure_values(2))
}

fn tails() -> Outcome {
    checks(tail_stabilization(&[1, 2], 8))
}

fn recurrence() -> Outcome {
    checks(recurrence_checks(6, 2))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("skein ground truth", skein, 10),
        ("Reidemeister suite", reidemeister, 60),
        ("clasp suite", clasps, 120),
        ("twist-form equivalence", forms, 60),
        ("twist against engine", oracles, 300),
        ("torus-link oracle", torus, 600),
        ("closure values", closures, 60),
        ("tail stabilization", tails, 300),
        ("recurrence regression", recurrence, 120),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (passed, detail) = match &result {
            Ok(cs) => {
                let failed: Vec<&Check> = cs.iter().filter(|c| !c.passed).collect();
                let detail = match failed.first() {
                    None => format!("{} checks", cs.len()),
                    Some(c) => format!("{} of {} checks failed, first: {}", failed.len(), cs.len(), c),
                };
                (failed.is_empty() && in_time, detail)
            }
            Err(e) => (false, format!("error: {}", e)),
        };
        let time = if in_time { String::new() } else { format!(", over the {}s budget", budget) };
        println!(
            "criterion {}: {} {} ({}, {:.2}s{})",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            name,
            detail,
            elapsed.as_secs_f64(),
            time
        );
        all &= passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
