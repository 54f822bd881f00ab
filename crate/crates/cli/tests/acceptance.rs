//! Acceptance suite. Runs the full verification report through the binary
//! and prints one verdict line per criterion, then fails if any criterion
//! did not pass.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn run(args: &[&str]) -> (Output, Duration) {
    let t = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_spacecurve"))
        .args(args)
        .output()
        .expect("spawn spacecurve");
    (o, t.elapsed())
}

struct Verdict {
    criterion: u8,
    ok: bool,
    detail: String,
}

impl Verdict {
    fn line(&self) -> String {
        let tag = if self.ok { "PASS" } else { "FAIL" };
        format!("criterion {}: {tag} {}", self.criterion, self.detail)
    }
}

fn from_report(report: &Value, criterion: u8) -> (bool, String) {
    let Some(c) = report["criteria"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["criterion"] == criterion))
    else {
        return (false, "no checks reported".into());
    };
    let ok = c["status"] == "pass";
    let mut detail = format!(
        "({} passed, {} failed, {} skipped)",
        c["passed"], c["failed"], c["skipped"]
    );
    if let Some(f) = c["failures"].as_array().filter(|f| !f.is_empty()) {
        let names: Vec<&str> = f.iter().filter_map(Value::as_str).take(3).collect();
        detail.push_str(&format!("; failing: {}", names.join(" | ")));
        if f.len() > names.len() {
            detail.push_str(&format!(" and {} more", f.len() - names.len()));
        }
    }
    (ok, detail)
}

#[test]
fn acceptance() {
    let (first, first_time) = run(&["verify-all", "--seed", "0", "--json"]);
    let report: Value =
        serde_json::from_slice(&first.stdout).expect("verify-all emits a JSON report");

    let (_, tau_time) = run(&["tjurina", "--all"]);
    let (_, degree_time) = run(&["ll-degree", "--all"]);

    let mut verdicts = Vec::new();
    for criterion in 1..=6u8 {
        let (mut ok, mut detail) = from_report(&report, criterion);
        match criterion {
            1 => {
                ok &= tau_time < Duration::from_secs(300);
                detail.push_str(&format!(" in {:.2} s", tau_time.as_secs_f64()));
            }
            3 => {
                ok &= degree_time < Duration::from_secs(1);
                detail.push_str(&format!(" in {:.3} s", degree_time.as_secs_f64()));
            }
            _ => {}
        }
        verdicts.push(Verdict {
            criterion,
            ok,
            detail,
        });
    }

    // the property suites run as tests of the core crate; here, determinism
    let (second, _) = run(&["verify-all", "--seed", "0", "--json"]);
    let same = first.stdout == second.stdout && first.status.code() == second.status.code();
    verdicts.push(Verdict {
        criterion: 7,
        ok: same,
        detail: format!(
            "verify-all --seed 0 byte-identical across two runs: {same} ({} bytes, {:.1} s per run)",
            first.stdout.len(),
            first_time.as_secs_f64()
        ),
    });

    for v in &verdicts {
        println!("{}", v.line());
    }
    let failed: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.ok)
        .map(Verdict::line)
        .collect();
    assert!(failed.is_empty(), "unmet criteria:\n{}", failed.join("\n"));
}
