use std::io::Write;
use std::process::{Command, Output, Stdio};

use rangemode::{DynamicModes, Engine, ModesResult, Strategy, Symbol};
use rangemode_cli::fuzz::{fuzz, fuzz_with, FuzzOutcome, FuzzParams, FuzzSubject};
use rangemode_cli::trace::{self, run_trace_str};

fn rangemode(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rangemode"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trace_command() {
    for strategy in ["simple-rebuild", "pcn"] {
        let o = rangemode(
            &["trace", "--strategy", strategy, "--audit"],
            "# demo\nI 0 5\nI 1 7\nI 2 5\nQ 0 2\n",
        );
        assert!(o.status.success());
        assert_eq!(stdout(&o), "2 5\n");
    }
    let o = rangemode(&["trace"], "I 0 1\nQ 0 0\n");
    assert_eq!(stdout(&o), "1 1\n");

    let o = rangemode(&["trace"], "Q 0 0\n");
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let o = rangemode(&["trace", "--alpha", "0.5"], "");
    assert!(!o.status.success());
}

#[test]
fn trace_output_is_pure() {
    let text = "I 0 3\nI 0 3\nI 1 4\nQ 0 2\nD 0\nQ 0 1\nI 2 4\nQ 0 2\n";
    let first = run_trace_str(&mut Engine::with_strategy(&[], Strategy::Pcn), text).unwrap();
    let again = run_trace_str(&mut Engine::with_strategy(&[], Strategy::Pcn), text).unwrap();
    assert_eq!(first, again);
    assert_eq!(first, "2 3\n1 3 4\n2 4\n");
}

#[test]
fn fuzz_command_is_deterministic() {
    let args = [
        "fuzz",
        "--seed",
        "9",
        "--ops",
        "3000",
        "--max-len",
        "200",
        "--alphabet",
        "5",
        "--audit-every",
        "250",
    ];
    let a = rangemode(&args, "");
    let b = rangemode(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("ok: 3000 ops"));
}

#[test]
fn fuzz_default_run_succeeds() {
    let report = fuzz(&FuzzParams {
        seed: 1,
        ops: 10_000,
        max_len: 2_000,
        alphabet: 26,
        strategy: Strategy::Pcn,
        audit_every: None,
    });
    assert!(report.is_success(), "{report}");
}

/// An engine that drops one occurrence from every answer with a tie.
struct Faulty(Engine);

impl DynamicModes for Faulty {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn insert(&mut self, i: usize, c: Symbol) -> rangemode::Result<()> {
        self.0.insert(i, c)
    }

    fn delete(&mut self, i: usize) -> rangemode::Result<Symbol> {
        self.0.delete(i)
    }

    fn modes(&self, l: usize, r: usize) -> rangemode::Result<ModesResult> {
        let mut m = self.0.modes(l, r)?;
        if m.modes.len() > 1 {
            m.modes.pop();
        }
        Ok(m)
    }
}

impl FuzzSubject for Faulty {}

#[test]
fn fault_injection_is_caught_with_reproducer() {
    let params = FuzzParams {
        seed: 3,
        ops: 5_000,
        max_len: 100,
        alphabet: 4,
        ..FuzzParams::default()
    };
    let report = fuzz_with(&params, Faulty(Engine::with_strategy(&[], Strategy::Pcn)));
    let FuzzOutcome::Divergence {
        index, reproducer, ..
    } = &report.outcome
    else {
        panic!("fault went unnoticed: {report}");
    };
    assert_eq!(reproducer.len(), index + 1);
    let again = fuzz_with(&params, Faulty(Engine::with_strategy(&[], Strategy::Pcn)));
    assert_eq!(report.to_string(), again.to_string());

    // the dumped trace replays to the same disagreement
    let text = report.to_string();
    let trace_text: String = text
        .lines()
        .skip_while(|l| !l.starts_with("# reproducer"))
        .map(|l| format!("{l}\n"))
        .collect();
    let want = run_trace_str(&mut rangemode::NaiveSeq::new(), &trace_text).unwrap();
    let got = run_trace_str(
        &mut Faulty(Engine::with_strategy(&[], Strategy::Pcn)),
        &trace_text,
    )
    .unwrap();
    assert_eq!(want.lines().count(), got.lines().count());
    assert_ne!(want.lines().last(), got.lines().last());
    assert!(trace::parse_line(text.lines().last().unwrap())
        .unwrap()
        .is_some());
}

#[test]
fn bench_command() {
    let o = rangemode(&["bench", "--reps", "0"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n,sigma_prime,op,median_ns,output_size\n");

    let o = rangemode(
        &[
            "bench",
            "--sizes",
            "200,800",
            "--alphabet",
            "8",
            "--ops",
            "insert,modes",
            "--reps",
            "5",
        ],
        "",
    );
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[1].starts_with("200,8,insert,"));
    assert!(text.contains("# slope insert "));
    assert!(text.contains("# slope modes "));
}

#[test]
fn intersect_command() {
    let dir = std::env::temp_dir().join(format!("rangemode-intersect-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let family = dir.join("family.txt");
    std::fs::write(&family, "U 2\nS 1 2\nS 1\n").unwrap();
    let path = family.to_str().unwrap();

    let o = rangemode(
        &["intersect", path],
        "? 1 2\n+ 2 2\n? 1 2\n- 1 1\n- 1 2\n? 1 2\n",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "1\n1 2\n-\n");

    let o = rangemode(&["intersect", path, "--strategy", "pcn"], "? 1 2\n? 1 5\n");
    assert!(!o.status.success());
    assert_eq!(stdout(&o), "1\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    std::fs::write(&family, "U 2\nS 1 3\n").unwrap();
    let o = rangemode(&["intersect", path], "");
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}
