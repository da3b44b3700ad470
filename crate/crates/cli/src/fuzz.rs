//! Seeded differential fuzzing against [`NaiveSeq`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rangemode::{DynamicModes, Engine, NaiveSeq, Strategy, Symbol};

use crate::trace::{apply, TraceLine};

/// Something the fuzzer can drive and, optionally, self-check.
pub trait FuzzSubject: DynamicModes {
    fn self_check(&self) -> rangemode::Result<()> {
        Ok(())
    }
}

impl FuzzSubject for Engine {
    fn self_check(&self) -> rangemode::Result<()> {
        self.audit()
    }
}

impl FuzzSubject for NaiveSeq {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzParams {
    pub seed: u64,
    pub ops: usize,
    pub max_len: usize,
    pub alphabet: u64,
    pub strategy: Strategy,
    /// Run the subject's self check every this many operations.
    pub audit_every: Option<usize>,
}

impl Default for FuzzParams {
    fn default() -> Self {
        FuzzParams {
            seed: 1,
            ops: 10_000,
            max_len: 2_000,
            alphabet: 26,
            strategy: Strategy::Pcn,
            audit_every: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FuzzOutcome {
    Success {
        queries: usize,
        audits: usize,
    },
    /// The subject disagreed with the oracle at operation `index` (0-based).
    Divergence {
        index: usize,
        op: TraceLine,
        subject: String,
        oracle: String,
        /// The full trace up to and including the failing operation.
        reproducer: Vec<TraceLine>,
    },
    AuditFailure {
        index: usize,
        message: String,
        reproducer: Vec<TraceLine>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzReport {
    pub params: FuzzParams,
    pub outcome: FuzzOutcome,
}

impl FuzzReport {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, FuzzOutcome::Success { .. })
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "fuzz seed={} ops={} max_len={} alphabet={} strategy={}",
            p.seed, p.ops, p.max_len, p.alphabet, p.strategy
        )?;
        let reproducer = match &self.outcome {
            FuzzOutcome::Success { queries, audits } => {
                return writeln!(f, "ok: {} ops, {queries} queries, {audits} audits", p.ops);
            }
            FuzzOutcome::Divergence {
                index,
                op,
                subject,
                oracle,
                reproducer,
            } => {
                writeln!(f, "divergence at op {index}: {op}")?;
                writeln!(f, "  engine: {subject}")?;
                writeln!(f, "  oracle: {oracle}")?;
                reproducer
            }
            FuzzOutcome::AuditFailure {
                index,
                message,
                reproducer,
            } => {
                writeln!(f, "audit failed after op {index}: {message}")?;
                reproducer
            }
        };
        writeln!(f, "# reproducer trace ({} ops)", reproducer.len())?;
        for op in reproducer {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

fn render(answer: &rangemode::Result<Option<String>>, deleted: Option<Symbol>) -> String {
    match (answer, deleted) {
        (Err(e), _) => format!("error: {e}"),
        (Ok(Some(line)), _) => line.clone(),
        (Ok(None), Some(c)) => format!("deleted {c}"),
        (Ok(None), None) => "ok".to_string(),
    }
}

fn step<M: DynamicModes>(model: &mut M, op: TraceLine) -> String {
    match op {
        TraceLine::Delete(i) => match model.delete(i) {
            Ok(c) => render(&Ok(None), Some(c)),
            Err(e) => render(&Err(e), None),
        },
        _ => render(&apply(model, op), None),
    }
}

/// Draws the next operation: about 40% inserts, 20% deletes, 40% queries.
fn next_op(rng: &mut ChaCha8Rng, len: usize, p: &FuzzParams) -> TraceLine {
    let roll = rng.gen_range(0..10);
    let grow = len == 0 || (roll < 4 && len < p.max_len);
    if grow {
        TraceLine::Insert(
            rng.gen_range(0..=len),
            Symbol(rng.gen_range(0..p.alphabet.max(1))),
        )
    } else if roll < 6 {
        TraceLine::Delete(rng.gen_range(0..len))
    } else {
        let l = rng.gen_range(0..len);
        TraceLine::Query(l, rng.gen_range(l..len))
    }
}

/// Fuzzes an [`Engine`] built with `params.strategy`.
pub fn fuzz(params: &FuzzParams) -> FuzzReport {
    let mut config = rangemode::Config::with_strategy(params.strategy);
    config.audit_mode = params.audit_every.is_some();
    let engine = Engine::new(&[], config).expect("empty engine");
    fuzz_with(params, engine)
}

/// Drives `subject` and a fresh oracle through the same seeded trace.
pub fn fuzz_with<M: FuzzSubject>(params: &FuzzParams, mut subject: M) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut oracle = NaiveSeq::new();
    let mut trace = Vec::new();
    let (mut queries, mut audits) = (0, 0);
    let outcome = 'run: {
        for index in 0..params.ops {
            let op = next_op(&mut rng, oracle.len(), params);
            trace.push(op);
            if matches!(op, TraceLine::Query(..)) {
                queries += 1;
            }
            let want = step(&mut oracle, op);
            let got = step(&mut subject, op);
            if got != want || subject.len() != oracle.len() {
                break 'run FuzzOutcome::Divergence {
                    index,
                    op,
                    subject: got,
                    oracle: want,
                    reproducer: trace,
                };
            }
            if let Some(every) = params.audit_every {
                if every > 0 && (index + 1) % every == 0 {
                    audits += 1;
                    if let Err(e) = subject.self_check() {
                        break 'run FuzzOutcome::AuditFailure {
                            index,
                            message: e.to_string(),
                            reproducer: trace,
                        };
                    }
                }
            }
        }
        FuzzOutcome::Success { queries, audits }
    };
    FuzzReport {
        params: params.clone(),
        outcome,
    }
}
