//! Wall-clock micro benchmarks with CSV output and log-log slope fits.

use std::collections::BTreeSet;
use std::fmt;
use std::hint::black_box;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rangemode::{Engine, Strategy, Symbol};

pub const CSV_HEADER: &str = "n,sigma_prime,op,median_ns,output_size";

/// Each modes sample is the mean of this many runs of one query; single
/// queries can be shorter than the clock's resolution.
pub const QUERY_BATCH: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Insert,
    Delete,
    /// Alternating inserts and deletes, each timed on its own.
    Update,
    Modes,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::Insert => "insert",
            OpKind::Delete => "delete",
            OpKind::Update => "update",
            OpKind::Modes => "modes",
        })
    }
}

impl FromStr for OpKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "insert" => Ok(OpKind::Insert),
            "delete" => Ok(OpKind::Delete),
            "update" => Ok(OpKind::Update),
            "modes" => Ok(OpKind::Modes),
            _ => Err(format!(
                "unknown op kind {s:?}; expected insert, delete, update or modes"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchParams {
    pub sizes: Vec<usize>,
    pub alphabet: u64,
    pub ops: Vec<OpKind>,
    pub reps: usize,
    pub seed: u64,
    pub strategy: Strategy,
    /// Lay symbols out round-robin so every symbol occurs equally often, and
    /// query the full range. Inserted symbols stay random.
    pub tied: bool,
}

impl Default for BenchParams {
    fn default() -> Self {
        BenchParams {
            sizes: vec![1 << 14, 1 << 17, 1 << 20],
            alphabet: 26,
            ops: vec![OpKind::Update, OpKind::Modes],
            reps: 101,
            seed: 1,
            strategy: Strategy::SimpleRebuild,
            tied: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub sigma_prime: usize,
    pub op: OpKind,
    pub median_ns: u64,
    pub output_size: usize,
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.n, self.sigma_prime, self.op, self.median_ns, self.output_size
        )
    }
}

pub fn initial_sequence(n: usize, alphabet: u64, tied: bool, rng: &mut ChaCha8Rng) -> Vec<Symbol> {
    let alphabet = alphabet.max(1);
    (0..n)
        .map(|t| {
            if tied {
                Symbol(t as u64 % alphabet)
            } else {
                Symbol(rng.gen_range(0..alphabet))
            }
        })
        .collect()
}

fn median(samples: &mut [u64]) -> u64 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn median_usize(samples: &mut [usize]) -> usize {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn time<T>(f: impl FnOnce() -> T) -> (u64, T) {
    let start = Instant::now();
    let out = black_box(f());
    (start.elapsed().as_nanos() as u64, out)
}

/// Times `reps` operations of kind `op` on `engine`, keeping its length
/// within one of where it started.
pub fn measure_op(
    engine: &mut Engine,
    op: OpKind,
    reps: usize,
    alphabet: u64,
    tied: bool,
    rng: &mut ChaCha8Rng,
) -> (u64, usize) {
    let alphabet = alphabet.max(1);
    let mut ns = Vec::with_capacity(reps);
    let mut sizes = Vec::with_capacity(reps);
    for rep in 0..reps {
        let n = engine.len();
        let sym = Symbol(rng.gen_range(0..alphabet));
        match op {
            OpKind::Insert => {
                let i = rng.gen_range(0..=n);
                ns.push(time(|| engine.insert(i, sym).expect("insert in range")).0);
                engine
                    .delete(rng.gen_range(0..=n))
                    .expect("delete in range");
                sizes.push(0);
            }
            OpKind::Delete => {
                let i = rng.gen_range(0..n);
                ns.push(time(|| engine.delete(i).expect("delete in range")).0);
                engine
                    .insert(rng.gen_range(0..n), sym)
                    .expect("insert in range");
                sizes.push(0);
            }
            OpKind::Update if rep % 2 == 0 => {
                let i = rng.gen_range(0..=n);
                ns.push(time(|| engine.insert(i, sym).expect("insert in range")).0);
                sizes.push(0);
            }
            OpKind::Update => {
                let i = rng.gen_range(0..n);
                ns.push(time(|| engine.delete(i).expect("delete in range")).0);
                sizes.push(0);
            }
            OpKind::Modes => {
                let (l, r) = if tied {
                    (0, n - 1)
                } else {
                    let l = rng.gen_range(0..n);
                    (l, rng.gen_range(l..n))
                };
                let (t, res) = time(|| {
                    for _ in 1..QUERY_BATCH {
                        black_box(engine.modes(l, r).expect("range in bounds"));
                    }
                    engine.modes(l, r).expect("range in bounds")
                });
                ns.push(t / QUERY_BATCH as u64);
                sizes.push(res.modes.len());
            }
        }
    }
    if op == OpKind::Update && reps % 2 == 1 {
        engine
            .delete(rng.gen_range(0..engine.len()))
            .expect("delete in range");
    }
    (median(&mut ns), median_usize(&mut sizes))
}

/// One record per (size, op kind). Nothing is measured when `reps == 0`.
pub fn measure(params: &BenchParams) -> Vec<BenchRecord> {
    if params.reps == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut records = Vec::new();
    for &n in &params.sizes {
        let n = n.max(1);
        let initial = initial_sequence(n, params.alphabet, params.tied, &mut rng);
        let sigma_prime = initial.iter().collect::<BTreeSet<_>>().len();
        let mut engine = Engine::with_strategy(&initial, params.strategy);
        for &op in &params.ops {
            if params.tied && op == OpKind::Modes && engine.to_vec() != initial {
                // earlier updates broke the tie
                engine = Engine::with_strategy(&initial, params.strategy);
            }
            let tied = params.tied && op == OpKind::Modes;
            let (median_ns, output_size) = measure_op(
                &mut engine,
                op,
                params.reps,
                params.alphabet,
                tied,
                &mut rng,
            );
            records.push(BenchRecord {
                n,
                sigma_prime,
                op,
                median_ns,
                output_size,
            });
        }
    }
    records
}

/// Least-squares slope of `y` against `x`; `None` with fewer than two
/// distinct `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (points.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

/// Log-log slope of median time against `n`, per op kind.
pub fn slopes(records: &[BenchRecord]) -> Vec<(OpKind, f64)> {
    let kinds: BTreeSet<OpKind> = records.iter().map(|r| r.op).collect();
    kinds
        .into_iter()
        .filter_map(|op| {
            let points: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.op == op)
                .map(|r| ((r.n as f64).ln(), (r.median_ns.max(1) as f64).ln()))
                .collect();
            fit_slope(&points).map(|s| (op, s))
        })
        .collect()
}

pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{r}")?;
    }
    for (op, s) in slopes(records) {
        writeln!(out, "# slope {op} {s:.3}")?;
    }
    out.flush()
}

pub fn bench<W: Write>(params: &BenchParams, out: W) -> io::Result<Vec<BenchRecord>> {
    let records = measure(params);
    write_csv(&records, out)?;
    Ok(records)
}
