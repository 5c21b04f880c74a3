//! End-to-end verification of the reductions against the brute-force solver,
//! plus the matcher scaling benchmark.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{degree_stats, is_acyclic, is_deterministic};
use crate::matcher::match_exists;
use crate::ov::{gen_ov_instance, solve_ov_bruteforce, GenMode, OvError, OvInstance};
use crate::reductions::{
    assemble_undirected, assemble_zigzag, build_deterministic_dag, encode_binary, orient_to_dag,
    ReductionArtifact, ReductionError, Variant,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Ov(#[from] OvError),
    #[error("n series must be nonempty and strictly increasing")]
    BadSeries,
}

/// Builds the artifact for `variant`, optionally binary encoded.
pub fn build_artifact(
    inst: &OvInstance,
    variant: Variant,
    binary: bool,
) -> Result<ReductionArtifact, ReductionError> {
    if binary && !variant.supports_binary() {
        return Err(ReductionError::BinaryUnsupported(variant));
    }
    let art = match variant {
        Variant::Undirected => assemble_undirected(inst),
        Variant::Dag => orient_to_dag(&assemble_undirected(inst))?,
        Variant::DetDag => build_deterministic_dag(inst)?,
        Variant::Zigzag => assemble_zigzag(inst),
    };
    if binary {
        encode_binary(&art)
    } else {
        Ok(art)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Structural {
    /// `None` for undirected graphs.
    pub deterministic: Option<bool>,
    pub acyclic: Option<bool>,
    pub max_in_plus_out: usize,
    pub is_simple_path: bool,
    pub pattern_length: usize,
    pub node_count: usize,
    pub edge_count: usize,
}

impl Structural {
    pub fn of(art: &ReductionArtifact) -> Structural {
        let stats = degree_stats(&art.graph);
        Structural {
            deterministic: is_deterministic(&art.graph).ok(),
            acyclic: is_acyclic(&art.graph).ok(),
            max_in_plus_out: stats.max_in_plus_out,
            is_simple_path: stats.is_simple_path,
            pattern_length: art.patterns[0].len(),
            node_count: stats.node_count,
            edge_count: stats.edge_count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Timings {
    pub build_ms: f64,
    pub ov_ms: f64,
    pub match_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub n: usize,
    pub d: usize,
    pub seed: Option<u64>,
    pub mode: Option<GenMode>,
    pub variant: Variant,
    pub binary: bool,
    pub ov_answer: Option<(usize, usize)>,
    /// One entry per pattern; empty when the match phase was skipped.
    pub match_answers: Vec<bool>,
    pub short_circuited: bool,
    pub agree: bool,
    /// `None` when the match phase was skipped.
    pub structural: Option<Structural>,
    pub timings: Timings,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl VerificationReport {
    /// One `key=value` line per field in a fixed order.
    pub fn to_text(&self, with_timings: bool) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| writeln!(s, "{k}={v}").unwrap();
        kv("n", self.n.to_string());
        kv("d", self.d.to_string());
        kv("seed", opt(self.seed));
        kv("mode", opt(self.mode));
        kv("variant", self.variant.to_string());
        kv("binary", self.binary.to_string());
        kv(
            "ov_answer",
            opt(self.ov_answer.map(|(i, j)| format!("{i},{j}"))),
        );
        let answers: Vec<String> = self.match_answers.iter().map(bool::to_string).collect();
        kv(
            "match_answers",
            if answers.is_empty() {
                "-".into()
            } else {
                answers.join(",")
            },
        );
        kv("short_circuited", self.short_circuited.to_string());
        kv("agree", self.agree.to_string());
        if let Some(st) = &self.structural {
            kv("deterministic", opt(st.deterministic));
            kv("acyclic", opt(st.acyclic));
            kv("max_in_plus_out", st.max_in_plus_out.to_string());
            kv("is_simple_path", st.is_simple_path.to_string());
            kv("pattern_length", st.pattern_length.to_string());
            kv("node_count", st.node_count.to_string());
            kv("edge_count", st.edge_count.to_string());
        }
        if with_timings {
            kv("build_ms", format!("{:.3}", self.timings.build_ms));
            kv("ov_ms", format!("{:.3}", self.timings.ov_ms));
            kv("match_ms", format!("{:.3}", self.timings.match_ms));
        }
        s
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs one reduction end to end and compares it with the brute-force answer.
///
/// Deterministic-DAG instances with an all-zero `y_j` are short-circuited:
/// the builder rejects them and the report agrees iff the solver finds a
/// pair, which it always does.
pub fn verify_reduction(
    inst: &OvInstance,
    variant: Variant,
    binary: bool,
) -> Result<VerificationReport, HarnessError> {
    if binary && !variant.supports_binary() {
        return Err(ReductionError::BinaryUnsupported(variant).into());
    }
    let mut timings = Timings::default();
    let t = Instant::now();
    let ov_answer = solve_ov_bruteforce(inst);
    timings.ov_ms = ms(t);
    let mut report = VerificationReport {
        n: inst.n(),
        d: inst.d(),
        seed: None,
        mode: None,
        variant,
        binary,
        ov_answer,
        match_answers: Vec::new(),
        short_circuited: false,
        agree: false,
        structural: None,
        timings,
    };

    let t = Instant::now();
    let art = match build_artifact(inst, variant, binary) {
        Ok(art) => art,
        Err(ReductionError::TriviallyOrthogonal { .. }) => {
            report.short_circuited = true;
            report.agree = ov_answer.is_some();
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.timings.build_ms = ms(t);
    report.structural = Some(Structural::of(&art));

    let t = Instant::now();
    report.match_answers = art
        .patterns
        .iter()
        .map(|p| match_exists(&art.graph, p).expect("artifact pattern matches graph alphabet"))
        .collect();
    report.timings.match_ms = ms(t);
    report.agree = ov_answer.is_some() == report.match_answers.iter().any(|&m| m);
    Ok(report)
}

/// A generated instance to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchItem {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub mode: GenMode,
    pub variant: Variant,
    pub binary: bool,
}

impl BatchItem {
    pub fn run(&self) -> Result<VerificationReport, HarnessError> {
        let inst = gen_ov_instance(self.n, self.d, self.seed, self.mode)?;
        let mut r = verify_reduction(&inst, self.variant, self.binary)?;
        r.seed = Some(self.seed);
        r.mode = Some(self.mode);
        Ok(r)
    }
}

/// `count` random items with `n, d` in `1..=6`, cycling through the variants
/// and turning binary encoding on for roughly half of the eligible ones.
pub fn random_batch(count: usize, seed: u64) -> Vec<BatchItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let variant = Variant::ALL[i % Variant::ALL.len()];
            BatchItem {
                n: rng.gen_range(1..=6),
                d: rng.gen_range(1..=6),
                seed: rng.gen(),
                mode: GenMode::ALL[rng.gen_range(0..GenMode::ALL.len())],
                variant,
                binary: variant.supports_binary() && rng.gen_bool(0.5),
            }
        })
        .collect()
}

/// Runs the items in parallel. Reports come back in input order.
pub fn verify_batch(items: &[BatchItem]) -> Vec<Result<VerificationReport, HarnessError>> {
    items.par_iter().map(BatchItem::run).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub d: usize,
    pub node_count: usize,
    pub edge_count: usize,
    pub pattern_length: usize,
    pub match_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of `ln(time)` against `ln(n d)`; absent for fewer than two rows.
    pub slope: Option<f64>,
}

impl ScalingReport {
    pub fn to_table(&self) -> String {
        let mut s = format!(
            "{:>6} {:>4} {:>10} {:>10} {:>8} {:>12}\n",
            "n", "d", "nodes", "edges", "m", "match_ms"
        );
        for r in &self.rows {
            writeln!(
                s,
                "{:>6} {:>4} {:>10} {:>10} {:>8} {:>12.3}",
                r.n, r.d, r.node_count, r.edge_count, r.pattern_length, r.match_time_ms
            )
            .unwrap();
        }
        writeln!(
            s,
            "slope={}",
            self.slope
                .map_or_else(|| "-".to_string(), |v| format!("{v:.3}"))
        )
        .unwrap();
        s
    }
}

/// Ordinary least-squares slope of `ys` on `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return None;
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Times `match_exists` on no-orthogonal instances of growing `n`.
///
/// Rows under 5 ms are averaged over 10 runs; slower rows take the median of 3.
pub fn bench_scaling(
    variant: Variant,
    n_series: &[usize],
    d: usize,
    seed: u64,
) -> Result<ScalingReport, HarnessError> {
    if n_series.is_empty() || n_series.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::BadSeries);
    }
    let mut rows = Vec::with_capacity(n_series.len());
    for &n in n_series {
        let inst = gen_ov_instance(n, d, seed, GenMode::NoOrthogonal)?;
        let art = build_artifact(&inst, variant, false)?;
        let run = || {
            let t = Instant::now();
            for p in &art.patterns {
                std::hint::black_box(match_exists(&art.graph, p).expect("artifact alphabet"));
            }
            ms(t)
        };
        let mut time = run();
        if time < 5.0 {
            time = (0..10).map(|_| run()).sum::<f64>() / 10.0;
        } else {
            let mut samples = [time, run(), run()];
            samples.sort_by(f64::total_cmp);
            time = samples[1];
        }
        rows.push(ScalingRow {
            n,
            d,
            node_count: art.graph.node_count(),
            edge_count: art.graph.edge_count(),
            pattern_length: art.patterns[0].len(),
            match_time_ms: time,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| ((r.n * r.d) as f64).ln()).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| r.match_time_ms.max(1e-6).ln())
        .collect();
    Ok(ScalingReport {
        slope: fit_slope(&xs, &ys),
        rows,
    })
}
