//! Operation-count benchmark of the parametrized decoder against the chase
//! and brute-force decoders on matched random instances.

use std::io::Write;
use std::time::Instant;

use gabidulin::code::{CodeSpec, Word};
use gabidulin::decoder::{
    decode_chase, decode_closest, decode_exhaustive, BasisAlgorithm, DecodeError,
};
use gabidulin::field::Field;
use gabidulin::ops::{self, OpCounts};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Largest candidate, partial-error or message count a row may enumerate.
pub const BUDGET: u64 = 1 << 20;

pub const HEADER: &str = "n,k,t,algorithm,mean_field_mults,wall_time_s,cheapest";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub q: u32,
    /// Extension degree; each row uses `m = n` when unset.
    pub m: Option<usize>,
    pub k: usize,
    pub n_list: Vec<usize>,
    pub t: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Param,
    Chase,
    Exhaustive,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Param => "param",
            Algorithm::Chase => "chase",
            Algorithm::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub algorithm: Algorithm,
    pub mean_field_mults: f64,
    pub wall_time_s: f64,
    pub cheapest: bool,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Algorithms left out because their search space is too large.
    pub skipped: Vec<String>,
}

fn fits(base: u64, exp: usize) -> bool {
    let mut acc = 1u64;
    for _ in 0..exp {
        match acc.checked_mul(base) {
            Some(v) if v <= BUDGET => acc = v,
            _ => return false,
        }
    }
    true
}

fn run_one(code: &CodeSpec, r: &Word, alg: Algorithm, t: usize) -> Result<OpCounts, DecodeError> {
    match alg {
        Algorithm::Param => {
            decode_closest(code, r, BasisAlgorithm::Eea).map(|o| o.counters.total())
        }
        Algorithm::Chase => {
            let radius = t.max(code.unique_radius());
            decode_chase(code, r, radius, BasisAlgorithm::Eea).map(|o| o.counters)
        }
        Algorithm::Exhaustive => {
            let (out, counts) = ops::measure(|| decode_exhaustive(code, r));
            out.map(|_| counts)
        }
    }
}

pub fn run(cfg: &BenchConfig) -> Result<BenchReport, CliError> {
    if cfg.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let mut report = BenchReport::default();
    for &n in &cfg.n_list {
        let m = cfg.m.unwrap_or(n);
        let field = Field::new(cfg.q, m, None).map_err(|e| CliError::Usage(e.to_string()))?;
        let code = CodeSpec::with_power_basis(field.clone(), n, cfg.k)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        if cfg.t > m.min(n) {
            return Err(CliError::Usage(format!(
                "--t {} exceeds min(m, n) = {}",
                cfg.t,
                m.min(n)
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).rotate_left(32));
        let words: Vec<Word> = (0..cfg.trials)
            .map(|_| {
                let c = code
                    .encode(&code.random_message(&mut rng))
                    .expect("k coefficients");
                let e = code
                    .random_error_with(cfg.t, &mut rng)
                    .expect("rank in range");
                c.add(&field, &e)
            })
            .collect();

        let order = field.order();
        let tau = code.unique_radius();
        let sweep_exp = (2 * cfg.t + cfg.k).saturating_sub(n);
        let chase_exp = (m + n) * cfg.t.saturating_sub(tau);
        let feasible = [
            (Algorithm::Param, fits(order, sweep_exp)),
            (Algorithm::Chase, fits(u64::from(cfg.q), chase_exp)),
            (Algorithm::Exhaustive, fits(order, cfg.k)),
        ];
        let first = report.rows.len();
        for (alg, ok) in feasible {
            if !ok {
                report.skipped.push(format!(
                    "n={n} t={}: {} search space too large",
                    cfg.t,
                    alg.name()
                ));
                continue;
            }
            let mut mults = 0u64;
            let start = Instant::now();
            for r in &words {
                let counts = run_one(&code, r, alg, cfg.t).map_err(|e| match e {
                    DecodeError::EnumerationTooLarge { .. }
                    | DecodeError::SweepCapExceeded { .. } => CliError::Guard(e.to_string()),
                    other => CliError::Invariant(other.to_string()),
                })?;
                mults += counts.field_mults;
            }
            let trials = cfg.trials as f64;
            report.rows.push(BenchRow {
                n,
                k: cfg.k,
                t: cfg.t,
                algorithm: alg,
                mean_field_mults: mults as f64 / trials,
                wall_time_s: start.elapsed().as_secs_f64() / trials,
                cheapest: false,
            });
        }
        let group = &mut report.rows[first..];
        if let Some(best) = group
            .iter()
            .map(|r| r.mean_field_mults)
            .min_by(|a, b| a.total_cmp(b))
        {
            for row in group.iter_mut() {
                row.cheapest = row.mean_field_mults == best;
            }
        }
    }
    Ok(report)
}

pub fn write_csv(rows: &[BenchRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{:.1},{:.6},{}",
            r.n,
            r.k,
            r.t,
            r.algorithm.name(),
            r.mean_field_mults,
            r.wall_time_s,
            r.cheapest
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n_list: Vec<usize>, k: usize, t: usize) -> BenchConfig {
        BenchConfig {
            q: 2,
            m: None,
            k,
            n_list,
            t,
            trials: 3,
            seed: 1,
        }
    }

    #[test]
    fn exhaustive_wins_beyond_half_length() {
        let report = run(&cfg(vec![4], 1, 3)).unwrap();
        let best: Vec<_> = report.rows.iter().filter(|r| r.cheapest).collect();
        assert_eq!(best.len(), 1);
        assert_eq!(best[0].algorithm, Algorithm::Exhaustive);
    }

    #[test]
    fn param_beats_chase_past_unique_radius() {
        let report = run(&cfg(vec![4], 2, 2)).unwrap();
        let get = |a| {
            report
                .rows
                .iter()
                .find(|r| r.algorithm == a)
                .unwrap()
                .mean_field_mults
        };
        assert!(get(Algorithm::Param) < get(Algorithm::Chase));
    }

    #[test]
    fn counts_are_deterministic() {
        let a = run(&cfg(vec![4, 6], 2, 1)).unwrap();
        let b = run(&cfg(vec![4, 6], 2, 1)).unwrap();
        let key = |r: &BenchReport| {
            r.rows
                .iter()
                .map(|x| (x.n, x.algorithm.name(), x.mean_field_mults as u64))
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b));
    }
}
