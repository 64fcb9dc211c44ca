use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{solve_integer, solve_nonneg_integer, zero_extend, ExactSystem, LinsysError, SolveOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeConfig {
    pub keep: usize,
    pub trials: usize,
    pub seed: u64,
    /// Solve restrictions over the non-negative integers instead of the integers.
    pub nonneg: bool,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            keep: 0,
            trials: 10,
            seed: 0,
            nonneg: false,
        }
    }
}

/// Keeps `keep` random columns, sets the rest to zero and solves; the first witness found is
/// extended back and re-verified. Never reports infeasibility.
pub fn random_restriction_probe(system: &ExactSystem, config: ProbeConfig) -> Result<SolveOutcome, LinsysError> {
    let n = system.variable_count();
    if config.keep > n {
        return Err(LinsysError::KeepTooLarge { keep: config.keep, vars: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for trial in 0..config.trials {
        let mut kept = sample(&mut rng, n, config.keep).into_vec();
        kept.sort_unstable();
        let restricted = system.restrict_columns(&kept);
        let out = if config.nonneg {
            solve_nonneg_integer(&restricted, super::DEFAULT_BRANCH_BUDGET)
        } else {
            solve_integer(&restricted)
        };
        if let Some(w) = out.witness {
            let full = zero_extend(&w, &kept, n);
            assert!(system.check_witness(&full), "extended probe witness failed substitution");
            let mut found = SolveOutcome::solvable(full);
            found.notes.push(format!("trial {trial} of {} with {} columns", config.trials, config.keep));
            return Ok(found);
        }
    }
    Ok(SolveOutcome::unknown(format!(
        "no restriction to {} columns solvable in {} trials",
        config.keep, config.trials
    )))
}
