//! Seeded cross-validation and soundness runs over random instances.

use std::fmt;

use fairsim::error::Result;
use fairsim::fairsim_prob::{search_sequences, verify_matrix_fair_sim, MatrixWitness, SearchOutcome};
use fairsim::game::fair_simulation_exists_by_game;
use fairsim::nbta::largest_fair_simulation;
use fairsim::oracle::{cylinder_inclusion, nbw_inclusion_bounded, tree_prefix_inclusion};
use fairsim::random::{random_nbta_pair, random_witness_instance, rng, NbtaParams};

#[derive(Clone, Copy, Debug)]
pub struct SuiteLimits {
    pub max_states: usize,
    pub prefix_depth: usize,
    pub lasso_bound: usize,
    pub cylinder_len: usize,
    pub iteration_cap: usize,
    /// Upper bound on random probabilistic candidates drawn.
    pub max_candidates: usize,
}

impl Default for SuiteLimits {
    fn default() -> Self {
        Self {
            max_states: 4,
            prefix_depth: 4,
            lasso_bound: 4,
            cylinder_len: 6,
            iteration_cap: 64,
            max_candidates: 10_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteSummary {
    pub nd_instances: usize,
    pub nd_agreements: usize,
    pub nd_holding: usize,
    pub prefix_checks: usize,
    pub lasso_checks: usize,
    pub prob_candidates: usize,
    pub prob_accepted: usize,
    pub cylinder_checks: usize,
    /// Each entry describes one failed property; none are expected.
    pub violations: Vec<String>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "nbta pairs: {} (fair simulation in {}); fixpoint/game agreement {}/{}",
            self.nd_instances, self.nd_holding, self.nd_agreements, self.nd_instances
        )?;
        writeln!(
            f,
            "soundness: {} prefix checks, {} lasso checks",
            self.prefix_checks, self.lasso_checks
        )?;
        writeln!(
            f,
            "pbwa witnesses: {} accepted of {} candidates; {} cylinder checks",
            self.prob_accepted, self.prob_candidates, self.cylinder_checks
        )?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Runs `count` random NBTA pairs and draws PBWA candidates until `count`
/// searched witnesses are accepted. Deterministic in `seed`.
pub fn random_suite(seed: u64, count: usize, limits: &SuiteLimits) -> Result<SuiteSummary> {
    let mut summary = SuiteSummary::default();
    let mut r = rng(seed);
    let params = NbtaParams {
        max_states: limits.max_states,
        ..NbtaParams::default()
    };
    for i in 0..count {
        let (x, y) = random_nbta_pair(&mut r, &params);
        summary.nd_instances += 1;
        let by_fixpoint = largest_fair_simulation(&x, &y)?.is_some();
        let by_game = fair_simulation_exists_by_game(&x, &y, usize::MAX)?;
        if by_fixpoint == by_game {
            summary.nd_agreements += 1;
        } else {
            summary
                .violations
                .push(format!("nbta pair {i}: fixpoint says {by_fixpoint}, game says {by_game}"));
        }
        if !by_fixpoint {
            continue;
        }
        summary.nd_holding += 1;
        summary.prefix_checks += 1;
        if let Some(t) = tree_prefix_inclusion(&x, &y, limits.prefix_depth, usize::MAX)? {
            summary
                .violations
                .push(format!("nbta pair {i}: prefix {} is not covered", t.render(x.alphabet())));
        }
        if x.alphabet().iter().all(|(_, a)| a == 1) {
            summary.lasso_checks += 1;
            if let Some(w) = nbw_inclusion_bounded(&x, &y, limits.lasso_bound, limits.lasso_bound)? {
                summary
                    .violations
                    .push(format!("nbta pair {i}: lasso {} is not covered", w.render(x.alphabet())));
            }
        }
    }

    while summary.prob_accepted < count && summary.prob_candidates < limits.max_candidates {
        let inst = random_witness_instance(&mut r, limits.max_states);
        summary.prob_candidates += 1;
        let w = MatrixWitness::new(inst.a);
        let SearchOutcome::Found(seqs) = search_sequences(&inst.x, &inst.y, &w, limits.iteration_cap)? else {
            continue;
        };
        if let Some(v) = verify_matrix_fair_sim(&inst.x, &inst.y, &w, &seqs)?.violation {
            summary
                .violations
                .push(format!("pbwa candidate {}: searched sequences rejected: {v}", summary.prob_candidates));
            continue;
        }
        summary.prob_accepted += 1;
        summary.cylinder_checks += 1;
        if let Some(word) = cylinder_inclusion(&inst.x, &inst.y, limits.cylinder_len)? {
            summary.violations.push(format!(
                "pbwa candidate {} ({}): cylinder of {} is larger on the left",
                summary.prob_candidates,
                inst.kind,
                inst.x.format_word(&word)
            ));
        }
    }
    if summary.prob_accepted < count {
        summary.violations.push(format!(
            "only {} of {count} pbwa witnesses accepted within {} candidates",
            summary.prob_accepted, limits.max_candidates
        ));
    }
    Ok(summary)
}
