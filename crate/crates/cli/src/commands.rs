//! Command implementations shared by the binary and the tests.

use std::path::{Path, PathBuf};
use std::time::Instant;

use fairsim::error::{Error, Result};
use fairsim::fairsim_prob::{search_sequences, verify_matrix_fair_sim, SearchOutcome};
use fairsim::game::{build_simulation_game_with, solve_parity};
use fairsim::nbta::{check_against_solution, fair_sim_system, Nbta, Relation, SimViolation};
use fairsim::oracle::{cylinder_inclusion, nbw_inclusion_bounded, tree_prefix_inclusion};

use crate::format::{self, MatrixFile};
use crate::report::{CheckReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Fixpoint,
    Game,
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Fixpoint => "fixpoint",
            Method::Game => "game",
            Method::Both => "both",
        }
    }
}

fn timed(start: Instant, mut report: CheckReport) -> CheckReport {
    report.elapsed = start.elapsed();
    report
}

#[derive(Clone, Debug)]
pub struct NdOptions {
    pub lhs: PathBuf,
    pub rhs: PathBuf,
    pub relation: Option<PathBuf>,
    pub method: Method,
    pub arity_cap: usize,
    /// Where to write the listing of the simulation game, if anywhere.
    pub dump_game: Option<PathBuf>,
}

/// The candidate relation is checked against the largest solution; without a
/// candidate the largest solution itself is the witness.
fn nd_verdict(x: &Nbta, y: &Nbta, candidate: Option<&Relation>, solution: &Relation) -> (Option<SimViolation>, Relation) {
    let r = candidate.unwrap_or(solution);
    (check_against_solution(x, y, r, solution).violation, r.clone())
}

fn describe(x: &Nbta, y: &Nbta, v: &SimViolation) -> String {
    match v {
        SimViolation::InitialUnmatched { x: s } => {
            format!("initial state {} is related to no initial state of the right automaton", x.state_name(*s))
        }
        SimViolation::OutsideSolution { x: a, y: b } => {
            format!("pair {} {} lies outside the largest fair simulation", x.state_name(*a), y.state_name(*b))
        }
    }
}

pub fn check_nd(opts: &NdOptions) -> Result<CheckReport> {
    let start = Instant::now();
    let x = format::read_nbta(&opts.lhs)?;
    let y = format::read_nbta(&opts.rhs)?.realign(x.alphabet())?;
    x.check_arity_cap(opts.arity_cap)?;
    let candidate = match &opts.relation {
        Some(p) => Some(format::read_relation(p, &x, &y)?),
        None => None,
    };

    let mut results = Vec::new();
    if opts.method != Method::Game {
        let solution = fair_sim_system(&x, &y)?.solve()?;
        results.push(("fixpoint", nd_verdict(&x, &y, candidate.as_ref(), &solution)));
    }
    if opts.method != Method::Fixpoint || opts.dump_game.is_some() {
        let sg = build_simulation_game_with(&x, &y, opts.arity_cap, true)?;
        let sol = solve_parity(&sg.game);
        if let Some(path) = &opts.dump_game {
            std::fs::write(path, sg.game.dump(Some(sol.winner.as_slice())))
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
        if opts.method != Method::Fixpoint {
            let winning = sg.winning_pairs(&sol);
            let (violation, r) = nd_verdict(&x, &y, candidate.as_ref(), &winning);
            if candidate.is_none() && violation.is_none() != sg.even_wins(&sol) {
                return Err(Error::Internal("game start position disagrees with its winning pairs".into()));
            }
            results.push(("game", (violation, r)));
        }
    }
    if let [(_, a), (_, b)] = results.as_slice() {
        if a.0.is_none() != b.0.is_none() || (a.0.is_none() && a.1 != b.1) {
            return Err(Error::Internal(format!(
                "fixpoint and game disagree: fixpoint {}, game {}",
                if a.0.is_none() { "holds" } else { "fails" },
                if b.0.is_none() { "holds" } else { "fails" }
            )));
        }
    }
    let (_, (violation, relation)) = results.into_iter().next().expect("at least one method ran");
    let mut report = match &violation {
        None => CheckReport::new("check-nd", Verdict::Holds).witness_lines(&format::print_relation(&relation, &x, &y)),
        Some(v) => CheckReport::new("check-nd", Verdict::Fails)
            .condition(v.condition())
            .witness_lines(&describe(&x, &y, v)),
    };
    if violation.is_none() && relation.len() == x.num_states() * y.num_states() {
        report = report.note("witness is the full relation");
    }
    report = report
        .config("lhs", opts.lhs.display())
        .config("rhs", opts.rhs.display())
        .config("method", opts.method.name())
        .config("arity-cap", opts.arity_cap);
    if let Some(r) = &opts.relation {
        report = report.config("relation", r.display());
    }
    Ok(timed(start, report))
}

#[derive(Clone, Debug)]
pub struct ProbOptions {
    pub lhs: PathBuf,
    pub rhs: PathBuf,
    pub matrix: PathBuf,
    pub search: bool,
    pub iteration_cap: usize,
}

pub fn check_prob(opts: &ProbOptions) -> Result<CheckReport> {
    let start = Instant::now();
    let x = format::read_pbwa(&opts.lhs)?;
    let y = format::read_pbwa(&opts.rhs)?;
    let file = format::read_matrix(&opts.matrix, &x, &y)?;
    let report = if opts.search {
        match search_sequences(&x, &y, &file.witness, opts.iteration_cap)? {
            SearchOutcome::Found(seqs) => {
                let check = verify_matrix_fair_sim(&x, &y, &file.witness, &seqs)?;
                if let Some(v) = check.violation {
                    return Err(Error::Internal(format!("searched sequences fail verification: {v}")));
                }
                let found = MatrixFile {
                    witness: file.witness.clone(),
                    sequences: Some(seqs.clone()),
                };
                CheckReport::new("check-prob", Verdict::Holds)
                    .witness_lines(&format::print_matrix(&x, &y, &found))
                    .note(format!("sequence bound {}", seqs.bound()))
            }
            SearchOutcome::Inconclusive(why) => CheckReport::new("check-prob", Verdict::Inconclusive)
                .condition("sequence-search")
                .note(why),
            SearchOutcome::Rejected(v) => CheckReport::new("check-prob", Verdict::Fails)
                .condition(v.condition.id())
                .witness_lines(&v.to_string()),
        }
    } else {
        let seqs = file.sequences.as_ref().ok_or_else(|| {
            Error::Validation(format!(
                "{}: no approximation sequences given; add seq11/seq12 lines or pass --search",
                opts.matrix.display()
            ))
        })?;
        let check = verify_matrix_fair_sim(&x, &y, &file.witness, seqs)?;
        match check.violation {
            None => CheckReport::new("check-prob", Verdict::Holds)
                .witness_lines(&format::print_matrix(&x, &y, &file))
                .note(format!("sequence bound {}", seqs.bound())),
            Some(v) => CheckReport::new("check-prob", Verdict::Fails)
                .condition(v.condition.id())
                .witness_lines(&v.to_string()),
        }
    };
    Ok(timed(
        start,
        report
            .config("lhs", opts.lhs.display())
            .config("rhs", opts.rhs.display())
            .config("matrix", opts.matrix.display())
            .config("search", opts.search)
            .config("iteration-cap", opts.iteration_cap),
    ))
}

/// Cylinder measure of `word`, plus the automaton analyses when `analysis` is set.
pub fn lang_prob(automaton: &Path, word: &str, analysis: bool) -> Result<String> {
    let x = format::read_pbwa(automaton)?;
    let w = x.parse_word(word)?;
    let mut out = format!("{}\n", x.cylinder_prob(&w)?);
    if analysis {
        let names = |v: &[fairsim::linalg::Rational]| -> String {
            v.iter()
                .enumerate()
                .map(|(s, p)| format!("{}={p}", x.state_name(s)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        out += &format!("no-divergence: {}\n", names(&x.nodiv()));
        out += &format!("acceptance: {}\n", names(&x.acceptance_vector()));
        let sink = x.num_states();
        for comp in x.bsccs() {
            let members: Vec<String> = comp
                .iter()
                .map(|&s| if s == sink { "⊥".to_string() } else { x.state_name(s).to_string() })
                .collect();
            out += &format!("bscc: {}\n", members.join(" "));
        }
    }
    Ok(out)
}

pub fn oracle_lasso(lhs: &Path, rhs: &Path, stem_bound: usize, loop_bound: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let x = format::read_nbta(lhs)?;
    let y = format::read_nbta(rhs)?.realign(x.alphabet())?;
    let report = match nbw_inclusion_bounded(&x, &y, stem_bound, loop_bound)? {
        None => CheckReport::new("oracle lasso", Verdict::Holds),
        Some(w) => CheckReport::new("oracle lasso", Verdict::Fails)
            .condition("lasso-inclusion")
            .witness_lines(&w.render(x.alphabet())),
    };
    Ok(timed(
        start,
        report
            .note("bounded check over lasso words; no counterexample does not prove inclusion")
            .config("lhs", lhs.display())
            .config("rhs", rhs.display())
            .config("stem-bound", stem_bound)
            .config("loop-bound", loop_bound),
    ))
}

pub fn oracle_prefix(lhs: &Path, rhs: &Path, depth: usize, arity_cap: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let x = format::read_nbta(lhs)?;
    let y = format::read_nbta(rhs)?.realign(x.alphabet())?;
    let report = match tree_prefix_inclusion(&x, &y, depth, arity_cap)? {
        None => CheckReport::new("oracle prefix", Verdict::Holds),
        Some(t) => CheckReport::new("oracle prefix", Verdict::Fails)
            .condition("prefix-inclusion")
            .witness_lines(&t.render(x.alphabet())),
    };
    Ok(timed(
        start,
        report
            .note("prefix inclusion is a necessary condition for language inclusion, not a sufficient one")
            .config("lhs", lhs.display())
            .config("rhs", rhs.display())
            .config("depth", depth)
            .config("arity-cap", arity_cap),
    ))
}

pub fn oracle_cylinder(lhs: &Path, rhs: &Path, max_len: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let x = format::read_pbwa(lhs)?;
    let y = format::read_pbwa(rhs)?;
    let report = match cylinder_inclusion(&x, &y, max_len)? {
        None => CheckReport::new("oracle cylinder", Verdict::Holds),
        Some(w) => {
            let y = fairsim::pbwa::align_letters(&x, &y)?;
            let word = x.format_word(&w);
            CheckReport::new("oracle cylinder", Verdict::Fails)
                .condition("cylinder-inclusion")
                .witness_lines(&format!(
                    "word {word}\nlhs {}\nrhs {}",
                    x.cylinder_prob(&w)?,
                    y.cylinder_prob(&w)?
                ))
        }
    };
    Ok(timed(
        start,
        report
            .note("bounded check over cylinders; no counterexample does not prove inclusion")
            .config("lhs", lhs.display())
            .config("rhs", rhs.display())
            .config("max-len", max_len),
    ))
}
