//! Parity games, a small-progress-measure solver, and the two games built
//! from tree automata: the fair-simulation game and the nonemptiness game.
//!
//! Conventions: Even wins a play iff the maximum priority seen infinitely
//! often is even; a player with no move at their position loses.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::nbta::{align, Block, Nbta, Relation, Tuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    pub fn of_priority(p: u32) -> Player {
        if p.is_multiple_of(2) {
            Player::Even
        } else {
            Player::Odd
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Player::Even => write!(f, "Even"),
            Player::Odd => write!(f, "Odd"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    moves: Vec<Vec<usize>>,
    priority: Vec<u32>,
    labels: Vec<String>,
}

impl ParityGame {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_position(&mut self, owner: Player, priority: u32, label: impl Into<String>) -> usize {
        self.owner.push(owner);
        self.priority.push(priority);
        self.moves.push(Vec::new());
        self.labels.push(label.into());
        self.owner.len() - 1
    }

    pub fn add_move(&mut self, from: usize, to: usize) {
        assert!(to < self.owner.len(), "move target {to} out of range");
        if !self.moves[from].contains(&to) {
            self.moves[from].push(to);
        }
    }

    pub fn num_positions(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn moves(&self, v: usize) -> &[usize] {
        &self.moves[v]
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn max_priority(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// Number of counters in a progress measure: one per odd priority up to the maximum.
    pub fn measure_dims(&self) -> usize {
        self.max_priority().div_ceil(2) as usize
    }

    fn counter_bounds(&self) -> Vec<u32> {
        let mut bounds = vec![0u32; self.measure_dims()];
        for &p in &self.priority {
            if p % 2 == 1 {
                bounds[(p / 2) as usize] += 1;
            }
        }
        bounds
    }

    /// Textual dump, one position per line.
    pub fn dump(&self, winners: Option<&[Player]>) -> String {
        let mut out = String::new();
        for v in 0..self.num_positions() {
            let succ: Vec<String> = self.moves[v].iter().map(|w| w.to_string()).collect();
            let _ = write!(
                out,
                "{v} {} owner={} priority={} succ=[{}]",
                self.labels[v],
                self.owner[v],
                self.priority[v],
                succ.join(",")
            );
            if let Some(w) = winners {
                let _ = write!(out, " winner={}", w[v]);
            }
            out.push('\n');
        }
        out
    }
}

/// A progress-measure value: a counter per odd priority, or the top element.
///
/// Counter `k` belongs to priority `2k+1`; vectors are compared starting from
/// the highest priority.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measure {
    Value(Vec<u32>),
    Top,
}

impl Measure {
    pub fn is_top(&self) -> bool {
        matches!(self, Measure::Top)
    }
}

fn cmp_from(a: &[u32], b: &[u32], lowest: usize) -> Ordering {
    for k in (lowest..a.len()).rev() {
        match a[k].cmp(&b[k]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Measure {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Measure::Top, Measure::Top) => Ordering::Equal,
            (Measure::Top, _) => Ordering::Greater,
            (_, Measure::Top) => Ordering::Less,
            (Measure::Value(a), Measure::Value(b)) => cmp_from(a, b, 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallProgressMeasure {
    pub values: Vec<Measure>,
}

impl SmallProgressMeasure {
    pub fn zero(game: &ParityGame) -> Self {
        Self {
            values: vec![Measure::Value(vec![0; game.measure_dims()]); game.num_positions()],
        }
    }
}

/// The least measure `m` with `m ≥_p target`, strictly greater when `p` is odd.
fn prog(bounds: &[u32], target: &Measure, p: u32) -> Measure {
    let Measure::Value(t) = target else {
        return Measure::Top;
    };
    let lowest = (p / 2) as usize;
    let mut m = t.clone();
    for c in m.iter_mut().take(lowest.min(t.len())) {
        *c = 0;
    }
    if p.is_multiple_of(2) {
        return Measure::Value(m);
    }
    let mut k = lowest;
    while k < m.len() {
        if m[k] < bounds[k] {
            m[k] += 1;
            return Measure::Value(m);
        }
        m[k] = 0;
        k += 1;
    }
    Measure::Top
}

fn lift_value(game: &ParityGame, bounds: &[u32], values: &[Measure], v: usize) -> Measure {
    let p = game.priority(v);
    let progs = game.moves(v).iter().map(|&w| prog(bounds, &values[w], p));
    match game.owner(v) {
        Player::Even => progs.min().unwrap_or(Measure::Top),
        Player::Odd => progs.max().unwrap_or(Measure::Value(vec![0; bounds.len()])),
    }
}

#[derive(Clone, Debug)]
pub struct ParitySolution {
    pub winner: Vec<Player>,
    /// Even's positional choice at Even positions she wins.
    pub strategy: Vec<Option<usize>>,
    pub measure: SmallProgressMeasure,
}

impl ParitySolution {
    pub fn even_region(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.winner.len()).filter(|&v| self.winner[v] == Player::Even)
    }
}

/// Solves a parity game by lifting the least small progress measure.
pub fn solve_parity(game: &ParityGame) -> ParitySolution {
    let n = game.num_positions();
    let bounds = game.counter_bounds();
    let mut measure = SmallProgressMeasure::zero(game);

    let mut preds = vec![Vec::new(); n];
    for v in 0..n {
        for &w in game.moves(v) {
            preds[w].push(v);
        }
    }
    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        if measure.values[v].is_top() {
            continue;
        }
        let lifted = lift_value(game, &bounds, &measure.values, v);
        if lifted > measure.values[v] {
            measure.values[v] = lifted;
            for &u in &preds[v] {
                if !queued[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    let winner: Vec<Player> = measure
        .values
        .iter()
        .map(|m| if m.is_top() { Player::Odd } else { Player::Even })
        .collect();
    let strategy = (0..n)
        .map(|v| {
            if game.owner(v) != Player::Even || winner[v] != Player::Even {
                return None;
            }
            let p = game.priority(v);
            game.moves(v)
                .iter()
                .copied()
                .min_by(|&a, &b| prog(&bounds, &measure.values[a], p).cmp(&prog(&bounds, &measure.values[b], p)))
        })
        .collect();
    debug_assert!(validate_progress_measure(game, &measure).unwrap_or(false));
    ParitySolution {
        winner,
        strategy,
        measure,
    }
}

/// Checks the local lifting inequality at every non-top position.
pub fn validate_progress_measure(game: &ParityGame, pm: &SmallProgressMeasure) -> Result<bool> {
    let dims = game.measure_dims();
    if pm.values.len() != game.num_positions() {
        return Err(Error::DimensionMismatch(format!(
            "measure has {} entries for {} positions",
            pm.values.len(),
            game.num_positions()
        )));
    }
    if let Some(bad) = pm.values.iter().find(|m| matches!(m, Measure::Value(c) if c.len() != dims)) {
        return Err(Error::DimensionMismatch(format!(
            "measure value {bad:?} does not have {dims} counters"
        )));
    }
    let bounds = game.counter_bounds();
    for (v, m) in pm.values.iter().enumerate() {
        let Measure::Value(c) = m else { continue };
        if c.iter().zip(&bounds).any(|(x, b)| x > b) {
            return Ok(false);
        }
        if lift_value(game, &bounds, &pm.values, v) > *m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Positions of the fair-simulation game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimPosition {
    Start,
    State(usize),
    Pair(usize, usize),
    /// A transition tuple of `X` to be answered from a state of `Y`.
    Challenge(Tuple, usize),
    /// Pairs of children; Odd picks one.
    Response(Vec<(usize, usize)>),
}

pub struct SimulationGame {
    pub game: ParityGame,
    pub start: usize,
    positions: Vec<SimPosition>,
    index: HashMap<SimPosition, usize>,
    left: usize,
    right: usize,
}

impl SimulationGame {
    pub fn position(&self, p: &SimPosition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn positions(&self) -> &[SimPosition] {
        &self.positions
    }

    pub fn even_wins(&self, solution: &ParitySolution) -> bool {
        solution.winner[self.start] == Player::Even
    }

    /// Pair positions won by Even.
    pub fn winning_pairs(&self, solution: &ParitySolution) -> Relation {
        let mut r = Relation::empty(self.left, self.right);
        for (k, p) in self.positions.iter().enumerate() {
            if let SimPosition::Pair(x, y) = p {
                if solution.winner[k] == Player::Even {
                    r.insert(*x, *y);
                }
            }
        }
        r
    }
}

fn pair_priority(x: &Nbta, y: &Nbta, a: usize, b: usize) -> u32 {
    match (x.block(a), y.block(b)) {
        (_, Block::Accepting) => 2,
        (Block::Accepting, Block::NonAccepting) => 1,
        (Block::NonAccepting, Block::NonAccepting) => 0,
    }
}

struct SimBuilder<'a> {
    x: &'a Nbta,
    y: &'a Nbta,
    sg: SimulationGame,
    queue: VecDeque<usize>,
}

impl SimBuilder<'_> {
    fn intern(&mut self, p: SimPosition) -> usize {
        if let Some(&k) = self.sg.index.get(&p) {
            return k;
        }
        let (x, y) = (self.x, self.y);
        let (owner, priority, label) = match &p {
            SimPosition::Start => (Player::Odd, 0, "*".to_string()),
            SimPosition::State(a) => (Player::Even, 0, x.state_name(*a).to_string()),
            SimPosition::Pair(a, b) => (
                Player::Odd,
                pair_priority(x, y, *a, *b),
                format!("({},{})", x.state_name(*a), y.state_name(*b)),
            ),
            SimPosition::Challenge(t, b) => {
                let kids: Vec<&str> = t.children.iter().map(|&c| x.state_name(c)).collect();
                (
                    Player::Even,
                    0,
                    format!("(({} {}),{})", x.alphabet().name(t.symbol), kids.join(" "), y.state_name(*b)),
                )
            }
            SimPosition::Response(ps) => {
                let kids: Vec<String> = ps
                    .iter()
                    .map(|&(a, b)| format!("({},{})", x.state_name(a), y.state_name(b)))
                    .collect();
                (Player::Odd, 0, format!("[{}]", kids.join(" ")))
            }
        };
        let k = self.sg.game.add_position(owner, priority, label);
        self.sg.positions.push(p.clone());
        self.sg.index.insert(p, k);
        self.queue.push_back(k);
        k
    }

    fn successors(&self, p: &SimPosition) -> Vec<SimPosition> {
        let (x, y) = (self.x, self.y);
        match p {
            SimPosition::Start => x.initial_states().map(SimPosition::State).collect(),
            SimPosition::State(a) => y.initial_states().map(|b| SimPosition::Pair(*a, b)).collect(),
            SimPosition::Pair(a, b) => x
                .transitions(*a)
                .iter()
                .map(|t| SimPosition::Challenge(t.clone(), *b))
                .collect(),
            SimPosition::Challenge(t, b) => y
                .transitions(*b)
                .iter()
                .filter(|s| s.symbol == t.symbol)
                .map(|s| SimPosition::Response(t.children.iter().copied().zip(s.children.iter().copied()).collect()))
                .collect(),
            SimPosition::Response(ps) => ps.iter().map(|&(a, b)| SimPosition::Pair(a, b)).collect(),
        }
    }

    fn run(mut self) -> SimulationGame {
        while let Some(k) = self.queue.pop_front() {
            let p = self.sg.positions[k].clone();
            for q in self.successors(&p) {
                let w = self.intern(q);
                self.sg.game.add_move(k, w);
            }
        }
        self.sg
    }
}

/// Builds the fair-simulation game restricted to positions reachable from `*`.
pub fn build_simulation_game(x: &Nbta, y: &Nbta, arity_cap: usize) -> Result<SimulationGame> {
    build_simulation_game_with(x, y, arity_cap, false)
}

/// Like [`build_simulation_game`]; with `all_pairs` every pair position `(x, y)`
/// is materialized as well, so that the winning pairs can be read off.
pub fn build_simulation_game_with(x: &Nbta, y: &Nbta, arity_cap: usize, all_pairs: bool) -> Result<SimulationGame> {
    let y = align(x, y)?;
    x.check_arity_cap(arity_cap)?;
    let mut b = SimBuilder {
        x,
        y: &y,
        sg: SimulationGame {
            game: ParityGame::new(),
            start: 0,
            positions: Vec::new(),
            index: HashMap::new(),
            left: x.num_states(),
            right: y.num_states(),
        },
        queue: VecDeque::new(),
    };
    b.sg.start = b.intern(SimPosition::Start);
    if all_pairs {
        for a in 0..x.num_states() {
            for c in 0..y.num_states() {
                b.intern(SimPosition::Pair(a, c));
            }
        }
    }
    Ok(b.run())
}

/// Decides existence of a fair simulation by solving the simulation game.
pub fn fair_simulation_exists_by_game(x: &Nbta, y: &Nbta, arity_cap: usize) -> Result<bool> {
    let sg = build_simulation_game(x, y, arity_cap)?;
    Ok(sg.even_wins(&solve_parity(&sg.game)))
}

pub struct NonemptinessGame {
    pub game: ParityGame,
    /// Position of each automaton state.
    pub state_positions: Vec<usize>,
    /// Whether some accepting run starts at each state.
    pub nonempty: Vec<bool>,
}

/// Büchi tree nonemptiness as a parity game: Even picks a transition at a
/// state, Odd picks a child. States have priority 2 when accepting, 1 otherwise.
pub fn nonemptiness_game(x: &Nbta) -> NonemptinessGame {
    let mut game = ParityGame::new();
    let state_positions: Vec<usize> = (0..x.num_states())
        .map(|s| {
            let p = if x.is_accepting(s) { 2 } else { 1 };
            game.add_position(Player::Even, p, x.state_name(s))
        })
        .collect();
    let mut tuple_pos: HashMap<&Tuple, usize> = HashMap::new();
    for s in 0..x.num_states() {
        for t in x.transitions(s) {
            let k = *tuple_pos.entry(t).or_insert_with(|| {
                let kids: Vec<&str> = t.children.iter().map(|&c| x.state_name(c)).collect();
                let label = format!("({} {})", x.alphabet().name(t.symbol), kids.join(" "));
                let k = game.add_position(Player::Odd, 0, label);
                for &c in &t.children {
                    game.add_move(k, state_positions[c]);
                }
                k
            });
            game.add_move(state_positions[s], k);
        }
    }
    let sol = solve_parity(&game);
    let nonempty = state_positions.iter().map(|&k| sol.winner[k] == Player::Even).collect();
    NonemptinessGame {
        game,
        state_positions,
        nonempty,
    }
}
