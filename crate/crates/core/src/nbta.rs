//! Nondeterministic Büchi tree automata and fixed-point fair simulation.
//!
//! The fair-simulation check builds the four-variable system
//!
//! ```text
//! u1 =ν □X,1 ◇Y,1 ∧Σ (u1 ∪ u2 ∪ u3 ∪ u4)   over X1 × Y1
//! u2 =μ □X,2 ◇Y,1 ∧Σ (u1 ∪ u2 ∪ u3 ∪ u4)   over X2 × Y1
//! u3 =ν □X,1 ◇Y,2 ∧Σ (u1 ∪ u2 ∪ u3 ∪ u4)   over X1 × Y2
//! u4 =ν □X,2 ◇Y,2 ∧Σ (u1 ∪ u2 ∪ u3 ∪ u4)   over X2 × Y2
//! ```
//!
//! where block 1 is the non-accepting part of a state space and block 2 the
//! accepting part. A relation is a fair simulation iff it covers the initial
//! states of `X` and lies below the solution.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::{EquationalSystem, PowersetLattice, Sign};

/// Default bound on symbol arities for operations that enumerate tuple spaces.
pub const DEFAULT_ARITY_CAP: usize = 3;

/// Environment variable overriding [`DEFAULT_ARITY_CAP`].
pub const ARITY_CAP_ENV: &str = "FAIRSIM_ARITY_CAP";

pub fn arity_cap_from_env() -> usize {
    std::env::var(ARITY_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ARITY_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedAlphabet {
    symbols: Vec<(String, usize)>,
}

impl RankedAlphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<(String, usize)> = symbols.into_iter().map(|(s, a)| (s.into(), a)).collect();
        if symbols.is_empty() {
            return Err(Error::Validation("ranked alphabet must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for (name, _) in &symbols {
            if !seen.insert(name.as_str()) {
                return Err(Error::Validation(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(Self { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, symbol: usize) -> &str {
        &self.symbols[symbol].0
    }

    pub fn arity(&self, symbol: usize) -> usize {
        self.symbols[symbol].1
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(s, _)| s == name)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(s, a)| (s.as_str(), *a))
    }

    /// Same symbols with the same arities, in any order.
    pub fn same_symbols(&self, other: &RankedAlphabet) -> bool {
        self.len() == other.len()
            && self
                .symbols
                .iter()
                .all(|(s, a)| other.index(s).map(|i| other.arity(i)) == Some(*a))
    }

    pub fn check_arity_cap(&self, cap: usize) -> Result<()> {
        match self.symbols.iter().find(|(_, a)| *a > cap) {
            Some((s, a)) => Err(Error::ArityCapExceeded {
                symbol: s.clone(),
                arity: *a,
                cap,
            }),
            None => Ok(()),
        }
    }
}

/// An element of `∐_σ X^{|σ|}`: a symbol together with its children.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple {
    pub symbol: usize,
    pub children: Vec<usize>,
}

impl Tuple {
    pub fn new(symbol: usize, children: Vec<usize>) -> Self {
        Self { symbol, children }
    }
}

/// The two parts of a state space: block 1 is non-accepting, block 2 accepting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    NonAccepting,
    Accepting,
}

impl Block {
    pub fn of(accepting: bool) -> Self {
        if accepting {
            Block::Accepting
        } else {
            Block::NonAccepting
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nbta {
    alphabet: RankedAlphabet,
    states: Vec<String>,
    delta: Vec<Vec<Tuple>>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
}

impl Nbta {
    /// Builds and validates an automaton. Transition lists are deduplicated.
    pub fn new(
        alphabet: RankedAlphabet,
        states: Vec<String>,
        delta: Vec<Vec<Tuple>>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = states.len();
        if delta.len() != n {
            return Err(Error::Validation(format!(
                "transition table has {} rows for {} states",
                delta.len(),
                n
            )));
        }
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::Validation(format!("duplicate state `{s}`")));
            }
        }
        let mut delta = delta;
        for (x, row) in delta.iter_mut().enumerate() {
            for t in row.iter() {
                if t.symbol >= alphabet.len() {
                    return Err(Error::Validation(format!("unknown symbol index {}", t.symbol)));
                }
                let arity = alphabet.arity(t.symbol);
                if t.children.len() != arity {
                    return Err(Error::Validation(format!(
                        "transition of `{}` under `{}` has {} children, arity is {}",
                        states[x],
                        alphabet.name(t.symbol),
                        t.children.len(),
                        arity
                    )));
                }
                if let Some(c) = t.children.iter().find(|&&c| c >= n) {
                    return Err(Error::Validation(format!("child state index {c} out of range")));
                }
            }
            row.sort();
            row.dedup();
        }
        let mut init = vec![false; n];
        for i in initial {
            *init
                .get_mut(i)
                .ok_or_else(|| Error::Validation(format!("initial state index {i} out of range")))? = true;
        }
        let mut acc = vec![false; n];
        for i in accepting {
            *acc
                .get_mut(i)
                .ok_or_else(|| Error::Validation(format!("accepting state index {i} out of range")))? = true;
        }
        Ok(Self {
            alphabet,
            states,
            delta,
            initial: init,
            accepting: acc,
        })
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, x: usize) -> &str {
        &self.states[x]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn transitions(&self, x: usize) -> &[Tuple] {
        &self.delta[x]
    }

    pub fn is_initial(&self, x: usize) -> bool {
        self.initial[x]
    }

    pub fn is_accepting(&self, x: usize) -> bool {
        self.accepting[x]
    }

    pub fn initial_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&x| self.initial[x])
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&x| self.accepting[x])
    }

    pub fn block(&self, x: usize) -> Block {
        Block::of(self.accepting[x])
    }

    pub fn states_in(&self, block: Block) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(move |&x| self.block(x) == block)
    }

    pub fn check_arity_cap(&self, cap: usize) -> Result<()> {
        self.alphabet.check_arity_cap(cap)
    }

    /// Re-indexes symbols to follow `target`'s order.
    pub fn realign(&self, target: &RankedAlphabet) -> Result<Nbta> {
        if !self.alphabet.same_symbols(target) {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.symbols, target.symbols
            )));
        }
        let map: Vec<usize> = (0..self.alphabet.len())
            .map(|s| target.index(self.alphabet.name(s)).expect("checked above"))
            .collect();
        let delta = self
            .delta
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| Tuple::new(map[t.symbol], t.children.clone()))
                    .collect()
            })
            .collect();
        Nbta::new(
            target.clone(),
            self.states.clone(),
            delta,
            self.initial_states(),
            self.accepting_states(),
        )
    }
}

/// Incremental construction by state and symbol names.
#[derive(Debug)]
pub struct NbtaBuilder {
    alphabet: RankedAlphabet,
    states: Vec<String>,
    index: HashMap<String, usize>,
    delta: Vec<Vec<Tuple>>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
}

impl NbtaBuilder {
    pub fn new(alphabet: RankedAlphabet) -> Self {
        Self {
            alphabet,
            states: Vec::new(),
            index: HashMap::new(),
            delta: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
        }
    }

    /// Declares a state (idempotent) and returns its index.
    pub fn state(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.states.push(name.to_string());
        self.delta.push(Vec::new());
        self.index.insert(name.to_string(), self.states.len() - 1);
        self.states.len() - 1
    }

    pub fn initial(&mut self, name: &str) -> &mut Self {
        let i = self.state(name);
        self.initial.push(i);
        self
    }

    pub fn accepting(&mut self, name: &str) -> &mut Self {
        let i = self.state(name);
        self.accepting.push(i);
        self
    }

    pub fn transition(&mut self, from: &str, symbol: &str, children: &[&str]) -> Result<&mut Self> {
        let sym = self
            .alphabet
            .index(symbol)
            .ok_or_else(|| Error::Validation(format!("unknown symbol `{symbol}`")))?;
        let x = self.state(from);
        let children = children.iter().map(|c| self.state(c)).collect();
        self.delta[x].push(Tuple::new(sym, children));
        Ok(self)
    }

    pub fn build(self) -> Result<Nbta> {
        Nbta::new(self.alphabet, self.states, self.delta, self.initial, self.accepting)
    }
}

/// A binary relation `R ⊆ X × Y` stored as a bit matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    left: usize,
    right: usize,
    bits: FixedBitSet,
}

impl Relation {
    pub fn empty(left: usize, right: usize) -> Self {
        Self {
            left,
            right,
            bits: FixedBitSet::with_capacity(left * right),
        }
    }

    pub fn full(left: usize, right: usize) -> Self {
        let mut r = Self::empty(left, right);
        r.bits.insert_range(..);
        r
    }

    pub fn from_pairs(left: usize, right: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(left, right);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits.contains(x * self.right + y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.left && y < self.right, "pair ({x}, {y}) out of range");
        self.bits.insert(x * self.right + y);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.bits.set(x * self.right + y, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits.ones().map(move |i| (i / self.right, i % self.right))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &Relation) {
        self.bits.union_with(&other.bits);
    }

    /// The slice of `self` inside `X_i × Y_j`.
    pub fn block(&self, x: &Nbta, y: &Nbta, bx: Block, by: Block) -> Relation {
        Relation::from_pairs(
            self.left,
            self.right,
            self.pairs().filter(|&(a, b)| x.block(a) == bx && y.block(b) == by),
        )
    }

    /// The four blocks `R1..R4` over `X1×Y1, X2×Y1, X1×Y2, X2×Y2`.
    pub fn blocks(&self, x: &Nbta, y: &Nbta) -> [Relation; 4] {
        BLOCK_ORDER.map(|(bx, by)| self.block(x, y, bx, by))
    }
}

/// Block pairs of the four fair-simulation variables, in equation order.
pub const BLOCK_ORDER: [(Block, Block); 4] = [
    (Block::NonAccepting, Block::NonAccepting),
    (Block::Accepting, Block::NonAccepting),
    (Block::NonAccepting, Block::Accepting),
    (Block::Accepting, Block::Accepting),
];

/// Fixed-point signs of the four fair-simulation variables.
pub const SIGN_ORDER: [Sign; 4] = [Sign::Nu, Sign::Mu, Sign::Nu, Sign::Nu];

/// A subset of `(∐_σ X^{|σ|}) × Y`.
pub type TupleRelation = BTreeSet<(Tuple, usize)>;

/// A subset of `(∐_σ X^{|σ|}) × (∐_σ Y^{|σ|})`.
pub type TuplePairSet = BTreeSet<(Tuple, Tuple)>;

/// `□_{X,i}(S) = {(x, y) ∈ X_i × Y | ∀a ∈ δ_X(x). (a, y) ∈ S}`.
pub fn box_op(x: &Nbta, y: &Nbta, block: Block, s: &TupleRelation) -> Relation {
    let mut out = Relation::empty(x.num_states(), y.num_states());
    for xs in x.states_in(block) {
        for ys in 0..y.num_states() {
            // TODO: avoid cloning tuples for the membership probe
            if x.transitions(xs).iter().all(|a| s.contains(&(a.clone(), ys))) {
                out.insert(xs, ys);
            }
        }
    }
    out
}

/// `◇_{Y,j}(T) = {(a, y) | y ∈ Y_j, ∃b ∈ δ_Y(y). (a, b) ∈ T}`.
pub fn diamond_op(y: &Nbta, block: Block, t: &TuplePairSet) -> TupleRelation {
    let mut out = TupleRelation::new();
    for ys in y.states_in(block) {
        for (a, b) in t {
            if y.transitions(ys).contains(b) {
                out.insert((a.clone(), ys));
            }
        }
    }
    out
}

/// `∧_Σ(U)`: pairs of equal-symbol tuples whose children are pointwise in `U`.
pub fn wedge_op(alphabet: &RankedAlphabet, u: &Relation) -> TuplePairSet {
    let pairs: Vec<(usize, usize)> = u.pairs().collect();
    let mut out = TuplePairSet::new();
    for (sym, arity) in alphabet.iter().enumerate().map(|(i, (_, a))| (i, a)) {
        let mut idx = vec![0usize; arity];
        if arity > 0 && pairs.is_empty() {
            continue;
        }
        loop {
            let xs = idx.iter().map(|&k| pairs[k].0).collect();
            let ys = idx.iter().map(|&k| pairs[k].1).collect();
            out.insert((Tuple::new(sym, xs), Tuple::new(sym, ys)));
            // odometer over U^arity
            let mut pos = 0;
            while pos < arity {
                idx[pos] += 1;
                if idx[pos] < pairs.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == arity {
                break;
            }
        }
    }
    out
}

/// The post-image `{(a, y) | (x, y) ∈ R, a ∈ δ_X(x)}` of a relation.
pub fn post_image(x: &Nbta, r: &Relation) -> TupleRelation {
    let mut out = TupleRelation::new();
    for (xs, ys) in r.pairs() {
        for a in x.transitions(xs) {
            out.insert((a.clone(), ys));
        }
    }
    out
}

/// `□_{X,i} ◇_{Y,j} ∧_Σ (U)` evaluated directly on the transitions of `X`.
pub fn step(x: &Nbta, y: &Nbta, bx: Block, by: Block, u: &Relation) -> Relation {
    let mut out = Relation::empty(x.num_states(), y.num_states());
    for xs in x.states_in(bx) {
        for ys in y.states_in(by) {
            let matched = x.transitions(xs).iter().all(|a| {
                y.transitions(ys).iter().any(|b| {
                    b.symbol == a.symbol && a.children.iter().zip(&b.children).all(|(&c, &d)| u.contains(c, d))
                })
            });
            if matched {
                out.insert(xs, ys);
            }
        }
    }
    out
}

/// Returns `y` re-indexed onto `x`'s alphabet, or an alphabet mismatch.
pub fn align<'a>(x: &Nbta, y: &'a Nbta) -> Result<Cow<'a, Nbta>> {
    if x.alphabet() == y.alphabet() {
        Ok(Cow::Borrowed(y))
    } else {
        y.realign(x.alphabet()).map(Cow::Owned)
    }
}

#[derive(Clone, Debug)]
struct BlockIndex {
    pairs: Vec<(usize, usize)>,
}

impl BlockIndex {
    fn new(x: &Nbta, y: &Nbta, bx: Block, by: Block) -> Self {
        let pairs = x
            .states_in(bx)
            .flat_map(|a| y.states_in(by).map(move |b| (a, b)))
            .collect();
        Self { pairs }
    }
}

/// The fair-simulation equational system of a pair of automata.
pub struct FairSimSystem {
    x: Arc<Nbta>,
    y: Arc<Nbta>,
    blocks: Arc<[BlockIndex; 4]>,
    system: EquationalSystem<'static, PowersetLattice>,
}

fn inject(blocks: &[BlockIndex; 4], left: usize, right: usize, values: &[FixedBitSet]) -> Relation {
    let mut r = Relation::empty(left, right);
    for (b, v) in blocks.iter().zip(values) {
        for k in v.ones() {
            let (x, y) = b.pairs[k];
            r.insert(x, y);
        }
    }
    r
}

impl FairSimSystem {
    pub fn system(&self) -> &EquationalSystem<'static, PowersetLattice> {
        &self.system
    }

    pub fn x(&self) -> &Nbta {
        &self.x
    }

    /// The simulating automaton, re-indexed onto the alphabet of `x`.
    pub fn y(&self) -> &Nbta {
        &self.y
    }

    /// Lattice value of variable `i` for relation `r` (its block slice).
    pub fn project(&self, i: usize, r: &Relation) -> FixedBitSet {
        let b = &self.blocks[i];
        let lat = PowersetLattice::new(b.pairs.len());
        lat.from_indices(
            b.pairs
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| r.contains(x, y))
                .map(|(k, _)| k),
        )
    }

    /// The union of the four variable values as one relation on `X × Y`.
    pub fn to_relation(&self, values: &[FixedBitSet]) -> Relation {
        inject(&self.blocks, self.x.num_states(), self.y.num_states(), values)
    }

    /// Solves the system and returns `u1 ∪ u2 ∪ u3 ∪ u4`.
    pub fn solve(&self) -> Result<Relation> {
        let sol = self.system.solve()?;
        Ok(self.to_relation(&sol.values))
    }

    /// Solves the system and returns the four blocks in equation order.
    pub fn solve_blocks(&self) -> Result<[Relation; 4]> {
        let sol = self.system.solve()?;
        let left = self.x.num_states();
        let right = self.y.num_states();
        Ok(std::array::from_fn(|i| {
            Relation::from_pairs(left, right, sol.values[i].ones().map(|k| self.blocks[i].pairs[k]))
        }))
    }
}

pub fn fair_sim_system(x: &Nbta, y: &Nbta) -> Result<FairSimSystem> {
    let y = align(x, y)?.into_owned();
    let x = Arc::new(x.clone());
    let y = Arc::new(y);
    let blocks: Arc<[BlockIndex; 4]> = Arc::new(BLOCK_ORDER.map(|(bx, by)| BlockIndex::new(&x, &y, bx, by)));
    let mut system = EquationalSystem::new();
    for (i, (&(bx, by), &sign)) in BLOCK_ORDER.iter().zip(SIGN_ORDER.iter()).enumerate() {
        let (xa, ya, bl) = (Arc::clone(&x), Arc::clone(&y), Arc::clone(&blocks));
        let lattice = PowersetLattice::new(blocks[i].pairs.len());
        system.push(lattice, sign, move |values: &[FixedBitSet]| {
            let u = inject(&bl, xa.num_states(), ya.num_states(), values);
            let r = step(&xa, &ya, bx, by, &u);
            let pairs = &bl[i].pairs;
            lattice.from_indices(
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(p, q))| r.contains(p, q))
                    .map(|(k, _)| k),
            )
        });
    }
    Ok(FairSimSystem { x, y, blocks, system })
}

/// Why a relation fails to be a fair simulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimViolation {
    /// Initial state `x` of `X` is related to no initial state of `Y`.
    InitialUnmatched { x: usize },
    /// The pair lies outside the solution of the fair-simulation system.
    OutsideSolution { x: usize, y: usize },
}

impl SimViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            SimViolation::InitialUnmatched { .. } => "initial-states",
            SimViolation::OutsideSolution { .. } => "below-solution",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimCheck {
    pub violation: Option<SimViolation>,
}

impl SimCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn initial_condition(x: &Nbta, y: &Nbta, r: &Relation) -> Option<SimViolation> {
    x.initial_states()
        .find(|&xs| !y.initial_states().any(|ys| r.contains(xs, ys)))
        .map(|xs| SimViolation::InitialUnmatched { x: xs })
}

fn check_shape(x: &Nbta, y: &Nbta, r: &Relation) -> Result<()> {
    if r.left() != x.num_states() || r.right() != y.num_states() {
        return Err(Error::DimensionMismatch(format!(
            "relation is {}x{}, automata have {} and {} states",
            r.left(),
            r.right(),
            x.num_states(),
            y.num_states()
        )));
    }
    Ok(())
}

/// Checks both conditions of fair simulation for `r ⊆ X × Y`.
pub fn check_fair_simulation(x: &Nbta, y: &Nbta, r: &Relation) -> Result<SimCheck> {
    check_shape(x, y, r)?;
    let solution = fair_sim_system(x, y)?.solve()?;
    Ok(check_against_solution(x, y, r, &solution))
}

/// Same as [`check_fair_simulation`] with a precomputed solution relation.
pub fn check_against_solution(x: &Nbta, y: &Nbta, r: &Relation, solution: &Relation) -> SimCheck {
    if let Some(v) = initial_condition(x, y, r) {
        return SimCheck { violation: Some(v) };
    }
    let violation = r
        .pairs()
        .find(|&(a, b)| !solution.contains(a, b))
        .map(|(a, b)| SimViolation::OutsideSolution { x: a, y: b });
    SimCheck { violation }
}

/// The solution relation if it satisfies the initial-state condition.
///
/// Every fair simulation lies below the solution, so a fair simulation exists
/// iff the solution itself is one.
pub fn largest_fair_simulation(x: &Nbta, y: &Nbta) -> Result<Option<Relation>> {
    let solution = fair_sim_system(x, y)?.solve()?;
    let aligned = align(x, y)?;
    Ok(initial_condition(x, &aligned, &solution)
        .is_none()
        .then_some(solution))
}

/// Enumerates `∐_σ X^{|σ|}` for a state space of size `n`.
pub fn all_tuples(alphabet: &RankedAlphabet, n: usize, cap: usize) -> Result<Vec<Tuple>> {
    alphabet.check_arity_cap(cap)?;
    let mut out = Vec::new();
    for (sym, (_, arity)) in alphabet.iter().enumerate() {
        if arity > 0 && n == 0 {
            continue;
        }
        let total = n.pow(arity as u32);
        for mut code in 0..total {
            let mut children = Vec::with_capacity(arity);
            for _ in 0..arity {
                children.push(code % n);
                code /= n;
            }
            out.push(Tuple::new(sym, children));
        }
    }
    Ok(out)
}
