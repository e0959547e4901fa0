//! Seeded random instances for randomized checks.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, int, ratio, Matrix, Rational};
use crate::nbta::{Nbta, RankedAlphabet, Relation, Tuple};
use crate::pbwa::Pbwa;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct NbtaParams {
    pub min_states: usize,
    pub max_states: usize,
    /// Probability that a given candidate tuple is a transition.
    pub density: f64,
    pub accepting_prob: f64,
}

impl Default for NbtaParams {
    fn default() -> Self {
        Self {
            min_states: 1,
            max_states: 3,
            density: 0.3,
            accepting_prob: 0.4,
        }
    }
}

/// Alphabet `{a:1, b:1}` or `{a:2, b:1}` or `{a:2, b:2}` at random.
pub fn random_alphabet<R: Rng>(rng: &mut R) -> RankedAlphabet {
    let arities = [(1, 1), (2, 1), (2, 2), (1, 0)];
    let (a, b) = *arities.choose(rng).expect("nonempty");
    RankedAlphabet::new([("a", a), ("b", b)]).expect("distinct names")
}

pub fn random_nbta<R: Rng>(rng: &mut R, alphabet: &RankedAlphabet, params: &NbtaParams) -> Nbta {
    let n = rng.gen_range(params.min_states.max(1)..=params.max_states.max(1));
    let tuples = crate::nbta::all_tuples(alphabet, n, usize::MAX).expect("no cap");
    let states: Vec<String> = (0..n).map(|k| format!("s{k}")).collect();
    let delta: Vec<Vec<Tuple>> = (0..n)
        .map(|_| tuples.iter().filter(|_| rng.gen_bool(params.density)).cloned().collect())
        .collect();
    let mut initial: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if initial.is_empty() {
        initial.push(0);
    }
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(params.accepting_prob)).collect();
    Nbta::new(alphabet.clone(), states, delta, initial, accepting).expect("generated automaton is valid")
}

/// A pair over a shared random alphabet: independent automata, or `Y` obtained
/// from `X` by adding behaviour (usually simulating it), or by random edits.
pub fn random_nbta_pair<R: Rng>(rng: &mut R, params: &NbtaParams) -> (Nbta, Nbta) {
    let sigma = random_alphabet(rng);
    let x = random_nbta(rng, &sigma, params);
    let y = match rng.gen_range(0..3) {
        0 => random_nbta(rng, &sigma, params),
        kind => {
            let n = x.num_states();
            let tuples = crate::nbta::all_tuples(&sigma, n, usize::MAX).expect("no cap");
            let widen = kind == 1;
            let delta: Vec<Vec<Tuple>> = (0..n)
                .map(|s| {
                    let mut row: Vec<Tuple> = x
                        .transitions(s)
                        .iter()
                        .filter(|_| widen || rng.gen_bool(0.8))
                        .cloned()
                        .collect();
                    row.extend(tuples.iter().filter(|_| rng.gen_bool(0.1)).cloned());
                    row
                })
                .collect();
            let flip = |rng: &mut R, b: bool| if widen { b || rng.gen_bool(0.2) } else { b != rng.gen_bool(0.2) };
            let initial: Vec<usize> = (0..n).filter(|&s| flip(rng, x.is_initial(s))).collect();
            let accepting: Vec<usize> = (0..n).filter(|&s| flip(rng, x.is_accepting(s))).collect();
            Nbta::new(sigma.clone(), x.state_names().to_vec(), delta, initial, accepting).expect("valid edit")
        }
    };
    (x, y)
}

pub fn random_relation<R: Rng>(rng: &mut R, left: usize, right: usize, density: f64) -> Relation {
    let mut r = Relation::empty(left, right);
    for a in 0..left {
        for b in 0..right {
            if rng.gen_bool(density) {
                r.insert(a, b);
            }
        }
    }
    r
}

#[derive(Clone, Debug)]
pub struct PbwaParams {
    pub max_states: usize,
    pub max_letters: usize,
    /// Probability that a state keeps its full row mass.
    pub stochastic_prob: f64,
    pub accepting_prob: f64,
}

impl Default for PbwaParams {
    fn default() -> Self {
        Self {
            max_states: 4,
            max_letters: 2,
            stochastic_prob: 0.7,
            accepting_prob: 0.4,
        }
    }
}

/// Splits `mass` into `parts` positive rationals with small denominators.
fn split_mass<R: Rng>(rng: &mut R, mass: &Rational, parts: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..parts).map(|_| rng.gen_range(1..=3)).collect();
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| mass * ratio(w, total)).collect()
}

pub fn random_pbwa<R: Rng>(rng: &mut R, params: &PbwaParams) -> Pbwa {
    let n = rng.gen_range(1..=params.max_states.max(1));
    let k = rng.gen_range(1..=params.max_letters.max(1));
    let letters: Vec<String> = ["a", "b", "c", "d"].iter().take(k).map(|s| s.to_string()).collect();
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut matrices = vec![linalg::zeros(n, n); k];
    let leaks = [ratio(1, 2), ratio(2, 3), ratio(3, 4), ratio(5, 6)];
    for x in 0..n {
        let mass = if rng.gen_bool(params.stochastic_prob) {
            Rational::one()
        } else {
            leaks.choose(rng).expect("nonempty").clone()
        };
        let support = rng.gen_range(1..=3.min(n * k));
        let mut cells: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..n).map(move |y| (a, y))).collect();
        cells.shuffle(rng);
        for ((a, y), p) in cells.into_iter().take(support).zip(split_mass(rng, &mass, support)) {
            matrices[a][x][y] += p;
        }
    }
    let mut initial = vec![Rational::zero(); n];
    let starts = rng.gen_range(1..=2.min(n));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (&x, p) in order.iter().zip(split_mass(rng, &Rational::one(), starts)) {
        initial[x] = p;
    }
    let accepting = (0..n).map(|_| rng.gen_bool(params.accepting_prob)).collect();
    Pbwa::new(letters, states, matrices, initial, accepting).expect("generated automaton is valid")
}

/// A pair of automata with a candidate witness matrix over `Y × X`.
#[derive(Clone, Debug)]
pub struct WitnessInstance {
    pub x: Pbwa,
    pub y: Pbwa,
    pub a: Matrix,
    pub kind: &'static str,
}

fn scaled_identity(n: usize, c: &Rational) -> Matrix {
    let mut m = linalg::zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c.clone();
    }
    m
}

/// `y` with state `s` split into two copies that share its incoming mass.
fn split_state(y: &Pbwa, s: usize) -> (Pbwa, Matrix) {
    let n = y.num_states();
    let half = ratio(1, 2);
    let widen = |m: &Matrix| -> Matrix {
        let mut out = linalg::zeros(n + 1, n + 1);
        for r in 0..=n {
            let src = if r == n { s } else { r };
            for c in 0..n {
                if c == s {
                    out[r][c] = &m[src][c] * &half;
                    out[r][n] = &m[src][c] * &half;
                } else {
                    out[r][c] = m[src][c].clone();
                }
            }
        }
        out
    };
    let matrices = y.matrices().iter().map(widen).collect();
    let mut initial = y.initial().to_vec();
    let split = &initial[s] * &half;
    initial[s] = split.clone();
    initial.push(split);
    let mut accepting = y.accepting().to_vec();
    accepting.push(accepting[s]);
    let mut states = y.state_names().to_vec();
    states.push(format!("{}'", states[s]));
    let x = Pbwa::new(y.letters().to_vec(), states, matrices, initial, accepting).expect("split keeps row masses");
    let mut a = scaled_identity(n, &Rational::one());
    for row in a.iter_mut() {
        row.push(Rational::zero());
    }
    a[s][s] = half.clone();
    a[s][n] = half;
    (x, a)
}

/// A candidate instance from one of several constructions; most satisfy the
/// forward-simulation conditions by design.
pub fn random_witness_instance<R: Rng>(rng: &mut R, max_states: usize) -> WitnessInstance {
    let params = PbwaParams {
        max_states,
        ..PbwaParams::default()
    };
    let kind = rng.gen_range(0..5);
    match kind {
        0 => {
            let y = random_pbwa(rng, &params);
            let a = scaled_identity(y.num_states(), &Rational::one());
            WitnessInstance { x: y.clone(), y, a, kind: "identity" }
        }
        1 => {
            let y = random_pbwa(rng, &params);
            let c = [ratio(1, 2), ratio(2, 3), int(1)].choose(rng).expect("nonempty").clone();
            let initial: Vec<Rational> = y.initial().iter().map(|p| p * &c).collect();
            let x = Pbwa::new(
                y.letters().to_vec(),
                y.state_names().to_vec(),
                y.matrices().to_vec(),
                initial,
                y.accepting().to_vec(),
            )
            .expect("scaled initial vector");
            let a = scaled_identity(y.num_states(), &c);
            WitnessInstance { x, y, a, kind: "scaled" }
        }
        2 if max_states >= 2 => {
            let small = PbwaParams {
                max_states: max_states - 1,
                ..params
            };
            let y = random_pbwa(rng, &small);
            let s = rng.gen_range(0..y.num_states());
            let (x, a) = split_state(&y, s);
            WitnessInstance { x, y, a, kind: "split" }
        }
        3 => {
            // accept more on the left: states that can reach acceptance
            let y = random_pbwa(rng, &params);
            let closure = crate::fairsim_prob::accepting_closure(&y);
            let accepting = (0..y.num_states())
                .map(|s| y.is_accepting(s) || (closure.is_accepting(s) && rng.gen_bool(0.7)))
                .collect();
            let x = y.with_accepting(accepting).expect("same automaton");
            let a = scaled_identity(y.num_states(), &Rational::one());
            WitnessInstance { x, y, a, kind: "promoted" }
        }
        _ => {
            let x = random_pbwa(rng, &params);
            let mut y = random_pbwa(rng, &params);
            while y.letters().len() != x.letters().len() {
                y = random_pbwa(rng, &params);
            }
            let mut a = linalg::zeros(y.num_states(), x.num_states());
            for row in a.iter_mut() {
                let c = rng.gen_range(0..x.num_states());
                row[c] = [ratio(1, 2), int(1)].choose(rng).expect("nonempty").clone();
            }
            WitnessInstance { x, y, a, kind: "random" }
        }
    }
}
