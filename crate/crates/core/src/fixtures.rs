//! Small hand-made automata used throughout the tests and the CLI fixtures.

use num_bigint::BigInt;
use num_traits::Pow;

use crate::linalg::{int, ratio, Matrix, Rational};
use crate::nbta::{Nbta, NbtaBuilder, RankedAlphabet};
use crate::pbwa::{Pbwa, PbwaBuilder};

fn binary_ab() -> RankedAlphabet {
    RankedAlphabet::new([("a", 2), ("b", 2)]).expect("static alphabet")
}

/// Binary `{a, b}`-trees in which every branch carries `b` infinitely often.
pub fn infinitely_many_b_trees() -> Nbta {
    let mut b = NbtaBuilder::new(binary_ab());
    b.initial("x1");
    b.accepting("x2");
    for x in ["x1", "x2"] {
        b.transition(x, "a", &["x1", "x1"]).expect("static");
        b.transition(x, "b", &["x2", "x2"]).expect("static");
    }
    b.build().expect("static automaton")
}

/// The pair `(X, Y)` where `X` is [`infinitely_many_b_trees`] and `Y` is a ring of `n`
/// states `y0..y{n-1}` with `yk -a-> (yk, yk+1)` and `yk -b-> (yk+1, yk+1)`
/// (indices mod `n`), `y0` initial and accepting.
pub fn b_trees_and_ring(n: usize) -> (Nbta, Nbta) {
    assert!(n >= 1);
    let mut b = NbtaBuilder::new(binary_ab());
    let names: Vec<String> = (0..n).map(|k| format!("y{k}")).collect();
    for name in &names {
        b.state(name);
    }
    b.initial("y0");
    b.accepting("y0");
    for k in 0..n {
        let here = names[k].as_str();
        let next = names[(k + 1) % n].as_str();
        b.transition(here, "a", &[here, next]).expect("static");
        b.transition(here, "b", &[next, next]).expect("static");
    }
    (infinitely_many_b_trees(), b.build().expect("static automaton"))
}

/// Unary automaton over `{a, b}` accepting words with infinitely many `b`.
pub fn infinitely_many_b() -> Nbta {
    let alpha = RankedAlphabet::new([("a", 1), ("b", 1)]).expect("static alphabet");
    let mut b = NbtaBuilder::new(alpha);
    b.initial("p");
    b.accepting("q");
    for s in ["p", "q"] {
        b.transition(s, "a", &["p"]).expect("static");
        b.transition(s, "b", &["q"]).expect("static");
    }
    b.build().expect("static automaton")
}

/// Unary automaton over `{a, b}` accepting every infinite word.
pub fn all_words() -> Nbta {
    let alpha = RankedAlphabet::new([("a", 1), ("b", 1)]).expect("static alphabet");
    let mut b = NbtaBuilder::new(alpha);
    b.initial("s");
    b.accepting("s");
    b.transition("s", "a", &["s"]).expect("static");
    b.transition("s", "b", &["s"]).expect("static");
    b.build().expect("static automaton")
}

/// Five-state automaton over `{a, b}` with leaking states `x2`, `x3`.
pub fn leaking_chain() -> Pbwa {
    let mut b = PbwaBuilder::new(["a", "b"]);
    for s in ["x1", "x2", "x3", "x4", "x5"] {
        b.state(s);
    }
    b.initial("x1", int(1));
    b.accepting("x3").accepting("x5");
    let rows = [
        ("x1", "a", "x1", ratio(1, 2)),
        ("x1", "a", "x2", ratio(1, 3)),
        ("x1", "b", "x4", ratio(1, 6)),
        ("x2", "a", "x2", ratio(1, 2)),
        ("x2", "a", "x3", ratio(1, 3)),
        ("x3", "a", "x2", ratio(1, 2)),
        ("x3", "a", "x3", ratio(1, 2)),
        ("x4", "a", "x4", ratio(1, 2)),
        ("x4", "a", "x5", ratio(1, 2)),
        ("x5", "a", "x4", ratio(1, 2)),
        ("x5", "a", "x5", ratio(1, 2)),
    ];
    for (x, a, y, p) in rows {
        b.transition(x, a, y, p).expect("static");
    }
    b.build().expect("static automaton")
}

/// A two-state alternating `X` and a `Y` that moves to an accepting sink
/// with probability one half per step.
pub fn alternating_and_sink() -> (Pbwa, Pbwa) {
    let mut b = PbwaBuilder::new(["a"]);
    b.initial("x1", ratio(1, 2)).initial("x2", ratio(1, 2));
    b.accepting("x2");
    b.transition("x1", "a", "x2", int(1)).expect("static");
    b.transition("x2", "a", "x1", int(1)).expect("static");
    let x = b.build().expect("static automaton");

    let mut b = PbwaBuilder::new(["a"]);
    b.initial("y1", int(1));
    b.accepting("y2");
    b.transition("y1", "a", "y1", ratio(1, 2)).expect("static");
    b.transition("y1", "a", "y2", ratio(1, 2)).expect("static");
    b.transition("y2", "a", "y2", int(1)).expect("static");
    (x, b.build().expect("static automaton"))
}

/// The witness for [`alternating_and_sink`]: every entry one half.
pub fn half_witness() -> Matrix {
    vec![vec![ratio(1, 2); 2]; 2]
}

/// `1/2 - (1/2)^(i+1)`, the closed form of both approximation sequences.
pub fn half_iterate(i: u32) -> Rational {
    ratio(1, 2) - Rational::new(1.into(), BigInt::from(2).pow(i + 1))
}

/// Two disjoint deterministic lines in `X` against a single line in `Y`.
pub fn split_lines() -> (Pbwa, Pbwa) {
    let mut b = PbwaBuilder::new(["a"]);
    for s in ["x1", "x21", "x22", "x23"] {
        b.state(s);
    }
    b.initial("x1", ratio(1, 2)).initial("x22", ratio(1, 2));
    b.accepting("x21").accepting("x22").accepting("x23");
    for (x, y) in [("x1", "x21"), ("x21", "x21"), ("x22", "x23"), ("x23", "x23")] {
        b.transition(x, "a", y, int(1)).expect("static");
    }
    let x = b.build().expect("static automaton");

    let mut b = PbwaBuilder::new(["a"]);
    b.initial("y1", int(1));
    b.accepting("y2");
    b.transition("y1", "a", "y2", int(1)).expect("static");
    b.transition("y2", "a", "y2", int(1)).expect("static");
    (x, b.build().expect("static automaton"))
}

/// Rows `y1 ↦ ½x1 + ½x22` and `y2 ↦ ½x21 + ½x23`.
pub fn split_lines_witness() -> Matrix {
    let h = ratio(1, 2);
    let z = int(0);
    vec![
        vec![h.clone(), z.clone(), h.clone(), z.clone()],
        vec![z.clone(), h.clone(), z, h],
    ]
}
