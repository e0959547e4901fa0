//! Bounded, independent language checks used to test soundness of the
//! simulation checkers at small scale.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::game::nonemptiness_game;
use crate::linalg::Rational;
use crate::nbta::{align, Nbta, RankedAlphabet};
use crate::pbwa::{align_letters, Pbwa};

/// The ultimately periodic word `stem · cycle^ω`, letters as symbol indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    stem: Vec<usize>,
    cycle: Vec<usize>,
}

impl LassoWord {
    pub fn new(stem: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Validation("lasso loop must be nonempty".into()));
        }
        Ok(Self { stem, cycle })
    }

    pub fn stem(&self) -> &[usize] {
        &self.stem
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter(&self, i: usize) -> usize {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    pub fn render(&self, alphabet: &RankedAlphabet) -> String {
        let word = |w: &[usize]| -> String {
            if w.is_empty() {
                "ε".into()
            } else {
                w.iter().map(|&a| alphabet.name(a)).collect::<Vec<_>>().join(" ")
            }
        };
        format!("({}, {})", word(&self.stem), word(&self.cycle))
    }
}

fn require_unary(x: &Nbta) -> Result<()> {
    match x.alphabet().iter().find(|&(_, arity)| arity != 1) {
        Some((name, _)) => Err(Error::NonUnary(name.to_string())),
        None => Ok(()),
    }
}

/// Membership of a lasso word in the language of a word automaton.
///
/// Searches the product of the automaton with the positions of the lasso for
/// a reachable cycle through an accepting state.
pub fn nbw_lasso_member(x: &Nbta, w: &LassoWord) -> Result<bool> {
    require_unary(x)?;
    let len = w.stem.len() + w.cycle.len();
    let n = x.num_states();
    let node = |s: usize, p: usize| s * len + p;
    let next_pos = |p: usize| if p + 1 < len { p + 1 } else { w.stem.len() };
    let succ = |v: usize| -> Vec<usize> {
        let (s, p) = (v / len, v % len);
        let letter = w.letter(p);
        x.transitions(s)
            .iter()
            .filter(|t| t.symbol == letter)
            .map(|t| node(t.children[0], next_pos(p)))
            .collect()
    };

    let total = n * len;
    let mut reachable = vec![false; total];
    let mut stack: Vec<usize> = x.initial_states().map(|s| node(s, 0)).collect();
    while let Some(v) = stack.pop() {
        if !std::mem::replace(&mut reachable[v], true) {
            stack.extend(succ(v));
        }
    }
    // an accepting node lies on a cycle iff it reaches itself
    for v in (0..total).filter(|&v| reachable[v] && x.is_accepting(v / len)) {
        let mut seen = vec![false; total];
        let mut stack = succ(v);
        while let Some(u) = stack.pop() {
            if u == v {
                return Ok(true);
            }
            if !std::mem::replace(&mut seen[u], true) {
                stack.extend(succ(u));
            }
        }
    }
    Ok(false)
}

/// All words of exactly `len` letters over `k` symbols, lexicographically.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if k == 0 && len > 0 { 0 } else { k.pow(len as u32) };
    (0..total).map(move |mut code| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        w
    })
}

/// First lasso within the bounds accepted by `x` but not by `y`.
///
/// Lassos are ordered by stem length, then loop length, then lexicographically.
pub fn nbw_inclusion_bounded(x: &Nbta, y: &Nbta, stem_bound: usize, loop_bound: usize) -> Result<Option<LassoWord>> {
    require_unary(x)?;
    let y = align(x, y)?;
    require_unary(&y)?;
    let k = x.alphabet().len();
    for sl in 0..=stem_bound {
        for ll in 1..=loop_bound {
            for stem in words_of_length(k, sl) {
                for cycle in words_of_length(k, ll) {
                    let w = LassoWord::new(stem.clone(), cycle)?;
                    if nbw_lasso_member(x, &w)? && !nbw_lasso_member(&y, &w)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A tree truncated at a fixed depth; holes stand for arbitrary subtrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrefixTree {
    Hole,
    Node(usize, Vec<PrefixTree>),
}

impl PrefixTree {
    /// Number of labeled levels.
    pub fn depth(&self) -> usize {
        match self {
            PrefixTree::Hole => 0,
            PrefixTree::Node(_, kids) => 1 + kids.iter().map(PrefixTree::depth).max().unwrap_or(0),
        }
    }

    pub fn render(&self, alphabet: &RankedAlphabet) -> String {
        match self {
            PrefixTree::Hole => "_".into(),
            PrefixTree::Node(s, kids) if kids.is_empty() => alphabet.name(*s).to_string(),
            PrefixTree::Node(s, kids) => {
                let inner: Vec<String> = kids.iter().map(|k| k.render(alphabet)).collect();
                format!("{}({})", alphabet.name(*s), inner.join(","))
            }
        }
    }

    /// Checks arities against `alphabet` and that every hole is at `depth`.
    pub fn is_well_formed(&self, alphabet: &RankedAlphabet, depth: usize) -> bool {
        match self {
            PrefixTree::Hole => depth == 0,
            PrefixTree::Node(s, kids) => {
                depth > 0
                    && *s < alphabet.len()
                    && alphabet.arity(*s) == kids.len()
                    && kids.iter().all(|k| k.is_well_formed(alphabet, depth - 1))
            }
        }
    }
}

/// States of `x` from which a run over `t` exists whose holes carry states
/// with nonempty language.
pub fn prefix_states(x: &Nbta, nonempty: &[bool], t: &PrefixTree) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(x.num_states());
    match t {
        PrefixTree::Hole => {
            for (s, &ok) in nonempty.iter().enumerate() {
                out.set(s, ok);
            }
        }
        PrefixTree::Node(sym, kids) => {
            let kid_sets: Vec<FixedBitSet> = kids.iter().map(|k| prefix_states(x, nonempty, k)).collect();
            for s in 0..x.num_states() {
                let ok = x.transitions(s).iter().any(|tr| {
                    tr.symbol == *sym && tr.children.iter().zip(&kid_sets).all(|(&c, set)| set.contains(c))
                });
                out.set(s, ok);
            }
        }
    }
    out
}

/// Whether the prefix extends to a tree in the language of `x`.
pub fn prefix_realizable(x: &Nbta, t: &PrefixTree) -> bool {
    let nonempty = nonemptiness_game(x).nonempty;
    let r = prefix_states(x, &nonempty, t);
    x.initial_states().any(|s| r.contains(s))
}

/// First depth-`k` prefix realizable in `x` but not in `y`.
///
/// `None` is a necessary condition for language inclusion, not a proof of it.
pub fn tree_prefix_inclusion(x: &Nbta, y: &Nbta, depth: usize, arity_cap: usize) -> Result<Option<PrefixTree>> {
    let y = align(x, y)?;
    x.check_arity_cap(arity_cap)?;
    let (ne_x, ne_y) = (nonemptiness_game(x).nonempty, nonemptiness_game(&y).nonempty);
    let sig = |t: &PrefixTree| (prefix_states(x, &ne_x, t), prefix_states(&y, &ne_y, t));

    // one representative tree per pair of state sets, level by level
    let mut level: Vec<PrefixTree> = vec![PrefixTree::Hole];
    for _ in 0..depth {
        let mut seen: HashSet<(FixedBitSet, FixedBitSet)> = HashSet::new();
        let mut next = Vec::new();
        for (sym, (_, arity)) in x.alphabet().iter().enumerate() {
            for combo in words_of_length(level.len(), arity) {
                let t = PrefixTree::Node(sym, combo.iter().map(|&i| level[i].clone()).collect());
                if seen.insert(sig(&t)) {
                    next.push(t);
                }
            }
        }
        level = next;
    }
    let initial_hit = |aut: &Nbta, r: &FixedBitSet| aut.initial_states().any(|s| r.contains(s));
    Ok(level.into_iter().find(|t| {
        let (rx, ry) = sig(t);
        initial_hit(x, &rx) && !initial_hit(&y, &ry)
    }))
}

/// First word `w` with `|w| ≤ max_len` whose cylinder has larger measure in
/// `x` than in `y`, in length-lexicographic order.
pub fn cylinder_inclusion(x: &Pbwa, y: &Pbwa, max_len: usize) -> Result<Option<Vec<usize>>> {
    let y = align_letters(x, y)?;
    let (lx, ly) = (x.language(), y.language());
    let k = x.letters().len();
    let mut frontier: Vec<(Vec<usize>, Vec<Rational>, Vec<Rational>)> =
        vec![(Vec::new(), x.initial().to_vec(), y.initial().to_vec())];
    for len in 0..=max_len {
        for (w, vx, vy) in &frontier {
            if lx.weigh(vx) > ly.weigh(vy) {
                return Ok(Some(w.clone()));
            }
        }
        if len == max_len {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|(w, vx, vy)| {
                (0..k).map(|a| {
                    let mut w2 = w.clone();
                    w2.push(a);
                    (w2, lx.step(vx, a), ly.step(vy, a))
                })
            })
            .collect();
    }
    Ok(None)
}
