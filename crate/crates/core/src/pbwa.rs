//! Probabilistic Büchi word automata over exact rationals.
//!
//! Missing row mass is divergence: the run stops and is not accepted. The
//! chain view adds a sink state that absorbs it.

use num_traits::{One, Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pbwa {
    letters: Vec<String>,
    states: Vec<String>,
    /// One `X × X` matrix per letter.
    matrices: Vec<Matrix>,
    initial: Vec<Rational>,
    accepting: Vec<bool>,
}

fn in_unit(p: &Rational) -> bool {
    !p.is_negative() && *p <= Rational::one()
}

impl Pbwa {
    pub fn new(
        letters: Vec<String>,
        states: Vec<String>,
        matrices: Vec<Matrix>,
        initial: Vec<Rational>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if letters.is_empty() {
            return Err(Error::Validation("alphabet is empty".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if letters[..i].contains(l) {
                return Err(Error::Validation(format!("letter `{l}` declared twice")));
            }
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::Validation(format!("state `{s}` declared twice")));
            }
        }
        if matrices.len() != letters.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} letters",
                matrices.len(),
                letters.len()
            )));
        }
        if initial.len() != n || accepting.len() != n {
            return Err(Error::DimensionMismatch("initial/accepting vectors do not match the states".into()));
        }
        for m in &matrices {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch(format!("transition matrix is not {n}x{n}")));
            }
        }
        for (x, name) in states.iter().enumerate() {
            let mut mass = Rational::zero();
            for (a, m) in matrices.iter().enumerate() {
                for (y, p) in m[x].iter().enumerate() {
                    if !in_unit(p) {
                        return Err(Error::Validation(format!(
                            "probability {p} of {name} -{}-> {} is outside [0,1]",
                            letters[a], states[y]
                        )));
                    }
                    mass += p;
                }
            }
            if mass > Rational::one() {
                return Err(Error::Validation(format!("row mass of `{name}` is {mass} > 1")));
            }
        }
        if let Some(p) = initial.iter().find(|p| !in_unit(p)) {
            return Err(Error::Validation(format!("initial probability {p} is outside [0,1]")));
        }
        let total: Rational = initial.iter().sum();
        if total > Rational::one() {
            return Err(Error::Validation(format!("initial mass {total} > 1")));
        }
        Ok(Self {
            letters,
            states,
            matrices,
            initial,
            accepting,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, x: usize) -> &str {
        &self.states[x]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|s| s == name)
    }

    pub fn matrix(&self, letter: usize) -> &Matrix {
        &self.matrices[letter]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn is_accepting(&self, x: usize) -> bool {
        self.accepting[x]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    /// Same automaton with a different accepting set.
    pub fn with_accepting(&self, accepting: Vec<bool>) -> Result<Pbwa> {
        Pbwa::new(
            self.letters.clone(),
            self.states.clone(),
            self.matrices.clone(),
            self.initial.clone(),
            accepting,
        )
    }

    /// Indices of non-accepting (`false`) or accepting (`true`) states, in order.
    pub fn block(&self, accepting: bool) -> Vec<usize> {
        (0..self.num_states()).filter(|&x| self.accepting[x] == accepting).collect()
    }

    /// Re-indexes the letters onto `letters`, which must be a permutation.
    pub fn realign(&self, letters: &[String]) -> Result<Pbwa> {
        if letters.len() != self.letters.len() {
            return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", self.letters, letters)));
        }
        let matrices = letters
            .iter()
            .map(|l| {
                self.letter_index(l)
                    .map(|k| self.matrices[k].clone())
                    .ok_or_else(|| Error::AlphabetMismatch(format!("letter `{l}` missing")))
            })
            .collect::<Result<_>>()?;
        Ok(Pbwa {
            letters: letters.to_vec(),
            matrices,
            ..self.clone()
        })
    }

    /// Splits a word into letters: whitespace-separated, or else by longest match.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(|t| self.letter_index(t).ok_or_else(|| Error::UnknownLetter(t.to_string())))
                .collect();
        }
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = (0..self.letters.len())
                .filter(|&k| rest.starts_with(self.letters[k].as_str()))
                .max_by_key(|&k| self.letters[k].len());
            match best {
                Some(k) => {
                    out.push(k);
                    rest = &rest[self.letters[k].len()..];
                }
                None => {
                    let bad = rest.chars().next().map(String::from).unwrap_or_default();
                    return Err(Error::UnknownLetter(bad));
                }
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "ε".into();
        }
        let single = self.letters.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&a| self.letters[a].as_str()).collect();
        parts.join(if single { "" } else { " " })
    }

    /// Letter-summed chain with the divergence sink at index `num_states()`.
    pub fn chain(&self) -> ChainView {
        let n = self.num_states();
        let mut p = linalg::zeros(n + 1, n + 1);
        for x in 0..n {
            for m in &self.matrices {
                for (y, q) in m[x].iter().enumerate() {
                    p[x][y] += q;
                }
            }
            let mass: Rational = p[x][..n].iter().sum();
            p[x][n] = Rational::one() - mass;
        }
        p[n][n] = Rational::one();
        ChainView { p, sink: n }
    }

    /// The literal `k`-step non-divergence recurrence.
    pub fn nodiv_k(&self, k: usize) -> Vec<Rational> {
        let n = self.num_states();
        let mut v = vec![Rational::one(); n];
        for _ in 0..k {
            v = (0..n)
                .map(|x| {
                    self.matrices
                        .iter()
                        .map(|m| linalg::dot(&m[x], &v))
                        .sum()
                })
                .collect();
        }
        v
    }

    /// Probability of never diverging, per state.
    pub fn nodiv(&self) -> Vec<Rational> {
        let chain = self.chain();
        let mut target = vec![false; chain.len()];
        target[chain.sink] = true;
        let r = chain.reach_prob(&target);
        r[..self.num_states()].iter().map(|p| Rational::one() - p).collect()
    }

    pub fn bsccs(&self) -> Vec<Vec<usize>> {
        self.chain().bsccs()
    }

    /// `acc(x)`: probability of visiting accepting states infinitely often from `x`.
    pub fn acceptance_vector(&self) -> Vec<Rational> {
        let chain = self.chain();
        let mut target = vec![false; chain.len()];
        for c in chain.bsccs() {
            if c.iter().any(|&x| x != chain.sink && self.accepting[x]) {
                for x in c {
                    target[x] = true;
                }
            }
        }
        let mut r = chain.reach_prob(&target);
        r.truncate(self.num_states());
        r
    }

    pub fn language(&self) -> Language<'_> {
        Language {
            aut: self,
            acc: self.acceptance_vector(),
        }
    }

    /// Measure of the cylinder of `word` in the accepted language.
    pub fn cylinder_prob(&self, word: &[usize]) -> Result<Rational> {
        self.language().cylinder(word)
    }
}

/// The accepted-language measure with its acceptance vector cached.
pub struct Language<'a> {
    aut: &'a Pbwa,
    acc: Vec<Rational>,
}

impl Language<'_> {
    pub fn acceptance(&self) -> &[Rational] {
        &self.acc
    }

    /// Sub-distribution over states after reading `word` from the initial vector.
    pub fn after(&self, word: &[usize]) -> Result<Vec<Rational>> {
        let mut v = self.aut.initial.clone();
        for &a in word {
            let m = self
                .aut
                .matrices
                .get(a)
                .ok_or_else(|| Error::UnknownLetter(format!("#{a}")))?;
            v = linalg::vec_mul(&v, m);
        }
        Ok(v)
    }

    pub fn step(&self, v: &[Rational], letter: usize) -> Vec<Rational> {
        linalg::vec_mul(v, &self.aut.matrices[letter])
    }

    pub fn weigh(&self, v: &[Rational]) -> Rational {
        linalg::dot(v, &self.acc)
    }

    pub fn cylinder(&self, word: &[usize]) -> Result<Rational> {
        Ok(self.weigh(&self.after(word)?))
    }
}

/// Letter-summed Markov chain; the last state is the divergence sink.
#[derive(Clone, Debug)]
pub struct ChainView {
    pub p: Matrix,
    pub sink: usize,
}

impl ChainView {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    fn graph(&self) -> DiGraph<(), ()> {
        let n = self.len();
        let mut g = DiGraph::new();
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for x in 0..n {
            for y in 0..n {
                if !self.p[x][y].is_zero() {
                    g.add_edge(nodes[x], nodes[y], ());
                }
            }
        }
        g
    }

    /// Bottom strongly connected components, each sorted, in order of least
    /// member. The sink counts only when some state leaks into it.
    pub fn bsccs(&self) -> Vec<Vec<usize>> {
        let g = self.graph();
        let leaks = (0..self.len()).any(|x| x != self.sink && !self.p[x][self.sink].is_zero());
        let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|v| v.index()).collect();
                c.sort_unstable();
                c
            })
            .filter(|c| leaks || c != &[self.sink])
            .filter(|c| {
                c.iter()
                    .all(|&x| (0..self.len()).all(|y| self.p[x][y].is_zero() || c.binary_search(&y).is_ok()))
            })
            .collect();
        out.sort();
        out
    }

    /// States from which `target` is reachable through positive edges.
    pub fn can_reach(&self, target: &[bool]) -> Vec<bool> {
        let n = self.len();
        let mut seen = target.to_vec();
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if !seen[x] && (0..n).any(|y| seen[y] && !self.p[x][y].is_zero()) {
                    seen[x] = true;
                    changed = true;
                }
            }
        }
        seen
    }

    /// Probability of eventually reaching `target`, exactly.
    pub fn reach_prob(&self, target: &[bool]) -> Vec<Rational> {
        let n = self.len();
        let live = self.can_reach(target);
        let unknown: Vec<usize> = (0..n).filter(|&x| live[x] && !target[x]).collect();
        let mut a = linalg::zeros(unknown.len(), unknown.len());
        let mut b = vec![Rational::zero(); unknown.len()];
        for (i, &x) in unknown.iter().enumerate() {
            a[i][i] = Rational::one();
            for (j, &y) in unknown.iter().enumerate() {
                a[i][j] -= &self.p[x][y];
            }
            b[i] = (0..n).filter(|&y| target[y]).map(|y| self.p[x][y].clone()).sum();
        }
        // every unknown state reaches the target with positive probability,
        // so the system is nonsingular
        let sol = linalg::solve(&a, &b).expect("reachability system is nonsingular");
        let mut r: Vec<Rational> = (0..n)
            .map(|x| if target[x] { Rational::one() } else { Rational::zero() })
            .collect();
        for (i, &x) in unknown.iter().enumerate() {
            r[x] = sol[i].clone();
        }
        r
    }
}

/// Builds a [`Pbwa`] by state and letter names.
pub struct PbwaBuilder {
    letters: Vec<String>,
    states: Vec<String>,
    entries: Vec<(usize, usize, usize, Rational)>,
    initial: Vec<(usize, Rational)>,
    accepting: Vec<usize>,
}

impl PbwaBuilder {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Self {
        Self {
            letters: letters.into_iter().map(Into::into).collect(),
            states: Vec::new(),
            entries: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
        }
    }

    pub fn state(&mut self, name: &str) -> usize {
        if let Some(k) = self.states.iter().position(|s| s == name) {
            return k;
        }
        self.states.push(name.to_string());
        self.states.len() - 1
    }

    pub fn initial(&mut self, name: &str, p: Rational) -> &mut Self {
        let x = self.state(name);
        self.initial.push((x, p));
        self
    }

    pub fn accepting(&mut self, name: &str) -> &mut Self {
        let x = self.state(name);
        self.accepting.push(x);
        self
    }

    pub fn transition(&mut self, from: &str, letter: &str, to: &str, p: Rational) -> Result<&mut Self> {
        let a = self
            .letters
            .iter()
            .position(|l| l == letter)
            .ok_or_else(|| Error::UnknownLetter(letter.to_string()))?;
        let (x, y) = (self.state(from), self.state(to));
        self.entries.push((x, a, y, p));
        Ok(self)
    }

    pub fn build(self) -> Result<Pbwa> {
        let n = self.states.len();
        let mut matrices = vec![linalg::zeros(n, n); self.letters.len()];
        for (x, a, y, p) in self.entries {
            matrices[a][x][y] += p;
        }
        let mut initial = vec![Rational::zero(); n];
        for (x, p) in self.initial {
            initial[x] += p;
        }
        let mut accepting = vec![false; n];
        for x in self.accepting {
            accepting[x] = true;
        }
        Pbwa::new(self.letters, self.states, matrices, initial, accepting)
    }
}

/// Brings `y` onto `x`'s letter order.
pub fn align_letters(x: &Pbwa, y: &Pbwa) -> Result<Pbwa> {
    if x.letters == y.letters {
        return Ok(y.clone());
    }
    let mut a = x.letters.clone();
    let mut b = y.letters.clone();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", x.letters, y.letters)));
    }
    y.realign(&x.letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int, ratio};

    #[test]
    fn leaking_chain_nodiv_and_acceptance() {
        let x = fixtures::leaking_chain();
        let expect = vec![ratio(1, 3), int(0), int(0), int(1), int(1)];
        assert_eq!(x.nodiv(), expect);
        assert_eq!(x.acceptance_vector(), expect);
        assert_eq!(x.nodiv_k(0), vec![int(1); 5]);
        assert_eq!(x.nodiv_k(1)[1], ratio(5, 6));
    }

    #[test]
    fn leaking_chain_bsccs() {
        let x = fixtures::leaking_chain();
        assert_eq!(x.bsccs(), vec![vec![3, 4], vec![5]]);
    }

    #[test]
    fn alternating_and_sink_right_side() {
        let (_, y) = fixtures::alternating_and_sink();
        assert_eq!(y.bsccs(), vec![vec![1]]);
        assert_eq!(y.acceptance_vector(), vec![int(1), int(1)]);
    }

    #[test]
    fn leaking_self_loop_diverges() {
        let mut b = PbwaBuilder::new(["a"]);
        b.initial("s", int(1)).accepting("s");
        b.transition("s", "a", "s", ratio(1, 2)).unwrap();
        let x = b.build().unwrap();
        assert_eq!(x.nodiv(), vec![int(0)]);
        assert_eq!(x.acceptance_vector(), vec![int(0)]);
    }

    #[test]
    fn rejects_excess_mass() {
        let mut b = PbwaBuilder::new(["a", "b"]);
        b.initial("s", int(1));
        b.transition("s", "a", "s", ratio(2, 3)).unwrap();
        b.transition("s", "b", "s", ratio(1, 2)).unwrap();
        assert!(matches!(b.build(), Err(Error::Validation(_))));
    }

    #[test]
    fn cylinders_of_leaking_chain() {
        let x = fixtures::leaking_chain();
        for n in 0..=8 {
            let w = vec![0; n];
            assert_eq!(x.cylinder_prob(&w).unwrap(), ratio(1, 3) / int(1 << n));
        }
        assert_eq!(x.cylinder_prob(&[1]).unwrap(), ratio(1, 6));
        assert_eq!(x.cylinder_prob(&[1, 1]).unwrap(), int(0));
    }

    #[test]
    fn words_parse_by_longest_match() {
        let x = fixtures::leaking_chain();
        assert_eq!(x.parse_word("aab").unwrap(), vec![0, 0, 1]);
        assert_eq!(x.parse_word("a b").unwrap(), vec![0, 1]);
        assert_eq!(x.parse_word("").unwrap(), Vec::<usize>::new());
        assert!(matches!(x.parse_word("ac"), Err(Error::UnknownLetter(_))));
        assert_eq!(x.format_word(&[0, 1]), "ab");
    }

    #[test]
    fn realigned_letters() {
        let x = fixtures::leaking_chain();
        let y = x.realign(&["b".to_string(), "a".to_string()]).unwrap();
        assert_eq!(y.cylinder_prob(&[1]).unwrap(), ratio(1, 3) / int(2));
        assert_eq!(align_letters(&x, &y).unwrap(), x);
    }
}
