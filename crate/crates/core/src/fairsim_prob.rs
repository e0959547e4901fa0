//! Matrix fair simulation between probabilistic Büchi word automata.
//!
//! A witness is a substochastic matrix `A` over `Y × X` together with
//! increasing approximation sequences for its two upper blocks `A11`
//! (non-accepting rows and columns) and `A12` (non-accepting rows, accepting
//! columns). A sequence is either a finite list ending at the blocks, or a
//! finite prefix continued forever by an affine map whose fixed point is the
//! pair of blocks.
//!
//! The tail is checked exactly. With `d = limit - last`, the Krylov vectors
//! `d, Jd, J²d, …` must span a `J`-invariant subspace on which `J` keeps the
//! polytope `conv{0, d, …, J^r d}`; every condition is affine, so checking it
//! at the vertices covers every element of the tail.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Rational};
use crate::pbwa::{align_letters, Pbwa};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixWitness {
    pub a: Matrix,
}

impl MatrixWitness {
    pub fn new(a: Matrix) -> Self {
        Self { a }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(linalg::zeros(rows, cols))
    }

    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.a[r][c].clone()).collect())
            .collect()
    }
}

/// Affine continuation `s ↦ linear·s + constant` on the coordinates of the
/// pair `(A11, A12)`: `A11` entries row-major, then `A12` entries row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTail {
    pub linear: Matrix,
    pub constant: Vec<Rational>,
    pub limit11: Matrix,
    pub limit12: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxSequences {
    pub a11: Vec<Matrix>,
    pub a12: Vec<Matrix>,
    pub tail: Option<OmegaTail>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Finite(usize),
    Omega,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Omega => write!(f, "ω"),
        }
    }
}

impl ApproxSequences {
    pub fn bound(&self) -> Bound {
        match self.tail {
            Some(_) => Bound::Omega,
            None => Bound::Finite(self.a11.len().saturating_sub(1)),
        }
    }

    /// The explicit prefix plus `extra` further elements generated by the tail.
    pub fn unfold(&self, layout: &Layout, extra: usize) -> Vec<(Matrix, Matrix)> {
        let mut out: Vec<(Matrix, Matrix)> = self.a11.iter().cloned().zip(self.a12.iter().cloned()).collect();
        if let (Some(t), Some(last)) = (&self.tail, out.last().cloned()) {
            let mut s = layout.flatten_pair(&last.0, &last.1);
            for _ in 0..extra {
                s = apply_affine(&t.linear, &t.constant, &s);
                out.push(layout.unflatten_pair(&s));
            }
        }
        out
    }
}

fn apply_affine(j: &Matrix, c: &[Rational], s: &[Rational]) -> Vec<Rational> {
    linalg::mul_vec(j, s).into_iter().zip(c).map(|(a, b)| a + b).collect()
}

/// Conditions of a matrix fair simulation, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    Substochastic,
    InitialVector,
    ForwardStep,
    FinalElement,
    Invariant,
    ZeroBase,
    Increasing,
    ApproxStep,
    Limit,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::Substochastic => "substochastic",
            Condition::InitialVector => "initial-vector",
            Condition::ForwardStep => "forward-step",
            Condition::FinalElement => "final-element",
            Condition::Invariant => "approximant-invariant",
            Condition::ZeroBase => "zero-base",
            Condition::Increasing => "increasing",
            Condition::ApproxStep => "approximant-step",
            Condition::Limit => "limit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub letter: Option<String>,
    /// Sequence index (`"0"`, `"1"`, …, `"ω"`, or `"tail"`).
    pub index: Option<String>,
    /// `(row state of Y, column state of X)` or a single state in the row slot.
    pub entry: Option<(String, String)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition.id())?;
        if let Some(l) = &self.letter {
            write!(f, " letter={l}")?;
        }
        if let Some(i) = &self.index {
            write!(f, " index={i}")?;
        }
        if let Some((r, c)) = &self.entry {
            if c.is_empty() {
                write!(f, " entry={r}")?;
            } else {
                write!(f, " entry=({r},{c})")?;
            }
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCheck {
    pub violation: Option<Violation>,
}

impl MatrixCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Index bookkeeping for the blocks of `A` and the flattened pair `(A11, A12)`.
#[derive(Clone, Debug)]
pub struct Layout {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub y1: Vec<usize>,
    pub y2: Vec<usize>,
    nx: usize,
}

impl Layout {
    pub fn new(x: &Pbwa, y: &Pbwa) -> Self {
        Self {
            x1: x.block(false),
            x2: x.block(true),
            y1: y.block(false),
            y2: y.block(true),
            nx: x.num_states(),
        }
    }

    pub fn dim(&self) -> usize {
        self.y1.len() * self.nx
    }

    fn split(&self, b: &Matrix) -> (Matrix, Matrix) {
        let pick = |cols: &[usize]| -> Matrix {
            b.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect()
        };
        (pick(&self.x1), pick(&self.x2))
    }

    /// Joins the blocks into the `Y1 × X` upper row band.
    fn join(&self, a11: &Matrix, a12: &Matrix) -> Matrix {
        let mut b = linalg::zeros(self.y1.len(), self.nx);
        for (i, row) in b.iter_mut().enumerate() {
            for (k, &c) in self.x1.iter().enumerate() {
                row[c] = a11[i][k].clone();
            }
            for (k, &c) in self.x2.iter().enumerate() {
                row[c] = a12[i][k].clone();
            }
        }
        b
    }

    fn coord(&self, row: usize, col: usize) -> usize {
        if let Some(k) = self.x1.iter().position(|&c| c == col) {
            row * self.x1.len() + k
        } else {
            let k = self.x2.iter().position(|&c| c == col).expect("column in X");
            self.y1.len() * self.x1.len() + row * self.x2.len() + k
        }
    }

    fn flatten(&self, b: &Matrix) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (i, row) in b.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                v[self.coord(i, c)] = e.clone();
            }
        }
        v
    }

    fn unflatten(&self, v: &[Rational]) -> Matrix {
        let mut b = linalg::zeros(self.y1.len(), self.nx);
        for (i, row) in b.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = v[self.coord(i, c)].clone();
            }
        }
        b
    }

    pub fn flatten_pair(&self, a11: &Matrix, a12: &Matrix) -> Vec<Rational> {
        self.flatten(&self.join(a11, a12))
    }

    pub fn unflatten_pair(&self, v: &[Rational]) -> (Matrix, Matrix) {
        self.split(&self.unflatten(v))
    }

    /// Coordinate of entry `(y, x)`, if `y` is a non-accepting state of `Y`.
    pub fn coord_of(&self, y: usize, x: usize) -> Option<usize> {
        let row = self.y1.iter().position(|&r| r == y)?;
        (x < self.nx).then(|| self.coord(row, x))
    }

    /// Name of coordinate `k` as `(y, x)` indices into the automata.
    pub fn coord_entry(&self, k: usize) -> (usize, usize) {
        let n11 = self.y1.len() * self.x1.len();
        if k < n11 {
            (self.y1[k / self.x1.len()], self.x1[k % self.x1.len()])
        } else {
            let k = k - n11;
            (self.y1[k / self.x2.len()], self.x2[k % self.x2.len()])
        }
    }
}

/// The two automata and the witness with letters aligned and blocks indexed.
struct Ctx<'a> {
    x: &'a Pbwa,
    y: Pbwa,
    a: &'a Matrix,
    l: Layout,
}

impl<'a> Ctx<'a> {
    fn new(x: &'a Pbwa, y: &Pbwa, w: &'a MatrixWitness) -> Result<Self> {
        let y = align_letters(x, y)?;
        if w.a.len() != y.num_states() || w.a.iter().any(|r| r.len() != x.num_states()) {
            return Err(Error::DimensionMismatch(format!(
                "witness must be {}x{} (rows: states of Y, columns: states of X)",
                y.num_states(),
                x.num_states()
            )));
        }
        let l = Layout::new(x, &y);
        Ok(Self { x, y, a: &w.a, l })
    }

    fn names(&self, row: usize, col: usize) -> (String, String) {
        (self.y.state_name(row).to_string(), self.x.state_name(col).to_string())
    }

    /// The full `Y × X` matrix with the upper band replaced by `b`.
    fn with_band(&self, b: &Matrix) -> Matrix {
        let mut k = self.a.clone();
        for (i, &r) in self.l.y1.iter().enumerate() {
            k[r] = b[i].clone();
        }
        k
    }

    fn target_band(&self) -> Matrix {
        self.l.y1.iter().map(|&r| self.a[r].clone()).collect()
    }

    /// `M_Y(a)` restricted to the non-accepting rows, times `with_band(b)`.
    fn rhs(&self, letter: usize, b: &Matrix) -> Matrix {
        let m = self.y.matrix(letter);
        let rows: Matrix = self.l.y1.iter().map(|&r| m[r].clone()).collect();
        linalg::mul(&rows, &self.with_band(b))
    }

    /// `b` with columns outside `cols` zeroed, times `M_X(a)`.
    fn lhs(&self, letter: usize, b: &Matrix, cols: &[usize]) -> Matrix {
        let masked: Matrix = b
            .iter()
            .map(|row| {
                (0..row.len())
                    .map(|c| if cols.contains(&c) { row[c].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        linalg::mul(&masked, self.x.matrix(letter))
    }

    fn violation(&self, condition: Condition, letter: Option<usize>, index: &str, entry: Option<(usize, usize)>, detail: String) -> Violation {
        Violation {
            condition,
            letter: letter.map(|a| self.x.letters()[a].clone()),
            index: (!index.is_empty()).then(|| index.to_string()),
            entry: entry.map(|(r, c)| self.names(r, c)),
            detail,
        }
    }

    /// The invariant condition for the band `b`.
    fn check_invariant(&self, b: &Matrix, index: &str) -> Option<Violation> {
        for a in 0..self.x.letters().len() {
            let lhs = self.lhs(a, b, &self.l.x1);
            let rhs = self.rhs(a, b);
            if let Some((i, c)) = linalg::first_excess_matrix(&lhs, &rhs) {
                let detail = format!("{} > {}", lhs[i][c], rhs[i][c]);
                return Some(self.violation(Condition::Invariant, Some(a), index, Some((self.l.y1[i], c)), detail));
            }
        }
        None
    }

    /// The approximant step from band `prev` to band `next`.
    fn check_step(&self, prev: &Matrix, next: &Matrix, index: &str) -> Option<Violation> {
        for a in 0..self.x.letters().len() {
            let lhs = self.lhs(a, next, &self.l.x2);
            let rhs = self.rhs(a, prev);
            if let Some((i, c)) = linalg::first_excess_matrix(&lhs, &rhs) {
                let detail = format!("{} > {}", lhs[i][c], rhs[i][c]);
                return Some(self.violation(Condition::ApproxStep, Some(a), index, Some((self.l.y1[i], c)), detail));
            }
        }
        None
    }

    fn check_increasing(&self, prev: &Matrix, next: &Matrix, index: &str) -> Option<Violation> {
        linalg::first_excess_matrix(prev, next).map(|(i, c)| {
            let detail = format!("{} decreases to {}", prev[i][c], next[i][c]);
            self.violation(Condition::Increasing, None, index, Some((self.l.y1[i], c)), detail)
        })
    }

    fn check_forward(&self) -> Option<Violation> {
        for (r, row) in self.a.iter().enumerate() {
            if let Some(c) = row.iter().position(|p| p.is_negative() || *p > Rational::one()) {
                return Some(self.violation(Condition::Substochastic, None, "", Some((r, c)), format!("entry {} outside [0,1]", row[c])));
            }
            let mass: Rational = row.iter().sum();
            if mass > Rational::one() {
                return Some(Violation {
                    condition: Condition::Substochastic,
                    letter: None,
                    index: None,
                    entry: Some((self.y.state_name(r).to_string(), String::new())),
                    detail: format!("row mass {mass} > 1"),
                });
            }
        }
        let reach = linalg::vec_mul(self.y.initial(), self.a);
        if let Some(c) = linalg::first_excess(self.x.initial(), &reach) {
            return Some(Violation {
                condition: Condition::InitialVector,
                letter: None,
                index: None,
                entry: Some((self.x.state_name(c).to_string(), String::new())),
                detail: format!("{} > {}", self.x.initial()[c], reach[c]),
            });
        }
        for a in 0..self.x.letters().len() {
            let lhs = linalg::mul(self.a, self.x.matrix(a));
            let rhs = linalg::mul(self.y.matrix(a), self.a);
            if let Some((r, c)) = linalg::first_excess_matrix(&lhs, &rhs) {
                let detail = format!("{} > {}", lhs[r][c], rhs[r][c]);
                return Some(self.violation(Condition::ForwardStep, Some(a), "", Some((r, c)), detail));
            }
        }
        None
    }

    fn check_shapes(&self, seqs: &ApproxSequences) -> Result<()> {
        let (r, c1, c2) = (self.l.y1.len(), self.l.x1.len(), self.l.x2.len());
        let shaped = |m: &Matrix, cols: usize| m.len() == r && m.iter().all(|row| row.len() == cols);
        if seqs.a11.is_empty() || seqs.a11.len() != seqs.a12.len() {
            return Err(Error::DimensionMismatch(format!(
                "sequences must be nonempty and of equal length ({} vs {})",
                seqs.a11.len(),
                seqs.a12.len()
            )));
        }
        if !seqs.a11.iter().all(|m| shaped(m, c1)) || !seqs.a12.iter().all(|m| shaped(m, c2)) {
            return Err(Error::DimensionMismatch(format!(
                "sequence elements must be {r}x{c1} and {r}x{c2}"
            )));
        }
        if let Some(t) = &seqs.tail {
            let d = self.l.dim();
            if t.linear.len() != d || t.linear.iter().any(|row| row.len() != d) || t.constant.len() != d {
                return Err(Error::DimensionMismatch(format!("tail map must act on {d} coordinates")));
            }
            if !shaped(&t.limit11, c1) || !shaped(&t.limit12, c2) {
                return Err(Error::DimensionMismatch("tail limit has the wrong shape".into()));
            }
        }
        Ok(())
    }

    fn check_sequences(&self, seqs: &ApproxSequences) -> Option<Violation> {
        let bands: Vec<Matrix> = seqs.a11.iter().zip(&seqs.a12).map(|(p, q)| self.l.join(p, q)).collect();
        let target = self.target_band();
        let final_band = match &seqs.tail {
            Some(t) => self.l.join(&t.limit11, &t.limit12),
            None => bands.last().expect("nonempty").clone(),
        };
        let final_index = match seqs.bound() {
            Bound::Omega => "ω".to_string(),
            Bound::Finite(n) => n.to_string(),
        };
        if let Some((i, c)) = (0..target.len())
            .flat_map(|i| (0..self.l.nx).map(move |c| (i, c)))
            .find(|&(i, c)| final_band[i][c] != target[i][c])
        {
            let detail = format!("{} differs from the witness entry {}", final_band[i][c], target[i][c]);
            return Some(self.violation(Condition::FinalElement, None, &final_index, Some((self.l.y1[i], c)), detail));
        }
        if let Some((i, k)) = (0..seqs.a12[0].len())
            .flat_map(|i| (0..self.l.x2.len()).map(move |k| (i, k)))
            .find(|&(i, k)| !seqs.a12[0][i][k].is_zero())
        {
            return Some(self.violation(Condition::ZeroBase, None, "0", Some((self.l.y1[i], self.l.x2[k])), String::new()));
        }
        for (n, b) in bands.iter().enumerate() {
            if let Some(v) = self.check_invariant(b, &n.to_string()) {
                return Some(v);
            }
            if n + 1 < bands.len() {
                let idx = (n + 1).to_string();
                if let Some(v) = self.check_increasing(b, &bands[n + 1], &idx) {
                    return Some(v);
                }
                if let Some(v) = self.check_step(b, &bands[n + 1], &idx) {
                    return Some(v);
                }
            }
        }
        if let Some(t) = &seqs.tail {
            if let Some(v) = self.check_invariant(&final_band, "ω") {
                return Some(v);
            }
            let last = bands.last().expect("nonempty");
            if let Some(v) = self.check_tail(t, last, &final_band) {
                return Some(v);
            }
        }
        None
    }

    fn check_tail(&self, t: &OmegaTail, last: &Matrix, limit: &Matrix) -> Option<Violation> {
        let tail_err = |detail: String| Violation {
            condition: Condition::Limit,
            letter: None,
            index: Some("tail".into()),
            entry: None,
            detail,
        };
        let d = self.l.dim();
        let star = self.l.flatten(limit);
        if apply_affine(&t.linear, &t.constant, &star) != star {
            return Some(tail_err("the limit is not a fixed point of the tail map".into()));
        }
        let mut i_minus_j = linalg::identity(d);
        for (r, row) in i_minus_j.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e -= &t.linear[r][c];
            }
        }
        if linalg::rank(&i_minus_j) != d {
            return Some(tail_err("the tail map has no unique fixed point".into()));
        }
        let s_n = self.l.flatten(last);
        let gap: Vec<Rational> = star.iter().zip(&s_n).map(|(a, b)| a - b).collect();

        // Krylov vertices g_i = J^i gap until the next one is dependent.
        let mut vertices: Vec<Vec<Rational>> = Vec::new();
        if gap.iter().any(|e| !e.is_zero()) {
            vertices.push(gap);
            loop {
                let next = linalg::mul_vec(&t.linear, vertices.last().expect("nonempty"));
                let mut with_next = vertices.clone();
                with_next.push(next.clone());
                if linalg::rank(&with_next) > vertices.len() {
                    if vertices.len() == d {
                        return Some(tail_err("Krylov sequence does not close".into()));
                    }
                    vertices.push(next);
                    continue;
                }
                // next = Σ β_i g_i with the g_i independent
                let cols: Matrix = (0..d).map(|k| vertices.iter().map(|g| g[k].clone()).collect()).collect();
                let beta = linalg::solve(&cols, &next).expect("dependent vector has coordinates");
                let sum: Rational = beta.iter().sum();
                if beta.iter().any(Signed::is_negative) || sum > Rational::one() {
                    return Some(tail_err(format!(
                        "the tail map does not keep the polytope spanned by the gap (coefficients {})",
                        beta.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                    )));
                }
                break;
            }
        }
        vertices.push(vec![Rational::zero(); d]);

        for v in &vertices {
            if let Some(k) = v.iter().position(Signed::is_negative) {
                let (r, c) = self.l.coord_entry(k);
                let mut e = tail_err("the tail overshoots the limit".into());
                e.entry = Some(self.names(r, c));
                return Some(e);
            }
            let s: Vec<Rational> = star.iter().zip(v).map(|(a, b)| a - b).collect();
            let next = apply_affine(&t.linear, &t.constant, &s);
            let (b, b_next) = (self.l.unflatten(&s), self.l.unflatten(&next));
            let found = self
                .check_invariant(&b, "tail")
                .or_else(|| self.check_increasing(&b, &b_next, "tail"))
                .or_else(|| self.check_step(&b, &b_next, "tail"));
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Checks every condition of a matrix fair simulation exactly.
pub fn verify_matrix_fair_sim(x: &Pbwa, y: &Pbwa, w: &MatrixWitness, seqs: &ApproxSequences) -> Result<MatrixCheck> {
    let ctx = Ctx::new(x, y, w)?;
    ctx.check_shapes(seqs)?;
    let violation = ctx.check_forward().or_else(|| ctx.check_sequences(seqs));
    Ok(MatrixCheck { violation })
}

/// Checks only the substochastic and forward-simulation conditions.
pub fn check_forward_simulation(x: &Pbwa, y: &Pbwa, w: &MatrixWitness) -> Result<MatrixCheck> {
    let ctx = Ctx::new(x, y, w)?;
    Ok(MatrixCheck {
        violation: ctx.check_forward(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(ApproxSequences),
    /// No sequences found; this does not refute the witness.
    Inconclusive(String),
    /// The witness fails a condition that does not involve the sequences.
    Rejected(Violation),
}

/// Which bound was binding for an entry in one greedy step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Branch {
    Target,
    Previous,
    Constraint { letter: usize, col: usize },
}

type Branches = Vec<Branch>;

struct Searcher<'c, 'a> {
    ctx: &'c Ctx<'a>,
    target: Matrix,
    hold11: bool,
}

impl Searcher<'_, '_> {
    /// Raises the entries of `band` in columns `cols`, row by row and in
    /// column order, as far as the target and the constraints
    /// `band·M_X(a)` (restricted to `cols`) `≤ rhs[a]` allow.
    fn greedy(&self, band: &mut Matrix, cols: &[usize], rhs: &[Matrix], forced: Option<&[Branch]>, out: &mut Branches) {
        let letters = self.ctx.x.letters().len();
        let nx = self.ctx.l.nx;
        let mut k = 0;
        for i in 0..band.len() {
            for &c in cols {
                let lower = band[i][c].clone();
                let value_of = |br: Branch, band: &Matrix| -> Option<Rational> {
                    match br {
                        Branch::Target => Some(self.target[i][c].clone()),
                        Branch::Previous => Some(lower.clone()),
                        Branch::Constraint { letter, col } => {
                            let m = self.ctx.x.matrix(letter);
                            let coef = &m[c][col];
                            if coef.is_zero() {
                                return None;
                            }
                            let others: Rational = cols
                                .iter()
                                .filter(|&&o| o != c)
                                .map(|&o| &band[i][o] * &m[o][col])
                                .sum();
                            Some((&rhs[letter][i][col] - others) / coef)
                        }
                    }
                };
                let br = match forced {
                    Some(f) => f[k],
                    None => {
                        let mut best = (Branch::Target, self.target[i][c].clone());
                        for letter in 0..letters {
                            for col in 0..nx {
                                let br = Branch::Constraint { letter, col };
                                if let Some(v) = value_of(br, band) {
                                    if v < best.1 {
                                        best = (br, v);
                                    }
                                }
                            }
                        }
                        if best.1 <= lower {
                            Branch::Previous
                        } else {
                            best.0
                        }
                    }
                };
                band[i][c] = value_of(br, band).unwrap_or(lower);
                out.push(br);
                k += 1;
            }
        }
    }

    /// One search step from `band`; with `forced` the recorded branches are
    /// replayed, which makes the step an affine map.
    fn step(&self, band: &Matrix, forced: Option<&[Branch]>) -> (Matrix, Branches) {
        let l = &self.ctx.l;
        let letters = self.ctx.x.letters().len();
        let mut next = band.clone();
        let mut branches = Vec::new();
        let rhs: Vec<Matrix> = (0..letters).map(|a| self.ctx.rhs(a, band)).collect();
        self.greedy(&mut next, &l.x2, &rhs, forced, &mut branches);
        if !self.hold11 {
            let rhs: Vec<Matrix> = (0..letters).map(|a| self.ctx.rhs(a, &next)).collect();
            let split = branches.len();
            self.greedy(&mut next, &l.x1, &rhs, forced.map(|f| &f[split..]), &mut branches);
        }
        (next, branches)
    }

    fn initial(&self) -> Matrix {
        let l = &self.ctx.l;
        let mut band = linalg::zeros(l.y1.len(), l.nx);
        if self.hold11 {
            for (i, row) in band.iter_mut().enumerate() {
                for &c in &l.x1 {
                    row[c] = self.target[i][c].clone();
                }
            }
        } else {
            let rhs: Vec<Matrix> = (0..self.ctx.x.letters().len()).map(|a| self.ctx.rhs(a, &band)).collect();
            let mut scratch = Vec::new();
            let mut next = band.clone();
            self.greedy(&mut next, &l.x1, &rhs, None, &mut scratch);
            band = next;
        }
        band
    }

    fn affine_map(&self, branches: &[Branch]) -> (Matrix, Vec<Rational>) {
        let l = &self.ctx.l;
        let d = l.dim();
        let zero = linalg::zeros(l.y1.len(), l.nx);
        let c = l.flatten(&self.step(&zero, Some(branches)).0);
        let mut j = linalg::zeros(d, d);
        for k in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[k] = Rational::one();
            let col = l.flatten(&self.step(&l.unflatten(&e), Some(branches)).0);
            for r in 0..d {
                j[r][k] = &col[r] - &c[r];
            }
        }
        (j, c)
    }

    fn sequences(&self, prefix: &[Matrix], tail: Option<OmegaTail>) -> ApproxSequences {
        let (a11, a12) = prefix.iter().map(|b| self.ctx.l.split(b)).unzip();
        ApproxSequences { a11, a12, tail }
    }

    fn run(&self, w: &MatrixWitness, cap: usize) -> Result<Option<ApproxSequences>> {
        let l = &self.ctx.l;
        let mut band = self.initial();
        let mut prefix = vec![band.clone()];
        let mut previous: Option<Branches> = None;
        for _ in 0..cap {
            if band == self.target {
                return Ok(Some(self.sequences(&prefix, None)));
            }
            let (next, branches) = self.step(&band, None);
            if linalg::first_excess_matrix(&band, &next).is_some() {
                return Err(Error::Internal("search iterate decreased".into()));
            }
            if next == band {
                return Ok(None);
            }
            if previous.as_ref() == Some(&branches) {
                let (j, c) = self.affine_map(&branches);
                let mut i_minus_j = linalg::identity(l.dim());
                for (r, row) in i_minus_j.iter_mut().enumerate() {
                    for (k, e) in row.iter_mut().enumerate() {
                        *e -= &j[r][k];
                    }
                }
                if let Some(star) = linalg::solve(&i_minus_j, &c) {
                    if l.unflatten(&star) == self.target {
                        let (limit11, limit12) = l.split(&self.target);
                        let tail = OmegaTail {
                            linear: j,
                            constant: c,
                            limit11,
                            limit12,
                        };
                        let seqs = self.sequences(&prefix, Some(tail));
                        if verify_matrix_fair_sim(self.ctx.x, &self.ctx.y, w, &seqs)?.holds() {
                            return Ok(Some(seqs));
                        }
                    }
                }
            }
            previous = Some(branches);
            band = next;
            prefix.push(band.clone());
        }
        Ok(None)
    }
}

/// Searches for approximation sequences by a monotone greedy iteration from
/// the zero base; found sequences are always verified.
pub fn search_sequences(x: &Pbwa, y: &Pbwa, w: &MatrixWitness, iteration_cap: usize) -> Result<SearchOutcome> {
    let ctx = Ctx::new(x, y, w)?;
    if let Some(v) = ctx.check_forward() {
        return Ok(SearchOutcome::Rejected(v));
    }
    let target = ctx.target_band();
    if let Some(v) = ctx.check_invariant(&target, "final") {
        return Ok(SearchOutcome::Rejected(v));
    }
    let mut hold = Searcher {
        ctx: &ctx,
        target,
        hold11: true,
    };
    // Keeping A11 at its final value is the cheapest start when allowed.
    let start_ok = ctx.check_invariant(&hold.initial(), "0").is_none();
    if start_ok {
        if let Some(s) = hold.run(w, iteration_cap)? {
            return Ok(SearchOutcome::Found(s));
        }
    }
    hold.hold11 = false;
    match hold.run(w, iteration_cap)? {
        Some(s) => Ok(SearchOutcome::Found(s)),
        None => Ok(SearchOutcome::Inconclusive(format!(
            "no certified sequences within {iteration_cap} iterations"
        ))),
    }
}

/// Marks accepting every non-accepting state that reaches an accepting
/// state with positive probability.
pub fn accepting_closure(y: &Pbwa) -> Pbwa {
    let chain = y.chain();
    let mut target = vec![false; chain.len()];
    for (s, t) in target.iter_mut().enumerate().take(y.num_states()) {
        *t = y.is_accepting(s);
    }
    let reach = chain.can_reach(&target);
    y.with_accepting(reach[..y.num_states()].to_vec())
        .expect("same automaton with a larger accepting set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{int, ratio};
    use crate::pbwa::PbwaBuilder;

    fn paper_sequences(prefix_len: u32) -> ApproxSequences {
        let a11 = (0..prefix_len).map(|i| vec![vec![fixtures::half_iterate(i)]]).collect();
        let a12 = (0..prefix_len).map(|i| vec![vec![fixtures::half_iterate(i)]]).collect();
        let h = ratio(1, 2);
        ApproxSequences {
            a11,
            a12,
            tail: Some(OmegaTail {
                linear: vec![vec![h.clone(), int(0)], vec![int(0), h.clone()]],
                constant: vec![ratio(1, 4), ratio(1, 4)],
                limit11: vec![vec![h.clone()]],
                limit12: vec![vec![h]],
            }),
        }
    }

    #[test]
    fn paper_witness_for_alternating_and_sink() {
        let (x, y) = fixtures::alternating_and_sink();
        let w = MatrixWitness::new(fixtures::half_witness());
        for n in 1..5 {
            let check = verify_matrix_fair_sim(&x, &y, &w, &paper_sequences(n)).unwrap();
            assert!(check.holds(), "{:?}", check.violation);
        }
    }

    #[test]
    fn search_on_alternating_and_sink() {
        let (x, y) = fixtures::alternating_and_sink();
        let w = MatrixWitness::new(fixtures::half_witness());
        let SearchOutcome::Found(s) = search_sequences(&x, &y, &w, 50).unwrap() else {
            panic!("search failed")
        };
        assert_eq!(s.bound(), Bound::Omega);
        let tail = s.tail.as_ref().unwrap();
        assert_eq!(tail.limit11, vec![vec![ratio(1, 2)]]);
        assert_eq!(tail.limit12, vec![vec![ratio(1, 2)]]);
        let l = Layout::new(&x, &y);
        let seq: Vec<Rational> = s.unfold(&l, 3).into_iter().map(|(_, a12)| a12[0][0].clone()).collect();
        assert_eq!(&seq[..3], &[int(0), ratio(3, 8), ratio(15, 32)]);
        assert!(verify_matrix_fair_sim(&x, &y, &w, &s).unwrap().holds());
    }

    #[test]
    fn zero_witness_fails_initial_vector() {
        let (x, y) = fixtures::alternating_and_sink();
        let w = MatrixWitness::zero(2, 2);
        let check = verify_matrix_fair_sim(&x, &y, &w, &paper_sequences(1)).unwrap();
        assert_eq!(check.violation.unwrap().condition, Condition::InitialVector);
    }

    #[test]
    fn wrong_limit_is_rejected() {
        let (x, y) = fixtures::alternating_and_sink();
        let w = MatrixWitness::new(fixtures::half_witness());
        let mut s = paper_sequences(2);
        s.tail.as_mut().unwrap().constant = vec![ratio(1, 8), ratio(1, 4)];
        let v = verify_matrix_fair_sim(&x, &y, &w, &s).unwrap().violation.unwrap();
        assert_eq!(v.condition, Condition::Limit);
    }

    #[test]
    fn finite_prefix_must_end_at_the_witness() {
        let (x, y) = fixtures::alternating_and_sink();
        let w = MatrixWitness::new(fixtures::half_witness());
        let mut s = paper_sequences(4);
        s.tail = None;
        let v = verify_matrix_fair_sim(&x, &y, &w, &s).unwrap().violation.unwrap();
        assert_eq!(v.condition, Condition::FinalElement);
    }

    #[test]
    fn split_lines_search_is_finite() {
        let (x, y) = fixtures::split_lines();
        let w = MatrixWitness::new(fixtures::split_lines_witness());
        let SearchOutcome::Found(s) = search_sequences(&x, &y, &w, 20).unwrap() else {
            panic!("search failed")
        };
        assert_eq!(s.bound(), Bound::Finite(1));
        assert!(verify_matrix_fair_sim(&x, &y, &w, &s).unwrap().holds());
    }

    #[test]
    fn unreachable_acceptance_is_inconclusive() {
        let mut b = PbwaBuilder::new(["a"]);
        b.initial("x", int(1)).accepting("x");
        b.transition("x", "a", "x", int(1)).unwrap();
        let x = b.build().unwrap();
        let mut b = PbwaBuilder::new(["a"]);
        b.initial("y", int(1));
        b.transition("y", "a", "y", int(1)).unwrap();
        let y = b.build().unwrap();
        let w = MatrixWitness::new(vec![vec![int(1)]]);
        assert!(check_forward_simulation(&x, &y, &w).unwrap().holds());
        assert!(matches!(search_sequences(&x, &y, &w, 20).unwrap(), SearchOutcome::Inconclusive(_)));
    }

    #[test]
    fn no_accepting_states_on_the_left() {
        let (_, y) = fixtures::alternating_and_sink();
        let x = y.with_accepting(vec![false, false]).unwrap();
        let n = y.num_states();
        let w = MatrixWitness::new(linalg::identity(n));
        let SearchOutcome::Found(s) = search_sequences(&x, &y, &w, 5).unwrap() else {
            panic!("search failed")
        };
        assert_eq!(s.bound(), Bound::Finite(0));
    }

    #[test]
    fn closure_examples() {
        let (_, y) = fixtures::alternating_and_sink();
        assert_eq!(accepting_closure(&y).accepting(), &[true, true]);
        let x = fixtures::leaking_chain();
        assert_eq!(accepting_closure(&x).accepting(), &[true, true, true, true, true]);
    }
}
