//! Line-oriented text formats for automata, relations and witness matrices.
//!
//! Every format is whitespace-separated with `#` comments. Identifiers are
//! arbitrary UTF-8 without whitespace or `#`.
//!
//! ```text
//! nbta                      pbwa
//! alphabet a:2 b:2          alphabet a b
//! states x1 x2              states x1 x2
//! initial x1                initial x1 1/2
//! accepting x2              accepting x2
//! trans x1 a x1 x1          trans x1 a x2 1/3
//! ```
//!
//! A relation file lists `pair x y` lines. A matrix file lists `row y x=p/q …`
//! lines (absent entries are zero) and optionally approximation sequences:
//! `seq11 i [y x=p/q …]` and `seq12 i [y x=p/q …]` give rows of element `i`,
//! `limit11`/`limit12` rows give the limit pair of an infinite tail and
//! `tail 11|12 y x const=p/q [11|12:y':x'=p/q …]` gives one row of the affine
//! continuation map.

use std::fs;
use std::path::Path;

use fairsim::error::{Error, Result};
use fairsim::fairsim_prob::{ApproxSequences, Layout, MatrixWitness, OmegaTail};
use fairsim::linalg::{self, Matrix, Rational};
use fairsim::nbta::{Nbta, RankedAlphabet, Relation, Tuple};
use fairsim::pbwa::Pbwa;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Nbta,
    Pbwa,
}

#[derive(Clone, Debug)]
pub enum Automaton {
    Nbta(Nbta),
    Pbwa(Pbwa),
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Source<'a> {
    path: &'a str,
    lines: Vec<Vec<Token<'a>>>,
}

impl<'a> Source<'a> {
    fn new(path: &'a str, text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, line)| tokenize(line, i + 1))
            .filter(|toks| !toks.is_empty())
            .collect();
        Self { path, lines }
    }

    fn error(&self, tok: &Token, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_string(),
            line: tok.line,
            column: tok.column,
            message: message.into(),
        }
    }

    /// Checks the header line and returns the remaining lines.
    fn body(&self, header: &str) -> Result<&[Vec<Token<'a>>]> {
        match self.lines.first() {
            Some(first) if first[0].text == header && first.len() == 1 => Ok(&self.lines[1..]),
            Some(first) => Err(self.error(&first[0], format!("expected header `{header}`"))),
            None => Err(Error::Parse {
                path: self.path.to_string(),
                line: 1,
                column: 1,
                message: format!("empty file, expected header `{header}`"),
            }),
        }
    }

    fn rational(&self, tok: &Token) -> Result<Rational> {
        let p: Rational = tok
            .text
            .parse()
            .map_err(|_| self.error(tok, format!("`{}` is not a rational p/q", tok.text)))?;
        if p.is_negative() {
            return Err(self.error(tok, format!("negative value {p}")));
        }
        Ok(p)
    }

    fn lookup(&self, names: &[String], tok: &Token, what: &str) -> Result<usize> {
        names
            .iter()
            .position(|n| n == tok.text)
            .ok_or_else(|| self.error(tok, format!("unknown {what} `{}`", tok.text)))
    }

    fn arg(&self, line: &[Token<'a>], i: usize, what: &str) -> Result<Token<'a>> {
        line.get(i)
            .copied()
            .ok_or_else(|| self.error(&line[0], format!("`{}` expects {what}", line[0].text)))
    }

    fn exact_len(&self, line: &[Token], len: usize) -> Result<()> {
        match line.get(len) {
            Some(extra) => Err(self.error(extra, "unexpected trailing token")),
            None => Ok(()),
        }
    }

    fn semantic(&self, e: Error) -> Error {
        match e {
            Error::Validation(m) => Error::Validation(format!("{}: {m}", self.path)),
            Error::DimensionMismatch(m) => Error::DimensionMismatch(format!("{}: {m}", self.path)),
            other => other,
        }
    }
}

fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let body = line.find('#').map_or(line, |k| &line[..k]);
    let mut out = Vec::new();
    let mut start = None;
    for (off, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..off],
                    line: number,
                    column: body[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(off),
            _ => {}
        }
    }
    out
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn declare_states<'a>(src: &Source, states: &mut Vec<String>, line: &[Token<'a>]) -> Result<()> {
    for tok in &line[1..] {
        if states.iter().any(|s| s == tok.text) {
            return Err(src.error(tok, format!("state `{}` declared twice", tok.text)));
        }
        states.push(tok.text.to_string());
    }
    Ok(())
}

pub fn parse_nbta(text: &str, path: &str) -> Result<Nbta> {
    let src = Source::new(path, text);
    let mut alphabet: Option<RankedAlphabet> = None;
    let mut states: Vec<String> = Vec::new();
    let mut initial = Vec::new();
    let mut accepting = Vec::new();
    let mut trans: Vec<(usize, Tuple)> = Vec::new();
    for line in src.body("nbta")? {
        let key = &line[0];
        match key.text {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(src.error(key, "alphabet declared twice"));
                }
                let mut symbols = Vec::new();
                for tok in &line[1..] {
                    let (name, arity) = tok
                        .text
                        .rsplit_once(':')
                        .ok_or_else(|| src.error(tok, "expected symbol:arity"))?;
                    let arity: usize = arity
                        .parse()
                        .map_err(|_| src.error(tok, format!("invalid arity `{arity}`")))?;
                    symbols.push((name.to_string(), arity));
                }
                alphabet = Some(RankedAlphabet::new(symbols).map_err(|e| src.semantic(e))?);
            }
            "states" => declare_states(&src, &mut states, line)?,
            "initial" => {
                for tok in &line[1..] {
                    initial.push(src.lookup(&states, tok, "state")?);
                }
            }
            "accepting" => {
                for tok in &line[1..] {
                    accepting.push(src.lookup(&states, tok, "state")?);
                }
            }
            "trans" => {
                let sigma = alphabet
                    .as_ref()
                    .ok_or_else(|| src.error(key, "`trans` before `alphabet`"))?;
                let from = src.lookup(&states, &src.arg(line, 1, "a state")?, "state")?;
                let sym_tok = src.arg(line, 2, "a symbol")?;
                let symbol = sigma
                    .index(sym_tok.text)
                    .ok_or_else(|| src.error(&sym_tok, format!("unknown symbol `{}`", sym_tok.text)))?;
                let children = line[3..]
                    .iter()
                    .map(|tok| src.lookup(&states, tok, "state"))
                    .collect::<Result<Vec<_>>>()?;
                if children.len() != sigma.arity(symbol) {
                    return Err(Error::Validation(format!(
                        "{path}:{}:{}: arity violation: `{}` has arity {} but {} children are given",
                        key.line,
                        key.column,
                        sym_tok.text,
                        sigma.arity(symbol),
                        children.len()
                    )));
                }
                trans.push((from, Tuple::new(symbol, children)));
            }
            other => return Err(src.error(key, format!("unknown directive `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::Validation(format!("{path}: missing `alphabet` line")))?;
    let mut delta = vec![Vec::new(); states.len()];
    for (x, t) in trans {
        delta[x].push(t);
    }
    Nbta::new(alphabet, states, delta, initial, accepting).map_err(|e| src.semantic(e))
}

pub fn parse_pbwa(text: &str, path: &str) -> Result<Pbwa> {
    let src = Source::new(path, text);
    let mut letters: Option<Vec<String>> = None;
    let mut states: Vec<String> = Vec::new();
    let mut initial: Vec<(Token, Rational)> = Vec::new();
    let mut accepting = Vec::new();
    let mut trans: Vec<(Token, usize, usize, usize, Rational)> = Vec::new();
    for line in src.body("pbwa")? {
        let key = &line[0];
        match key.text {
            "alphabet" => {
                if letters.is_some() {
                    return Err(src.error(key, "alphabet declared twice"));
                }
                letters = Some(line[1..].iter().map(|t| t.text.to_string()).collect());
            }
            "states" => declare_states(&src, &mut states, line)?,
            "initial" => {
                let tok = src.arg(line, 1, "a state")?;
                src.lookup(&states, &tok, "state")?;
                let p = src.rational(&src.arg(line, 2, "a probability")?)?;
                src.exact_len(line, 3)?;
                initial.push((tok, p));
            }
            "accepting" => {
                for tok in &line[1..] {
                    accepting.push(src.lookup(&states, tok, "state")?);
                }
            }
            "trans" => {
                let sigma = letters
                    .as_ref()
                    .ok_or_else(|| src.error(key, "`trans` before `alphabet`"))?;
                let from = src.lookup(&states, &src.arg(line, 1, "a state")?, "state")?;
                let letter = src.lookup(sigma, &src.arg(line, 2, "a letter")?, "letter")?;
                let to = src.lookup(&states, &src.arg(line, 3, "a state")?, "state")?;
                let p = src.rational(&src.arg(line, 4, "a probability")?)?;
                src.exact_len(line, 5)?;
                trans.push((*key, from, letter, to, p));
            }
            other => return Err(src.error(key, format!("unknown directive `{other}`"))),
        }
    }
    let letters = letters.ok_or_else(|| Error::Validation(format!("{path}: missing `alphabet` line")))?;
    let n = states.len();
    let mut init = vec![Rational::zero(); n];
    for (tok, p) in initial {
        let x = src.lookup(&states, &tok, "state")?;
        if !init[x].is_zero() {
            return Err(src.error(&tok, format!("initial probability of `{}` given twice", tok.text)));
        }
        init[x] = p;
    }
    let mut matrices = vec![linalg::zeros(n, n); letters.len()];
    for (tok, from, letter, to, p) in trans {
        let cell = &mut matrices[letter][from][to];
        if !cell.is_zero() {
            return Err(src.error(&tok, "transition given twice"));
        }
        *cell = p;
    }
    let mut acc = vec![false; n];
    for x in accepting {
        acc[x] = true;
    }
    Pbwa::new(letters, states, matrices, init, acc).map_err(|e| src.semantic(e))
}

pub fn parse_relation(text: &str, path: &str, x: &Nbta, y: &Nbta) -> Result<Relation> {
    let src = Source::new(path, text);
    let mut r = Relation::empty(x.num_states(), y.num_states());
    for line in &src.lines {
        let key = &line[0];
        if key.text != "pair" {
            return Err(src.error(key, format!("expected `pair`, found `{}`", key.text)));
        }
        let a = src.lookup(x.state_names(), &src.arg(line, 1, "a left state")?, "left state")?;
        let b = src.lookup(y.state_names(), &src.arg(line, 2, "a right state")?, "right state")?;
        src.exact_len(line, 3)?;
        r.insert(a, b);
    }
    Ok(r)
}

/// A witness matrix with optional approximation sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub witness: MatrixWitness,
    pub sequences: Option<ApproxSequences>,
}

/// Which block of the upper row band an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Blk {
    B11,
    B12,
}

fn block_of(text: &str) -> Option<Blk> {
    match text {
        "11" => Some(Blk::B11),
        "12" => Some(Blk::B12),
        _ => None,
    }
}

struct MatCtx<'s, 'a> {
    src: &'s Source<'a>,
    x: &'s Pbwa,
    y: &'s Pbwa,
    layout: Layout,
}

impl MatCtx<'_, '_> {
    fn cols(&self, blk: Blk) -> &[usize] {
        match blk {
            Blk::B11 => &self.layout.x1,
            Blk::B12 => &self.layout.x2,
        }
    }

    fn block_zero(&self, blk: Blk) -> Matrix {
        linalg::zeros(self.layout.y1.len(), self.cols(blk).len())
    }

    /// Row index of `tok` among the non-accepting states of `Y`.
    fn band_row(&self, tok: &Token) -> Result<usize> {
        let y = self.src.lookup(self.y.state_names(), tok, "state of the right automaton")?;
        self.layout
            .y1
            .iter()
            .position(|&r| r == y)
            .ok_or_else(|| self.src.error(tok, format!("`{}` is accepting; only non-accepting rows have sequences", tok.text)))
    }

    fn block_col(&self, blk: Blk, tok: &Token, name: &str) -> Result<usize> {
        let x = self
            .x
            .state_index(name)
            .ok_or_else(|| self.src.error(tok, format!("unknown state `{name}` of the left automaton")))?;
        self.cols(blk).iter().position(|&c| c == x).ok_or_else(|| {
            let want = if blk == Blk::B11 { "non-accepting" } else { "accepting" };
            self.src.error(tok, format!("`{name}` is not a {want} state of the left automaton"))
        })
    }

    /// Parses `name=p/q` entries into `row` of `m`, with columns resolved by `col`.
    fn entries(&self, toks: &[Token], row: &mut [Rational], col: impl Fn(&Token, &str) -> Result<usize>) -> Result<()> {
        for tok in toks {
            let (name, value) = tok
                .text
                .rsplit_once('=')
                .ok_or_else(|| self.src.error(tok, "expected state=p/q"))?;
            let c = col(tok, name)?;
            if !row[c].is_zero() {
                return Err(self.src.error(tok, format!("entry `{name}` given twice")));
            }
            let vtok = Token {
                text: value,
                column: tok.column + name.chars().count() + 1,
                ..*tok
            };
            row[c] = self.src.rational(&vtok)?;
        }
        Ok(())
    }
}

pub fn parse_matrix(text: &str, path: &str, x: &Pbwa, y: &Pbwa) -> Result<MatrixFile> {
    let src = Source::new(path, text);
    let ctx = MatCtx {
        src: &src,
        x,
        y,
        layout: Layout::new(x, y),
    };
    let mut a = linalg::zeros(y.num_states(), x.num_states());
    let mut seen_rows = vec![false; y.num_states()];
    let mut seq: [Vec<Matrix>; 2] = [Vec::new(), Vec::new()];
    let mut limits: [Option<Matrix>; 2] = [None, None];
    let dim = ctx.layout.dim();
    let mut linear = linalg::zeros(dim, dim);
    let mut constant = vec![Rational::zero(); dim];
    let mut tail_rows = vec![false; dim];
    let mut any_tail = false;

    for line in &src.lines {
        let key = &line[0];
        match key.text {
            "row" => {
                let tok = src.arg(line, 1, "a state")?;
                let r = src.lookup(y.state_names(), &tok, "state of the right automaton")?;
                if std::mem::replace(&mut seen_rows[r], true) {
                    return Err(src.error(&tok, format!("row `{}` given twice", tok.text)));
                }
                ctx.entries(&line[2..], &mut a[r], |t, name| {
                    x.state_index(name)
                        .ok_or_else(|| src.error(t, format!("unknown state `{name}` of the left automaton")))
                })?;
            }
            "seq11" | "seq12" => {
                let blk = if key.text == "seq11" { Blk::B11 } else { Blk::B12 };
                let idx_tok = src.arg(line, 1, "an element index")?;
                let idx: usize = idx_tok
                    .text
                    .parse()
                    .map_err(|_| src.error(&idx_tok, "expected an element index"))?;
                let elems = &mut seq[blk as usize];
                while elems.len() <= idx {
                    elems.push(ctx.block_zero(blk));
                }
                if let Some(row_tok) = line.get(2) {
                    let r = ctx.band_row(row_tok)?;
                    ctx.entries(&line[3..], &mut elems[idx][r], |t, name| ctx.block_col(blk, t, name))?;
                }
            }
            "limit11" | "limit12" => {
                let blk = if key.text == "limit11" { Blk::B11 } else { Blk::B12 };
                any_tail = true;
                let m = limits[blk as usize].get_or_insert_with(|| ctx.block_zero(blk));
                let r = ctx.band_row(&src.arg(line, 1, "a state")?)?;
                ctx.entries(&line[2..], &mut m[r], |t, name| ctx.block_col(blk, t, name))?;
            }
            "tail" => {
                any_tail = true;
                let btok = src.arg(line, 1, "a block 11 or 12")?;
                let blk = block_of(btok.text).ok_or_else(|| src.error(&btok, "block must be 11 or 12"))?;
                let ytok = src.arg(line, 2, "a row state")?;
                let xtok = src.arg(line, 3, "a column state")?;
                let k = coordinate(&ctx, blk, &ytok, ytok.text, &xtok, xtok.text)?;
                if std::mem::replace(&mut tail_rows[k], true) {
                    return Err(src.error(&ytok, "tail row given twice"));
                }
                for tok in &line[4..] {
                    let (lhs, value) = tok
                        .text
                        .rsplit_once('=')
                        .ok_or_else(|| src.error(tok, "expected const=p/q or blk:y:x=p/q"))?;
                    let vtok = Token {
                        text: value,
                        column: tok.column + lhs.chars().count() + 1,
                        ..*tok
                    };
                    let v = src.rational(&vtok)?;
                    if lhs == "const" {
                        constant[k] = v;
                        continue;
                    }
                    let (b, rest) = lhs
                        .split_once(':')
                        .ok_or_else(|| src.error(tok, "expected blk:y:x=p/q"))?;
                    let b = block_of(b).ok_or_else(|| src.error(tok, "block must be 11 or 12"))?;
                    let j = tail_column(&ctx, b, tok, rest)?;
                    linear[k][j] = v;
                }
            }
            other => return Err(src.error(key, format!("unknown directive `{other}`"))),
        }
    }

    let [s11, s12] = seq;
    let sequences = if s11.is_empty() && s12.is_empty() {
        if any_tail {
            return Err(Error::Validation(format!("{path}: a tail needs explicit sequence elements")));
        }
        None
    } else {
        if s11.len() != s12.len() {
            return Err(Error::Validation(format!(
                "{path}: seq11 has {} elements but seq12 has {}",
                s11.len(),
                s12.len()
            )));
        }
        let tail = any_tail.then(|| {
            let [l11, l12] = limits;
            OmegaTail {
                linear,
                constant,
                limit11: l11.unwrap_or_else(|| ctx.block_zero(Blk::B11)),
                limit12: l12.unwrap_or_else(|| ctx.block_zero(Blk::B12)),
            }
        });
        Some(ApproxSequences {
            a11: s11,
            a12: s12,
            tail,
        })
    };
    Ok(MatrixFile {
        witness: MatrixWitness::new(a),
        sequences,
    })
}

fn coordinate(ctx: &MatCtx, blk: Blk, ytok: &Token, yname: &str, xtok: &Token, xname: &str) -> Result<usize> {
    let ytok = Token { text: yname, ..*ytok };
    ctx.band_row(&ytok)?;
    ctx.block_col(blk, xtok, xname)?;
    let yi = ctx.y.state_index(yname).expect("checked");
    let xi = ctx.x.state_index(xname).expect("checked");
    Ok(ctx.layout.coord_of(yi, xi).expect("row in the band"))
}

/// Resolves `y:x` where either name may itself contain `:`.
fn tail_column(ctx: &MatCtx, blk: Blk, tok: &Token, rest: &str) -> Result<usize> {
    for (k, _) in rest.match_indices(':') {
        let (yname, xname) = (&rest[..k], &rest[k + 1..]);
        if ctx.y.state_index(yname).is_some() && ctx.x.state_index(xname).is_some() {
            return coordinate(ctx, blk, tok, yname, tok, xname);
        }
    }
    Err(ctx.src.error(tok, format!("cannot resolve `{rest}` as y:x")))
}

pub fn print_nbta(x: &Nbta) -> String {
    let sigma = x.alphabet();
    let mut out = String::from("nbta\n");
    let symbols: Vec<String> = sigma.iter().map(|(s, a)| format!("{s}:{a}")).collect();
    out += &format!("alphabet {}\n", symbols.join(" "));
    out += &format!("states {}\n", x.state_names().join(" "));
    let names = |it: &mut dyn Iterator<Item = usize>| -> String {
        it.map(|s| format!(" {}", x.state_name(s))).collect()
    };
    out += &format!("initial{}\n", names(&mut x.initial_states()));
    out += &format!("accepting{}\n", names(&mut x.accepting_states()));
    for s in 0..x.num_states() {
        for t in x.transitions(s) {
            out += &format!("trans {} {}{}\n", x.state_name(s), sigma.name(t.symbol), names(&mut t.children.iter().copied()));
        }
    }
    out
}

pub fn print_pbwa(x: &Pbwa) -> String {
    let mut out = String::from("pbwa\n");
    out += &format!("alphabet {}\n", x.letters().join(" "));
    out += &format!("states {}\n", x.state_names().join(" "));
    for (s, p) in x.initial().iter().enumerate() {
        if !p.is_zero() {
            out += &format!("initial {} {p}\n", x.state_name(s));
        }
    }
    let acc: String = (0..x.num_states())
        .filter(|&s| x.is_accepting(s))
        .map(|s| format!(" {}", x.state_name(s)))
        .collect();
    out += &format!("accepting{acc}\n");
    for s in 0..x.num_states() {
        for (a, m) in x.matrices().iter().enumerate() {
            for (t, p) in m[s].iter().enumerate() {
                if !p.is_zero() {
                    out += &format!("trans {} {} {} {p}\n", x.state_name(s), x.letters()[a], x.state_name(t));
                }
            }
        }
    }
    out
}

pub fn print_relation(r: &Relation, x: &Nbta, y: &Nbta) -> String {
    r.pairs()
        .map(|(a, b)| format!("pair {} {}\n", x.state_name(a), y.state_name(b)))
        .collect()
}

fn entries(row: &[Rational], name: impl Fn(usize) -> String) -> String {
    row.iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(c, p)| format!(" {}={p}", name(c)))
        .collect()
}

pub fn print_matrix(x: &Pbwa, y: &Pbwa, file: &MatrixFile) -> String {
    let layout = Layout::new(x, y);
    let mut out = String::new();
    for (r, row) in file.witness.a.iter().enumerate() {
        out += &format!("row {}{}\n", y.state_name(r), entries(row, |c| x.state_name(c).to_string()));
    }
    let Some(seqs) = &file.sequences else {
        return out;
    };
    let band = |key: &str, m: &Matrix, cols: &[usize], prefix: &str| -> String {
        let mut s = String::new();
        for (i, row) in m.iter().enumerate() {
            let body = entries(row, |c| x.state_name(cols[c]).to_string());
            if !body.is_empty() {
                s += &format!("{key}{prefix} {}{body}\n", y.state_name(layout.y1[i]));
            }
        }
        s
    };
    for (key, elems, cols) in [("seq11", &seqs.a11, &layout.x1), ("seq12", &seqs.a12, &layout.x2)] {
        for (i, m) in elems.iter().enumerate() {
            let rows = band(key, m, cols, &format!(" {i}"));
            out += &if rows.is_empty() { format!("{key} {i}\n") } else { rows };
        }
    }
    if let Some(t) = &seqs.tail {
        out += &band("limit11", &t.limit11, &layout.x1, "");
        out += &band("limit12", &t.limit12, &layout.x2, "");
        let n11 = layout.y1.len() * layout.x1.len();
        let coord_name = |k: usize| {
            let (yi, xi) = layout.coord_entry(k);
            let blk = if k < n11 { "11" } else { "12" };
            (blk, y.state_name(yi), x.state_name(xi))
        };
        for k in 0..layout.dim() {
            let (blk, yn, xn) = coord_name(k);
            let coeffs = entries(&t.linear[k], |j| {
                let (b, yj, xj) = coord_name(j);
                format!("{b}:{yj}:{xj}")
            });
            out += &format!("tail {blk} {yn} {xn} const={}{coeffs}\n", t.constant[k]);
        }
    }
    out
}

pub fn parse_automaton(path: &Path, kind: Kind) -> Result<Automaton> {
    let text = read(path)?;
    let name = path.display().to_string();
    Ok(match kind {
        Kind::Nbta => Automaton::Nbta(parse_nbta(&text, &name)?),
        Kind::Pbwa => Automaton::Pbwa(parse_pbwa(&text, &name)?),
    })
}

pub fn read_nbta(path: &Path) -> Result<Nbta> {
    parse_nbta(&read(path)?, &path.display().to_string())
}

pub fn read_pbwa(path: &Path) -> Result<Pbwa> {
    parse_pbwa(&read(path)?, &path.display().to_string())
}

pub fn read_relation(path: &Path, x: &Nbta, y: &Nbta) -> Result<Relation> {
    parse_relation(&read(path)?, &path.display().to_string(), x, y)
}

pub fn read_matrix(path: &Path, x: &Pbwa, y: &Pbwa) -> Result<MatrixFile> {
    parse_matrix(&read(path)?, &path.display().to_string(), x, y)
}
