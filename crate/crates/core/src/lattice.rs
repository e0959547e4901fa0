//! Equational systems of mixed least/greatest fixed points over finite lattices.
//!
//! A system `u_1 =η_1 f_1(u_1..u_m), ..., u_m =η_m f_m(u_1..u_m)` is solved by
//! eliminating variables left to right (each equation is solved with the later
//! variables as parameters) and substituting the closed solutions back from
//! right to left. On finite lattices every fixed point is reached by Kleene
//! iteration, so the only failure mode is a right-hand side that is not
//! monotone, which shows up as an iteration sequence that is not a chain.

use std::fmt::Debug;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite lattice whose elements are compared by their canonical encoding (`Eq`).
pub trait FiniteLattice {
    type Elem: Clone + Eq + Debug;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Every element of the lattice. Only sensible for small lattices.
    fn elements(&self) -> Vec<Self::Elem>;
}

/// The powerset lattice of `{0, .., size-1}` ordered by inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowersetLattice {
    size: usize,
}

impl PowersetLattice {
    pub fn new(size: usize) -> Self {
        Self { size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn from_indices(&self, indices: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        for i in indices {
            set.insert(i);
        }
        set
    }
}

impl FiniteLattice for PowersetLattice {
    type Elem = FixedBitSet;

    fn bottom(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.size)
    }

    fn top(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert_range(..);
        set
    }

    fn leq(&self, a: &FixedBitSet, b: &FixedBitSet) -> bool {
        a.is_subset(b)
    }

    fn join(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = a.clone();
        out.union_with(b);
        out
    }

    fn meet(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut out = a.clone();
        out.intersect_with(b);
        out
    }

    fn elements(&self) -> Vec<FixedBitSet> {
        assert!(self.size < 20, "powerset of {} elements is too large to enumerate", self.size);
        (0u32..(1u32 << self.size))
            .map(|mask| self.from_indices((0..self.size).filter(|i| mask & (1 << i) != 0)))
            .collect()
    }
}

/// Fixed-point sign of an equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    /// Least fixed point.
    Mu,
    /// Greatest fixed point.
    Nu,
}

/// Which extremal fixed point [`kleene_fixpoint`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixpointMode {
    Least,
    Greatest,
}

impl From<Sign> for FixpointMode {
    fn from(sign: Sign) -> Self {
        match sign {
            Sign::Mu => FixpointMode::Least,
            Sign::Nu => FixpointMode::Greatest,
        }
    }
}

/// Kleene iteration from bottom (least) or top (greatest).
///
/// Fails with [`Error::MonotonicityViolation`] when an iterate is not comparable
/// to its predecessor in the expected direction.
pub fn kleene_fixpoint<L, F>(lattice: &L, f: F, mode: FixpointMode) -> Result<L::Elem>
where
    L: FiniteLattice,
    F: Fn(&L::Elem) -> L::Elem,
{
    iterate(lattice, mode, None, |x| Ok(f(x)))
}

fn iterate<L, F>(lattice: &L, mode: FixpointMode, variable: Option<usize>, mut f: F) -> Result<L::Elem>
where
    L: FiniteLattice,
    F: FnMut(&L::Elem) -> Result<L::Elem>,
{
    let mut current = match mode {
        FixpointMode::Least => lattice.bottom(),
        FixpointMode::Greatest => lattice.top(),
    };
    loop {
        let next = f(&current)?;
        if next == current {
            return Ok(current);
        }
        let is_chain = match mode {
            FixpointMode::Least => lattice.leq(&current, &next),
            FixpointMode::Greatest => lattice.leq(&next, &current),
        };
        if !is_chain {
            return Err(Error::MonotonicityViolation { variable });
        }
        current = next;
    }
}

type Rhs<'a, E> = Box<dyn Fn(&[E]) -> E + Send + Sync + 'a>;

pub struct Equation<'a, L: FiniteLattice> {
    pub lattice: L,
    pub sign: Sign,
    rhs: Rhs<'a, L::Elem>,
}

/// An ordered list of equations `u_i =η_i f_i(u_1, .., u_m)`.
///
/// All variables share one element type; each has its own lattice instance.
pub struct EquationalSystem<'a, L: FiniteLattice> {
    equations: Vec<Equation<'a, L>>,
}

/// One value per variable, in equation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<E> {
    pub values: Vec<E>,
}

impl<'a, L: FiniteLattice> Default for EquationalSystem<'a, L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<'a, L: FiniteLattice> EquationalSystem<'a, L> {
    pub fn new() -> Self {
        Self {
            equations: Vec::new(),
        }
    }

    /// Appends an equation and returns the index of its variable.
    pub fn push<F>(&mut self, lattice: L, sign: Sign, rhs: F) -> usize
    where
        F: Fn(&[L::Elem]) -> L::Elem + Send + Sync + 'a,
    {
        self.equations.push(Equation {
            lattice,
            sign,
            rhs: Box::new(rhs),
        });
        self.equations.len() - 1
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equation(&self, i: usize) -> &Equation<'a, L> {
        &self.equations[i]
    }

    /// Evaluates the right-hand side of equation `i` at `values`.
    pub fn evaluate(&self, i: usize, values: &[L::Elem]) -> L::Elem {
        (self.equations[i].rhs)(values)
    }

    /// Computes the unique solution.
    pub fn solve(&self) -> Result<Solution<L::Elem>> {
        let mut values: Vec<L::Elem> = self.equations.iter().map(|eq| eq.lattice.bottom()).collect();
        self.solve_prefix(self.equations.len(), &mut values)?;
        Ok(Solution { values })
    }

    // Solves the first `k` equations with `values[k..]` held fixed. Equation
    // `k-1` is the outermost fixed point of the prefix; for each candidate
    // value of it the inner prefix is re-solved, which realizes the interim
    // solutions of the elimination order.
    fn solve_prefix(&self, k: usize, values: &mut Vec<L::Elem>) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let i = k - 1;
        let eq = &self.equations[i];
        let fixed = iterate(&eq.lattice, eq.sign.into(), Some(i), |x| {
            values[i] = x.clone();
            self.solve_prefix(i, values)?;
            Ok((eq.rhs)(values))
        })?;
        // The last evaluation was at `fixed`, so the inner values match it.
        values[i] = fixed;
        Ok(())
    }

    /// Exact fixed-point recheck: every value equals its right-hand side.
    pub fn is_fixed_point(&self, solution: &Solution<L::Elem>) -> bool {
        solution.values.len() == self.equations.len()
            && (0..self.equations.len()).all(|i| self.evaluate(i, &solution.values) == solution.values[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> PowersetLattice {
        PowersetLattice::new(1)
    }

    #[test]
    fn kleene_examples_on_powerset_of_two() {
        let lat = PowersetLattice::new(2);
        let one = lat.from_indices([0]);

        let lfp = kleene_fixpoint(&lat, |s| lat.join(s, &one), FixpointMode::Least).unwrap();
        assert_eq!(lfp, one);

        let gfp = kleene_fixpoint(&lat, |s| lat.meet(s, &one), FixpointMode::Greatest).unwrap();
        assert_eq!(gfp, one);

        let id = kleene_fixpoint(&lat, |s| s.clone(), FixpointMode::Least).unwrap();
        assert_eq!(id, lat.bottom());
    }

    #[test]
    fn least_below_greatest() {
        let lat = PowersetLattice::new(3);
        let f = |s: &FixedBitSet| {
            let mut out = s.clone();
            if s.contains(0) {
                out.insert(1);
            }
            out
        };
        let lo = kleene_fixpoint(&lat, f, FixpointMode::Least).unwrap();
        let hi = kleene_fixpoint(&lat, f, FixpointMode::Greatest).unwrap();
        assert!(lat.leq(&lo, &hi));
        assert_eq!(hi, lat.top());
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let lat = PowersetLattice::new(1);
        // complement: bottom -> top -> bottom, never a chain in both steps
        let flip = |s: &FixedBitSet| {
            let mut out = lat.top();
            out.difference_with(s);
            out
        };
        let err = kleene_fixpoint(&lat, flip, FixpointMode::Least).unwrap_err();
        assert!(matches!(err, Error::MonotonicityViolation { .. }));
    }

    #[test]
    fn order_of_equations_matters() {
        // (u =mu v, v =nu u)
        let mut sys = EquationalSystem::new();
        sys.push(two_point(), Sign::Mu, |v: &[FixedBitSet]| v[1].clone());
        sys.push(two_point(), Sign::Nu, |v: &[FixedBitSet]| v[0].clone());
        let sol = sys.solve().unwrap();
        assert_eq!(sol.values, vec![two_point().top(), two_point().top()]);
        assert!(sys.is_fixed_point(&sol));

        // (v =nu u, u =mu v): variable 0 is v, variable 1 is u
        let mut sys = EquationalSystem::new();
        sys.push(two_point(), Sign::Nu, |v: &[FixedBitSet]| v[1].clone());
        sys.push(two_point(), Sign::Mu, |v: &[FixedBitSet]| v[0].clone());
        let sol = sys.solve().unwrap();
        assert_eq!(sol.values, vec![two_point().bottom(), two_point().bottom()]);
        assert!(sys.is_fixed_point(&sol));
    }

    #[test]
    fn single_nu_identity_is_top() {
        let mut sys = EquationalSystem::new();
        sys.push(two_point(), Sign::Nu, |v: &[FixedBitSet]| v[0].clone());
        assert_eq!(sys.solve().unwrap().values, vec![two_point().top()]);
    }

    #[test]
    fn violation_reports_variable() {
        let lat = two_point();
        let mut sys = EquationalSystem::new();
        sys.push(lat, Sign::Nu, |v: &[FixedBitSet]| v[0].clone());
        sys.push(lat, Sign::Mu, move |v: &[FixedBitSet]| {
            let mut out = lat.top();
            out.difference_with(&v[1]);
            out
        });
        assert_eq!(
            sys.solve().unwrap_err(),
            Error::MonotonicityViolation { variable: Some(1) }
        );
    }

    #[test]
    fn powerset_lattice_laws() {
        let lat = PowersetLattice::new(3);
        let all = lat.elements();
        assert_eq!(all.len(), 8);
        for a in &all {
            assert!(lat.leq(&lat.bottom(), a) && lat.leq(a, &lat.top()));
            for b in &all {
                let j = lat.join(a, b);
                let m = lat.meet(a, b);
                assert!(lat.leq(a, &j) && lat.leq(b, &j));
                assert!(lat.leq(&m, a) && lat.leq(&m, b));
                if lat.leq(a, b) && lat.leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if lat.leq(a, c) && lat.leq(b, c) {
                        assert!(lat.leq(&j, c));
                    }
                    if lat.leq(c, a) && lat.leq(c, b) {
                        assert!(lat.leq(c, &m));
                    }
                }
            }
        }
    }
}
