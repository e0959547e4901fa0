use fairsim::fixtures;
use fairsim::nbta::{Nbta, RankedAlphabet};
use fairsim::oracle::{
    cylinder_inclusion, nbw_inclusion_bounded, nbw_lasso_member, prefix_realizable, tree_prefix_inclusion, LassoWord,
};
use fairsim::random::{random_alphabet, random_nbta, random_pbwa, rng, NbtaParams, PbwaParams};
use proptest::prelude::*;

fn unary() -> RankedAlphabet {
    RankedAlphabet::new([("a", 1), ("b", 1)]).unwrap()
}

/// Every run of `x` over `word` from `start`, as its state sequence.
fn runs(x: &Nbta, start: usize, word: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![start]];
    for &letter in word {
        out = out
            .into_iter()
            .flat_map(|run| {
                let last = *run.last().unwrap();
                x.transitions(last)
                    .iter()
                    .filter(move |t| t.symbol == letter)
                    .map(move |t| {
                        let mut r = run.clone();
                        r.push(t.children[0]);
                        r
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Membership by enumerating runs over the stem followed by `2·|X|` copies of
/// the loop, looking for two equal loop-boundary states with an accepting visit
/// in between.
fn brute_member(x: &Nbta, w: &LassoWord) -> bool {
    let n = x.num_states();
    let unroll = 2 * n.max(1);
    // segment[p][q] = Some(accepting visited) for some run p -v-> q
    let mut segment = vec![vec![None::<bool>; n]; n];
    for p in 0..n {
        for run in runs(x, p, w.cycle()) {
            let q = *run.last().unwrap();
            let acc = run[1..].iter().any(|&s| x.is_accepting(s));
            let cell = &mut segment[p][q];
            *cell = Some(cell.unwrap_or(false) || acc);
        }
    }
    let mut starts: Vec<usize> = x
        .initial_states()
        .flat_map(|s| runs(x, s, w.stem()))
        .map(|r| *r.last().unwrap())
        .collect();
    starts.sort_unstable();
    starts.dedup();

    // boundary sequences with the accepting flag of each segment
    fn extend(segment: &[Vec<Option<bool>>], seq: &mut Vec<usize>, flags: &mut Vec<bool>, left: usize) -> bool {
        let last = *seq.last().unwrap();
        for i in 0..seq.len() - 1 {
            if seq[i] == last && flags[i..].iter().any(|&f| f) {
                return true;
            }
        }
        if left == 0 {
            return false;
        }
        for (q, cell) in segment[last].iter().enumerate() {
            if let Some(acc) = *cell {
                seq.push(q);
                flags.push(acc);
                let found = extend(segment, seq, flags, left - 1);
                seq.pop();
                flags.pop();
                if found {
                    return true;
                }
            }
        }
        false
    }
    starts.into_iter().any(|s| extend(&segment, &mut vec![s], &mut Vec::new(), unroll))
}

fn all_lassos(k: usize, max_stem: usize, max_loop: usize) -> Vec<LassoWord> {
    let mut out = Vec::new();
    for sl in 0..=max_stem {
        for stem in fairsim::oracle::words_of_length(k, sl) {
            for ll in 1..=max_loop {
                for cycle in fairsim::oracle::words_of_length(k, ll) {
                    out.push(LassoWord::new(stem.clone(), cycle).unwrap());
                }
            }
        }
    }
    out
}

fn small_params() -> NbtaParams {
    NbtaParams {
        max_states: 3,
        density: 0.35,
        ..NbtaParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn lasso_membership_matches_run_enumeration(seed in any::<u64>()) {
        let x = random_nbta(&mut rng(seed), &unary(), &small_params());
        for w in all_lassos(2, 3, 3) {
            prop_assert_eq!(nbw_lasso_member(&x, &w).unwrap(), brute_member(&x, &w), "{:?}", w);
        }
    }

    #[test]
    fn lasso_counterexamples_survive_larger_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_nbta(&mut r, &unary(), &small_params());
        let y = random_nbta(&mut r, &unary(), &small_params());
        let mut found = false;
        for bound in 1..=3 {
            let cex = nbw_inclusion_bounded(&x, &y, bound, bound).unwrap();
            prop_assert!(!found || cex.is_some());
            if let Some(w) = cex {
                found = true;
                prop_assert!(brute_member(&x, &w));
                prop_assert!(!brute_member(&y, &w));
            }
        }
    }

    #[test]
    fn prefix_counterexamples_survive_deeper_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = random_alphabet(&mut r);
        let x = random_nbta(&mut r, &sigma, &small_params());
        let y = random_nbta(&mut r, &sigma, &small_params());
        let mut found = false;
        for depth in 1..=3 {
            let cex = tree_prefix_inclusion(&x, &y, depth, 3).unwrap();
            prop_assert!(!found || cex.is_some());
            if let Some(t) = cex {
                found = true;
                prop_assert!(t.is_well_formed(&sigma, depth));
                prop_assert!(prefix_realizable(&x, &t));
                prop_assert!(!prefix_realizable(&y, &t));
            }
        }
    }

    #[test]
    fn cylinder_counterexamples_survive_longer_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let params = PbwaParams { max_letters: 2, ..PbwaParams::default() };
        let x = random_pbwa(&mut r, &params);
        let mut y = random_pbwa(&mut r, &params);
        while y.letters() != x.letters() {
            y = random_pbwa(&mut r, &params);
        }
        let mut found = false;
        for len in 0..=4 {
            let cex = cylinder_inclusion(&x, &y, len).unwrap();
            prop_assert!(!found || cex.is_some());
            if let Some(w) = cex {
                found = true;
                prop_assert!(w.len() <= len);
                prop_assert!(x.cylinder_prob(&w).unwrap() > y.cylinder_prob(&w).unwrap());
            }
        }
    }
}

#[test]
fn brute_force_agrees_on_fixtures() {
    let inf_b = fixtures::infinitely_many_b();
    let all = fixtures::all_words();
    for w in all_lassos(2, 3, 3) {
        assert_eq!(nbw_lasso_member(&inf_b, &w).unwrap(), brute_member(&inf_b, &w));
        assert!(brute_member(&all, &w));
        assert_eq!(brute_member(&inf_b, &w), w.cycle().contains(&1));
    }
}
