use fairsim::fixtures;
use fairsim::game::{build_simulation_game_with, solve_parity};
use fairsim::nbta::{
    box_op, check_fair_simulation, diamond_op, fair_sim_system, largest_fair_simulation, post_image, step,
    wedge_op, Block, Nbta, Relation, TupleRelation, BLOCK_ORDER,
};
use fairsim::random::{random_alphabet, random_nbta, random_relation, rng, NbtaParams};
use proptest::prelude::*;
use rand::Rng;

fn pair(seed: u64) -> (Nbta, Nbta) {
    let mut r = rng(seed);
    let alpha = random_alphabet(&mut r);
    let p = NbtaParams::default();
    (random_nbta(&mut r, &alpha, &p), random_nbta(&mut r, &alpha, &p))
}

fn sub_relation(seed: u64, r: &Relation) -> Relation {
    let mut g = rng(seed);
    let mut out = r.clone();
    for (a, b) in r.pairs() {
        if g.gen_bool(0.4) {
            out.remove(a, b);
        }
    }
    out
}

fn subset_of(seed: u64, s: &TupleRelation) -> TupleRelation {
    let mut g = rng(seed);
    s.iter().filter(|_| g.gen_bool(0.6)).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn step_is_monotone(seed in any::<u64>()) {
        let (x, y) = pair(seed);
        let big = random_relation(&mut rng(seed ^ 1), x.num_states(), y.num_states(), 0.6);
        let small = sub_relation(seed ^ 2, &big);
        for (bx, by) in BLOCK_ORDER {
            prop_assert!(step(&x, &y, bx, by, &small).is_subset(&step(&x, &y, bx, by, &big)));
        }
    }

    #[test]
    fn step_is_the_composed_operators(seed in any::<u64>()) {
        let (x, y) = pair(seed);
        let u = random_relation(&mut rng(seed ^ 3), x.num_states(), y.num_states(), 0.5);
        for (bx, by) in BLOCK_ORDER {
            let composed = box_op(&x, &y, bx, &diamond_op(&y, by, &wedge_op(x.alphabet(), &u)));
            // the box ranges over all of Y; restrict to the Y block
            let restricted = Relation::from_pairs(
                x.num_states(),
                y.num_states(),
                composed.pairs().filter(|&(_, b)| y.block(b) == by),
            );
            prop_assert_eq!(step(&x, &y, bx, by, &u), restricted);
        }
    }

    #[test]
    fn component_operators_are_monotone(seed in any::<u64>()) {
        let (x, y) = pair(seed);
        let big = random_relation(&mut rng(seed ^ 4), x.num_states(), y.num_states(), 0.6);
        let small = sub_relation(seed ^ 5, &big);
        let (wb, ws) = (wedge_op(x.alphabet(), &big), wedge_op(x.alphabet(), &small));
        prop_assert!(ws.is_subset(&wb));
        for block in [Block::NonAccepting, Block::Accepting] {
            let (db, ds) = (diamond_op(&y, block, &wb), diamond_op(&y, block, &ws));
            prop_assert!(ds.is_subset(&db));
            prop_assert!(box_op(&x, &y, block, &ds).is_subset(&box_op(&x, &y, block, &db)));
        }
    }

    #[test]
    fn box_is_right_adjoint_to_post_image(seed in any::<u64>()) {
        let (x, y) = pair(seed);
        let full = Relation::full(x.num_states(), y.num_states());
        let s = subset_of(seed ^ 6, &post_image(&x, &full));
        for block in [Block::NonAccepting, Block::Accepting] {
            let b = box_op(&x, &y, block, &s);
            prop_assert!(post_image(&x, &b).is_subset(&s));
            let r = random_relation(&mut rng(seed ^ 7), x.num_states(), y.num_states(), 0.5);
            let r = Relation::from_pairs(x.num_states(), y.num_states(), r.pairs().filter(|&(a, _)| x.block(a) == block));
            prop_assert_eq!(post_image(&x, &r).is_subset(&s), r.is_subset(&b));
        }
    }

    #[test]
    fn solution_is_a_fixed_point(seed in any::<u64>()) {
        let (x, y) = pair(seed);
        let sys = fair_sim_system(&x, &y).unwrap();
        let sol = sys.system().solve().unwrap();
        prop_assert!(sys.system().is_fixed_point(&sol));
    }

    #[test]
    fn fair_simulations_are_downward_closed(seed in any::<u64>()) {
        let (x, y) = pair(seed);
        if let Some(r) = largest_fair_simulation(&x, &y).unwrap() {
            prop_assert!(check_fair_simulation(&x, &y, &r).unwrap().holds());
            let smaller = sub_relation(seed ^ 8, &r);
            let initial_ok = x.initial_states().all(|a| y.initial_states().any(|b| smaller.contains(a, b)));
            prop_assert_eq!(check_fair_simulation(&x, &y, &smaller).unwrap().holds(), initial_ok);
        }
    }

    #[test]
    fn game_and_fixpoint_agree(seed in any::<u64>()) {
        let (x, y) = pair(seed);
        let sg = build_simulation_game_with(&x, &y, 3, true).unwrap();
        let sol = solve_parity(&sg.game);
        prop_assert_eq!(sg.winning_pairs(&sol), fair_sim_system(&x, &y).unwrap().solve().unwrap());
        prop_assert_eq!(sg.even_wins(&sol), largest_fair_simulation(&x, &y).unwrap().is_some());
    }

    #[test]
    fn automata_simulate_themselves(seed in any::<u64>()) {
        let (x, _) = pair(seed);
        let n = x.num_states();
        let diag = Relation::from_pairs(n, n, (0..n).map(|k| (k, k)));
        prop_assert!(check_fair_simulation(&x, &x, &diag).unwrap().holds());
    }
}

#[test]
fn fixtures_simulate_themselves() {
    let (x, y) = fixtures::b_trees_and_ring(3);
    for a in [x, y, fixtures::infinitely_many_b(), fixtures::all_words()] {
        let n = a.num_states();
        let diag = Relation::from_pairs(n, n, (0..n).map(|k| (k, k)));
        assert!(check_fair_simulation(&a, &a, &diag).unwrap().holds());
    }
}

#[test]
fn solution_operators_are_monotone_on_sampled_pairs() {
    // sampled check over at least 100 comparable pairs per system
    for seed in 0..6u64 {
        let (x, y) = pair(seed);
        let sys = fair_sim_system(&x, &y).unwrap();
        let eqs = sys.system();
        let mut g = rng(seed);
        let (nx, ny) = (x.num_states(), y.num_states());
        for _ in 0..100 {
            let big = random_relation(&mut g, nx, ny, 0.6);
            let small = sub_relation(g.gen(), &big);
            let vb: Vec<_> = (0..eqs.len()).map(|i| sys.project(i, &big)).collect();
            let vs: Vec<_> = (0..eqs.len()).map(|i| sys.project(i, &small)).collect();
            for i in 0..eqs.len() {
                assert!(eqs.evaluate(i, &vs).is_subset(&eqs.evaluate(i, &vb)));
            }
        }
    }
}
