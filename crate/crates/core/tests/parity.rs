use fairsim::game::{solve_parity, validate_progress_measure, ParityGame, Player};
use proptest::prelude::*;

// Zielonka's recursive algorithm on a total game. Dead ends are first routed
// to a sink that the stuck player loses.
struct Total {
    owner: Vec<Player>,
    priority: Vec<u32>,
    moves: Vec<Vec<usize>>,
}

fn totalize(g: &ParityGame) -> Total {
    let n = g.num_positions();
    let mut t = Total {
        owner: (0..n).map(|v| g.owner(v)).collect(),
        priority: (0..n).map(|v| g.priority(v)).collect(),
        moves: (0..n).map(|v| g.moves(v).to_vec()).collect(),
    };
    let sink_even = n; // Even wins here
    let sink_odd = n + 1;
    t.owner.extend([Player::Even, Player::Even]);
    t.priority.extend([0, 1]);
    t.moves.push(vec![sink_even]);
    t.moves.push(vec![sink_odd]);
    for v in 0..n {
        if t.moves[v].is_empty() {
            t.moves[v].push(if t.owner[v] == Player::Even { sink_odd } else { sink_even });
        }
    }
    t
}

fn attractor(t: &Total, alive: &[bool], target: &[bool], player: Player) -> Vec<bool> {
    let mut attr = target.to_vec();
    loop {
        let mut changed = false;
        for v in 0..alive.len() {
            if !alive[v] || attr[v] {
                continue;
            }
            let succ = t.moves[v].iter().filter(|&&w| alive[w]);
            let pull = if t.owner[v] == player {
                succ.clone().any(|&w| attr[w])
            } else {
                succ.clone().all(|&w| attr[w])
            };
            if pull {
                attr[v] = true;
                changed = true;
            }
        }
        if !changed {
            return attr;
        }
    }
}

fn zielonka(t: &Total, alive: &[bool]) -> Vec<bool> {
    // returns Even's winning set within `alive`
    let n = alive.len();
    let Some(d) = (0..n).filter(|&v| alive[v]).map(|v| t.priority[v]).max() else {
        return vec![false; n];
    };
    let p = if d % 2 == 0 { Player::Even } else { Player::Odd };
    let top: Vec<bool> = (0..n).map(|v| alive[v] && t.priority[v] == d).collect();
    let a = attractor(t, alive, &top, p);
    let rest: Vec<bool> = (0..n).map(|v| alive[v] && !a[v]).collect();
    let even_rest = zielonka(t, &rest);
    // positions of `rest` won by the opponent of p
    let opp_rest: Vec<bool> = (0..n)
        .map(|v| rest[v] && (even_rest[v] == (p == Player::Odd)))
        .collect();
    if !opp_rest.iter().any(|&b| b) {
        return (0..n).map(|v| alive[v] && p == Player::Even).collect();
    }
    let b = attractor(t, alive, &opp_rest, p.opponent());
    let rest2: Vec<bool> = (0..n).map(|v| alive[v] && !b[v]).collect();
    let even2 = zielonka(t, &rest2);
    (0..n)
        .map(|v| {
            if b[v] {
                p.opponent() == Player::Even
            } else {
                even2[v]
            }
        })
        .collect()
}

fn oracle_winners(g: &ParityGame) -> Vec<Player> {
    let t = totalize(g);
    let alive = vec![true; t.owner.len()];
    let even = zielonka(&t, &alive);
    (0..g.num_positions())
        .map(|v| if even[v] { Player::Even } else { Player::Odd })
        .collect()
}

fn arb_game() -> impl Strategy<Value = ParityGame> {
    (1usize..9).prop_flat_map(|n| {
        (
            prop::collection::vec((any::<bool>(), 0u32..5), n),
            prop::collection::vec(prop::collection::vec(0..n, 0..3), n),
        )
            .prop_map(|(pos, moves)| {
                let mut g = ParityGame::new();
                for (k, (even, p)) in pos.iter().enumerate() {
                    let owner = if *even { Player::Even } else { Player::Odd };
                    g.add_position(owner, *p, format!("v{k}"));
                }
                for (v, ws) in moves.iter().enumerate() {
                    for &w in ws {
                        g.add_move(v, w);
                    }
                }
                g
            })
    })
}

// Follows Even's strategy from `v` against every Odd choice and checks that
// each reachable cycle has an even maximum.
fn strategy_wins(g: &ParityGame, strategy: &[Option<usize>], region: &[bool]) -> bool {
    let n = g.num_positions();
    let succ = |v: usize| -> Vec<usize> {
        match g.owner(v) {
            Player::Even => strategy[v].into_iter().collect(),
            Player::Odd => g.moves(v).to_vec(),
        }
    };
    for v in 0..n {
        if !region[v] {
            continue;
        }
        if g.owner(v) == Player::Even && strategy[v].is_none() {
            return false;
        }
        if succ(v).iter().any(|&w| !region[w]) {
            return false;
        }
    }
    // an odd-max cycle exists iff some odd-priority node reaches itself
    // through nodes of priority at most its own
    for v in (0..n).filter(|&v| region[v] && g.priority(v) % 2 == 1) {
        let p = g.priority(v);
        let mut seen = vec![false; n];
        let mut stack = succ(v);
        while let Some(w) = stack.pop() {
            if w == v {
                return false;
            }
            if seen[w] || g.priority(w) > p {
                continue;
            }
            seen[w] = true;
            stack.extend(succ(w));
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn solver_agrees_with_recursive_algorithm(g in arb_game()) {
        let sol = solve_parity(&g);
        prop_assert_eq!(&sol.winner, &oracle_winners(&g));
    }

    #[test]
    fn solver_output_is_certified(g in arb_game()) {
        let sol = solve_parity(&g);
        prop_assert!(validate_progress_measure(&g, &sol.measure).unwrap());
        let region: Vec<bool> = sol.winner.iter().map(|&w| w == Player::Even).collect();
        prop_assert!(strategy_wins(&g, &sol.strategy, &region));
    }
}
