use fairsim::game::{ParityGame, Player};
use rand::Rng;

/// Random game with `n` positions, priorities in `0..=max_priority` and up to
/// three moves per position; about one position in ten is a dead end.
pub fn random_game<R: Rng>(rng: &mut R, n: usize, max_priority: u32) -> ParityGame {
    let mut g = ParityGame::new();
    for v in 0..n {
        let owner = if rng.gen_bool(0.5) { Player::Even } else { Player::Odd };
        g.add_position(owner, rng.gen_range(0..=max_priority), format!("v{v}"));
    }
    for v in 0..n {
        if rng.gen_bool(0.1) {
            continue;
        }
        for _ in 0..rng.gen_range(1..=3) {
            g.add_move(v, rng.gen_range(0..n));
        }
    }
    g
}

/// Winner of the play from `start` when every position `v` with moves takes
/// `moves(v)[choice[v]]`. A player with no move loses.
fn play(g: &ParityGame, choice: &[usize], start: usize) -> Player {
    let mut seen = vec![usize::MAX; g.num_positions()];
    let mut path = Vec::new();
    let mut v = start;
    loop {
        if g.moves(v).is_empty() {
            return g.owner(v).opponent();
        }
        if seen[v] != usize::MAX {
            let top = path[seen[v]..].iter().map(|&w| g.priority(w)).max().expect("nonempty cycle");
            return Player::of_priority(top);
        }
        seen[v] = path.len();
        path.push(v);
        v = g.moves(v)[choice[v]];
    }
}

/// Positional strategies of `player` as choice vectors, other positions fixed at 0.
fn strategies(g: &ParityGame, player: Player) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; g.num_positions()]];
    for v in 0..g.num_positions() {
        let k = g.moves(v).len();
        if g.owner(v) != player || k <= 1 {
            continue;
        }
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..k).map(move |c| {
                    let mut s = s.clone();
                    s[v] = c;
                    s
                })
            })
            .collect();
    }
    out
}

/// Winners by exhaustive search over positional strategies of both players.
pub fn brute_force_winners(g: &ParityGame) -> Vec<Player> {
    let even = strategies(g, Player::Even);
    let odd = strategies(g, Player::Odd);
    (0..g.num_positions())
        .map(|v| {
            let even_wins = even.iter().any(|s| {
                odd.iter().all(|t| {
                    let choice: Vec<usize> = (0..g.num_positions())
                        .map(|w| if g.owner(w) == Player::Even { s[w] } else { t[w] })
                        .collect();
                    play(g, &choice, v) == Player::Even
                })
            });
            if even_wins {
                Player::Even
            } else {
                Player::Odd
            }
        })
        .collect()
}
