//! Möbius inversion over the subset lattice (Harsanyi dividends).

use crate::coalition::{all_coalitions, Coalition, PlayerSet};
use crate::error::Result;
use crate::game::Game;
use crate::scalar::Scalar;

/// Butterfly pass shared by the zeta transform and its inverse.
fn subset_pass<S: Scalar>(xs: &mut [S], combine: impl Fn(&S, &S) -> S) {
    let len = xs.len();
    let mut bit = 1;
    while bit < len {
        for mask in 0..len {
            if mask & bit != 0 {
                xs[mask] = combine(&xs[mask], &xs[mask ^ bit]);
            }
        }
        bit <<= 1;
    }
}

/// Dividends `d(C)` with `v = Σ_C d(C)·u_C`, indexed by coalition bits.
pub fn mobius_transform<S: Scalar>(game: &Game<S>) -> Vec<S> {
    let mut d = game.worth_table().to_vec();
    subset_pass(&mut d, |a, b| a.clone() - b.clone());
    d
}

/// Rebuilds worths from dividends: `v(S) = Σ_{C⊆S} d(C)`.
pub fn from_dividends<S: Scalar>(players: PlayerSet, dividends: &[S]) -> Result<Game<S>> {
    let mut worth = dividends.to_vec();
    subset_pass(&mut worth, |a, b| a.clone() + b.clone());
    Game::new(players, worth)
}

/// Non-zero dividends in increasing coalition order.
pub fn nonzero_dividends<S: Scalar>(game: &Game<S>) -> Vec<(Coalition, S)> {
    let d = mobius_transform(game);
    all_coalitions(game.n())
        .zip(d)
        .filter(|(_, x)| !x.is_close_to_zero())
        .collect()
}

/// Whether reconstruction from dividends reproduces the game.
pub fn reconstruction_holds<S: Scalar>(game: &Game<S>) -> bool {
    let d = mobius_transform(game);
    match from_dividends(game.players().clone(), &d) {
        Ok(back) => back
            .worth_table()
            .iter()
            .zip(game.worth_table())
            .all(|(a, b)| a.close_to(b)),
        Err(_) => false,
    }
}
