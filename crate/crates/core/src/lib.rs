pub mod axioms;
pub mod coalition;
pub mod combinatorics;
pub mod distributions;
pub mod error;
pub mod game;
pub mod generators;
pub mod indices;
pub mod mobius;
pub mod scalar;

pub use coalition::{Coalition, PlayerSet, TwoPartition};
pub use distributions::{ExternalFamily, InternalFamily};
pub use error::{Error, Result};
pub use game::Game;
pub use scalar::{NumericMode, Rational, Scalar};

/// Largest supported player count; worth tables are dense.
pub const MAX_PLAYERS: usize = 24;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/games.md")]
    struct Games;
    #[doc = include_str!("../../../book/src/families.md")]
    struct Families;
    #[doc = include_str!("../../../book/src/coopetition.md")]
    struct Coopetition;
    #[doc = include_str!("../../../book/src/identities.md")]
    struct Identities;
    #[doc = include_str!("../../../book/src/axioms.md")]
    struct Axioms;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
