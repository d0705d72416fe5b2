pub mod arena;
pub mod dot;
pub mod network;
pub mod play;
pub mod solver;

pub use arena::{Arena, CaArena, CaMove, Counter, GameSpec, RaArena, RaMove, Variant, MAX_G_NODES, MAX_PEBBLES, MAX_ROUNDS};
pub use dot::{ca_network_dot, ra_network_dot, structure_dot};
pub use network::{validate_network, validate_ra_network, CaNetwork, NetworkReport, RaNetwork};
pub use play::{play_interactive, replay, Ply, Side, Transcript};
pub use solver::{solve, Search, SolveOptions, SolveResult, SolveStats, StrategyEntry, Winner, DEFAULT_BUDGET};
