//! The small named graphs used throughout the tests and documentation.

use crate::io::parse_kgraph;
use crate::kgraph::KGraph;

pub const G1: &str = include_str!("../fixtures/g1.kg");
pub const G2: &str = include_str!("../fixtures/g2.kg");
pub const G5: &str = include_str!("../fixtures/g5.kg");
pub const OMEGA_2_11: &str = include_str!("../fixtures/omega_2_11.kg");
pub const TORUS: &str = include_str!("../fixtures/torus.kg");

/// Loop `g` at `a`, edge `e: a → b`, loop `f` at `b`.
pub fn g1() -> KGraph {
    parse_kgraph(G1).expect("fixture parses")
}

/// One vertex `v` with loops `x` and `y`.
pub fn g2() -> KGraph {
    parse_kgraph(G2).expect("fixture parses")
}

/// Two copies of G2 at `v` (loops `x`, `y`) and `w` (loops `xw`, `yw`).
pub fn g5() -> KGraph {
    parse_kgraph(G5).expect("fixture parses")
}

pub fn omega_2_11() -> KGraph {
    parse_kgraph(OMEGA_2_11).expect("fixture parses")
}

/// One vertex with commuting loops `x` (color 1) and `y` (color 2).
pub fn torus() -> KGraph {
    parse_kgraph(TORUS).expect("fixture parses")
}
