//! Word mechanism for surfaces in link complements.
//!
//! * [`word`]: cyclic/partial words over `S`, `R`, `P{i}`, `D{l}` and the
//!   reduction rules I-V with exhaustive deciders.
//! * [`diagram`]: crossing-ball diagrams, surface presentations, curve
//!   labeling and the normal-position validators.
//! * [`virtual_bubble`]: paired-up saddles, virtual bubbles and the
//!   per-curve reducibility check.
//! * [`pullback`]: pullback graphs, Euler characteristic, the `|R|` bounds
//!   and exhaustive enumeration of configurations.

pub mod cli;
pub mod diagram;
pub mod pullback;
pub mod virtual_bubble;
pub mod word;
