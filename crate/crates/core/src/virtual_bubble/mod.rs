//! Paired-up saddles, virtual bubbles and the per-curve virtual-word check.
//!
//! A bubble holding `1 + l` saddles, met by a curve at the saddle with `l`
//! saddles beneath it, is replaced by `2l + 1` virtual bubbles met in a row,
//! alternating sides, the outermost two on the original side. The met saddle
//! becomes the central virtual bubble; a saddle `j` steps beneath it is
//! represented by the virtual bubbles at offsets `-j` and `+j`, which is how
//! opposite-sphere loops get rerouted. Saddles beyond the met one are left
//! out of the virtual curve.

mod expand;
mod pairing;
mod theorem;

use thiserror::Error;

use crate::diagram::DiagramError;

pub use expand::{expand_virtual, DualLoop, DualStop, VirtualArc, VirtualBubble, VirtualDiagram};
pub use pairing::{lambda_of, pair_up_saddles, PairingPartition};
pub use theorem::{
    check_main_theorem, curve_verdict, lemma35_crosscheck, meridian_witness, MainTheoremReport,
    MeridianWitness, Verdict, WitnessKind,
};

#[derive(Debug, Error)]
pub enum VirtualError {
    #[error("curve {curve}: saddles {unpaired:?} are not paired up")]
    PreconditionUnmet {
        curve: String,
        unpaired: Vec<String>,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
