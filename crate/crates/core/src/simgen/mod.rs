//! Seeded generation of simulation inputs: equicorrelated Gaussian designs,
//! Kronecker-product supersaturated designs, and responses from the linear
//! model.

mod design;
mod hadamard;
mod rng;

pub use design::{gen_equicorrelated_design, gen_response, GenerativeModel, TrueModel};
pub use hadamard::{kronecker_design, load_base_design, sylvester_hadamard, KroneckerDesign};
pub use rng::{child_stream, Stream, StreamTag};
