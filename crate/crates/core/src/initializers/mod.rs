//! Classical screeners that produce size-controlled submodels, used both as
//! baselines and as starting points for the thresholding iterations.

mod isis;
mod sis;
mod stepwise;

pub use isis::{default_isis_batch, isis, IsisFit};
pub use sis::sis;
pub use stepwise::{forward_stepwise, FsPath, FsStep};
