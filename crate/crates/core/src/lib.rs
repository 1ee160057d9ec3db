//! Normal forms and type checking for n-dimensional diagrams presented as
//! iterated zigzags of cospans.

pub mod corpus;
pub mod degeneracy;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod globular;
pub mod io;
pub mod normalise;
pub mod oracle;
pub mod ordmaps;
pub mod typecheck;

pub use diagram::{Diagram, DiagramMap, Generator, Leg, Sink};
pub use error::{Error, Result};
pub use normalise::{normalise, normalise_relative, NormalisationResult};
pub use ordmaps::Monotone;
