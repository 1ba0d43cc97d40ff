//! Front end for `torus-coh`: argument parsing helpers, reports, batch
//! processing and the verification suite.

pub mod batch;
pub mod input;
pub mod report;
pub mod verify_cmd;

pub use input::{parse_rings, parse_theta, InvalidInput};
