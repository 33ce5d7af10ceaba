pub mod ambiguity;
pub mod dga;
pub mod error;
pub mod io;
pub mod report;
pub mod ring;
pub mod solver;
pub mod sw;
pub mod symbol;

pub use error::{Error, Result};
pub use report::VerificationReport;
