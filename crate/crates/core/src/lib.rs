pub mod error;
pub mod closed_forms;
pub mod distributions;
pub mod exactalg;
pub mod oracle;
pub mod parking;
pub mod prob;
pub mod recurrences;
pub mod trees;
pub mod verify;

pub use error::{ParkError, Result};
