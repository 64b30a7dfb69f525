pub mod bits;
pub mod cosetcode;
pub mod distsearch;
pub mod error;
pub mod gf2poly;
pub mod lincode;
pub mod manifest;
pub mod oracle;
pub mod stabilizer;
pub mod symplectic;
pub mod unioncode;

pub use error::{Error, Result};
