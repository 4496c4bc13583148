//! Dense polynomial arithmetic over prime fields in the in-place model:
//! inputs may be modified during a call but are restored exactly, outputs are
//! accumulated into or overwrite their operands, and extra space stays O(1)
//! beyond a logarithmic recursion stack.

pub mod bench;
pub mod conv;
pub mod error;
pub mod euclid;
pub mod ff;
pub mod instrument;
pub mod modmul;
pub mod mulbase;
pub mod polyio;
pub mod reference;
pub mod region;
pub mod selftest;
pub mod toeplitz;

pub use error::{Error, Result};
pub use ff::{Elem, Field};
pub use mulbase::{Ctx, MulStrategy, Schoolbook};
