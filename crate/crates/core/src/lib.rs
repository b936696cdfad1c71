//! Exact construction, enumeration and counting of transformation shift
//! registers (TSRs) over finite fields.

pub mod arith;
pub mod counting;
pub mod error;
pub mod factor;
pub mod field;
mod json;
pub mod matrix;
pub mod poly;
pub mod srim;
pub mod text;
pub mod tsr;

pub use error::{Error, Result};
pub use field::{Fe, Field, FieldElem};
pub use matrix::{enumerate_gl, gl_order, Matrix, DEFAULT_CEILING};
pub use poly::{mn_compose, Poly};
pub use tsr::{Classification, TsrGeneral, TsrStar};
pub use counting::CountReport;
pub use srim::SrimRecord;
pub use tsr::{Decomposition, FiberMode, Filter, TsrRecord};
