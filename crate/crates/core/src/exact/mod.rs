//! Exact arbitrary-precision linear algebra and real-algebraic primitives.

pub mod field;
pub mod fmat;
pub mod interval;
pub mod lll;
pub mod lp;
pub mod mat;
pub mod pencil;
pub mod poly;
pub mod rat;
pub mod roots;
