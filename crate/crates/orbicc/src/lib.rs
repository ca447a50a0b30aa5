//! Caldero-Chapoton functions, gentle algebras and generalized cluster
//! algebras for a polygon with one orbifold point of order 3.

pub mod algebra;
pub mod ccfun;
pub mod covering;
pub mod gca;
pub mod laurent;
pub mod linalg;
pub mod strings;
pub mod surface;
