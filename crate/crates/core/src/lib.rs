pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod par;
pub mod qdsl;
pub mod quiver;
pub mod repr;
pub mod torsion;
