pub mod expr;
pub mod field;
pub mod linalg;
pub mod algebra;
pub mod bilinear;
pub mod invariants;
pub mod lemmas;
pub mod iso;
pub mod catalogue;
pub mod report;
