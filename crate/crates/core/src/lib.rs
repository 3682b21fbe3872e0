pub mod polyring;
pub mod linalg;
pub mod chern;
pub mod presentations;
pub mod catalog;
pub mod maps;
pub mod invariants;
pub mod verifier;
