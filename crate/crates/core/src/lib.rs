pub mod basis;
pub mod code;
pub mod decoder;
pub mod field;
pub mod linalg;
pub mod linpoly;
pub mod ops;
