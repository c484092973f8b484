pub mod analyze;
pub mod extract;
pub mod gen;
pub mod search;
pub mod verify;
