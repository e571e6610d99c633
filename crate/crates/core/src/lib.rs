pub mod extract;
pub mod harness;
pub mod kernel;
pub mod logic;
pub mod reduce;
pub mod script;
pub mod syntax;
pub mod term;
