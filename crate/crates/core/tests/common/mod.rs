pub mod quad;
pub mod reference;
