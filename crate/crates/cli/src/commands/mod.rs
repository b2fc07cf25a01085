pub mod convergence;
pub mod dump;
pub mod gatecount;
pub mod price;
