pub mod counterexample;
pub mod cp;
pub mod flow;
pub mod region;
pub mod verify;
