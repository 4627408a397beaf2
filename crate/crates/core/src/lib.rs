pub mod cli;
pub mod exactlin;
pub mod liealg;
pub mod minnorm;
pub mod rng;
pub mod rootsys;
pub mod signtypes;
pub mod verify;
