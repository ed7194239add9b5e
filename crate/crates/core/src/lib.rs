pub mod exact;
pub mod clifford;
pub mod lie;
pub mod srep;
pub mod weights;
pub mod report;
pub mod cli;
