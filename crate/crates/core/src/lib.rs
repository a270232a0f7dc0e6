pub mod cli;
pub mod error;
pub mod fuzz;
pub mod geometry;
pub mod inequalities;
pub mod poly;
pub mod report;
pub mod rootfind;
pub mod search;
