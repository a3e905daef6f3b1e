//! Identification of irreducible characters and conjugacy classes of the
//! symmetric group `S_n` from a few exact character-table entries.

pub mod char_id;
pub mod charvalues;
pub mod class_id;
pub mod cli;
pub mod json;
pub mod partitions;
mod poly;
pub mod table_game;

pub use partitions::{FrobeniusSymbol, Partition, PartitionError};
