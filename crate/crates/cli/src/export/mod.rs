//! Netlist and table writers.

mod dot;
mod graph;
pub mod table;

pub use dot::write_dot;
pub use graph::{read_graph, write_graph};
pub use table::{count, sig9, text_table, Csv};
