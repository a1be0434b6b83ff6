//! Rooted kite subdivisions in 7-connected graphs: graph primitives, fans
//! and connectivity, two-path linkage, the constructive kite search, an
//! exhaustive oracle and a trial harness.

pub mod construct;
pub mod fans;
mod flow;
pub mod graph;
pub mod harness;
pub mod linkage;
pub mod oracle;
pub mod par;

pub use construct::{find_kite, ConstructError, Diagnostic, FindOptions, KiteOutcome, Stage};
pub use fans::{extend_fan, find_fan, terminal_fan, vertex_connectivity, Fan, TerminalFan};
pub use graph::{verify_kite, Graph, KiteSubdivision, Path, RootQuadruple};
pub use oracle::{find_kite_exhaustive, is_kite_linked, SearchBudget};
