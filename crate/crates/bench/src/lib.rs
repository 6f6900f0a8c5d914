//! Re-exports of the instance builders the benchmarks run on.

pub use adjflow::fixtures::{worked_example_problem, ordering_example_problem, layered_problem};
