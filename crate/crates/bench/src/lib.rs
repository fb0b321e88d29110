//! Benchmarks for the shuffle engine live in `benches/`.
