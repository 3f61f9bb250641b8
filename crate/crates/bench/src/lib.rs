//! Criterion benchmarks for the three calculi; see `benches/`.
