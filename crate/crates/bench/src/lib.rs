//! Criterion benchmarks for `atlas_core`; see `benches/algebra.rs`.
