//! Criterion benchmarks for the kfs-core kernels; see `benches/kernels.rs`.
