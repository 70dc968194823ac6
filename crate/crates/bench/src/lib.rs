//! Criterion benchmarks for the kernels, quadratures and semigroup probes;
//! see `benches/kernels.rs`.
