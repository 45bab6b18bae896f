//! Benchmark harness for the decomposition engine; see `benches/`.
