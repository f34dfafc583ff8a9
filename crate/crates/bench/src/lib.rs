//! Benchmarks for `mfq-core`; see `benches/`.
