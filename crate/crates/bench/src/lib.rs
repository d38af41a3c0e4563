//! Criterion benchmarks for `dqca-core`: direct and spectral evolution,
//! the entropy series and the oscillatory integrals. Run with
//! `cargo bench -p dqca-bench`.
