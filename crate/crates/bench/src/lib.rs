//! Benchmarks for mie-core live in `benches/`; run with `cargo bench -p mie-bench`.
