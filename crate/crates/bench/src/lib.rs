//! Criterion benchmarks for `milnor-core`; run with `cargo bench -p milnor-bench`.
