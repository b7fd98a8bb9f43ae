//! Criterion benchmarks for the spectratope crate live in `benches/`.
//! Run them with `cargo bench -p spectratope-bench`.
