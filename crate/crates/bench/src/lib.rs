//! Criterion benchmarks for `cfckit`. See `benches/`.
