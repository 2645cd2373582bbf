//! Criterion benchmarks for `ginvkit`; the benchmark bodies live in `benches/`.
