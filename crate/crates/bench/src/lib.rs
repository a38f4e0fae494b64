//! Benchmark-only package; see benches/kernels.rs.
