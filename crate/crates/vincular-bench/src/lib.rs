//! Benchmark-only package; see benches/benches.rs.
