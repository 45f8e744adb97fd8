use criterion::{criterion_group, criterion_main};

criterion_group!(benches, sheffer_bench::riordan);
criterion_main!(benches);
