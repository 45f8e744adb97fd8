use criterion::{criterion_group, criterion_main};

criterion_group!(benches, sheffer_bench::family);
criterion_main!(benches);
