//! Benchmarks for the hot kernels: Mobius and J computation, the
//! staggered convolution, flats/subspace lattice enumeration, and the
//! polynomial invariants.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use trinc::incidence::mobius;
use trinc::invariants::{j_mobius_poly, m_decomposition};
use trinc::matroid::{complete_bipartite_edges, subspace_lattice, Matroid};
use trinc::poset::Poset;
use trinc::qseries::{m_subspace_decomposed, m_subspace_formula, qbinom};
use trinc::trincidence::{j_fast, j_recursive, IncFn3};

fn bench_mobius(c: &mut Criterion) {
    let l24 = subspace_lattice(2, 4).unwrap();
    c.bench_function("mobius L(2,4)", |b| {
        b.iter(|| black_box(mobius(l24.poset())));
    });
}

fn bench_j(c: &mut Criterion) {
    let l23 = subspace_lattice(2, 3).unwrap();
    c.bench_function("j_fast L(2,3)", |b| {
        b.iter(|| black_box(j_fast(l23.poset())));
    });
    c.bench_function("j_recursive L(2,3)", |b| {
        b.iter(|| black_box(j_recursive(l23.poset())));
    });
}

fn bench_tri_mul(c: &mut Criterion) {
    let b3 = Arc::new(Poset::boolean(3));
    let j = j_fast(&b3);
    let zeta: IncFn3 = IncFn3::zeta(&b3);
    c.bench_function("zeta3 |> J on B3", |b| {
        b.iter(|| black_box(zeta.tri_mul(&j).unwrap()));
    });
}

fn bench_lattices(c: &mut Criterion) {
    c.bench_function("subspace lattice L(2,4) enumeration", |b| {
        b.iter(|| black_box(subspace_lattice(2, 4).unwrap()));
    });
    let dual = Matroid::graphic(&complete_bipartite_edges(3, 3))
        .unwrap()
        .dual();
    c.bench_function("flats lattice of the dual of graphic K33", |b| {
        b.iter(|| black_box(dual.flats_lattice().unwrap()));
    });
}

fn bench_invariants(c: &mut Criterion) {
    let dual = Matroid::graphic(&complete_bipartite_edges(3, 3))
        .unwrap()
        .dual();
    let flats = dual.flats_lattice().unwrap();
    c.bench_function("j_mobius_poly on the K33-dual flats", |b| {
        b.iter(|| black_box(j_mobius_poly(&flats)));
    });
    let l23 = subspace_lattice(2, 3).unwrap();
    c.bench_function("m_decomposition L(2,3)", |b| {
        b.iter(|| black_box(m_decomposition(&l23).unwrap()));
    });
}

fn bench_qseries(c: &mut Criterion) {
    c.bench_function("qbinom(12, 6)", |b| {
        b.iter(|| black_box(qbinom(12, 6)));
    });
    c.bench_function("m_subspace_formula(4)", |b| {
        b.iter(|| black_box(m_subspace_formula(4)));
    });
    c.bench_function("m_subspace_decomposed(4)", |b| {
        b.iter(|| black_box(m_subspace_decomposed(4)));
    });
    c.bench_function("specialize formula(3) at q=2", |b| {
        let f = m_subspace_formula(3);
        b.iter(|| black_box(f.specialize(&BigInt::from(2))));
    });
}

criterion_group!(
    benches,
    bench_mobius,
    bench_j,
    bench_tri_mul,
    bench_lattices,
    bench_invariants,
    bench_qseries
);
criterion_main!(benches);
