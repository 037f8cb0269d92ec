use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hwpl_core::extbundle::make_extension_bundle;
use hwpl_core::hall::{ext_homog_bracket, f_poly, hall_ext_except_torsion, s_poly};
use hwpl_core::lgroup::WeightType;
use hwpl_core::oracle::{
    brute_hall, green_check_one, green_quadruples, s_enumerate_at, IsoType, NilpRep, TubeTable,
};
use hwpl_core::tubes::TubeIndec;

fn bench_polynomials(c: &mut Criterion) {
    c.bench_function("f_poly_50", |b| b.iter(|| black_box(f_poly(black_box(50)))));
    c.bench_function("s_poly_20_3", |b| {
        b.iter(|| black_box(s_poly(black_box(20), 3).unwrap()))
    });
    let f30 = f_poly(30);
    c.bench_function("poly_mul_f30_f30", |b| b.iter(|| black_box(&f30 * &f30)));
    c.bench_function("ext_homog_bracket_2_6", |b| {
        b.iter(|| black_box(ext_homog_bracket(black_box(2), black_box(6))))
    });
}

fn bench_hall_closed_forms(c: &mut Criterion) {
    let w = WeightType::new(vec![2, 3, 5]).unwrap();
    let e = make_extension_bundle(&w, w.zero(), w.zero()).unwrap();
    let minus_c = w.neg(&w.canonical()).unwrap();
    let e2 = make_extension_bundle(&w, minus_c, w.zero()).unwrap();
    let s = TubeIndec::exceptional(&w, 1, 0, 6).unwrap();
    c.bench_function("hall_ext_exceptional", |b| {
        b.iter(|| black_box(hall_ext_except_torsion(&w, &e, &e2, &s).unwrap()))
    });
    c.bench_function("s_enumerate_n2_q11", |b| {
        b.iter(|| black_box(s_enumerate_at(&w, 2, &[], 11).unwrap()))
    });
}

fn bench_oracle(c: &mut Criterion) {
    c.bench_function("tube_table_p2_q2_dim4", |b| {
        b.iter(|| black_box(TubeTable::build(2, 2, 4).unwrap()))
    });
    let table = TubeTable::build(2, 2, 4).unwrap();
    let quads = green_quadruples(&table);
    let quad = quads[quads.len() / 2];
    c.bench_function("green_check_one", |b| {
        b.iter(|| black_box(green_check_one(&table, quad).unwrap()))
    });
    let m = NilpRep::from_iso(1, 3, &IsoType::new(vec![(0, 2), (0, 1), (0, 1)])).unwrap();
    let a = IsoType::new(vec![(0, 2)]);
    let b2 = IsoType::new(vec![(0, 1), (0, 1)]);
    c.bench_function("brute_hall_dim4", |b| {
        b.iter(|| black_box(brute_hall(&a, &b2, &m).unwrap()))
    });
}

criterion_group!(benches, bench_polynomials, bench_hall_closed_forms, bench_oracle);
criterion_main!(benches);
