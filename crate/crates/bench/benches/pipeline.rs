use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use fusionlab::chars::character_table;
use fusionlab::document::{bundled, corpus};
use fusionlab::scalar::{is_algebraic_integer, parse_scalar, with_precision};
use fusionlab::suite::{run, select_claims};
use fusionlab::{Assumptions, Ratio, Request, Subject};

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    for name in ["fibonacci", "ising", "rep_a4", "ising_x_z2"] {
        let ring = bundled(name).unwrap().ring().unwrap();
        group.bench_function(name, |b| b.iter(|| character_table(black_box(&ring)).unwrap()));
    }
    group.finish();
}

fn checks(c: &mut Criterion) {
    let claims = select_claims(None).unwrap();
    let request = Request { claims, objects: None, s: Ratio::new(1, 2), subring: None };
    let mut group = c.benchmark_group("check_all");
    group.sample_size(20);
    for name in ["ising", "toric_code", "rep_d4"] {
        let doc = bundled(name).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| {
                let subject = Subject::from_document(&doc, &Assumptions::default(), None).unwrap();
                run(&subject, black_box(&request)).unwrap()
            })
        });
    }
    group.finish();
}

fn corpus_analysis(c: &mut Criterion) {
    let docs = corpus();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    for bits in [128u32, 256, 1024] {
        group.bench_function(format!("analysis_{bits}"), |b| {
            b.iter(|| {
                with_precision(bits, || {
                    for doc in &docs {
                        black_box(Subject::from_document(doc, &Assumptions::default(), None).unwrap());
                    }
                })
            })
        });
    }
    group.finish();
}

fn integrality(c: &mut Criterion) {
    let values: Vec<_> = (1..=10)
        .flat_map(|r| [2, 3, 5, -1].map(move |d| parse_scalar(&format!("(3 + sqrt({d}))/{r}")).unwrap()))
        .collect();
    c.bench_function("is_algebraic_integer/quadratic", |b| {
        b.iter(|| values.iter().filter(|v| is_algebraic_integer(black_box(v), None).tier.is_integral() == Some(true)).count())
    });
}

criterion_group!(benches, tables, checks, corpus_analysis, integrality);
criterion_main!(benches);
