use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use onerel::hnn::{britton_reduce, p4_instance, theta_embed};
use onerel::munn::fim_equal;
use onerel::raag::{raag_normal_form, SimpGraph};
use onerel::stephen::{stephen_equal, Budget};
use onerel::words::{formal_inverse, parse_word};
use onerel::{fold, InvPresentation, WordGraph};
use onerel_bench::{alphabet, random_word};

fn munn(c: &mut Criterion) {
    let mut g = c.benchmark_group("fim_equal");
    for len in [16, 128, 1024] {
        let u = random_word(&["a", "b", "c"], len, 1);
        // u u⁻¹ u names the same element as u
        let v = u.concat(&formal_inverse(&u)).concat(&u);
        g.bench_with_input(BenchmarkId::from_parameter(len), &len, |b, _| b.iter(|| fim_equal(black_box(&u), black_box(&v))));
    }
    g.finish();
}

fn folding(c: &mut Criterion) {
    let a = alphabet(&["a", "b"]);
    let mut g = c.benchmark_group("fold");
    for len in [64, 512, 4096] {
        let w = random_word(&["a", "b"], len, 2);
        let path = WordGraph::linear(&a, &w.concat(&formal_inverse(&w))).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(len), &path, |b, p| b.iter(|| fold(black_box(p))));
    }
    g.finish();
}

fn raag(c: &mut Criterion) {
    let p4 = SimpGraph::p4();
    let mut g = c.benchmark_group("raag_normal_form");
    for len in [16, 128, 512] {
        let w = random_word(&["a", "b", "c", "d"], len, 3);
        g.bench_with_input(BenchmarkId::from_parameter(len), &w, |b, w| {
            b.iter(|| raag_normal_form(&p4, black_box(w)).unwrap().word.len())
        });
    }
    g.finish();
}

fn britton(c: &mut Criterion) {
    let h = p4_instance();
    let mut g = c.benchmark_group("britton_reduce");
    for len in [8, 32, 128] {
        let x = random_word(&["a", "b", "c", "d"], len, 4);
        let image = theta_embed(&x).unwrap();
        let w = image.concat(&formal_inverse(&image));
        g.bench_with_input(BenchmarkId::from_parameter(len), &w, |b, w| {
            b.iter(|| britton_reduce(&h, black_box(w)).unwrap().is_identity())
        });
    }
    g.finish();
}

fn stephen(c: &mut Criterion) {
    let bicyclic: InvPresentation = serde_json::from_str(r#"{"relations":[{"lhs":"a A","rhs":""}]}"#).unwrap();
    let mut g = c.benchmark_group("stephen_bicyclic");
    for n in [4usize, 16] {
        let u = parse_word(&format!("a^{n} a^-{n}"), None).unwrap();
        g.bench_with_input(BenchmarkId::new("proved", n), &u, |b, u| {
            b.iter(|| stephen_equal(&bicyclic, black_box(u), &onerel::Word::empty(), Budget::new(20, 20000)).unwrap())
        });
    }
    let u = parse_word("A a", None).unwrap();
    g.bench_function("unknown_8_rounds", |b| {
        b.iter(|| stephen_equal(&bicyclic, black_box(&u), &onerel::Word::empty(), Budget::new(8, 5000)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, munn, folding, raag, britton, stephen);
criterion_main!(benches);
