use criterion::{black_box, criterion_group, criterion_main, Criterion};
use knotrep_core::{
    alexander_module, braid_to_wirtinger, build_sl_rep, character_order, count_report, enumerate_characters,
    fixture, smith_normal_form, IntMatrix, Tower,
};
use num_bigint::BigInt;

fn tower(name: &str) -> (knotrep_core::WirtingerPresentation, Tower) {
    let w = braid_to_wirtinger(&fixture(name).unwrap().braid).unwrap();
    let t = Tower::new(alexander_module(&w));
    (w, t)
}

fn snf(c: &mut Criterion) {
    // deterministic 12x12 matrix with entries in [-20, 20]
    let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
    let rows = (0..12)
        .map(|_| {
            (0..12)
                .map(|_| {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    BigInt::from((x % 41) as i64 - 20)
                })
                .collect()
        })
        .collect();
    let m = IntMatrix::from_rows(rows);
    c.bench_function("snf_12x12", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn homology_tower(c: &mut Criterion) {
    let w = braid_to_wirtinger(&fixture("6_1").unwrap().braid).unwrap();
    let a = alexander_module(&w);
    c.bench_function("homology_6_1_n1_to_12", |b| {
        b.iter(|| {
            let t = Tower::new(a.clone());
            (1..=12).map(|n| t.get(n).free_rank()).sum::<usize>()
        })
    });
}

fn counting(c: &mut Criterion) {
    c.bench_function("count_figure_eight_n2_to_8", |b| {
        b.iter(|| {
            let (_, t) = tower("figure-eight");
            (2..=8).map(|n| count_report(&t, n).unwrap().mobius).collect::<Vec<_>>()
        })
    });
}

fn rep_build(c: &mut Criterion) {
    let (w, t) = tower("figure-eight");
    let cover = t.get(5);
    let chars: Vec<_> = enumerate_characters(&cover).unwrap().filter(|chi| character_order(chi, &t) == 5).collect();
    c.bench_function("build_sl_reps_figure_eight_n5", |b| {
        b.iter(|| chars.iter().map(|chi| build_sl_rep(&w, &t, chi).unwrap().root_order).sum::<u64>())
    });
}

criterion_group!(benches, snf, homology_tower, counting, rep_build);
criterion_main!(benches);
