use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skein_core::braiding::{check_ybe, RMatrix};
use skein_core::corpus::{link_corpus, random_bigon_product, random_laurent};
use skein_core::par::set_parallel;
use skein_core::skein::{evaluate_links, SkeinExpression};
use skein_core::splitting::split;
use skein_core::web::braid_closure;

fn both(c: &mut Criterion, name: &str, mut f: impl FnMut()) {
    let mut g = c.benchmark_group(name);
    g.sample_size(10);
    for (label, on) in [("parallel", true), ("sequential", false)] {
        set_parallel(on);
        g.bench_function(label, |b| b.iter(&mut f));
    }
    set_parallel(true);
    g.finish();
}

fn links(c: &mut Criterion) {
    let n = 2;
    let mut e = SkeinExpression::zero(n, 0);
    for (_, m, w) in link_corpus() {
        e.add_term(&braid_closure(n, m, &w).unwrap(), &skein_core::scalar::LaurentScalar::one()).unwrap();
    }
    both(c, "evaluate_links/corpus", || {
        evaluate_links(&e).unwrap();
    });
}

fn ybe(c: &mut Criterion) {
    let r = RMatrix::build(3);
    both(c, "check_ybe/n3", || {
        assert!(check_ybe(&r));
    });
}

fn splitting(c: &mut Criterion) {
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut e = SkeinExpression::zero(n, 2);
    for _ in 0..40 {
        e.add_term(&random_bigon_product(n, 3, &mut rng).unwrap(), &random_laurent(&mut rng)).unwrap();
    }
    let cut = "0-1".parse().unwrap();
    both(c, "split/bigon40", || {
        split(&e, &cut).unwrap();
    });
}

criterion_group!(benches, links, ybe, splitting);
criterion_main!(benches);
