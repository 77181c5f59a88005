use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use parkfn::exactalg::Var;
use parkfn::oracle::{gf_over, gf_over_prob, Domain, Exec};
use parkfn::parking::Stat;

const FOUR: [(Var, Stat); 4] = [(Var::X, Stat::Unl), (Var::Y, Stat::Dis), (Var::Z, Stat::Des), (Var::W, Stat::Rlm)];

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn deterministic(c: &mut Criterion) {
    let mut g = c.benchmark_group("gf_over");
    g.sample_size(10);
    for n in [5usize, 6, 7] {
        for (name, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| gf_over(&Domain::Pf { n }, &FOUR, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn probabilistic(c: &mut Criterion) {
    let mut g = c.benchmark_group("gf_over_prob");
    g.sample_size(10);
    for n in [4usize, 5, 6] {
        for (name, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| gf_over_prob(&Domain::Pf { n }, &FOUR, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn rk_grid(c: &mut Criterion) {
    let mut g = c.benchmark_group("rk_unl_rep");
    g.sample_size(10);
    let dom = Domain::Rk { m: 5, r: 1, k: 6 };
    let w = [(Var::X, Stat::Unl), (Var::Y, Stat::Rep)];
    for (name, exec) in modes() {
        g.bench_function(name, |b| b.iter(|| gf_over_prob(&dom, &w, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, deterministic, probabilistic, rk_grid);
criterion_main!(benches);
