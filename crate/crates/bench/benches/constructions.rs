use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use perpcalc::mech::{DeviceState, RESOLUTION_LADDER};
use perpcalc::{
    approximate_e, render_trace, run_script, Calculator, CfOptions, DivideMethod, MeanMethod, MeasurementModel,
    PowerStrategy, ReciprocalMethod, RootQuery, ScriptOp, SignedScaled,
};
use perpcalc_bench::{cf_target, charge, earth, moon};
use std::hint::black_box;

fn arithmetic(c: &mut Criterion) {
    let calc = Calculator::default();
    let x: SignedScaled = "32357".parse().unwrap();
    let mut g = c.benchmark_group("arithmetic");
    g.bench_function("pow 32357^10", |b| b.iter(|| calc.power(black_box(&x), 10).unwrap()));
    g.bench_function("pow 32357^-10", |b| b.iter(|| calc.power(black_box(&x), -10).unwrap()));
    g.bench_function("recip charge", |b| b.iter(|| calc.reciprocal(&charge(), ReciprocalMethod::Angle).unwrap()));
    g.bench_function("div earth/moon", |b| {
        b.iter(|| calc.divide(&earth(), &moon(), DivideMethod::Hypotenuse).unwrap())
    });
    for m in [MeanMethod::Bisect, MeanMethod::Rotate] {
        g.bench_function(BenchmarkId::new("gmean", format!("{m:?}")), |b| {
            b.iter(|| calc.geometric_mean(&earth(), &moon(), m).unwrap())
        });
    }
    g.finish();
}

fn roots(c: &mut Criterion) {
    let calc = Calculator::default();
    let mut g = c.benchmark_group("roots");
    g.sample_size(20);
    for n in [2u64, 6, 12] {
        g.bench_with_input(BenchmarkId::new("earth", n), &n, |b, &n| {
            b.iter(|| calc.nth_root(&RootQuery::new(earth(), n)).unwrap())
        });
    }
    for s in [PowerStrategy::Compose, PowerStrategy::Split] {
        g.bench_function(BenchmarkId::new("earth^(19/7)", format!("{s:?}")), |b| {
            b.iter(|| calc.rational_power(&earth(), 19, 7, s).unwrap())
        });
    }
    g.finish();
}

fn exponents(c: &mut Criterion) {
    let calc = Calculator::default();
    let opts = CfOptions::default();
    let two: SignedScaled = "2".parse().unwrap();
    let a = cf_target();
    let mut g = c.benchmark_group("exponents");
    g.sample_size(20);
    g.bench_function("recover 1971/181", |b| b.iter(|| calc.recover_rational_exponent(&two, &a, &opts).unwrap()));
    let (x, y): (SignedScaled, SignedScaled) = ("98".parse().unwrap(), "151".parse().unwrap());
    g.bench_function("ln151/ln98", |b| b.iter(|| calc.recover_exponent_via_logs(&x, &y, &opts).unwrap()));
    for n in [1_000u64, 1_000_000, 10_000_000] {
        g.bench_with_input(BenchmarkId::new("approximate_e", n), &n, |b, &n| b.iter(|| approximate_e(n).unwrap()));
    }
    g.finish();
}

fn device(c: &mut Criterion) {
    let mut g = c.benchmark_group("device");
    let power = ScriptOp::Power { x: "0.8".parse().unwrap(), n: 7 };
    for res in RESOLUTION_LADDER {
        let m = MeasurementModel::new(res).unwrap();
        g.bench_with_input(BenchmarkId::new("power 0.8^7", res), &m, |b, m| b.iter(|| run_script(&power, m).unwrap()));
    }
    let m = MeasurementModel::new(RESOLUTION_LADDER[0]).unwrap();
    g.bench_function("assemble 10 arms", |b| b.iter(|| DeviceState::assemble(0.9, 1.5, 10, &m).unwrap()));
    g.finish();
}

fn drawing(c: &mut Criterion) {
    let calc = Calculator::default();
    let trace = calc.build_cascade(&"0.6".parse().unwrap(), &"1".parse().unwrap(), 64).unwrap().trace;
    c.bench_function("render 64-step cascade", |b| b.iter(|| render_trace(&trace, 800, 600).unwrap()));
}

criterion_group!(benches, arithmetic, roots, exponents, device, drawing);
criterion_main!(benches);
