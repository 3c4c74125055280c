use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use orbifold_bench::{flat_rings, icosahedral_tiling, icosahedral_triangle};
use orbifold_core::classification::{case_by_id, enumerate_all_cases};
use orbifold_core::geodesic::{
    plane_geodesics, sphere_geodesics, IndexParams, MarkedConfiguration,
};
use orbifold_core::spherical::generate_tiling;
use orbifold_core::{run_pipeline, PipelineOptions};

fn classification(c: &mut Criterion) {
    c.bench_function("enumerate_all_cases", |b| {
        b.iter(|| black_box(enumerate_all_cases()))
    });
}

fn tilings(c: &mut Criterion) {
    let t = icosahedral_triangle();
    c.bench_function("generate_tiling/icosahedral", |b| {
        b.iter(|| generate_tiling(black_box(&t)).unwrap())
    });
    c.bench_function("build_rings/case14/n20", |b| {
        b.iter(|| flat_rings(black_box(14), 20))
    });
}

fn censuses(c: &mut Criterion) {
    let sphere = icosahedral_tiling();
    let cfg = MarkedConfiguration::draw(7, &sphere, 0, 1e-9).unwrap();
    c.bench_function("sphere_geodesics/icosahedral/n20", |b| {
        b.iter(|| sphere_geodesics(black_box(&cfg), IndexParams::new(0), 20).unwrap())
    });
    let plane = flat_rings(14, 20);
    let cfg = MarkedConfiguration::draw(14, &plane, 0, 1e-9).unwrap();
    c.bench_function("plane_geodesics/case14/n20", |b| {
        b.iter(|| plane_geodesics(black_box(&cfg), IndexParams::new(0), 20).unwrap())
    });
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    let opts = PipelineOptions {
        seeds: 1,
        ..Default::default()
    };
    for id in [7, 17] {
        let case = case_by_id(id).unwrap();
        group.bench_function(format!("case{id}"), |b| {
            b.iter(|| run_pipeline(black_box(&case), &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, classification, tilings, censuses, pipeline);
criterion_main!(benches);
