use bangbang::optimize::{optimize_trajectory, ShortcutConfig};
use bangbang::planners::{baseline_rrt_bidirectional, bb_rrt_bidirectional, BaselineParams, PlanQuery};
use bangbang::world::Polygon;
use bangbang::{PhaseState, Scene};
use criterion::{criterion_group, criterion_main, Criterion};

/// Same geometry as `scenes/maze_a.json`.
fn maze() -> (Scene, PhaseState, PhaseState) {
    let walls =
        vec![Polygon::rect(0.0, 260.0, 400.0, 290.0).unwrap(), Polygon::rect(400.0, 510.0, 800.0, 540.0).unwrap()];
    let scene = Scene::planar([0.0, 0.0], [800.0, 800.0], 10.0, 0.2, walls, 0.0).unwrap();
    (scene, PhaseState::at_rest(vec![60.0, 60.0]), PhaseState::at_rest(vec![740.0, 740.0]))
}

fn planners(c: &mut Criterion) {
    let (scene, start, goal) = maze();
    let query = |seed| PlanQuery::new(&scene, start.clone(), goal.clone()).with_seed(seed).with_resolution(10.0);
    let mut group = c.benchmark_group("maze_a");
    let mut seed = 0;
    group.bench_function("bb_rrt", |b| {
        b.iter(|| {
            seed += 1;
            bb_rrt_bidirectional(&query(seed)).unwrap()
        })
    });
    group.sample_size(20);
    let params = BaselineParams::default();
    group.bench_function("baseline_rrt", |b| {
        b.iter(|| {
            seed += 1;
            baseline_rrt_bidirectional(&query(seed), &params).unwrap()
        })
    });
    let raw = bb_rrt_bidirectional(&query(3)).unwrap().trajectory.unwrap();
    let config = ShortcutConfig { resolution: 10.0, ..ShortcutConfig::for_scene(&scene) };
    group.bench_function("shortcut", |b| b.iter(|| optimize_trajectory(&scene, &raw, &config).unwrap()));
    group.finish();
}

criterion_group!(benches, planners);
criterion_main!(benches);
