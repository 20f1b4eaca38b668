#include <benchmark/benchmark.h>

#include "sgvi/estimators.hpp"

using namespace sgvi;

namespace {

struct CtFixture {
    SystemModel model;
    GaussianBelief prev;
    Vector z;

    CtFixture() : prev(make_prev()), z(3) {
        model.transition = coordinated_turn(0.1, 4.0, 1e-4);
        model.measurement = range_measurements({{-8.0, -8.0}, {8.0, -8.0}, {0.0, 8.0}}, 0.5);
        model.dim = Dim{5, 3};
        z << 11.3, 11.4, 8.1;
    }

    static GaussianBelief make_prev() {
        Vector mu(5);
        mu << 0.2, 0.1, 1.0, 0.3, 0.1;
        Vector d(5);
        d << 0.01, 0.01, 0.01, 0.01, 0.001;
        return GaussianBelief::from_moments(mu, d.asDiagonal());
    }
};

void bm_sgvi_update_ct(benchmark::State& state) {
    const CtFixture fx;
    const SgviConfig cfg = SgviConfig::defaults_for(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sgvi_update(fx.prev, fx.z, fx.model, cfg, 1));
    }
}
BENCHMARK(bm_sgvi_update_ct);

void bm_map_update_ct(benchmark::State& state) {
    const CtFixture fx;
    const SgviConfig cfg = SgviConfig::defaults_for(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(iekf_map_update(fx.prev, fx.z, fx.model, cfg, 1));
    }
}
BENCHMARK(bm_map_update_ct);

void bm_sgvi_update_1d(benchmark::State& state) {
    const SystemModel model = benchmark_1d(10.0, 1.0);
    const auto prev = GaussianBelief::from_moments(model.prior_mean, model.prior_cov);
    const Vector z = Vector::Constant(1, 6.25);
    const SgviConfig cfg = SgviConfig::defaults_for(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sgvi_update(prev, z, model, cfg, 1));
    }
}
BENCHMARK(bm_sgvi_update_1d);

void bm_information_filter(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    LinearModel lm;
    lm.A = 0.95 * Matrix::Identity(n, n);
    lm.H = Matrix::Identity(n, n);
    lm.Q = 0.1 * Matrix::Identity(n, n);
    lm.R = 0.5 * Matrix::Identity(n, n);
    const auto prev = GaussianBelief::from_moments(Vector::Zero(n), Matrix::Identity(n, n));
    const Vector z = Vector::Ones(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(information_filter_update(prev, z, lm));
    }
}
BENCHMARK(bm_information_filter)->Arg(2)->Arg(5)->Arg(10);

void bm_sigma_points_5d(benchmark::State& state) {
    const auto belief =
        GaussianBelief::from_moments(Vector::Zero(5), Matrix::Identity(5, 5));
    const auto params = UnscentedParams::defaults_for(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_sigma_points(belief, params));
    }
}
BENCHMARK(bm_sigma_points_5d);

} // namespace

BENCHMARK_MAIN();
