// Hot paths: channel synthesis, oracle queries, one ASSP iteration, one fusion tick.
#include <benchmark/benchmark.h>

#include "satbeam/angles.hpp"
#include "satbeam/channel.hpp"
#include "satbeam/electrical.hpp"
#include "satbeam/frames.hpp"
#include "satbeam/fusion.hpp"
#include "satbeam/rng.hpp"

using namespace satbeam;

namespace {

ArrayGeometry array_of(const benchmark::State& state) {
    ArrayGeometry g;
    g.rows = static_cast<int>(state.range(0));
    g.cols = static_cast<int>(state.range(1));
    return g;
}

ComplexVector test_channel(const ArrayGeometry& g) {
    const double offset = deg_to_rad(0.3);
    return vectorize(channel_matrix(g, {PathComponent{offset, deg_to_rad(45.0), {1.0, 0.0}, 0.0}}, 0.025));
}

BeamPowerOracle make_oracle(const ArrayGeometry& g) {
    return BeamPowerOracle(test_channel(g), {1.0, 0.0}, noise_variance_from_snr(20.0, 1.0, 1.0),
                           Rng(1, 2));
}

void BM_ChannelMatrix(benchmark::State& state) {
    const ArrayGeometry g = array_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(test_channel(g));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}

void BM_OracleMeasure(benchmark::State& state) {
    const ArrayGeometry g = array_of(state);
    BeamPowerOracle oracle = make_oracle(g);
    const RealVector phases = RealVector::Zero(static_cast<Eigen::Index>(g.size()));
    for (auto _ : state) benchmark::DoNotOptimize(oracle.measure(phases));
}

void BM_OracleProbe(benchmark::State& state) {
    const ArrayGeometry g = array_of(state);
    BeamPowerOracle oracle = make_oracle(g);
    oracle.set_reference(RealVector::Zero(static_cast<Eigen::Index>(g.size())));
    Eigen::Index i = 0;
    const auto n = static_cast<Eigen::Index>(g.size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle.probe_element(i, 0.1));
        i = (i + 1) % n;
    }
}

void BM_AsspStep(benchmark::State& state) {
    const ArrayGeometry g = array_of(state);
    BeamPowerOracle oracle = make_oracle(g);
    const RealVector structure = structure_matrix(g);
    const AsspParams params;
    Rng rng(1, 3);
    AsspState s{RealVector::Zero(static_cast<Eigen::Index>(g.size())), 0};
    for (auto _ : state) {
        s = assp_step(s, structure, params, oracle, rng);
        if (s.k > 1000) s.k = 0;
    }
}

void BM_FuseStep(benchmark::State& state) {
    const FusionConfig config;
    FilterState s = FilterState::initial(euler_to_quat({0.1, 0.05, -0.02}), config);
    const BodyRates rates{0.01, -0.02, 0.03};
    for (auto _ : state) {
        const FuseResult r = fuse_step(s, rates, 0.1, 0.05, -0.02, 0.01);
        s = r.state;
        benchmark::DoNotOptimize(r.attitude);
    }
}

}  // namespace

BENCHMARK(BM_ChannelMatrix)->Args({16, 8})->Args({128, 64});
BENCHMARK(BM_OracleMeasure)->Args({16, 8})->Args({128, 64});
BENCHMARK(BM_OracleProbe)->Args({128, 64});
BENCHMARK(BM_AsspStep)->Args({16, 8})->Args({128, 64});
BENCHMARK(BM_FuseStep);
BENCHMARK_MAIN();
