#include <benchmark/benchmark.h>

#include "excitonsim/cavity_response.hpp"
#include "excitonsim/dimer_eit.hpp"
#include "excitonsim/disorder_ensemble.hpp"
#include "excitonsim/exciton_model.hpp"

using namespace excitonsim;

namespace {

AggregateSpec chain(std::size_t n) {
    AggregateSpec spec;
    spec.n_sites = n;
    return spec;
}

ExcitonBasis homogeneous(std::size_t n) { return build_basis(chain(n), SiteShifts::zeros(n)); }

CavityDrive band_edge_drive(const ExcitonBasis& b, double a_c) {
    return CavityDrive{b.omega_k(1) + 2.0 * b.u_kp(0, 1), a_c, 26.0};
}

ProbeGrid window(const ExcitonBasis& b, std::size_t points) {
    return ProbeGrid::uniform(b.omega_k(0) - 20 * 26.0, b.omega_k(0) + 20 * 26.0, points);
}

void BM_BuildBasis(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const AggregateSpec spec = chain(n);
    for (auto _ : state) benchmark::DoNotOptimize(build_basis(spec, SiteShifts::zeros(n)));
}
BENCHMARK(BM_BuildBasis)->Arg(6)->Arg(25)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SolvePoint(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ExcitonBasis b = homogeneous(n);
    const SteadyStateSolver solver(b, band_edge_drive(b, 0.8), Dephasing{});
    const double omega_p = b.omega_k(0);
    for (auto _ : state) benchmark::DoNotOptimize(solver.solve(omega_p));
}
BENCHMARK(BM_SolvePoint)->Arg(6)->Arg(25)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SweepSpectrum(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ExcitonBasis b = homogeneous(n);
    const CavityDrive drive = band_edge_drive(b, 0.8);
    const ProbeGrid grid = window(b, 2001);
    for (auto _ : state) benchmark::DoNotOptimize(sweep_spectrum(b, drive, grid, Dephasing{}, 1));
}
BENCHMARK(BM_SweepSpectrum)->Arg(6)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_AverageSpectra(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ExcitonBasis b = homogeneous(n);
    const CavityDrive drive = band_edge_drive(b, 0.8);
    const ProbeGrid grid = window(b, 201);
    const DisorderModel model{0.125 * 68.2, 32, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(average_spectra(chain(n), drive, grid, model, Dephasing{}, 1));
    }
}
BENCHMARK(BM_AverageSpectra)->Arg(6)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_DimerGaussianMinimum(benchmark::State& state) {
    DimerParams p;
    const DimerEigens e = dimer_eigens(p);
    p.mu1 = e.mu_plus;
    p.d12 = 130.0 * e.mu_plus;
    p.a_c = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(a_min_gaussian_mc(p, 6.82, 1200, 1));
}
BENCHMARK(BM_DimerGaussianMinimum)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
