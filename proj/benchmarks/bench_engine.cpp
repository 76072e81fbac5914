#include <benchmark/benchmark.h>

#include <cmath>

#include "qie/measurement.hpp"
#include "qie/qie.hpp"

namespace {

using namespace qie;

const BathCoupling kBath{0.25, -0.3, 0.005};
const double kTauCirc = std::log(2.0) / (4.0 * kBath.a);

void BM_thermal_state(benchmark::State& state) {
    const ScaledHamiltonian H(1.0, PolarizationSpectrum::qubit());
    for (auto _ : state)
        benchmark::DoNotOptimize(thermal_state(0.7, H));
}
BENCHMARK(BM_thermal_state);

void BM_build_measurement(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(build_measurement(0.5, 1.0, 1.0));
}
BENCHMARK(BM_build_measurement);

void BM_apply_measurement(benchmark::State& state) {
    const ScaledHamiltonian H(1.0, PolarizationSpectrum::qubit());
    const auto meas = build_measurement(0.5, 1.0, 1.0);
    const auto rho = thermal_state(0.5, H);
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_measurement(meas, rho, H));
}
BENCHMARK(BM_apply_measurement);

void BM_relax_closed_form(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(relax_constant_omega(-0.1, 1.0, kBath, 3.0));
}
BENCHMARK(BM_relax_closed_form);

void BM_schedule_build(benchmark::State& state) {
    const IsothermSpec spec(2.0, 1.0, 2.0 * kBath.beta_h);
    const int table = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(FrequencySchedule(spec, kBath, table));
}
BENCHMARK(BM_schedule_build)->Arg(128)->Arg(512)->Arg(2048);

void BM_simulate_isotherm(benchmark::State& state) {
    const IsothermSpec spec(2.0, 1.0, 2.0 * kBath.beta_h);
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_isotherm(spec, kBath, steps));
}
BENCHMARK(BM_simulate_isotherm)->Arg(100)->Arg(400);

void BM_run_cycle_analytic(benchmark::State& state) {
    const auto cfg = derive_cycle(1.0, 2.0, 1.0, kBath, 0.5, 2.0 * kTauCirc);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_cycle_analytic(cfg));
}
BENCHMARK(BM_run_cycle_analytic);

void BM_run_cycle_numeric(benchmark::State& state) {
    const auto cfg = derive_cycle(1.0, 2.0, 1.0, kBath, 0.5, 2.0 * kTauCirc);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_cycle_numeric(cfg, 300));
}
BENCHMARK(BM_run_cycle_numeric);

void BM_golden_section(benchmark::State& state) {
    const auto family = make_low_dissipation_family(1.0, 1.0, 1.0, 3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_max_power(family, 1.01, 50.0));
}
BENCHMARK(BM_golden_section);

void BM_sweep_block(benchmark::State& state) {
    auto builder = [](double tau_fb) {
        return make_low_dissipation_family(200.0, 3.75e-5, 3.75e-5 * kTauCirc,
                                           tau_fb);
    };
    const std::vector<double> fbs{0.5, 1.0, 3.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(sweep_power_curves(builder, kTauCirc, fbs));
}
BENCHMARK(BM_sweep_block);

}  // namespace

BENCHMARK_MAIN();
