#include <benchmark/benchmark.h>

#include <vector>

#include "vhs/algebra.hpp"
#include "vhs/coercivity.hpp"
#include "vhs/geometry.hpp"
#include "vhs/harmonic.hpp"
#include "vhs/identities.hpp"
#include "vhs/radial.hpp"
#include "vhs/random.hpp"

namespace {

// Arg 0..5 selects so(1,4), so(2,4), so(3,4), sp(1,1), sp(1,2), sp(2,2).
vhs::AlgebraSpec spec_for(std::int64_t i) {
  static const vhs::AlgebraSpec specs[] = {vhs::AlgebraSpec::so(1, 2), vhs::AlgebraSpec::so(2, 2),
                                           vhs::AlgebraSpec::so(3, 2), vhs::AlgebraSpec::sp(1, 1),
                                           vhs::AlgebraSpec::sp(1, 2), vhs::AlgebraSpec::sp(2, 2)};
  return specs[i];
}

void BM_Construct(benchmark::State& state) {
  const auto spec = spec_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vhs::construct(spec));
  state.SetLabel(spec.name());
}
BENCHMARK(BM_Construct)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Identities(benchmark::State& state) {
  const auto spec = spec_for(state.range(0));
  const auto con = vhs::construct(spec);
  for (auto _ : state) benchmark::DoNotOptimize(vhs::verify_identities(con.structure));
  state.SetLabel(spec.name());
}
BENCHMARK(BM_Identities)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_CurvatureModel(benchmark::State& state) {
  const auto spec = spec_for(state.range(0));
  const auto con = vhs::construct(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vhs::curvature_model(vhs::period_domain(con.structure), con.structure));
  }
  state.SetLabel(spec.name() + " G/V");
}
BENCHMARK(BM_CurvatureModel)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_SectionalCurvature(benchmark::State& state) {
  const auto con = vhs::construct(vhs::AlgebraSpec::sp(2, 2));
  const auto cm = vhs::curvature_model(vhs::symmetric_base(con.structure), con.structure);
  auto rng = vhs::make_rng(1);
  const Eigen::VectorXd x = vhs::random_unit_vector(rng, cm.dim);
  Eigen::VectorXd y = vhs::random_gaussian(rng, cm.dim);
  y -= y.dot(x) * x;
  y.normalize();
  for (auto _ : state) benchmark::DoNotOptimize(vhs::sectional_curvature_bivector(cm, x, y));
}
BENCHMARK(BM_SectionalCurvature);

void BM_CurvatureSurvey(benchmark::State& state) {
  const auto spec = spec_for(state.range(0));
  const auto con = vhs::construct(spec);
  const auto cm = vhs::curvature_model(vhs::symmetric_base(con.structure), con.structure);
  vhs::SurveyConfig sc;
  sc.samples = 100000;
  sc.restarts = 50;
  sc.seed = 3;
  for (auto _ : state) benchmark::DoNotOptimize(vhs::curvature_survey(cm, sc));
  state.SetLabel(spec.name());
}
BENCHMARK(BM_CurvatureSurvey)->DenseRange(0, 5)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_HarmonicSpace(benchmark::State& state) {
  const auto con = vhs::construct(vhs::AlgebraSpec::sp(2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(vhs::invariant_harmonic_space(con.structure));
}
BENCHMARK(BM_HarmonicSpace)->Unit(benchmark::kMillisecond);

void BM_RiccatiOracle(benchmark::State& state) {
  const auto grid = vhs::log_grid();
  for (auto _ : state) benchmark::DoNotOptimize(vhs::riccati_oracle(-4.0, grid));
}
BENCHMARK(BM_RiccatiOracle)->Unit(benchmark::kMillisecond);

void BM_Profile(benchmark::State& state) {
  const std::vector<double> ks(static_cast<std::size_t>(state.range(0)), -1.0);
  const auto grid = vhs::log_grid();
  for (auto _ : state) benchmark::DoNotOptimize(vhs::build_profile(ks, grid));
}
BENCHMARK(BM_Profile)->Arg(3)->Arg(15)->Unit(benchmark::kMicrosecond);

void BM_Pairing(benchmark::State& state) {
  auto rng = vhs::make_rng(2);
  const int n = static_cast<int>(state.range(0));
  vhs::StressEnergyFrame f;
  f.r = 1.3;
  f.lambda = vhs::random_uniform(rng, n - 1, 0.5, 2.0);
  f.u_r = 0.4;
  f.u_t = vhs::random_uniform(rng, n - 1, -1.0, 1.0);
  f.rotation = vhs::random_orthogonal(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(vhs::stress_energy_pairing(f));
}
BENCHMARK(BM_Pairing)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
