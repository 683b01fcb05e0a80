#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "maturity/psychometrics.hpp"
#include "maturity/report.hpp"
#include "maturity/response_io.hpp"
#include "maturity/scoring.hpp"

using namespace maturity;

namespace {

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const ResponseSet& org_a_response() {
  static const ResponseSet r = load_response_json(
      read_all(std::string(MATURITY_FIXTURES_DIR) + "/org_a_responses.json"));
  return r;
}

const PilotDataset& pilot() {
  static const PilotDataset d = load_pilot_csv(
      read_all(std::string(MATURITY_FIXTURES_DIR) + "/pilot_sample.csv"));
  return d;
}

}  // namespace

static void BM_ScoreAssessment(benchmark::State& state) {
  const MaturityModel& m = bundled_model();
  const ResponseSet& r = org_a_response();
  for (auto _ : state) {
    AssessmentResult result = score_assessment(m, r);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_ScoreAssessment);

static void BM_PassThreshold(benchmark::State& state) {
  Fraction f = Fraction::of(4, 5);
  for (auto _ : state) {
    for (int n = 0; n < 100; ++n)
      benchmark::DoNotOptimize(pass_threshold(n, f));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_PassThreshold);

static void BM_JacobiEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a[i][j] = a[j][i] = dist(rng);
  for (auto _ : state) {
    auto eig = symmetric_eigenvalues(a);
    benchmark::DoNotOptimize(eig);
  }
}
BENCHMARK(BM_JacobiEigenvalues)->Arg(3)->Arg(5)->Arg(8);

static void BM_ConstructValidity(benchmark::State& state) {
  const MaturityModel& m = bundled_model();
  const PilotDataset& d = pilot();
  for (auto _ : state) {
    auto stats = construct_validity(d, m);
    benchmark::DoNotOptimize(stats);
  }
}
BENCHMARK(BM_ConstructValidity);

static void BM_Mtmm(benchmark::State& state) {
  const MaturityModel& m = bundled_model();
  const PilotDataset& d = pilot();
  for (auto _ : state) {
    auto matrix = mtmm(d, m);
    benchmark::DoNotOptimize(matrix);
  }
}
BENCHMARK(BM_Mtmm);

static void BM_RenderSummary(benchmark::State& state) {
  const MaturityModel& m = bundled_model();
  std::vector<AssessmentResult> results = {score_assessment(m, org_a_response())};
  for (auto _ : state) {
    std::string doc = render_summary(results, m, ReportFormat::text);
    benchmark::DoNotOptimize(doc);
  }
}
BENCHMARK(BM_RenderSummary);

static void BM_LoadBundledModel(benchmark::State& state) {
  for (auto _ : state) {
    MaturityModel m = load_model(bundled_model_json());
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_LoadBundledModel);

BENCHMARK_MAIN();
