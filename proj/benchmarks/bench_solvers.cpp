#include <benchmark/benchmark.h>

#include "pfsched/baselines.hpp"
#include "pfsched/certify.hpp"
#include "pfsched/lp.hpp"
#include "pfsched/pf.hpp"

namespace {

using namespace pfsched;

RandomSpec spec_for(ModelKind kind, int n, int m) {
  RandomSpec spec;
  spec.kind = kind;
  spec.n_min = spec.n_max = n;
  spec.m_min = spec.m_max = m;
  spec.max_value = 9;
  return spec;
}

void BM_EgRelated(benchmark::State& state) {
  const Instance ins = random_instance(spec_for(ModelKind::Related, state.range(0), 4), 7);
  std::vector<Rat> w;
  for (const auto& jb : ins.jobs) w.push_back(jb.w);
  std::vector<Rat> speeds = ins.model.speeds;
  speeds.resize(w.size(), Rat(0));
  std::vector<int> order(w.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return w[a] > w[b]; });
  std::vector<Rat> ws;
  for (int i : order) ws.push_back(w[i]);
  for (auto _ : state) {
    auto [sol, levels] = solve_eg_related(speeds, ws);
    benchmark::DoNotOptimize(sol.y.data());
  }
}
BENCHMARK(BM_EgRelated)->Arg(8)->Arg(32)->Arg(128);

void BM_EgPacking(benchmark::State& state) {
  const Instance ins = random_instance(spec_for(ModelKind::Packing, state.range(0), 1), 11);
  std::vector<Rat> w;
  for (const auto& jb : ins.jobs) w.push_back(jb.w);
  for (auto _ : state) {
    RateSolution sol = solve_eg_packing(ins.model.rows, w, 1e-8);
    benchmark::DoNotOptimize(sol.y.data());
  }
}
BENCHMARK(BM_EgPacking)->Arg(3)->Arg(5);

void BM_EgUnrelated(benchmark::State& state) {
  const Instance ins = random_instance(spec_for(ModelKind::Unrelated, state.range(0), 3), 13);
  std::vector<Rat> w;
  for (const auto& jb : ins.jobs) w.push_back(jb.w);
  for (auto _ : state) {
    RateSolution sol = solve_eg_unrelated(ins.model.speed_matrix, w, 1e-8);
    benchmark::DoNotOptimize(sol.y.data());
  }
}
BENCHMARK(BM_EgUnrelated)->Arg(3)->Arg(5);

void BM_RunPfSingle(benchmark::State& state) {
  RandomSpec spec = spec_for(ModelKind::Single, state.range(0), 1);
  spec.max_release = 9;
  const Instance ins = random_instance(spec, 17);
  for (auto _ : state) {
    EventTimeline tl = run_pf(ins, {});
    benchmark::DoNotOptimize(tl.objective.get_num().get_mpz_t());
  }
}
BENCHMARK(BM_RunPfSingle)->Arg(8)->Arg(64);

void BM_RrFamily(benchmark::State& state) {
  const Instance ins = gen_rr_lb_simple(state.range(0));
  for (auto _ : state) {
    EventTimeline tl = run_pf(ins, {});
    benchmark::DoNotOptimize(tl.objective.get_num().get_mpz_t());
  }
}
BENCHMARK(BM_RrFamily)->Arg(100)->Arg(500);

void BM_SrptObjective(benchmark::State& state) {
  const Instance ins = gen_rr_lb_table(state.range(0));
  for (auto _ : state) {
    Rat obj = srpt_single_objective(ins);
    benchmark::DoNotOptimize(obj.get_num().get_mpz_t());
  }
}
BENCHMARK(BM_SrptObjective)->Arg(20)->Arg(100);

void BM_TimeIndexedLp(benchmark::State& state) {
  RandomSpec spec = spec_for(ModelKind::Single, state.range(0), 1);
  spec.max_value = 4;
  const Instance ins = random_instance(spec, 19);
  for (auto _ : state) {
    TimeIndexedLp lp = build_time_indexed(ins, Rat(1));
    LpSolution sol = simplex_solve(lp.problem);
    benchmark::DoNotOptimize(sol.pivots);
  }
}
BENCHMARK(BM_TimeIndexedLp)->Arg(3)->Arg(5);

void BM_MonpspCertificate(benchmark::State& state) {
  RandomSpec spec = spec_for(ModelKind::Related, state.range(0), 3);
  spec.max_value = 5;
  spec.max_release = 5;
  const Instance ins = random_instance(spec, 23);
  const EventTimeline tl = run_pf(ins, {});
  for (auto _ : state) {
    DualCertificate cert = monpsp_certificate(ins, tl, SolverChoice::Auto, Rat(2), 1e-8);
    CertificateVerdict v = verify_certificate(ins, cert, 1e-8);
    benchmark::DoNotOptimize(v.ok);
  }
}
BENCHMARK(BM_MonpspCertificate)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
