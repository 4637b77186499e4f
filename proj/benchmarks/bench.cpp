#include <benchmark/benchmark.h>

#include <string>
#include <tuple>
#include <vector>

#include "inp/executor.hpp"
#include "inp/parse.hpp"
#include "inp/planner.hpp"

using namespace inp;

namespace {

std::string scenario_path(const char* name) {
  return std::string(INP_SCENARIO_DIR) + "/" + name;
}

Wts grid_wts(int rows, int cols, PropRegistry& props) {
  const int n = rows * cols;
  std::vector<PropId> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(props.intern("v" + std::to_string(i)));
  Wts w;
  w.robot = 0;
  w.initial = 0;
  w.adj.assign(n, {});
  w.label = labels;
  auto link = [&](int a, int b) {
    w.adj[a].emplace_back(b, 7.0);
    w.adj[b].emplace_back(a, 7.0);
  };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int id = r * cols + c;
      if (c + 1 < cols) link(id, id + 1);
      if (r + 1 < rows) link(id, id + cols);
    }
  for (int q = 0; q < n; ++q) w.adj[q].emplace_back(q, 0.0);
  for (auto& row : w.adj) std::sort(row.begin(), row.end());
  return w;
}

void BM_TranslateSurveillance(benchmark::State& state) {
  PropRegistry props;
  Formula f = parse("([]<> (a || b)) && ([]<> c) && ([] !e) && ([]<> d)", props);
  for (auto _ : state) {
    Nba nba = translate(f);
    benchmark::DoNotOptimize(nba.num_states);
  }
}
BENCHMARK(BM_TranslateSurveillance);

void BM_LassoAcceptance(benchmark::State& state) {
  PropRegistry props;
  Formula f = parse("([]<> a) && (!b U a)", props);
  Nba nba = translate(f);
  LassoChecker checker(nba);
  PropId a = *props.find("a"), b = *props.find("b");
  LassoWord w{{make_letter({b})}, {make_letter({}), make_letter({a})}};
  for (auto _ : state) benchmark::DoNotOptimize(checker.accepts(w));
}
BENCHMARK(BM_LassoAcceptance);

void BM_ScheduleTwelveTeams(benchmark::State& state) {
  TeamStructure ts;
  std::vector<std::vector<int>> teams = {{1, 2, 9},     {3, 4, 5},  {3, 6},     {1, 3},
                                         {2, 5, 6, 11}, {4, 12},    {5, 9},     {4, 9, 12},
                                         {6, 7, 10},    {7, 8, 11}, {8, 10, 11, 12}, {7, 10}};
  for (const auto& team : teams) {
    std::vector<int> members;
    for (int id : team) members.push_back(id - 1);
    std::sort(members.begin(), members.end());
    ts.members.push_back(members);
    ts.comm_sets.push_back({});
  }
  ts.build_derived(12);
  TeamGraph g = build_team_graph(ts);
  TeamSequence seq = build_sequence(g, 0);
  for (auto _ : state) {
    auto schedules = construct_schedules(ts, g, seq);
    benchmark::DoNotOptimize(schedules.size());
  }
}
BENCHMARK(BM_ScheduleTwelveTeams);

// The per robot synthesis step at the large scale: 300 locations times a
// two obligation automaton, one full product plus the optimal suffix loop.
void BM_SuffixSynthesis300(benchmark::State& state) {
  PropRegistry props;
  Wts w = grid_wts(15, 20, props);
  Formula psi =
      Formula::conj(Formula::always(Formula::eventually(Formula::atom(w.label[37]))),
                    Formula::always(Formula::eventually(Formula::atom(w.label[240]))));
  Nba nba = translate(psi);
  Product warm(w, nba);
  auto plan = find_feasible_plan(warm);
  ProductState anchor = plan->anchor();
  for (auto _ : state) {
    Product p(w, nba);
    auto loop = optimal_suffix_loop(p, anchor);
    benchmark::DoNotOptimize(loop->size());
  }
}
BENCHMARK(BM_SuffixSynthesis300)->Unit(benchmark::kMillisecond);

void BM_InitializeDesk(benchmark::State& state) {
  Scenario s = load_scenario_file(scenario_path("desk.json"));
  for (auto _ : state) {
    auto init = initialize(s);
    benchmark::DoNotOptimize(init->assignment.size());
  }
}
BENCHMARK(BM_InitializeDesk)->Unit(benchmark::kMillisecond);

void BM_SimulateDesk(benchmark::State& state) {
  Scenario s = load_scenario_file(scenario_path("desk.json"));
  auto init = initialize(s);
  SimOptions opt;
  opt.max_iterations = 20;
  for (auto _ : state) {
    SimResult res = simulate(s, *init, opt);
    benchmark::DoNotOptimize(res.events.size());
  }
}
BENCHMARK(BM_SimulateDesk)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
