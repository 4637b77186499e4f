// Acceptance suite: one test case per shipped guarantee, each printing a
// PASS/FAIL line with its runtime. Tolerances and bounds are fixed here, not
// tuned per run.

#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "inp/executor.hpp"
#include "inp/planner.hpp"
#include "support.hpp"

using namespace inp;

namespace {

std::string scenario_path(const char* name) {
  return std::string(INP_SCENARIO_DIR) + "/" + name;
}

struct Criterion {
  const char* label;
  bool ok = true;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Criterion(const char* l) : label(l) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  ~Criterion() {
    std::printf("[acceptance] %s: %s (%.2f s)\n", label, ok ? "PASS" : "FAIL", elapsed());
    std::fflush(stdout);
  }
};

#define ACCEPT(crit, cond)      \
  do {                          \
    bool accept_c_ = (cond);    \
    (crit).ok &= accept_c_;     \
    CHECK(accept_c_);           \
  } while (0)

struct FuzzRun {
  Scenario scenario;
  SimResult result;
  Metrics m;
};

// Shared corpus for the monotonicity, convergence, and task satisfaction
// criteria: the bundled desk scenario plus twenty fuzzed ones whose
// initialization succeeds, all run for up to 24 iterations.
const std::vector<FuzzRun>& monotonicity_corpus() {
  static const std::vector<FuzzRun> corpus = [] {
    std::vector<FuzzRun> out;
    SimOptions opt;
    opt.max_iterations = 24;
    auto add = [&](Scenario s) {
      auto init = initialize(s);
      if (!init) return false;
      SimResult res = simulate(s, *init, opt);
      Metrics m = metrics(s, res);
      out.push_back({std::move(s), std::move(res), std::move(m)});
      return true;
    };
    REQUIRE(add(load_scenario_file(scenario_path("desk.json"))));
    std::mt19937 rng(20250809);
    while (out.size() < 21) add(load_scenario(test::random_scenario_json(rng)));
    return out;
  }();
  return corpus;
}

}  // namespace

TEST_CASE("criterion 1: schedule construction reproduces the worked example exactly") {
  Criterion crit("criterion 1 (worked schedule example, exact)");
  TeamStructure ts = test::make_teams({{1, 2}, {2, 3}, {3, 1}}, 3);
  TeamGraph g = build_team_graph(ts);
  std::vector<Schedule> schedules = construct_schedules(ts, g, {0, 1, 2});
  REQUIRE(schedules.size() == 3);
  ACCEPT(crit, schedules[0].entries == std::vector<int>({0, 2, kNoEvent}));
  ACCEPT(crit, schedules[1].entries == std::vector<int>({0, kNoEvent, 1}));
  ACCEPT(crit, schedules[2].entries == std::vector<int>({kNoEvent, 2, 1}));
  ACCEPT(crit, verify_schedules(schedules, ts, g).empty());
  ACCEPT(crit, crit.elapsed() < 1.0);
}

TEST_CASE("criterion 2: the length bound always suffices on fuzzed team structures") {
  Criterion crit("criterion 2 (schedule length bound, 500 fuzzed structures)");
  std::mt19937 rng(424243);
  int failures = 0, violations = 0;
  for (int i = 0; i < 500; ++i) {
    TeamStructure ts = test::random_team_structure(rng, 8, 10);
    TeamGraph g = build_team_graph(ts);
    TeamSequence seq = build_sequence(g, 0);
    try {
      std::vector<Schedule> schedules = construct_schedules(ts, g, seq);
      for (const auto& s : schedules)
        if (s.length() != g.max_degree() + 1) ++failures;
      violations += static_cast<int>(verify_schedules(schedules, ts, g).size());
    } catch (const std::exception&) {
      ++failures;
    }
  }
  ACCEPT(crit, failures == 0);
  ACCEPT(crit, violations == 0);
  ACCEPT(crit, crit.elapsed() < 30.0);
}

TEST_CASE("criterion 3: automaton acceptance equals the direct semantics") {
  Criterion crit("criterion 3 (LTL pipeline oracle equivalence, 200 formulas)");
  PropRegistry props;
  std::vector<PropId> ids = {props.intern("a"), props.intern("b"), props.intern("c")};
  std::mt19937 rng(987654321);
  long mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    int nprops = 1 + static_cast<int>(rng() % 3);
    std::vector<PropId> subset(ids.begin(), ids.begin() + nprops);
    Formula f = test::random_formula(rng, 4, subset);
    mismatches += test::oracle_mismatches(f);
  }
  ACCEPT(crit, mismatches == 0);
  ACCEPT(crit, crit.elapsed() < 120.0);
}

TEST_CASE("criterion 4: suffix loops are exactly optimal on small products") {
  Criterion crit("criterion 4 (suffix optimality vs brute force, 50 products)");
  PropRegistry props;
  std::vector<PropId> labels;
  for (int i = 1; i <= 15; ++i) labels.push_back(props.intern("v" + std::to_string(i)));
  std::mt19937 rng(11223344);
  int checked = 0, exact_enumerations = 0;
  while (checked < 50) {
    int n = 4 + static_cast<int>(rng() % 12);
    std::vector<std::tuple<int, int, double>> edges;
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        if (b == a + 1 || rng() % 4 == 0)
          edges.push_back({a, b, 1.0 + static_cast<double>(rng() % 16)});
    std::vector<PropId> scope(labels.begin(), labels.begin() + n);
    Wts w = test::make_wts(n, edges, scope);
    std::vector<PropId> props_used(scope.begin(),
                                   scope.begin() + 2 + static_cast<int>(rng() % 2));
    Formula psi = test::random_formula(rng, 3, props_used);
    Product p(w, translate(psi));
    if (p.num_states() > 200) continue;
    auto plan = find_feasible_plan(p);
    if (!plan) continue;
    auto loop = optimal_suffix_loop(p, plan->anchor());
    REQUIRE(loop.has_value());
    std::vector<int> locs;
    for (const auto& st : *loop) locs.push_back(st.loc);
    double mine = loop_cost(w, locs);
    ACCEPT(crit, mine == test::floyd_warshall_min_cycle(p, plan->anchor()));
    if (p.num_states() <= 70) {
      ACCEPT(crit, mine == test::enumerate_min_cycle(p, plan->anchor()));
      ++exact_enumerations;
    }
    ++checked;
  }
  ACCEPT(crit, exact_enumerations >= 15);
  ACCEPT(crit, crit.elapsed() < 60.0);
}

TEST_CASE("criterion 5: the per iteration total cost never increases") {
  Criterion crit("criterion 5 (cost monotonicity, desk + 20 fuzzed)");
  int violations = 0;
  for (const FuzzRun& run : monotonicity_corpus()) {
    REQUIRE(run.m.total_cost.size() >= 2);
    for (std::size_t i = 1; i < run.m.total_cost.size(); ++i)
      if (run.m.total_cost[i] > run.m.total_cost[i - 1] + 1e-9) ++violations;
    // The per event working suffix sums obey the same inequality.
    for (const auto& ev : run.result.events)
      if (ev.type == SimEvent::Type::Replan && ev.cost > ev.previous_cost + 1e-9) ++violations;
  }
  ACCEPT(crit, violations == 0);
  ACCEPT(crit, crit.elapsed() < 300.0);
}

TEST_CASE("criterion 6: every run settles into a repeating cycle within 20 iterations") {
  Criterion crit("criterion 6 (convergence to a repeating cycle)");
  for (const FuzzRun& run : monotonicity_corpus()) {
    auto conv = run.result.convergence();
    ACCEPT(crit, conv.has_value());
    if (!conv) continue;
    ACCEPT(crit, conv->C <= 20);
    for (const auto& paths : run.result.paths) {
      REQUIRE(paths.size() > static_cast<std::size_t>(conv->C + 1));
      ACCEPT(crit, same_route(paths[static_cast<std::size_t>(conv->C + 1)],
                              paths[static_cast<std::size_t>(conv->P)]));
    }
  }
}

TEST_CASE("criterion 7: no deadlocks, and communication keeps accruing") {
  Criterion crit("criterion 7 (deadlock freedom + intermittent connectivity)");
  std::mt19937 rng(55667788);
  int scenarios = 0, deadlocks = 0, stalled_teams = 0;
  while (scenarios < 100) {
    Scenario s = load_scenario(test::random_scenario_json(rng));
    auto init = initialize(s);
    if (!init) continue;
    ++scenarios;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SimOptions half, full;
      half.seed_override = seed;
      full.seed_override = seed;
      half.time_horizon = 250.0;
      full.time_horizon = 500.0;
      half.max_iterations = full.max_iterations = 1 << 28;
      SimResult h = simulate(s, *init, half);
      SimResult f = simulate(s, *init, full);
      if (h.deadlock || f.deadlock) ++deadlocks;
      for (int m = 0; m < s.teams.num_teams(); ++m)
        if (f.team_event_times[m].size() <= h.team_event_times[m].size()) ++stalled_teams;
    }
  }
  ACCEPT(crit, deadlocks == 0);
  ACCEPT(crit, stalled_teams == 0);
  ACCEPT(crit, crit.elapsed() < 600.0);
}

TEST_CASE("criterion 8: converged plans satisfy every robot's task") {
  Criterion crit("criterion 8 (task satisfaction after convergence)");
  int failures = 0;
  for (const FuzzRun& run : monotonicity_corpus()) {
    auto conv = run.result.convergence();
    REQUIRE(conv.has_value());
    for (int r = 0; r < run.scenario.num_robots(); ++r) {
      Wts w = build_wts(run.scenario, r);
      LassoWord word;
      const auto& paths = run.scenario.num_robots() ? run.result.paths[r] : run.result.paths[r];
      for (int n = 0; n < conv->P; ++n)
        for (int loc : paths[static_cast<std::size_t>(n)].states)
          word.prefix.push_back({w.label[loc]});
      for (int n = conv->P; n <= conv->C; ++n)
        for (int loc : paths[static_cast<std::size_t>(n)].states)
          word.suffix.push_back({w.label[loc]});
      if (!evaluate_lasso(run.scenario.robots[r].task, word)) ++failures;
    }
  }
  ACCEPT(crit, failures == 0);
}

TEST_CASE("criterion 9: consensus converges and synthesis is fast at scale") {
  Criterion crit("criterion 9 (consensus + synthesis time at the large scale)");

  // Desk scenario: spread is monotone and ends below 1e-6 before the horizon.
  {
    Scenario s = load_scenario_file(scenario_path("desk.json"));
    auto init = initialize(s);
    REQUIRE(init.has_value());
    SimOptions opt;
    opt.max_iterations = 20;
    SimResult res = simulate(s, *init, opt);
    Metrics m = metrics(s, res);
    REQUIRE(!m.consensus_spread.empty());
    bool monotone = true;
    for (std::size_t i = 1; i < m.consensus_spread.size(); ++i)
      if (m.consensus_spread[i].second > m.consensus_spread[i - 1].second + 1e-12)
        monotone = false;
    ACCEPT(crit, monotone);
    ACCEPT(crit, m.consensus_spread.back().second < 1e-6);
    ACCEPT(crit, res.end_time < opt.time_horizon);
  }

  // One suffix synthesis on a 300 location system with an automaton of at
  // most 16 states completes within five seconds.
  {
    PropRegistry props;
    std::vector<PropId> labels;
    for (int i = 1; i <= 300; ++i) labels.push_back(props.intern("v" + std::to_string(i)));
    std::vector<std::tuple<int, int, double>> edges;
    const int cols = 20;
    for (int r = 0; r < 15; ++r)
      for (int c = 0; c < cols; ++c) {
        int id = r * cols + c + 1;
        if (c + 1 < cols) edges.push_back({id, id + 1, 7.0});
        if (r + 1 < 15) edges.push_back({id, id + cols, 7.0});
      }
    Wts w = test::make_wts(300, edges, labels);
    Formula psi = Formula::conj(Formula::always(Formula::eventually(Formula::atom(labels[37]))),
                                Formula::always(Formula::eventually(Formula::atom(labels[240]))));
    Nba nba = translate(psi);
    ACCEPT(crit, nba.num_states <= 16);

    auto t0 = std::chrono::steady_clock::now();
    Product p(w, nba);
    auto plan = find_feasible_plan(p);
    REQUIRE(plan.has_value());
    auto loop = optimal_suffix_loop(p, plan->anchor());
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    REQUIRE(loop.has_value());
    ACCEPT(crit, dt < 5.0);
  }
}
