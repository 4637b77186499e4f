#pragma once

// Shared helpers for the unit and acceptance suites: exhaustive small lasso
// enumeration, random formulas, and random scenario generation.

#include <functional>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "inp/formula.hpp"
#include "inp/lasso.hpp"
#include "inp/nba.hpp"
#include "inp/product.hpp"
#include "inp/schedule.hpp"
#include "inp/translate.hpp"

namespace inp::test {

inline std::vector<Letter> all_letters(const std::vector<PropId>& props) {
  std::vector<Letter> out;
  const std::size_t n = props.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Letter l;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) l.push_back(props[i]);
    out.push_back(std::move(l));
  }
  return out;
}

/// Every lasso with prefix length <= max_prefix and suffix length in
/// [1, max_suffix] over the full letter alphabet of `props`.
inline std::vector<LassoWord> all_lassos(const std::vector<PropId>& props, int max_prefix,
                                         int max_suffix) {
  std::vector<Letter> letters = all_letters(props);
  const std::size_t base = letters.size();
  std::vector<LassoWord> out;
  auto words_of_length = [&](int len) {
    std::vector<std::vector<Letter>> words;
    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    while (true) {
      std::vector<Letter> w;
      for (std::size_t i : idx) w.push_back(letters[i]);
      words.push_back(std::move(w));
      int k = len - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == base) {
        idx[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
    return words;
  };
  for (int pre = 0; pre <= max_prefix; ++pre) {
    auto prefixes = words_of_length(pre);
    for (int suf = 1; suf <= max_suffix; ++suf) {
      auto suffixes = words_of_length(suf);
      for (const auto& p : prefixes)
        for (const auto& sfx : suffixes) out.push_back({p, sfx});
    }
  }
  return out;
}

inline Formula random_formula(std::mt19937& rng, int depth, const std::vector<PropId>& props) {
  auto pick_atom = [&] {
    std::uniform_int_distribution<std::size_t> d(0, props.size() - 1);
    return Formula::atom(props[d(rng)]);
  };
  if (depth <= 0) {
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
      case 0:
        return Formula::top();
      case 1:
        return Formula::bottom();
      default:
        return pick_atom();
    }
  }
  switch (std::uniform_int_distribution<int>(0, 8)(rng)) {
    case 0:
      return pick_atom();
    case 1:
      return Formula::negation(random_formula(rng, depth - 1, props));
    case 2:
      return Formula::conj(random_formula(rng, depth - 1, props),
                           random_formula(rng, depth - 1, props));
    case 3:
      return Formula::disj(random_formula(rng, depth - 1, props),
                           random_formula(rng, depth - 1, props));
    case 4:
      return Formula::until(random_formula(rng, depth - 1, props),
                            random_formula(rng, depth - 1, props));
    case 5:
      return Formula::eventually(random_formula(rng, depth - 1, props));
    case 6:
      return Formula::always(random_formula(rng, depth - 1, props));
    case 7:
      return Formula::next(random_formula(rng, depth - 1, props));
    default:
      return Formula::release(random_formula(rng, depth - 1, props),
                              random_formula(rng, depth - 1, props));
  }
}

/// Number of lassos on which automaton acceptance disagrees with the direct
/// semantics, over every lasso with prefix <= 2 and suffix <= 3.
inline int oracle_mismatches(const Formula& f) {
  std::vector<PropId> props = props_of(f);
  Nba nba = translate(f);
  LassoChecker checker(nba);
  int bad = 0;
  for (const LassoWord& w : all_lassos(props, 2, 3))
    if (checker.accepts(w) != evaluate_lasso(f, w)) ++bad;
  return bad;
}

/// Team structure from 1 based robot id lists; comm sets are left empty.
inline TeamStructure make_teams(const std::vector<std::vector<int>>& teams, int num_robots) {
  TeamStructure ts;
  for (const auto& team : teams) {
    std::vector<int> members;
    for (int id : team) members.push_back(id - 1);
    std::sort(members.begin(), members.end());
    ts.members.push_back(std::move(members));
    ts.comm_sets.push_back({});
  }
  ts.build_derived(num_robots);
  return ts;
}

/// Workspace-free transition system over `n` locations with the given
/// undirected weighted edges (1 based ids); self loops are added like the
/// scenario loader does.
inline Wts make_wts(int n, const std::vector<std::tuple<int, int, double>>& edges,
                    const std::vector<PropId>& labels, int initial_1based = 1) {
  Wts w;
  w.robot = 0;
  w.initial = initial_1based - 1;
  w.adj.assign(static_cast<std::size_t>(n), {});
  w.label = labels;
  for (auto [a, b, len] : edges) {
    w.adj[static_cast<std::size_t>(a - 1)].emplace_back(b - 1, len);
    w.adj[static_cast<std::size_t>(b - 1)].emplace_back(a - 1, len);
  }
  for (int q = 0; q < n; ++q) w.adj[static_cast<std::size_t>(q)].emplace_back(q, 0.0);
  for (auto& row : w.adj) std::sort(row.begin(), row.end());
  return w;
}

/// Minimum weight cycle through the anchor by all pairs shortest paths, an
/// independent route to the same quantity the planner's Dijkstra computes.
inline double floyd_warshall_min_cycle(const Product& p, ProductState anchor) {
  const int n = p.num_states();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), inf));
  for (int s = 0; s < n; ++s) {
    for (const auto& e : p.out(s))
      dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(e.to)] =
          std::min(dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(e.to)], e.weight);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] == inf) continue;
      for (int j = 0; j < n; ++j) {
        double through = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                         dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (through < dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = through;
      }
    }
  const int a = p.pack(anchor);
  double best = inf;
  for (int s = 0; s < n; ++s) {
    for (const auto& e : p.out(s)) {
      if (e.to != a) continue;
      double start = s == a ? 0.0 : dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)];
      if (start != inf) best = std::min(best, start + e.weight);
    }
  }
  return best;
}

/// Exhaustive minimum over simple cycles through the anchor; exponential,
/// only for tiny products.
inline double enumerate_min_cycle(const Product& p, ProductState anchor) {
  const int a = p.pack(anchor);
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> on_path(static_cast<std::size_t>(p.num_states()), 0);
  struct Frame {
    int node;
    double cost;
  };
  std::function<void(int, double)> walk = [&](int node, double cost) {
    if (cost >= best) return;
    for (const auto& e : p.out(node)) {
      if (e.to == a) best = std::min(best, cost + e.weight);
      else if (!on_path[static_cast<std::size_t>(e.to)]) {
        on_path[static_cast<std::size_t>(e.to)] = 1;
        walk(e.to, cost + e.weight);
        on_path[static_cast<std::size_t>(e.to)] = 0;
      }
    }
  };
  on_path[static_cast<std::size_t>(a)] = 1;
  walk(a, 0.0);
  return best;
}

/// Random team structure covering every robot, with a connected membership
/// graph; up to the given team and robot counts.
inline TeamStructure random_team_structure(std::mt19937& rng, int max_teams, int max_robots) {
  int teams = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_teams));
  int robots = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_robots));
  std::vector<std::vector<int>> membership(static_cast<std::size_t>(teams));
  for (auto& team : membership) {
    int size = 1 + static_cast<int>(rng() % 4u);
    for (int k = 0; k < size; ++k) team.push_back(1 + static_cast<int>(rng() % robots));
    std::sort(team.begin(), team.end());
    team.erase(std::unique(team.begin(), team.end()), team.end());
  }
  std::vector<char> covered(static_cast<std::size_t>(robots) + 1, 0);
  for (const auto& team : membership)
    for (int r : team) covered[static_cast<std::size_t>(r)] = 1;
  for (int r = 1; r <= robots; ++r) {
    if (covered[static_cast<std::size_t>(r)]) continue;
    auto& team = membership[rng() % membership.size()];
    team.push_back(r);
    std::sort(team.begin(), team.end());
  }
  // Stitch components together by injecting shared robots.
  while (true) {
    TeamStructure ts = make_teams(membership, robots);
    auto comps = team_components(ts);
    if (comps.size() <= 1) return ts;
    int a = comps[0][rng() % comps[0].size()];
    int b = comps[1][rng() % comps[1].size()];
    int shared = membership[static_cast<std::size_t>(a)][0];
    auto& team = membership[static_cast<std::size_t>(b)];
    team.push_back(shared);
    std::sort(team.begin(), team.end());
    team.erase(std::unique(team.begin(), team.end()), team.end());
  }
}

/// Random grid scenario document. Tasks use only positive obligations, so
/// initialization is feasible whenever the grid is connected (it always is).
/// An optional avoidance task is thrown in sometimes; callers that need a
/// feasible corpus should skip scenarios whose initialization fails.
inline std::string random_scenario_json(std::mt19937& rng, bool allow_negation = true) {
  int rows = 2 + static_cast<int>(rng() % 2);
  int cols = 3 + static_cast<int>(rng() % 3);
  int n_loc = rows * cols;
  auto id_at = [&](int r, int c) { return r * cols + c + 1; };

  std::string locs, edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (!locs.empty()) locs += ",";
      locs += "{\"id\": " + std::to_string(id_at(r, c)) + ", \"pos\": [" +
              std::to_string(c * 10) + ", " + std::to_string(r * 10) + "]}";
      if (c + 1 < cols) {
        if (!edges.empty()) edges += ",";
        edges += "[" + std::to_string(id_at(r, c)) + "," + std::to_string(id_at(r, c + 1)) +
                 "," + std::to_string(4 + static_cast<int>(rng() % 7)) + "]";
      }
      if (r + 1 < rows) {
        if (!edges.empty()) edges += ",";
        edges += "[" + std::to_string(id_at(r, c)) + "," + std::to_string(id_at(r + 1, c)) +
                 "," + std::to_string(4 + static_cast<int>(rng() % 7)) + "]";
      }
    }

  TeamStructure ts = random_team_structure(rng, 5, 4);
  int n_rob = static_cast<int>(ts.teams_of.size());

  int n_comm = 2 + static_cast<int>(rng() % std::min(4, n_loc - 2));
  std::vector<int> comm;
  while (static_cast<int>(comm.size()) < n_comm) {
    int id = 1 + static_cast<int>(rng() % n_loc);
    if (std::find(comm.begin(), comm.end(), id) == comm.end()) comm.push_back(id);
  }
  std::sort(comm.begin(), comm.end());
  std::string comm_json;
  for (int id : comm) comm_json += (comm_json.empty() ? "" : ",") + std::to_string(id);

  auto random_non_comm = [&] {
    while (true) {
      int id = 1 + static_cast<int>(rng() % n_loc);
      if (std::find(comm.begin(), comm.end(), id) == comm.end()) return id;
    }
  };

  std::string robots;
  for (int r = 0; r < n_rob; ++r) {
    int a = random_non_comm(), b = random_non_comm();
    std::string task;
    switch (rng() % (allow_negation ? 6u : 5u)) {
      case 0: task = "true"; break;
      case 1: task = "[]<> v" + std::to_string(a); break;
      case 2: task = "<> v" + std::to_string(a); break;
      case 3: task = "[]<> (v" + std::to_string(a) + " || v" + std::to_string(b) + ")"; break;
      case 4: task = "(<> v" + std::to_string(a) + ") && ([]<> v" + std::to_string(b) + ")"; break;
      default:
        task = a == b ? "[]<> v" + std::to_string(a)
                      : "([] !v" + std::to_string(a) + ") && ([]<> v" + std::to_string(b) + ")";
    }
    if (!robots.empty()) robots += ",";
    robots += "{\"id\": " + std::to_string(r + 1) + ", \"initial\": " +
              std::to_string(1 + static_cast<int>(rng() % n_loc)) + ", \"task\": \"" + task +
              "\"}";
  }

  std::string teams;
  for (int m = 0; m < ts.num_teams(); ++m) {
    std::string members, cset;
    for (int r : ts.members[m]) members += (members.empty() ? "" : ",") + std::to_string(r + 1);
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<int> chosen;
    for (int i = 0; i < k; ++i) chosen.push_back(comm[rng() % comm.size()]);
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    for (int id : chosen) cset += (cset.empty() ? "" : ",") + std::to_string(id);
    if (!teams.empty()) teams += ",";
    teams += "{\"members\": [" + members + "], \"comm_set\": [" + cset + "]}";
  }

  return "{\"format\": 1, \"locations\": [" + locs + "], \"edges\": [" + edges +
         "], \"comm_points\": [" + comm_json + "], \"robots\": [" + robots + "], \"teams\": [" +
         teams + "], \"alpha\": 0.5, \"travel_time\": {\"lo\": 1.0, \"hi\": 2.0}, \"seed\": " +
         std::to_string(rng() % 100000) + "}";
}

}  // namespace inp::test
