#include "inp/wts.hpp"

#include <algorithm>
#include <stdexcept>

namespace inp {

bool Wts::has_transition(int from, int to) const {
  const auto& row = adj[from];
  auto it = std::lower_bound(row.begin(), row.end(), to,
                             [](const auto& e, int t) { return e.first < t; });
  return it != row.end() && it->first == to;
}

double Wts::weight(int from, int to) const {
  const auto& row = adj[from];
  auto it = std::lower_bound(row.begin(), row.end(), to,
                             [](const auto& e, int t) { return e.first < t; });
  if (it == row.end() || it->first != to)
    throw std::invalid_argument("Wts::weight: no transition between the given states");
  return it->second;
}

Wts build_wts(const Scenario& s, int robot_index) {
  const Workspace& ws = s.workspace;
  const RobotSpec& robot = s.robots.at(robot_index);
  Wts w;
  w.robot = robot_index;
  w.initial = robot.initial;
  w.adj.assign(ws.num_locations(), {});
  w.label = s.location_prop;
  for (std::size_t e = 0; e < ws.edges.size(); ++e) {
    auto [a, b] = ws.edges[e];
    auto key = std::minmax(a, b);
    if (robot.blocked_edges.count({key.first, key.second})) continue;
    w.adj[a].emplace_back(b, ws.edge_lengths[e]);
    w.adj[b].emplace_back(a, ws.edge_lengths[e]);
  }
  for (int q = 0; q < ws.num_locations(); ++q) w.adj[q].emplace_back(q, 0.0);
  for (auto& row : w.adj) std::sort(row.begin(), row.end());
  return w;
}

double path_cost(const Wts& w, std::span<const int> states) {
  double cost = 0.0;
  for (std::size_t k = 1; k < states.size(); ++k) cost += w.weight(states[k - 1], states[k]);
  return cost;
}

double loop_cost(const Wts& w, std::span<const int> states) {
  if (states.empty()) return 0.0;
  return path_cost(w, states) + w.weight(states.back(), states.front());
}

}  // namespace inp
