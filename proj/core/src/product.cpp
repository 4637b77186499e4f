#include "inp/product.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

namespace inp {

Product::Product(const Wts& wts, const Nba& nba)
    : wts_(&wts), num_loc_(wts.num_states()), num_nba_(nba.num_states) {
  for (int b : nba.initial) initial_.push_back(pack({wts.initial, b}));
  accepting_.assign(num_states(), 0);
  for (int loc = 0; loc < num_loc_; ++loc)
    for (int b : nba.accepting) accepting_[pack({loc, b})] = 1;

  // The automaton reads the label of the source location while the robot
  // moves, so enabled automaton steps depend only on the source.
  row_.assign(num_states() + 1, 0);
  std::vector<std::vector<int>> enabled(num_nba_);
  for (int loc = 0; loc < num_loc_; ++loc) {
    Letter letter{wts.label[loc]};
    for (int b = 0; b < num_nba_; ++b) {
      enabled[b].clear();
      for (const auto& t : nba.out(b))
        if (t.guard.satisfied_by(letter)) enabled[b].push_back(t.to);
      std::sort(enabled[b].begin(), enabled[b].end());
      enabled[b].erase(std::unique(enabled[b].begin(), enabled[b].end()), enabled[b].end());
      row_[pack({loc, b}) + 1] =
          static_cast<int>(enabled[b].size() * wts.adj[loc].size());
    }
    for (int b = 0; b < num_nba_; ++b) {
      for (auto [next_loc, weight] : wts.adj[loc])
        for (int nb : enabled[b]) edges_.push_back({pack({next_loc, nb}), weight});
    }
  }
  for (int s = 0; s < num_states(); ++s) row_[s + 1] += row_[s];
}

std::span<const Product::Edge> Product::out(int id) const {
  return {edges_.data() + row_[id], edges_.data() + row_[id + 1]};
}

bool Product::accepting(int id) const { return accepting_[id]; }

std::vector<int> PrefixSuffixPlan::prefix_locations() const {
  std::vector<int> out;
  out.reserve(prefix.size());
  for (const auto& s : prefix) out.push_back(s.loc);
  return out;
}

std::vector<int> PrefixSuffixPlan::suffix_locations() const {
  std::vector<int> out;
  out.reserve(suffix.size());
  for (const auto& s : suffix) out.push_back(s.loc);
  return out;
}

namespace {

// Parents for a hop shortest path tree; -2 marks unreached, -1 the roots.
std::vector<int> bfs_parents(const Product& p, std::span<const int> roots) {
  std::vector<int> parent(p.num_states(), -2);
  std::deque<int> queue;
  for (int r : roots) {
    if (parent[r] == -2) {
      parent[r] = -1;
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const auto& e : p.out(cur)) {
      if (parent[e.to] == -2) {
        parent[e.to] = cur;
        queue.push_back(e.to);
      }
    }
  }
  return parent;
}

std::vector<int> walk_back(const std::vector<int>& parent, int node) {
  std::vector<int> path;
  for (int cur = node; cur != -1; cur = parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

// Hop shortest cycle anchor -> ... -> anchor, empty when none exists.
std::vector<int> shortest_cycle(const Product& p, int anchor) {
  std::vector<int> parent(p.num_states(), -2);
  std::deque<int> queue;
  // Seed with the anchor's successors; reaching the anchor again closes it.
  for (const auto& e : p.out(anchor)) {
    if (e.to == anchor) return {anchor};  // self loop
    if (parent[e.to] == -2) {
      parent[e.to] = -1;
      queue.push_back(e.to);
    }
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const auto& e : p.out(cur)) {
      if (e.to == anchor) {
        std::vector<int> cycle = walk_back(parent, cur);
        cycle.insert(cycle.begin(), anchor);
        return cycle;
      }
      if (parent[e.to] == -2) {
        parent[e.to] = cur;
        queue.push_back(e.to);
      }
    }
  }
  return {};
}

}  // namespace

std::optional<PrefixSuffixPlan> find_feasible_plan(const Product& p) {
  std::vector<int> parent = bfs_parents(p, p.initial());

  // Candidate anchors by (prefix hops, state id); the first that closes a
  // cycle wins, which keeps the choice deterministic.
  std::vector<std::pair<int, int>> candidates;
  for (int id = 0; id < p.num_states(); ++id) {
    if (!p.accepting(id) || parent[id] == -2) continue;
    int depth = 0;
    for (int cur = id; parent[cur] != -1; cur = parent[cur]) ++depth;
    candidates.emplace_back(depth, id);
  }
  std::sort(candidates.begin(), candidates.end());
  for (auto [depth, id] : candidates) {
    std::vector<int> cycle = shortest_cycle(p, id);
    if (cycle.empty()) continue;
    PrefixSuffixPlan plan;
    for (int s : walk_back(parent, id)) plan.prefix.push_back(p.unpack(s));
    for (int s : cycle) plan.suffix.push_back(p.unpack(s));
    return plan;
  }
  return std::nullopt;
}

std::optional<std::vector<ProductState>> optimal_suffix_loop(const Product& p,
                                                             ProductState anchor) {
  const int src = p.pack(anchor);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(p.num_states(), kInf);
  std::vector<int> parent(p.num_states(), -2);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  parent[src] = -1;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, cur] = heap.top();
    heap.pop();
    if (d > dist[cur]) continue;
    for (const auto& e : p.out(cur)) {
      double nd = d + e.weight;
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        parent[e.to] = cur;
        heap.push({nd, e.to});
      }
    }
  }

  // Close the loop over any predecessor of the anchor; lowest cost wins,
  // ties towards the smaller predecessor id.
  double best_cost = kInf;
  int best_pred = -1;
  for (int id = 0; id < p.num_states(); ++id) {
    if (dist[id] == kInf) continue;
    for (const auto& e : p.out(id)) {
      if (e.to != src) continue;
      double cost = dist[id] + e.weight;
      if (cost < best_cost || (cost == best_cost && id < best_pred)) {
        best_cost = cost;
        best_pred = id;
      }
    }
  }
  if (best_pred < 0) return std::nullopt;
  std::vector<ProductState> loop;
  for (int s : walk_back(parent, best_pred)) loop.push_back(p.unpack(s));
  return loop;
}

double plan_cost(const Wts& w, const PrefixSuffixPlan& plan, double alpha) {
  double pre = path_cost(w, plan.prefix_locations());
  double suf = loop_cost(w, plan.suffix_locations());
  return alpha * pre + (1.0 - alpha) * suf;
}

LassoWord plan_trace(const Wts& w, const PrefixSuffixPlan& plan) {
  LassoWord word;
  for (std::size_t i = 0; i + 1 < plan.prefix.size(); ++i)
    word.prefix.push_back({w.label[plan.prefix[i].loc]});
  for (const auto& s : plan.suffix) word.suffix.push_back({w.label[s.loc]});
  return word;
}

}  // namespace inp
