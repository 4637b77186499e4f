#pragma once

#include <optional>
#include <span>

#include "inp/nba.hpp"
#include "inp/wts.hpp"

namespace inp {

struct ProductState {
  int loc = 0;   // wTS location index
  int nba = 0;   // automaton state
  friend bool operator==(const ProductState&, const ProductState&) = default;
  friend auto operator<=>(const ProductState&, const ProductState&) = default;
};

/// Synchronous product of a robot's transition system with an automaton.
/// A product edge exists when the robot can move and the automaton can read
/// the label of the source location; its weight is the travel distance.
class Product {
public:
  Product(const Wts& wts, const Nba& nba);

  int num_states() const { return num_loc_ * num_nba_; }
  int pack(ProductState s) const { return s.loc * num_nba_ + s.nba; }
  ProductState unpack(int id) const { return {id / num_nba_, id % num_nba_}; }

  struct Edge {
    int to;
    double weight;
  };
  std::span<const Edge> out(int id) const;
  const std::vector<int>& initial() const { return initial_; }
  bool accepting(int id) const;
  const Wts& wts() const { return *wts_; }

private:
  const Wts* wts_;
  int num_loc_;
  int num_nba_;
  std::vector<int> initial_;
  std::vector<char> accepting_;
  std::vector<Edge> edges_;
  std::vector<int> row_;
};

/// Lasso through the product: a prefix from an initial state to an accepting
/// anchor, and a loop that starts at the anchor and whose last state has a
/// transition back to it. The anchor appears once at the head of the suffix.
struct PrefixSuffixPlan {
  std::vector<ProductState> prefix;  // ends at the anchor
  std::vector<ProductState> suffix;  // starts at the anchor

  ProductState anchor() const { return suffix.front(); }
  std::vector<int> prefix_locations() const;
  std::vector<int> suffix_locations() const;
};

/// Any accepting lasso, found by breadth first search (shortest prefix in
/// hops, then the hop shortest cycle); deterministic given the product.
/// Feasibility only; costs are optimized by later replanning.
std::optional<PrefixSuffixPlan> find_feasible_plan(const Product& p);

/// Minimum weight loop through the anchor: Dijkstra from the anchor plus the
/// closing hop, ties broken towards smaller state ids. The returned sequence
/// starts at the anchor and omits its closing repetition.
std::optional<std::vector<ProductState>> optimal_suffix_loop(const Product& p,
                                                             ProductState anchor);

/// J_p = alpha * J(prefix) + (1 - alpha) * J(suffix); the suffix cost
/// includes the loop closing hop.
double plan_cost(const Wts& w, const PrefixSuffixPlan& plan, double alpha);

/// The word produced by executing the plan: labels of the prefix states up
/// to (excluding) the anchor, then the labels of the loop repeated forever.
LassoWord plan_trace(const Wts& w, const PrefixSuffixPlan& plan);

}  // namespace inp
