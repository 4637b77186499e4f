#pragma once

#include <span>
#include <vector>

#include "inp/scenario.hpp"

namespace inp {

/// Weighted transition system for one robot: a state per workspace location,
/// transitions along workspace edges (minus the robot's blocked ones) plus a
/// zero weight self loop per state so the robot may stay in place.
struct Wts {
  int robot = -1;    // robot index
  int initial = 0;   // location index
  std::vector<std::vector<std::pair<int, double>>> adj;  // sorted by target
  std::vector<PropId> label;  // location index -> proposition

  int num_states() const { return static_cast<int>(adj.size()); }
  bool has_transition(int from, int to) const;
  /// Weight of an existing transition; throws std::invalid_argument otherwise.
  double weight(int from, int to) const;
};

Wts build_wts(const Scenario& s, int robot_index);

/// Sum of weights along consecutive pairs; empty or singleton paths cost 0.
/// Throws std::invalid_argument when a pair is not a transition.
double path_cost(const Wts& w, std::span<const int> states);

/// Cost of one traversal of a loop: pairwise weights plus the closing hop
/// from the last state back to the first.
double loop_cost(const Wts& w, std::span<const int> states);

}  // namespace inp
