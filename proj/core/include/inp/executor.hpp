#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>

#include "inp/planner.hpp"

namespace inp {

struct SimOptions {
  std::optional<std::uint64_t> seed_override;
  double time_horizon = 10000.0;
  int max_iterations = 20;
  int max_candidates = 0;  // 0: price every candidate point at replans
};

/// One event log record; written as a JSON line. Robot and location fields
/// carry the scenario's external ids, teams are 1 based.
struct SimEvent {
  enum class Type { IterationStart, Arrive, WaitStart, Comm, Consensus, Replan };
  Type type;
  double t = 0.0;
  int robot = -1;
  int loc = -1;
  int team = -1;
  int iteration = -1;
  int position = -1;                // index into the active segment
  std::vector<int> participants;    // Comm
  int chosen = -1;                  // Replan: selected location id
  double cost = 0.0;                // Replan: sum of new suffix loop costs
  double previous_cost = 0.0;       // Replan: sum of pre event loop costs
  std::vector<double> values;       // Consensus snapshot
  double spread = 0.0;              // Consensus: max pairwise difference
};

struct DeadlockReport {
  double t = 0.0;
  std::string description;
};

/// Mutable execution state, exposed for the watchdog and for tests.
struct SimState {
  double now = 0.0;
  std::vector<int> position;                 // per robot, index into segment
  std::vector<int> iteration;                // per robot, n_i
  std::vector<std::optional<int>> waiting_for;  // per robot, team or nullopt
  std::vector<std::set<int>> waiting_sets;   // per team, robot indices
  std::vector<double> consensus;             // per robot
};

/// The stationary configuration detector: reports when every robot waits at
/// a communication point and no team is fully assembled. Reachability of
/// this state is a defect, never an expected outcome.
std::optional<DeadlockReport> deadlock_watchdog(const SimState& state, const TeamStructure& ts);

/// Consensus step at a communication event: members average their values.
void consensus_update(std::vector<double>& values, const std::vector<int>& members);

struct SimResult {
  std::vector<SimEvent> events;
  std::vector<std::vector<PathSegment>> paths;   // per robot, path^0..path^n
  std::vector<std::vector<double>> team_event_times;  // per team
  std::vector<std::vector<double>> iteration_start_times;  // per robot
  std::vector<int> anchor_locs;                  // per robot, anchor location index
  std::vector<CommAssignment> assignments;       // A_0, A_1, ... per completed round
  std::optional<DeadlockReport> deadlock;
  double end_time = 0.0;

  /// First recurrence of a round assignment: (P, C) with A_C == A_{P-1}.
  struct Convergence {
    int P = 0;
    int C = 0;
  };
  std::optional<Convergence> convergence() const;
};

/// Seeded, deterministic asynchronous execution of the initialized plans.
/// Travel times are drawn per hop at departure from the scenario's uniform
/// range; arrivals are ordered by (time, robot). Stops at the time horizon
/// or once every robot has started its max_iterations-th path.
SimResult simulate(const Scenario& s, Initialized init, const SimOptions& options = {});

struct Metrics {
  std::vector<double> total_cost;        // per iteration, sum over robots of J(path^n)
  std::vector<double> loop_cost_sum;     // per iteration, sum of suffix loop costs
  std::vector<std::vector<double>> team_gaps;  // per team, inter event gaps
  std::vector<double> sync_witnesses;    // per iteration n, a time all robots run path^n
  std::vector<std::pair<double, double>> consensus_spread;  // (t, max spread)
  std::optional<SimResult::Convergence> convergence;
};

Metrics metrics(const Scenario& s, const SimResult& result);

void write_events_jsonl(std::ostream& out, const Scenario& s, const SimResult& result);
void write_costs_csv(std::ostream& out, const Metrics& m);

}  // namespace inp
