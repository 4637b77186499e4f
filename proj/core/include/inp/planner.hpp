#pragma once

#include <map>
#include <optional>

#include "inp/product.hpp"
#include "inp/schedule.hpp"
#include "inp/translate.hpp"

namespace inp {

/// Chosen communication location per team: team index -> location index.
using CommAssignment = std::map<int, int>;

/// psi = task AND, for every team the robot belongs to, an obligation to
/// visit that team's chosen point infinitely often. Teams in ascending order.
Formula build_psi(const Scenario& s, int robot_index, const CommAssignment& points);

/// One finite path of the iterative plan. Starts at the anchor's location
/// for iterations >= 1; the designated communication visits are stored in
/// schedule order with 0 based positions into `states`.
struct PathSegment {
  int robot = -1;
  int iteration = 0;
  std::vector<int> states;                         // location indices
  std::vector<std::pair<int, int>> comm_visits;    // (team, position), schedule order
  double loop_cost = 0.0;  // J of one traversal of the underlying suffix loop
  int copies = 1;          // suffix repetitions the segment contains

  std::optional<int> comm_team_at(int position) const;
};

/// Segments are the same route when states and designated visits agree;
/// the iteration stamp is irrelevant for detecting repeating plans.
bool same_route(const PathSegment& a, const PathSegment& b);

/// Greedy earliest designation of one visit per team, in the order the
/// events appear in the schedule; empty when the path cannot respect it.
std::optional<std::vector<std::pair<int, int>>> designate_comm_visits(
    const std::vector<int>& states, const std::vector<int>& event_order,
    const CommAssignment& points);

/// path^0 = prefix | suffix | ... | suffix with as few copies as make the
/// designated visits respect the schedule; at most |M_i| copies are ever
/// needed, more is a defect and throws std::logic_error.
PathSegment build_initial_path(const PrefixSuffixPlan& plan, const Wts& wts,
                               const Schedule& schedule, const CommAssignment& points,
                               int robot_index);

/// Per robot planning state carried across communication events.
struct RobotPlanner {
  int robot = -1;
  Wts wts;
  Schedule schedule;
  std::vector<int> event_order;  // the robot's teams in schedule order
  Nba psi_template;              // automaton over task props and placeholders
  ProductState anchor;           // fixed accepting product state from init
  CommAssignment points;         // current selection for the robot's teams
  PrefixSuffixPlan initial_plan;

  // Algorithm 2 bookkeeping.
  int events_this_iteration = 0;            // c_i
  double executing_loop_cost = 0.0;         // J of the loop behind the active segment
  double working_loop_cost = 0.0;           // J of the loop behind the working path
  std::optional<PathSegment> next_segment;  // finalized path^{n+1}

  /// Template automaton instantiated at the given points.
  Nba instantiated(const Scenario& s, const CommAssignment& with_points) const;
};

struct Initialized {
  TeamGraph team_graph;
  TeamSequence sequence;
  std::vector<Schedule> schedules;
  CommAssignment assignment;             // all teams
  std::vector<RobotPlanner> planners;    // by robot index
  std::vector<PathSegment> initial_paths;
};

/// Offline initialization: schedules, then an exhaustive search for a
/// feasible combination of communication points (each robot solves one
/// feasibility synthesis per local combination, the results are composed
/// team by team), then the initial paths. nullopt when no combination is
/// feasible for all robots.
std::optional<Initialized> initialize(const Scenario& s);

struct ReplanOutcome {
  int team = -1;
  int chosen = -1;                  // location index
  double cost = 0.0;                // sum of members' new suffix loop costs
  double previous_cost = 0.0;       // sum of members' pre event loop costs
  std::vector<int> finalized;       // members whose next segment completed
};

/// Algorithm 2 at one communication event: every member prices each
/// candidate point of the team (keeping its other teams' points fixed) by
/// the optimal suffix loop around its anchor; the team adopts the argmin
/// (ties towards the lower location id, the incumbent always a candidate)
/// and rebuilds its working paths. max_candidates 0 means no restriction.
ReplanOutcome replan_on_communication(const Scenario& s, int team,
                                      std::vector<RobotPlanner*>& members,
                                      int max_candidates = 0);

}  // namespace inp
