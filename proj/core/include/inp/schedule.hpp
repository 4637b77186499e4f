#pragma once

#include <string>
#include <vector>

#include "inp/scenario.hpp"

namespace inp {

/// Graph over teams: an edge joins two teams sharing at least one robot.
struct TeamGraph {
  std::vector<std::vector<int>> neighbors;  // team index -> sorted team indices

  int num_teams() const { return static_cast<int>(neighbors.size()); }
  int degree(int team) const { return static_cast<int>(neighbors[team].size()); }
  int max_degree() const;
  bool adjacent(int a, int b) const;
};

/// Connected components of the team membership relation.
std::vector<std::vector<int>> team_components(const TeamStructure& ts);

/// Throws ScenarioError when the graph is disconnected, naming the components.
TeamGraph build_team_graph(const TeamStructure& ts);

/// Order in which teams construct their schedules: every team appears and
/// consecutive entries are adjacent in the team graph. Teams may repeat.
using TeamSequence = std::vector<int>;

/// Depth-first walk from `start`, re-traversing edges on backtrack, then
/// trimmed of redundant repeats. Deterministic: neighbors in ascending order.
TeamSequence build_sequence(const TeamGraph& g, int start);

constexpr int kNoEvent = -1;  // the X entry

/// One robot's repeating sequence of communication events: each team the
/// robot belongs to appears exactly once, every other entry is X.
struct Schedule {
  int robot = -1;                  // robot index
  std::vector<int> entries;        // team index or kNoEvent

  int length() const { return static_cast<int>(entries.size()); }
  /// Index of the event for `team`, or -1 when absent.
  int event_index(int team) const;
  /// The robot's teams in the order their events appear.
  std::vector<int> events_in_order() const;
};

/// Distributed schedule construction. Precondition: sequence built over a
/// connected team graph; schedules have length max degree + 1. The first
/// team's lowest robot seeds its sequence by placing its events at the lowest
/// free indices in ascending team order; everyone else copies indices fixed
/// by teammates and otherwise takes the lowest index admissible against all
/// sequences constructed so far (the construction order relays them to every
/// robot). A placement failure is a defect and throws std::logic_error.
std::vector<Schedule> construct_schedules(const TeamStructure& ts, const TeamGraph& g,
                                          const TeamSequence& sequence);

struct ScheduleViolation {
  enum class Kind { Length, EventCount, TeamConsistency, NeighborSeparation, DoubleBooking };
  Kind kind;
  std::string message;
};

/// Empty result iff every schedule invariant holds: uniform length, each of
/// the robot's teams exactly once, team members agree on their event index,
/// and no event index is shared by neighboring teams' events on robots that
/// share a team (nor by two events of one robot).
std::vector<ScheduleViolation> verify_schedules(const std::vector<Schedule>& schedules,
                                                const TeamStructure& ts, const TeamGraph& g);

}  // namespace inp
