#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "inp/formula.hpp"

namespace inp {

class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Locations of interest with pairwise paths. Ids come from the scenario
/// file; everything downstream works with dense indices.
struct Workspace {
  int dim = 2;
  std::vector<int> loc_ids;                         // by location index
  std::vector<std::array<double, 3>> positions;     // by location index
  std::vector<std::array<int, 2>> edges;            // location indices, undirected
  std::vector<double> edge_lengths;                 // > 0, parallel to edges
  std::vector<int> comm_points;                     // location indices, sorted

  int num_locations() const { return static_cast<int>(loc_ids.size()); }
  int index_of(int loc_id) const;  // throws ScenarioError on unknown id
};

struct RobotSpec {
  int id = 0;
  int initial = 0;  // location index
  std::string task_text;
  Formula task = Formula::top();
  std::set<std::pair<int, int>> blocked_edges;  // normalized (min,max) location indices
};

/// Teams of robots with their communication point sets. Derived views M_i
/// (teams of robot i) and N_i (teammates of robot i) are built at load.
struct TeamStructure {
  std::vector<std::vector<int>> members;    // team index -> robot indices, sorted
  std::vector<std::vector<int>> comm_sets;  // team index -> location indices, sorted

  std::vector<std::vector<int>> teams_of;   // robot index -> team indices, sorted (M_i)
  std::vector<std::vector<int>> peers_of;   // robot index -> robot indices, sorted (N_i)

  int num_teams() const { return static_cast<int>(members.size()); }
  void build_derived(int num_robots);
};

struct TravelTimeRange {
  double lo = 1.0;
  double hi = 2.0;
};

struct Scenario {
  Workspace workspace;
  std::vector<RobotSpec> robots;
  TeamStructure teams;
  double alpha = 0.5;
  TravelTimeRange travel_time;
  std::uint64_t seed = 0;
  double epsilon = 0.0;  // proximity threshold, informational only

  PropRegistry props;
  std::vector<PropId> location_prop;  // "v<id>" per location index
  std::vector<PropId> team_placeholder;  // "@team<m>" per team index

  int num_robots() const { return static_cast<int>(robots.size()); }
  int robot_index(int robot_id) const;
};

/// Parses and fully validates a scenario document (format 1). Throws
/// ScenarioError with a human readable message on any violation, including
/// a disconnected team membership graph (the components are named).
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

/// Inverse of load_scenario up to field ordering: emits a document that
/// loads back to an identical scenario.
std::string serialize_scenario(const Scenario& s);

}  // namespace inp
