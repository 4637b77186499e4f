#include "inp/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "inp/parse.hpp"
#include "inp/schedule.hpp"

namespace inp {

using nlohmann::json;

int Workspace::index_of(int loc_id) const {
  auto it = std::find(loc_ids.begin(), loc_ids.end(), loc_id);
  if (it == loc_ids.end())
    throw ScenarioError("unknown location id " + std::to_string(loc_id));
  return static_cast<int>(it - loc_ids.begin());
}

void TeamStructure::build_derived(int num_robots) {
  teams_of.assign(num_robots, {});
  peers_of.assign(num_robots, {});
  for (int m = 0; m < num_teams(); ++m)
    for (int r : members[m]) teams_of[r].push_back(m);
  for (int r = 0; r < num_robots; ++r) {
    std::vector<int>& peers = peers_of[r];
    for (int m : teams_of[r])
      for (int other : members[m])
        if (other != r) peers.push_back(other);
    std::sort(peers.begin(), peers.end());
    peers.erase(std::unique(peers.begin(), peers.end()), peers.end());
    std::sort(teams_of[r].begin(), teams_of[r].end());
  }
}

int Scenario::robot_index(int robot_id) const {
  for (int i = 0; i < num_robots(); ++i)
    if (robots[i].id == robot_id) return i;
  throw ScenarioError("unknown robot id " + std::to_string(robot_id));
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw ScenarioError(what); }

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

void check_team_graph_connected(const TeamStructure& ts) {
  auto components = team_components(ts);
  if (components.size() <= 1) return;
  std::ostringstream msg;
  msg << "team membership graph is disconnected: components";
  for (const auto& comp : components) {
    msg << " {";
    for (std::size_t i = 0; i < comp.size(); ++i) msg << (i ? "," : "") << comp[i] + 1;
    msg << "}";
  }
  fail(msg.str());
}

}  // namespace

namespace {
Scenario load_scenario_checked(const json& doc);
}

Scenario load_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  try {
    return load_scenario_checked(doc);
  } catch (const json::exception& e) {
    fail(std::string("schema violation: ") + e.what());
  }
}

namespace {

Scenario load_scenario_checked(const json& doc) {
  if (!doc.is_object()) fail("document root must be an object");
  if (field(doc, "format").get<int>() != 1) fail("unsupported format version");

  Scenario s;
  Workspace& ws = s.workspace;

  // Locations.
  for (const auto& loc : field(doc, "locations")) {
    int id = field(loc, "id").get<int>();
    if (std::find(ws.loc_ids.begin(), ws.loc_ids.end(), id) != ws.loc_ids.end())
      fail("duplicate location id " + std::to_string(id));
    const auto& pos = field(loc, "pos");
    if (!pos.is_array() || pos.size() < 2 || pos.size() > 3)
      fail("location pos must have 2 or 3 coordinates");
    std::array<double, 3> p{0, 0, 0};
    for (std::size_t i = 0; i < pos.size(); ++i) p[i] = pos[i].get<double>();
    if (ws.loc_ids.empty()) ws.dim = static_cast<int>(pos.size());
    else if (ws.dim != static_cast<int>(pos.size()))
      fail("locations mix 2d and 3d coordinates");
    ws.loc_ids.push_back(id);
    ws.positions.push_back(p);
  }
  if (ws.loc_ids.empty()) fail("at least one location is required");

  // Edges.
  for (const auto& e : field(doc, "edges")) {
    if (!e.is_array() || e.size() != 3) fail("each edge must be [from, to, length]");
    int a = ws.index_of(e[0].get<int>());
    int b = ws.index_of(e[1].get<int>());
    double len = e[2].get<double>();
    if (a == b) fail("self edges are implicit; remove edge on location " +
                     std::to_string(ws.loc_ids[a]));
    if (len <= 0) fail("edge lengths must be positive");
    ws.edges.push_back({a, b});
    ws.edge_lengths.push_back(len);
  }

  // Communication points.
  for (const auto& c : field(doc, "comm_points")) ws.comm_points.push_back(ws.index_of(c.get<int>()));
  std::sort(ws.comm_points.begin(), ws.comm_points.end());
  ws.comm_points.erase(std::unique(ws.comm_points.begin(), ws.comm_points.end()),
                       ws.comm_points.end());

  // Propositions: one per location, plus one placeholder per team later.
  s.location_prop.reserve(ws.num_locations());
  for (int loc = 0; loc < ws.num_locations(); ++loc)
    s.location_prop.push_back(s.props.intern("v" + std::to_string(ws.loc_ids[loc])));

  // Robots.
  for (const auto& r : field(doc, "robots")) {
    RobotSpec spec;
    spec.id = field(r, "id").get<int>();
    for (const auto& other : s.robots)
      if (other.id == spec.id) fail("duplicate robot id " + std::to_string(spec.id));
    spec.initial = ws.index_of(field(r, "initial").get<int>());
    spec.task_text = field(r, "task").get<std::string>();
    int props_before = s.props.size();
    try {
      spec.task = parse_task(spec.task_text, s.props);
    } catch (const ParseError& e) {
      fail("robot " + std::to_string(spec.id) + ": task: " + e.what() + " at offset " +
           std::to_string(e.position()));
    }
    if (s.props.size() != props_before)
      fail("robot " + std::to_string(spec.id) +
           ": task references an unknown location proposition '" + s.props.name(props_before) +
           "'");
    if (auto it = r.find("blocked_edges"); it != r.end()) {
      for (const auto& e : *it) {
        if (!e.is_array() || e.size() != 2) fail("blocked_edges entries must be [from, to]");
        int a = ws.index_of(e[0].get<int>());
        int b = ws.index_of(e[1].get<int>());
        auto key = std::minmax(a, b);
        spec.blocked_edges.insert({key.first, key.second});
      }
    }
    s.robots.push_back(std::move(spec));
  }
  if (s.robots.empty()) fail("at least one robot is required");

  // Teams.
  TeamStructure& ts = s.teams;
  for (const auto& t : field(doc, "teams")) {
    std::vector<int> members;
    for (const auto& r : field(t, "members")) members.push_back(s.robot_index(r.get<int>()));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) fail("team without members");
    std::vector<int> comm;
    for (const auto& c : field(t, "comm_set")) comm.push_back(ws.index_of(c.get<int>()));
    std::sort(comm.begin(), comm.end());
    comm.erase(std::unique(comm.begin(), comm.end()), comm.end());
    if (comm.empty())
      fail("team " + std::to_string(ts.num_teams() + 1) + " has an empty communication set");
    for (int c : comm)
      if (!std::binary_search(ws.comm_points.begin(), ws.comm_points.end(), c))
        fail("team " + std::to_string(ts.num_teams() + 1) + ": location " +
             std::to_string(ws.loc_ids[c]) + " is not a communication point");
    ts.members.push_back(std::move(members));
    ts.comm_sets.push_back(std::move(comm));
  }
  if (ts.members.empty()) fail("at least one team is required");
  ts.build_derived(s.num_robots());
  for (int r = 0; r < s.num_robots(); ++r)
    if (ts.teams_of[r].empty())
      fail("robot " + std::to_string(s.robots[r].id) + " belongs to no team");
  check_team_graph_connected(ts);

  for (int m = 0; m < ts.num_teams(); ++m)
    s.team_placeholder.push_back(s.props.intern("@team" + std::to_string(m + 1)));

  // Remaining scalars.
  s.alpha = field(doc, "alpha").get<double>();
  if (s.alpha < 0.0 || s.alpha > 1.0) fail("alpha must lie in [0, 1]");
  const json& tt = field(doc, "travel_time");
  s.travel_time.lo = field(tt, "lo").get<double>();
  s.travel_time.hi = field(tt, "hi").get<double>();
  if (s.travel_time.lo < 0 || s.travel_time.lo > s.travel_time.hi)
    fail("travel_time must satisfy 0 <= lo <= hi");
  s.seed = field(doc, "seed").get<std::uint64_t>();
  if (auto it = doc.find("epsilon"); it != doc.end()) s.epsilon = it->get<double>();

  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  const Workspace& ws = s.workspace;
  json doc;
  doc["format"] = 1;
  doc["locations"] = json::array();
  for (int loc = 0; loc < ws.num_locations(); ++loc) {
    json pos = json::array();
    for (int d = 0; d < ws.dim; ++d) pos.push_back(ws.positions[loc][d]);
    doc["locations"].push_back({{"id", ws.loc_ids[loc]}, {"pos", pos}});
  }
  doc["edges"] = json::array();
  for (std::size_t e = 0; e < ws.edges.size(); ++e)
    doc["edges"].push_back({ws.loc_ids[ws.edges[e][0]], ws.loc_ids[ws.edges[e][1]],
                            ws.edge_lengths[e]});
  doc["comm_points"] = json::array();
  for (int c : ws.comm_points) doc["comm_points"].push_back(ws.loc_ids[c]);
  doc["robots"] = json::array();
  for (const auto& r : s.robots) {
    json jr = {{"id", r.id}, {"initial", ws.loc_ids[r.initial]}, {"task", r.task_text}};
    if (!r.blocked_edges.empty()) {
      jr["blocked_edges"] = json::array();
      for (auto [a, b] : r.blocked_edges)
        jr["blocked_edges"].push_back({ws.loc_ids[a], ws.loc_ids[b]});
    }
    doc["robots"].push_back(jr);
  }
  doc["teams"] = json::array();
  for (int m = 0; m < s.teams.num_teams(); ++m) {
    json members = json::array();
    for (int r : s.teams.members[m]) members.push_back(s.robots[r].id);
    json comm = json::array();
    for (int c : s.teams.comm_sets[m]) comm.push_back(ws.loc_ids[c]);
    doc["teams"].push_back({{"members", members}, {"comm_set", comm}});
  }
  doc["alpha"] = s.alpha;
  doc["travel_time"] = {{"lo", s.travel_time.lo}, {"hi", s.travel_time.hi}};
  doc["seed"] = s.seed;
  if (s.epsilon != 0.0) doc["epsilon"] = s.epsilon;
  return doc.dump(2);
}

}  // namespace inp
