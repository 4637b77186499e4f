#include "inp/schedule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace inp {

int TeamGraph::max_degree() const {
  int best = 0;
  for (int m = 0; m < num_teams(); ++m) best = std::max(best, degree(m));
  return best;
}

bool TeamGraph::adjacent(int a, int b) const {
  return std::binary_search(neighbors[a].begin(), neighbors[a].end(), b);
}

std::vector<std::vector<int>> team_components(const TeamStructure& ts) {
  const int m = ts.num_teams();
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < m; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> stack{start};
    comp[start] = static_cast<int>(out.size());
    std::vector<int> nodes;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      nodes.push_back(cur);
      for (int other = 0; other < m; ++other) {
        if (comp[other] >= 0) continue;
        bool shared = false;
        for (int r : ts.members[cur])
          if (std::binary_search(ts.members[other].begin(), ts.members[other].end(), r)) {
            shared = true;
            break;
          }
        if (shared) {
          comp[other] = comp[cur];
          stack.push_back(other);
        }
      }
    }
    std::sort(nodes.begin(), nodes.end());
    out.push_back(std::move(nodes));
  }
  return out;
}

TeamGraph build_team_graph(const TeamStructure& ts) {
  const int m = ts.num_teams();
  TeamGraph g;
  g.neighbors.assign(m, {});
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      bool shared = false;
      for (int r : ts.members[a])
        if (std::binary_search(ts.members[b].begin(), ts.members[b].end(), r)) {
          shared = true;
          break;
        }
      if (shared) {
        g.neighbors[a].push_back(b);
        g.neighbors[b].push_back(a);
      }
    }
  }
  if (team_components(ts).size() > 1) {
    std::ostringstream msg;
    msg << "team membership graph is disconnected: components";
    for (const auto& comp : team_components(ts)) {
      msg << " {";
      for (std::size_t i = 0; i < comp.size(); ++i) msg << (i ? "," : "") << comp[i] + 1;
      msg << "}";
    }
    throw ScenarioError(msg.str());
  }
  return g;
}

namespace {

void dfs_walk(const TeamGraph& g, int node, std::vector<char>& visited, TeamSequence& seq) {
  visited[node] = 1;
  seq.push_back(node);
  for (int next : g.neighbors[node]) {
    if (visited[next]) continue;
    dfs_walk(g, next, visited, seq);
    seq.push_back(node);  // backtrack entry keeps consecutive entries adjacent
  }
}

}  // namespace

TeamSequence build_sequence(const TeamGraph& g, int start) {
  std::vector<char> visited(g.num_teams(), 0);
  TeamSequence seq;
  dfs_walk(g, start, visited, seq);

  // Drop repeated entries from the tail first, as long as removal keeps
  // consecutive entries adjacent; shortens walks like 1,2,3,2,1 to 1,2,3.
  // The head entry stays: it seeds the schedule construction.
  std::vector<int> count(g.num_teams(), 0);
  for (int t : seq) ++count[t];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = seq.size(); i-- > 1;) {
      if (count[seq[i]] <= 1) continue;
      bool ok = i + 1 == seq.size() || g.adjacent(seq[i - 1], seq[i + 1]);
      if (ok) {
        --count[seq[i]];
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return seq;
}

int Schedule::event_index(int team) const {
  for (int i = 0; i < length(); ++i)
    if (entries[i] == team) return i;
  return -1;
}

std::vector<int> Schedule::events_in_order() const {
  std::vector<int> out;
  for (int e : entries)
    if (e != kNoEvent) out.push_back(e);
  return out;
}

namespace {

struct Builder {
  const TeamStructure& ts;
  const TeamGraph& g;
  int ell;
  std::vector<Schedule> schedules;   // by robot index; empty entries = not built
  std::vector<char> built;

  Builder(const TeamStructure& ts_, const TeamGraph& g_, int num_robots)
      : ts(ts_), g(g_), ell(g_.max_degree() + 1), built(num_robots, 0) {
    schedules.resize(num_robots);
    for (int r = 0; r < num_robots; ++r) schedules[r].robot = r;
  }

  // First rule: copy the index every already scheduled member of the team
  // agreed on. Returns -1 when nobody in the team has a sequence yet.
  int copied_index(int robot, int team) const {
    int found = -1;
    for (int b : ts.members[team]) {
      if (b == robot || !built[b]) continue;
      int idx = schedules[b].event_index(team);
      if (idx < 0) throw std::logic_error("scheduled team member lacks the team's event");
      if (found >= 0 && found != idx)
        throw std::logic_error("team members disagree on their event index");
      found = idx;
    }
    return found;
  }

  // Second rule: lowest free index whose column holds no event of a team
  // neighboring `team` in any sequence constructed so far. Every sequence is
  // relayed along the team order, so each robot has all of them; checking
  // only direct teammates' sequences is not enough, because two teams that
  // share a robot scheduled later can otherwise be pinned to one index by
  // robots that never see each other.
  int fresh_index(int robot, int team) const {
    for (int idx = 0; idx < ell; ++idx) {
      if (schedules[robot].entries[idx] != kNoEvent) continue;
      bool admissible = true;
      for (std::size_t other = 0; other < schedules.size(); ++other) {
        if (!built[other] || static_cast<int>(other) == robot) continue;
        int h = schedules[other].entries[idx];
        if (h != kNoEvent && g.adjacent(h, team)) {
          admissible = false;
          break;
        }
      }
      if (admissible) return idx;
    }
    return -1;
  }

  void construct(int robot) {
    Schedule& s = schedules[robot];
    s.entries.assign(ell, kNoEvent);
    for (int team : ts.teams_of[robot]) {
      int idx = copied_index(robot, team);
      if (idx >= 0) {
        if (s.entries[idx] != kNoEvent)
          throw std::logic_error("schedule construction failed: index already taken");
      } else {
        idx = fresh_index(robot, team);
        if (idx < 0) throw std::logic_error("schedule construction failed: no admissible index");
      }
      s.entries[idx] = team;
    }
    built[robot] = 1;
  }
};

}  // namespace

std::vector<Schedule> construct_schedules(const TeamStructure& ts, const TeamGraph& g,
                                          const TeamSequence& sequence) {
  const int num_robots = static_cast<int>(ts.teams_of.size());
  Builder builder(ts, g, num_robots);
  for (int team : sequence) {
    for (int robot : ts.members[team]) {
      if (builder.built[robot]) continue;
      builder.construct(robot);
    }
  }
  for (int r = 0; r < num_robots; ++r)
    if (!builder.built[r]) throw std::logic_error("robot missing from every team in the sequence");
  return builder.schedules;
}

std::vector<ScheduleViolation> verify_schedules(const std::vector<Schedule>& schedules,
                                                const TeamStructure& ts, const TeamGraph& g) {
  std::vector<ScheduleViolation> out;
  auto report = [&](ScheduleViolation::Kind kind, std::string msg) {
    out.push_back({kind, std::move(msg)});
  };
  if (schedules.empty()) return out;
  const int ell = schedules.front().length();
  const int num_robots = static_cast<int>(schedules.size());

  for (int r = 0; r < num_robots; ++r) {
    const Schedule& s = schedules[r];
    if (s.length() != ell)
      report(ScheduleViolation::Kind::Length,
             "robot " + std::to_string(r + 1) + ": sequence length differs");
    std::vector<int> counts(ts.num_teams(), 0);
    for (int e : s.entries) {
      if (e == kNoEvent) continue;
      if (e < 0 || e >= ts.num_teams()) {
        report(ScheduleViolation::Kind::EventCount,
               "robot " + std::to_string(r + 1) + ": event for unknown team");
        continue;
      }
      ++counts[e];
    }
    for (int m = 0; m < ts.num_teams(); ++m) {
      bool member = std::binary_search(ts.members[m].begin(), ts.members[m].end(), r);
      int expected = member ? 1 : 0;
      if (counts[m] != expected)
        report(ScheduleViolation::Kind::EventCount,
               "robot " + std::to_string(r + 1) + ": event for team " + std::to_string(m + 1) +
                   " appears " + std::to_string(counts[m]) + " times, expected " +
                   std::to_string(expected));
    }
  }

  // Team consistency: all members share the event index.
  for (int m = 0; m < ts.num_teams(); ++m) {
    int idx = -2;
    for (int r : ts.members[m]) {
      int mine = schedules[r].event_index(m);
      if (mine < 0) continue;  // already reported above
      if (idx == -2) idx = mine;
      else if (idx != mine)
        report(ScheduleViolation::Kind::TeamConsistency,
               "team " + std::to_string(m + 1) + ": members disagree on the event index");
    }
  }

  // No robot double books one index, and events of neighboring teams on
  // robots sharing a team never collide.
  for (int r = 0; r < num_robots; ++r) {
    for (int g1 : ts.teams_of[r]) {
      int i1 = schedules[r].event_index(g1);
      if (i1 < 0) continue;
      for (int g2 : ts.teams_of[r]) {
        if (g2 <= g1) continue;
        if (schedules[r].event_index(g2) == i1)
          report(ScheduleViolation::Kind::DoubleBooking,
                 "robot " + std::to_string(r + 1) + ": teams " + std::to_string(g1 + 1) +
                     " and " + std::to_string(g2 + 1) + " share index " + std::to_string(i1 + 1));
      }
      for (int peer : ts.peers_of[r]) {
        for (int h : ts.teams_of[peer]) {
          if (h == g1 || !g.adjacent(h, g1)) continue;
          if (schedules[peer].event_index(h) == i1)
            report(ScheduleViolation::Kind::NeighborSeparation,
                   "robots " + std::to_string(r + 1) + "/" + std::to_string(peer + 1) +
                       ": neighboring teams " + std::to_string(g1 + 1) + " and " +
                       std::to_string(h + 1) + " collide at index " + std::to_string(i1 + 1));
        }
      }
    }
  }
  return out;
}

}  // namespace inp
