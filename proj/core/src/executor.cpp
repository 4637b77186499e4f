#include "inp/executor.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "inp/log.hpp"

namespace inp {

using nlohmann::json;

std::optional<DeadlockReport> deadlock_watchdog(const SimState& state, const TeamStructure& ts) {
  const int n = static_cast<int>(state.waiting_for.size());
  for (int r = 0; r < n; ++r)
    if (!state.waiting_for[r]) return std::nullopt;  // somebody is still moving
  for (int m = 0; m < ts.num_teams(); ++m) {
    const auto& waiting = state.waiting_sets[m];
    bool complete = !ts.members[m].empty() &&
                    std::all_of(ts.members[m].begin(), ts.members[m].end(),
                                [&](int r) { return waiting.count(r) > 0; });
    if (complete) return std::nullopt;  // a communication event is due to fire
  }
  DeadlockReport report;
  report.t = state.now;
  report.description = "stationary configuration: every robot waits and no team is complete";
  return report;
}

void consensus_update(std::vector<double>& values, const std::vector<int>& members) {
  double sum = 0.0;
  for (int r : members) sum += values.at(r);
  double mean = sum / static_cast<double>(members.size());
  for (int r : members) values[r] = mean;
}

namespace {

double spread_of(const std::vector<double>& values) {
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

// Uniform double in [0, 1) from the top 53 bits; identical across platforms
// for a given engine state, unlike the standard distributions.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct ArrivalOrder {
  bool operator()(const std::pair<double, int>& a, const std::pair<double, int>& b) const {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;  // ties by robot index
  }
};

}  // namespace

std::optional<SimResult::Convergence> SimResult::convergence() const {
  for (int c = 1; c < static_cast<int>(assignments.size()); ++c)
    for (int q = 0; q < c; ++q)
      if (assignments[c] == assignments[q]) return Convergence{q + 1, c};
  return std::nullopt;
}

SimResult simulate(const Scenario& s, Initialized init, const SimOptions& options) {
  const TeamStructure& ts = s.teams;
  const int n = s.num_robots();
  const int teams = ts.num_teams();

  SimResult res;
  res.paths.assign(n, {});
  res.team_event_times.assign(teams, {});
  res.iteration_start_times.assign(n, {});
  res.anchor_locs.resize(n);
  res.assignments.push_back(init.assignment);

  SimState st;
  st.position.assign(n, 0);
  st.iteration.assign(n, 0);
  st.waiting_for.assign(n, std::nullopt);
  st.waiting_sets.assign(teams, {});
  st.consensus.assign(n, 0.0);

  std::mt19937_64 rng(options.seed_override.value_or(s.seed));
  double lo = s.travel_time.lo, hi = s.travel_time.hi;
  auto travel_time = [&] { return lo + (hi - lo) * uniform01(rng); };

  std::vector<PathSegment> segment(n);
  std::vector<int> pending(n, 0);
  for (int r = 0; r < n; ++r) {
    segment[r] = init.initial_paths[r];
    res.paths[r].push_back(segment[r]);
    res.anchor_locs[r] = init.planners[r].anchor.loc;
    st.consensus[r] = uniform01(rng);
  }
  std::vector<std::vector<int>> round_choice(teams);  // selections per round per team

  auto log_event = [&](SimEvent ev) { res.events.push_back(std::move(ev)); };

  for (int r = 0; r < n; ++r) {
    SimEvent ev;
    ev.type = SimEvent::Type::IterationStart;
    ev.t = 0.0;
    ev.robot = r;
    ev.iteration = 0;
    log_event(std::move(ev));
    res.iteration_start_times[r].push_back(0.0);
  }
  {
    SimEvent ev;
    ev.type = SimEvent::Type::Consensus;
    ev.t = 0.0;
    ev.values = st.consensus;
    ev.spread = spread_of(st.consensus);
    log_event(std::move(ev));
  }

  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, ArrivalOrder>
      queue;
  for (int r = 0; r < n; ++r) queue.push({0.0, r});

  bool stopped = false;
  auto all_reached_max = [&] {
    for (int r = 0; r < n; ++r)
      if (st.iteration[r] < options.max_iterations) return false;
    return true;
  };

  // Departure toward the next position, switching segments at their end.
  auto depart = [&](int r) {
    RobotPlanner& rp = init.planners[r];
    int last = static_cast<int>(segment[r].states.size()) - 1;
    if (st.position[r] < last) {
      pending[r] = st.position[r] + 1;
    } else {
      if (!rp.next_segment)
        throw std::logic_error("executor: segment exhausted before its plan was rebuilt");
      PathSegment next = *rp.next_segment;
      next.iteration = st.iteration[r] + 1;
      rp.next_segment.reset();
      rp.events_this_iteration = 0;
      rp.executing_loop_cost = next.loop_cost;
      segment[r] = std::move(next);
      res.paths[r].push_back(segment[r]);
      st.iteration[r] += 1;
      res.iteration_start_times[r].push_back(st.now);
      SimEvent ev;
      ev.type = SimEvent::Type::IterationStart;
      ev.t = st.now;
      ev.robot = r;
      ev.iteration = st.iteration[r];
      log_event(std::move(ev));
      if (all_reached_max()) {
        stopped = true;
        return;
      }
      pending[r] = 0;
    }
    double dt = travel_time();
    queue.push({st.now + dt, r});
  };

  auto fire_team = [&](int m) {
    const std::vector<int>& members = ts.members[m];
    int loc = init.planners[members.front()].points.at(m);

    SimEvent comm;
    comm.type = SimEvent::Type::Comm;
    comm.t = st.now;
    comm.team = m;
    comm.loc = loc;
    comm.participants = members;
    log_event(std::move(comm));
    res.team_event_times[m].push_back(st.now);

    consensus_update(st.consensus, members);
    SimEvent cons;
    cons.type = SimEvent::Type::Consensus;
    cons.t = st.now;
    cons.team = m;
    cons.values = st.consensus;
    cons.spread = spread_of(st.consensus);
    log_event(std::move(cons));

    std::vector<RobotPlanner*> mp;
    for (int r : members) mp.push_back(&init.planners[r]);
    ReplanOutcome outcome = replan_on_communication(s, m, mp, options.max_candidates);
    round_choice[m].push_back(outcome.chosen);
    INP_LOG_DEBUG("t=" << st.now << " team " << m + 1 << " met at v"
                       << s.workspace.loc_ids[loc] << ", new point v"
                       << s.workspace.loc_ids[outcome.chosen] << " cost " << outcome.cost);
    SimEvent rep;
    rep.type = SimEvent::Type::Replan;
    rep.t = st.now;
    rep.team = m;
    rep.chosen = outcome.chosen;
    rep.cost = outcome.cost;
    rep.previous_cost = outcome.previous_cost;
    log_event(std::move(rep));

    // A full round of selections defines the next assignment snapshot.
    std::size_t rounds = std::numeric_limits<std::size_t>::max();
    for (int t = 0; t < teams; ++t) rounds = std::min(rounds, round_choice[t].size());
    while (res.assignments.size() <= rounds) {
      CommAssignment snap;
      for (int t = 0; t < teams; ++t) snap[t] = round_choice[t][res.assignments.size() - 1];
      res.assignments.push_back(std::move(snap));
    }

    st.waiting_sets[m].clear();
    for (int r : members) {
      st.waiting_for[r].reset();
      if (!stopped) depart(r);
    }
  };

  while (!queue.empty() && !stopped) {
    auto [t, r] = queue.top();
    queue.pop();
    if (t > options.time_horizon) {
      res.end_time = options.time_horizon;
      return res;
    }
    st.now = t;
    st.position[r] = pending[r];
    int loc = segment[r].states[st.position[r]];

    SimEvent arrive;
    arrive.type = SimEvent::Type::Arrive;
    arrive.t = t;
    arrive.robot = r;
    arrive.loc = loc;
    arrive.iteration = st.iteration[r];
    arrive.position = st.position[r];
    log_event(std::move(arrive));

    std::optional<int> team = segment[r].comm_team_at(st.position[r]);
    if (team) {
      st.waiting_for[r] = *team;
      st.waiting_sets[*team].insert(r);
      SimEvent wait;
      wait.type = SimEvent::Type::WaitStart;
      wait.t = t;
      wait.robot = r;
      wait.team = *team;
      wait.loc = loc;
      log_event(std::move(wait));

      const auto& members = ts.members[*team];
      bool complete = std::all_of(members.begin(), members.end(), [&](int q) {
        return st.waiting_sets[*team].count(q) > 0;
      });
      if (complete) {
        fire_team(*team);
      } else if (auto report = deadlock_watchdog(st, ts)) {
        res.deadlock = report;
        res.end_time = t;
        return res;
      }
    } else {
      depart(r);
    }
  }
  res.end_time = st.now;
  return res;
}

Metrics metrics(const Scenario& s, const SimResult& result) {
  Metrics m;
  const int n = s.num_robots();

  std::vector<Wts> systems;
  systems.reserve(n);
  for (int r = 0; r < n; ++r) systems.push_back(build_wts(s, r));

  std::size_t common = std::numeric_limits<std::size_t>::max();
  for (const auto& paths : result.paths) common = std::min(common, paths.size());
  for (std::size_t it = 0; it < common; ++it) {
    double total = 0.0, loops = 0.0;
    for (int r = 0; r < n; ++r) {
      const PathSegment& seg = result.paths[r][it];
      total += path_cost(systems[r], seg.states) +
               systems[r].weight(seg.states.back(), result.anchor_locs[r]);
      loops += seg.loop_cost;
    }
    m.total_cost.push_back(total);
    m.loop_cost_sum.push_back(loops);
  }

  for (const auto& times : result.team_event_times) {
    std::vector<double> gaps;
    for (std::size_t i = 1; i < times.size(); ++i) gaps.push_back(times[i] - times[i - 1]);
    m.team_gaps.push_back(std::move(gaps));
  }

  std::size_t common_started = std::numeric_limits<std::size_t>::max();
  for (const auto& starts : result.iteration_start_times)
    common_started = std::min(common_started, starts.size());
  for (std::size_t it = 0; it < common_started; ++it) {
    double latest_start = 0.0;
    double earliest_end = std::numeric_limits<double>::infinity();
    for (int r = 0; r < n; ++r) {
      latest_start = std::max(latest_start, result.iteration_start_times[r][it]);
      if (it + 1 < result.iteration_start_times[r].size())
        earliest_end = std::min(earliest_end, result.iteration_start_times[r][it + 1]);
    }
    if (latest_start < earliest_end) m.sync_witnesses.push_back(latest_start);
  }

  for (const auto& ev : result.events)
    if (ev.type == SimEvent::Type::Consensus) m.consensus_spread.emplace_back(ev.t, ev.spread);

  m.convergence = result.convergence();
  return m;
}

void write_events_jsonl(std::ostream& out, const Scenario& s, const SimResult& result) {
  auto robot_id = [&](int r) { return s.robots[r].id; };
  auto loc_id = [&](int loc) { return s.workspace.loc_ids[loc]; };
  for (const auto& ev : result.events) {
    json j;
    j["t"] = ev.t;
    switch (ev.type) {
      case SimEvent::Type::IterationStart:
        j["type"] = "iter";
        j["robot"] = robot_id(ev.robot);
        j["n"] = ev.iteration;
        break;
      case SimEvent::Type::Arrive:
        j["type"] = "arrive";
        j["robot"] = robot_id(ev.robot);
        j["loc"] = loc_id(ev.loc);
        j["n"] = ev.iteration;
        j["pos"] = ev.position;
        break;
      case SimEvent::Type::WaitStart:
        j["type"] = "wait";
        j["robot"] = robot_id(ev.robot);
        j["team"] = ev.team + 1;
        j["loc"] = loc_id(ev.loc);
        break;
      case SimEvent::Type::Comm: {
        j["type"] = "comm";
        j["team"] = ev.team + 1;
        j["loc"] = loc_id(ev.loc);
        json robots = json::array();
        for (int r : ev.participants) robots.push_back(robot_id(r));
        j["robots"] = robots;
        break;
      }
      case SimEvent::Type::Consensus:
        j["type"] = "consensus";
        if (ev.team >= 0) j["team"] = ev.team + 1;
        j["values"] = ev.values;
        j["spread"] = ev.spread;
        break;
      case SimEvent::Type::Replan:
        j["type"] = "replan";
        j["team"] = ev.team + 1;
        j["chosen"] = loc_id(ev.chosen);
        j["cost"] = ev.cost;
        j["prev_cost"] = ev.previous_cost;
        break;
    }
    out << j.dump() << "\n";
  }
}

void write_costs_csv(std::ostream& out, const Metrics& m) {
  out << "iteration,total_cost\n";
  out << std::setprecision(17);
  for (std::size_t it = 0; it < m.total_cost.size(); ++it)
    out << it << "," << m.total_cost[it] << "\n";
}

}  // namespace inp
