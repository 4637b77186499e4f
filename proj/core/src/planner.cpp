#include "inp/planner.hpp"

#include <algorithm>
#include <stdexcept>

#include "inp/log.hpp"

namespace inp {

Formula build_psi(const Scenario& s, int robot_index, const CommAssignment& points) {
  Formula psi = s.robots[robot_index].task;
  for (int team : s.teams.teams_of[robot_index]) {
    auto it = points.find(team);
    if (it == points.end())
      throw std::invalid_argument("build_psi: no point chosen for team " +
                                  std::to_string(team + 1));
    psi = Formula::conj(std::move(psi),
                        Formula::always(Formula::eventually(
                            Formula::atom(s.location_prop[it->second]))));
  }
  return psi;
}

std::optional<int> PathSegment::comm_team_at(int position) const {
  for (auto [team, pos] : comm_visits)
    if (pos == position) return team;
  return std::nullopt;
}

bool same_route(const PathSegment& a, const PathSegment& b) {
  return a.robot == b.robot && a.states == b.states && a.comm_visits == b.comm_visits;
}

std::optional<std::vector<std::pair<int, int>>> designate_comm_visits(
    const std::vector<int>& states, const std::vector<int>& event_order,
    const CommAssignment& points) {
  std::vector<std::pair<int, int>> visits;
  int from = 0;
  for (int team : event_order) {
    int target = points.at(team);
    int found = -1;
    for (int pos = from; pos < static_cast<int>(states.size()); ++pos) {
      if (states[pos] == target) {
        found = pos;
        break;
      }
    }
    if (found < 0) return std::nullopt;
    visits.emplace_back(team, found);
    from = found + 1;
  }
  return visits;
}

namespace {

Formula psi_template_formula(const Scenario& s, int robot_index) {
  Formula psi = s.robots[robot_index].task;
  for (int team : s.teams.teams_of[robot_index])
    psi = Formula::conj(std::move(psi),
                        Formula::always(Formula::eventually(
                            Formula::atom(s.team_placeholder[team]))));
  return psi;
}

std::vector<int> schedule_event_order(const Schedule& sched) { return sched.events_in_order(); }

}  // namespace

Nba RobotPlanner::instantiated(const Scenario& s, const CommAssignment& with_points) const {
  std::unordered_map<PropId, PropId> map;
  for (auto [team, loc] : with_points)
    map.emplace(s.team_placeholder[team], s.location_prop[loc]);
  return substitute_props(psi_template, map);
}

PathSegment build_initial_path(const PrefixSuffixPlan& plan, const Wts& wts,
                               const Schedule& schedule, const CommAssignment& points,
                               int robot_index) {
  std::vector<int> event_order = schedule_event_order(schedule);
  std::vector<int> prefix = plan.prefix_locations();
  std::vector<int> suffix = plan.suffix_locations();
  const int max_copies = std::max<int>(1, static_cast<int>(event_order.size()));

  std::vector<int> states = prefix;
  for (int copies = 1; copies <= max_copies; ++copies) {
    states.insert(states.end(), suffix.begin(), suffix.end());
    auto visits = designate_comm_visits(states, event_order, points);
    if (visits) {
      PathSegment seg;
      seg.robot = robot_index;
      seg.iteration = 0;
      seg.states = std::move(states);
      seg.comm_visits = std::move(*visits);
      seg.loop_cost = loop_cost(wts, suffix);
      seg.copies = copies;
      return seg;
    }
  }
  throw std::logic_error(
      "build_initial_path: schedule not respected within the guaranteed suffix copies");
}

namespace {

PathSegment build_online_path(const std::vector<int>& loop, const Wts& wts,
                              const std::vector<int>& event_order, const CommAssignment& points,
                              int robot_index, int iteration) {
  const int max_copies = std::max<int>(1, static_cast<int>(event_order.size()));
  std::vector<int> states;
  for (int copies = 1; copies <= max_copies; ++copies) {
    states.insert(states.end(), loop.begin(), loop.end());
    auto visits = designate_comm_visits(states, event_order, points);
    if (visits) {
      PathSegment seg;
      seg.robot = robot_index;
      seg.iteration = iteration;
      seg.states = std::move(states);
      seg.comm_visits = std::move(*visits);
      seg.loop_cost = loop_cost(wts, loop);
      seg.copies = copies;
      return seg;
    }
  }
  throw std::logic_error(
      "replan: schedule not respected within the guaranteed suffix copies");
}

// Local feasibility table: every combination of points for the robot's own
// teams, in lexicographic order, with its synthesis result.
struct LocalCombos {
  std::vector<int> teams;                      // M_i ascending
  std::vector<std::vector<int>> options;       // candidate locations per team
  std::vector<std::vector<int>> feasible;      // accepted combinations (tuples)

  bool consistent_with(const CommAssignment& partial, const std::vector<int>& combo) const {
    for (std::size_t k = 0; k < teams.size(); ++k) {
      auto it = partial.find(teams[k]);
      if (it != partial.end() && it->second != combo[k]) return false;
    }
    return true;
  }

  bool some_extension(const CommAssignment& partial) const {
    for (const auto& combo : feasible)
      if (consistent_with(partial, combo)) return true;
    return false;
  }
};

bool compose_assignments(const Scenario& s, const std::vector<LocalCombos>& locals, int team,
                         CommAssignment& acc) {
  if (team == s.teams.num_teams()) return true;
  for (int loc : s.teams.comm_sets[team]) {
    acc[team] = loc;
    bool viable = true;
    for (const auto& local : locals) {
      if (!local.some_extension(acc)) {
        viable = false;
        break;
      }
    }
    if (viable && compose_assignments(s, locals, team + 1, acc)) return true;
    acc.erase(team);
  }
  return false;
}

}  // namespace

std::optional<Initialized> initialize(const Scenario& s) {
  Initialized out;
  out.team_graph = build_team_graph(s.teams);
  out.sequence = build_sequence(out.team_graph, 0);
  out.schedules = construct_schedules(s.teams, out.team_graph, out.sequence);

  const int n = s.num_robots();
  std::vector<Nba> templates;
  templates.reserve(n);
  std::vector<Wts> systems;
  systems.reserve(n);
  for (int r = 0; r < n; ++r) {
    templates.push_back(translate(psi_template_formula(s, r)));
    systems.push_back(build_wts(s, r));
  }

  // Each robot explores its own combinations once (Lemma 1 scope); the
  // global assignment is composed from the locally feasible ones.
  std::vector<LocalCombos> locals(n);
  for (int r = 0; r < n; ++r) {
    LocalCombos& local = locals[r];
    local.teams = s.teams.teams_of[r];
    for (int team : local.teams) local.options.push_back(s.teams.comm_sets[team]);
    const std::size_t total = [&] {
      std::size_t p = 1;
      for (const auto& opts : local.options) p *= opts.size();
      return p;
    }();
    for (std::size_t index = 0; index < total; ++index) {
      std::size_t rest = index;
      CommAssignment points;
      std::vector<int> tuple(local.teams.size());
      for (std::size_t k = local.teams.size(); k-- > 0;) {
        tuple[k] = local.options[k][rest % local.options[k].size()];
        rest /= local.options[k].size();
      }
      for (std::size_t k = 0; k < local.teams.size(); ++k) points[local.teams[k]] = tuple[k];
      std::unordered_map<PropId, PropId> map;
      for (auto [team, loc] : points)
        map.emplace(s.team_placeholder[team], s.location_prop[loc]);
      Product product(systems[r], substitute_props(templates[r], map));
      if (find_feasible_plan(product)) local.feasible.push_back(tuple);
    }
    INP_LOG_DEBUG("robot " << r + 1 << ": " << local.feasible.size() << "/" << total
                           << " local combinations feasible");
    if (local.feasible.empty()) return std::nullopt;
  }

  CommAssignment assignment;
  if (!compose_assignments(s, locals, 0, assignment)) return std::nullopt;
  out.assignment = assignment;
  INP_LOG_INFO("initialization: feasible assignment composed for " << s.teams.num_teams()
                                                                   << " teams");

  out.planners.resize(n);
  for (int r = 0; r < n; ++r) {
    RobotPlanner& rp = out.planners[r];
    rp.robot = r;
    rp.wts = std::move(systems[r]);
    rp.schedule = out.schedules[r];
    rp.event_order = rp.schedule.events_in_order();
    rp.psi_template = std::move(templates[r]);
    for (int team : s.teams.teams_of[r]) rp.points[team] = assignment.at(team);

    Product product(rp.wts, rp.instantiated(s, rp.points));
    auto plan = find_feasible_plan(product);
    if (!plan) throw std::logic_error("initialize: composed assignment infeasible for a robot");
    rp.initial_plan = std::move(*plan);
    rp.anchor = rp.initial_plan.anchor();

    PathSegment seg = build_initial_path(rp.initial_plan, rp.wts, rp.schedule, rp.points, r);
    rp.executing_loop_cost = seg.loop_cost;
    out.initial_paths.push_back(std::move(seg));
  }
  return out;
}

ReplanOutcome replan_on_communication(const Scenario& s, int team,
                                      std::vector<RobotPlanner*>& members, int max_candidates) {
  if (members.empty()) throw std::invalid_argument("replan: no members");
  const int incumbent = members.front()->points.at(team);

  // Candidate restriction keeps the incumbent plus the lowest ids up to the
  // cap; 0 means the whole comm set.
  std::vector<int> candidates{incumbent};
  for (int loc : s.teams.comm_sets[team]) {
    if (loc == incumbent) continue;
    if (max_candidates > 0 && static_cast<int>(candidates.size()) >= max_candidates) break;
    candidates.push_back(loc);
  }
  std::sort(candidates.begin(), candidates.end());

  ReplanOutcome outcome;
  outcome.team = team;
  for (const RobotPlanner* rp : members)
    outcome.previous_cost += rp->events_this_iteration == 0 ? rp->executing_loop_cost
                                                            : rp->working_loop_cost;

  double best_cost = 0.0;
  std::vector<std::vector<int>> best_loops;
  for (int candidate : candidates) {
    double cost = 0.0;
    std::vector<std::vector<int>> loops;
    bool feasible = true;
    for (RobotPlanner* rp : members) {
      CommAssignment points = rp->points;
      points[team] = candidate;
      Product product(rp->wts, rp->instantiated(s, points));
      auto loop = optimal_suffix_loop(product, rp->anchor);
      if (!loop) {
        feasible = false;
        break;
      }
      std::vector<int> locs;
      locs.reserve(loop->size());
      for (const auto& st : *loop) locs.push_back(st.loc);
      cost += loop_cost(rp->wts, locs);
      loops.push_back(std::move(locs));
    }
    if (!feasible) {
      if (candidate == incumbent)
        throw std::logic_error("replan: incumbent communication point became infeasible");
      continue;
    }
    if (outcome.chosen < 0 || cost < best_cost) {  // candidates ascend, ties keep lowest
      outcome.chosen = candidate;
      best_cost = cost;
      best_loops = std::move(loops);
    }
  }
  if (outcome.chosen < 0) throw std::logic_error("replan: no feasible candidate");
  outcome.cost = best_cost;

  for (std::size_t k = 0; k < members.size(); ++k) {
    RobotPlanner* rp = members[k];
    rp->points[team] = outcome.chosen;
    PathSegment seg = build_online_path(best_loops[k], rp->wts, rp->event_order, rp->points,
                                        rp->robot, /*iteration=*/0);
    rp->working_loop_cost = seg.loop_cost;
    rp->events_this_iteration += 1;
    if (rp->events_this_iteration == static_cast<int>(rp->event_order.size())) {
      rp->next_segment = std::move(seg);
      outcome.finalized.push_back(rp->robot);
    } else {
      // Working path; the next event of this robot rebuilds it from scratch.
      rp->next_segment.reset();
    }
  }
  return outcome;
}

}  // namespace inp
