// Command line front end: scenario validation, schedule construction,
// initialization, simulation, and report generation over the run artifacts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "inp/executor.hpp"
#include "inp/log.hpp"
#include "inp/planner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace inp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidScenario = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitDefect = 3;

struct Options {
  std::string scenario_file;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  double horizon = 10000.0;
  unsigned max_iterations = 20;
  unsigned max_candidates = 0;
};

std::string schedule_row(const Scenario& s, const Schedule& sched) {
  std::ostringstream os;
  os << "robot " << s.robots[sched.robot].id << ": [";
  for (int i = 0; i < sched.length(); ++i) {
    if (i) os << ", ";
    if (sched.entries[i] == kNoEvent) os << "X";
    else os << sched.entries[i] + 1;
  }
  os << "]^w";
  return os.str();
}

json schedules_json(const Scenario& s, const Initialized& init) {
  json doc;
  doc["ell"] = init.schedules.front().length();
  json seq = json::array();
  for (int team : init.sequence) seq.push_back(team + 1);
  doc["sequence"] = seq;
  doc["schedules"] = json::array();
  for (const auto& sched : init.schedules) {
    json entries = json::array();
    for (int e : sched.entries) {
      if (e == kNoEvent) entries.push_back(nullptr);
      else entries.push_back(e + 1);
    }
    doc["schedules"].push_back({{"robot", s.robots[sched.robot].id}, {"entries", entries}});
  }
  return doc;
}

json assignment_json(const Scenario& s, const Initialized& init) {
  json doc;
  doc["teams"] = json::array();
  for (auto [team, loc] : init.assignment)
    doc["teams"].push_back({{"team", team + 1}, {"location", s.workspace.loc_ids[loc]}});
  doc["robots"] = json::array();
  for (const auto& rp : init.planners) {
    const Wts& w = rp.wts;
    double pre = path_cost(w, rp.initial_plan.prefix_locations());
    double suf = loop_cost(w, rp.initial_plan.suffix_locations());
    doc["robots"].push_back({{"robot", s.robots[rp.robot].id},
                             {"prefix_cost", pre},
                             {"suffix_cost", suf},
                             {"plan_cost", s.alpha * pre + (1 - s.alpha) * suf},
                             {"psi", to_string(build_psi(s, rp.robot, rp.points), s.props)}});
  }
  return doc;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

Scenario load_or_exit(const std::string& path) {
  try {
    return load_scenario_file(path);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(kExitInvalidScenario);
  }
}

Initialized init_or_exit(const Scenario& s) {
  auto init = initialize(s);
  if (!init) {
    std::cerr << "error: initialization infeasible: no combination of communication points "
                 "admits plans for every robot\n";
    std::exit(kExitInfeasible);
  }
  return std::move(*init);
}

int cmd_validate(const Options& opt) {
  Scenario s = load_or_exit(opt.scenario_file);
  std::cout << "scenario ok: " << s.num_robots() << " robots, " << s.teams.num_teams()
            << " teams, " << s.workspace.num_locations() << " locations, "
            << s.workspace.comm_points.size() << " communication points\n";
  return kExitOk;
}

int cmd_schedule(const Options& opt) {
  Scenario s = load_or_exit(opt.scenario_file);
  TeamGraph g = build_team_graph(s.teams);
  TeamSequence seq = build_sequence(g, 0);
  std::vector<Schedule> schedules = construct_schedules(s.teams, g, seq);

  Initialized partial;
  partial.team_graph = g;
  partial.sequence = seq;
  partial.schedules = schedules;
  for (const auto& sched : schedules) std::cout << schedule_row(s, sched) << "\n";

  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "schedules.json", schedules_json(s, partial).dump(2) + "\n");
  return kExitOk;
}

int cmd_plan(const Options& opt) {
  Scenario s = load_or_exit(opt.scenario_file);
  Initialized init = init_or_exit(s);
  json doc = assignment_json(s, init);
  for (const auto& t : doc["teams"])
    std::cout << "team " << t["team"] << " meets at v" << t["location"].get<int>() << "\n";
  for (const auto& r : doc["robots"])
    std::cout << "robot " << r["robot"] << ": J(pre)=" << r["prefix_cost"].get<double>()
              << " J(suf)=" << r["suffix_cost"].get<double>()
              << " J_p=" << r["plan_cost"].get<double>() << "\n    psi = "
              << r["psi"].get<std::string>() << "\n";
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "assignment.json", doc.dump(2) + "\n");
  write_file(fs::path(opt.out_dir) / "schedules.json", schedules_json(s, init).dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const Options& opt) {
  Scenario s = load_or_exit(opt.scenario_file);
  Initialized init = init_or_exit(s);

  SimOptions sim;
  sim.seed_override = opt.seed;
  sim.time_horizon = opt.horizon;
  sim.max_iterations = static_cast<int>(opt.max_iterations);
  sim.max_candidates = static_cast<int>(opt.max_candidates);

  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "schedules.json", schedules_json(s, init).dump(2) + "\n");
  write_file(fs::path(opt.out_dir) / "assignment.json", assignment_json(s, init).dump(2) + "\n");

  SimResult res = simulate(s, std::move(init), sim);
  Metrics m = metrics(s, res);

  {
    std::ofstream events(fs::path(opt.out_dir) / "events.jsonl");
    write_events_jsonl(events, s, res);
    std::ofstream costs(fs::path(opt.out_dir) / "costs.csv");
    write_costs_csv(costs, m);
  }

  std::ostringstream summary;
  summary << "end_time " << res.end_time << "\n";
  for (int team = 0; team < s.teams.num_teams(); ++team)
    summary << "team " << team + 1 << " events " << res.team_event_times[team].size() << "\n";
  if (m.convergence)
    summary << "repeating cycle detected: P=" << m.convergence->P << ", C=" << m.convergence->C
            << "\n";
  else
    summary << "no cycle detected within horizon\n";
  if (!m.total_cost.empty()) summary << "final total cost " << m.total_cost.back() << "\n";
  if (!m.consensus_spread.empty())
    summary << "final consensus spread " << m.consensus_spread.back().second << "\n";
  write_file(fs::path(opt.out_dir) / "summary.txt", summary.str());
  std::cout << summary.str();

  if (res.deadlock) {
    std::cerr << "defect: deadlock watchdog fired at t=" << res.deadlock->t << ": "
              << res.deadlock->description << "\n";
    return kExitDefect;
  }
  return kExitOk;
}

int cmd_report(const Options& opt) {
  fs::path dir(opt.out_dir);
  std::ifstream events_in(dir / "events.jsonl");
  std::ifstream assignment_in(dir / "assignment.json");
  if (!events_in || !assignment_in) {
    std::cerr << "error: missing run artifacts under " << dir
              << " (need events.jsonl and assignment.json)\n";
    return kExitInvalidScenario;
  }

  json assignment;
  try {
    assignment_in >> assignment;
  } catch (const json::exception& e) {
    std::cerr << "error: corrupt assignment.json: " << e.what() << "\n";
    return kExitInvalidScenario;
  }

  std::map<int, int> initial_points;  // team -> location id
  for (const auto& t : assignment["teams"])
    initial_points[t["team"].get<int>()] = t["location"].get<int>();

  std::map<int, std::vector<int>> choices;  // team -> chosen location per round
  std::map<int, int> event_counts;
  double final_spread = 0.0;
  bool have_spread = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(events_in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json ev;
    try {
      ev = json::parse(line);
    } catch (const json::exception& e) {
      std::cerr << "error: corrupt events.jsonl at line " << lineno << ": " << e.what() << "\n";
      return kExitInvalidScenario;
    }
    std::string type = ev.value("type", "");
    if (type == "comm") event_counts[ev["team"].get<int>()] += 1;
    else if (type == "replan") choices[ev["team"].get<int>()].push_back(ev["chosen"].get<int>());
    else if (type == "consensus") {
      final_spread = ev["spread"].get<double>();
      have_spread = true;
    }
  }

  // Assignment snapshots per completed round, then the first recurrence.
  std::size_t rounds = std::numeric_limits<std::size_t>::max();
  for (const auto& [team, list] : choices) rounds = std::min(rounds, list.size());
  if (choices.empty() || initial_points.empty()) rounds = 0;
  std::vector<std::map<int, int>> snapshots{initial_points};
  for (std::size_t k = 0; k < rounds; ++k) {
    std::map<int, int> snap;
    for (const auto& [team, list] : choices) snap[team] = list[k];
    snapshots.push_back(std::move(snap));
  }
  std::optional<std::pair<int, int>> cycle;
  for (std::size_t c = 1; c < snapshots.size() && !cycle; ++c)
    for (std::size_t q = 0; q < c; ++q)
      if (snapshots[c] == snapshots[q]) {
        cycle = {static_cast<int>(q) + 1, static_cast<int>(c)};
        break;
      }

  if (cycle)
    std::cout << "repeating cycle detected: P=" << cycle->first << ", C=" << cycle->second << "\n";
  else
    std::cout << "no cycle detected within horizon\n";

  std::ifstream costs_in(dir / "costs.csv");
  if (costs_in) {
    std::string row, last;
    std::getline(costs_in, row);  // header
    while (std::getline(costs_in, row))
      if (!row.empty()) last = row;
    if (!last.empty())
      std::cout << "final total cost " << last.substr(last.find(',') + 1) << "\n";
  }
  for (const auto& [team, count] : event_counts)
    std::cout << "team " << team << " events " << count << "\n";
  if (have_spread) std::cout << "final consensus spread " << final_spread << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi robot LTL task planning with intermittent connectivity"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("scenario", opt.scenario_file, "scenario JSON file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory for run artifacts");
    return cmd;
  };

  auto* validate = add_common(app.add_subcommand("validate", "check a scenario file"), true);
  auto* schedule =
      add_common(app.add_subcommand("schedule", "construct communication schedules"), true);
  auto* plan = add_common(
      app.add_subcommand("plan", "run initialization and print the chosen points"), true);
  auto* simulate_cmd =
      add_common(app.add_subcommand("simulate", "run the asynchronous execution"), true);
  simulate_cmd->add_option("--seed", opt.seed, "override the scenario seed");
  simulate_cmd->add_option("--horizon", opt.horizon, "simulated time limit");
  simulate_cmd->add_option("--max-iterations", opt.max_iterations, "global iteration limit");
  simulate_cmd->add_option("--max-candidates", opt.max_candidates,
                           "cap on candidate points priced per replanning event (0 = all)");
  auto* report =
      add_common(app.add_subcommand("report", "summarize the artifacts of a simulate run"), false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (schedule->parsed()) return cmd_schedule(opt);
    if (plan->parsed()) return cmd_plan(opt);
    if (simulate_cmd->parsed()) return cmd_simulate(opt);
    if (report->parsed()) return cmd_report(opt);
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidScenario;
  } catch (const std::logic_error& e) {
    std::cerr << "defect: " << e.what() << "\n";
    return kExitDefect;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidScenario;
  }
  return kExitOk;
}
