#include "inp/nba.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace inp {

bool Guard::satisfied_by(const Letter& letter) const {
  for (PropId p : require)
    if (!letter_contains(letter, p)) return false;
  for (PropId p : forbid)
    if (letter_contains(letter, p)) return false;
  return true;
}

void Guard::normalize() {
  std::sort(require.begin(), require.end());
  require.erase(std::unique(require.begin(), require.end()), require.end());
  std::sort(forbid.begin(), forbid.end());
  forbid.erase(std::unique(forbid.begin(), forbid.end()), forbid.end());
}

void Nba::add_transition(int from, int to, Guard g) {
  g.normalize();
  transitions.push_back({from, to, std::move(g)});
}

void Nba::finalize() {
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  std::sort(accepting.begin(), accepting.end());
  accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::stable_sort(transitions.begin(), transitions.end(),
                   [](const NbaTransition& a, const NbaTransition& b) {
                     return a.from != b.from ? a.from < b.from : a.to < b.to;
                   });
  row_.assign(num_states + 1, 0);
  for (const auto& t : transitions) ++row_[t.from + 1];
  for (int s = 0; s < num_states; ++s) row_[s + 1] += row_[s];
}

std::span<const NbaTransition> Nba::out(int state) const {
  return {transitions.data() + row_[state], transitions.data() + row_[state + 1]};
}

bool Nba::is_accepting(int state) const {
  return std::binary_search(accepting.begin(), accepting.end(), state);
}

void Nba::validate() const {
  auto in_range = [&](int s) { return s >= 0 && s < num_states; };
  for (int s : initial)
    if (!in_range(s)) throw std::invalid_argument("Nba: initial state out of range");
  for (int s : accepting)
    if (!in_range(s)) throw std::invalid_argument("Nba: accepting state out of range");
  auto declared = [&](PropId p) {
    return std::binary_search(alphabet.begin(), alphabet.end(), p);
  };
  for (const auto& t : transitions) {
    if (!in_range(t.from) || !in_range(t.to))
      throw std::invalid_argument("Nba: transition endpoint out of range");
    for (PropId p : t.guard.require)
      if (!declared(p)) throw std::invalid_argument("Nba: guard proposition not in alphabet");
    for (PropId p : t.guard.forbid)
      if (!declared(p)) throw std::invalid_argument("Nba: guard proposition not in alphabet");
  }
}

const LassoChecker::LetterRows& LassoChecker::rows_for(const Letter& letter) {
  for (const auto& [key, rows] : cache_)
    if (key == letter) return rows;
  LetterRows rows;
  const Nba& a = *nba_;
  rows.row.assign(a.num_states + 1, 0);
  std::vector<std::pair<int, int>> enabled;
  for (const auto& t : a.transitions)
    if (t.guard.satisfied_by(letter)) enabled.emplace_back(t.from, t.to);
  for (auto [from, to] : enabled) ++rows.row[from + 1];
  for (int s = 0; s < a.num_states; ++s) rows.row[s + 1] += rows.row[s];
  rows.targets.resize(enabled.size());
  std::vector<int> cursor = rows.row;
  for (auto [from, to] : enabled) rows.targets[cursor[from]++] = to;
  cache_.emplace_back(letter, std::move(rows));
  return cache_.back().second;
}

bool LassoChecker::accepts(const LassoWord& w) {
  if (w.suffix.empty()) throw std::invalid_argument("LassoWord: suffix must be nonempty");
  const Nba& a = *nba_;
  const int positions = static_cast<int>(w.num_positions());
  const int total = a.num_states * positions;
  auto node = [&](int state, int pos) { return state * positions + pos; };

  std::vector<const LetterRows*> at(positions);
  std::vector<int> succ(positions);
  for (int pos = 0; pos < positions; ++pos) {
    at[pos] = &rows_for(w.at(static_cast<std::size_t>(pos)));
    succ[pos] = static_cast<int>(w.successor(static_cast<std::size_t>(pos)));
  }

  // Forward reachability from every initial state at position 0.
  reached_.assign(total, 0);
  queue_.clear();
  for (int s : a.initial) {
    if (!reached_[node(s, 0)]) {
      reached_[node(s, 0)] = 1;
      queue_.push_back(node(s, 0));
    }
  }
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    int cur = queue_[head];
    int s = cur / positions, pos = cur % positions;
    const LetterRows& rows = *at[pos];
    for (int k = rows.row[s]; k < rows.row[s + 1]; ++k) {
      int target = node(rows.targets[k], succ[pos]);
      if (!reached_[target]) {
        reached_[target] = 1;
        queue_.push_back(target);
      }
    }
  }

  bool any_candidate = false;
  for (int f : a.accepting)
    for (int pos = static_cast<int>(w.prefix.size()); pos < positions && !any_candidate; ++pos)
      if (reached_[node(f, pos)]) any_candidate = true;
  if (!any_candidate) return false;

  // One Tarjan pass over the reachable product: an accepting node in the
  // suffix region witnesses acceptance when its component is nontrivial,
  // or when it carries a self edge (period one suffixes allow those).
  indices_.assign(total, -1);
  lowlink_.assign(total, 0);
  on_stack_.assign(total, 0);
  scc_id_.assign(total, -1);
  scc_stack_.clear();
  int next_index = 0, next_scc = 0;
  std::vector<int> scc_size;

  struct Frame {
    int node;
    int edge;
  };
  std::vector<Frame> frames;
  auto edges_begin = [&](int cur) { return at[cur % positions]->row[cur / positions]; };
  auto edges_end = [&](int cur) { return at[cur % positions]->row[cur / positions + 1]; };
  auto edge_target = [&](int cur, int k) {
    int pos = cur % positions;
    return node(at[pos]->targets[k], succ[pos]);
  };

  for (int root = 0; root < total; ++root) {
    if (!reached_[root] || indices_[root] >= 0) continue;
    frames.push_back({root, edges_begin(root)});
    indices_[root] = lowlink_[root] = next_index++;
    scc_stack_.push_back(root);
    on_stack_[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < edges_end(f.node)) {
        int child = edge_target(f.node, f.edge++);
        if (indices_[child] < 0) {
          indices_[child] = lowlink_[child] = next_index++;
          scc_stack_.push_back(child);
          on_stack_[child] = 1;
          frames.push_back({child, edges_begin(child)});
        } else if (on_stack_[child]) {
          lowlink_[f.node] = std::min(lowlink_[f.node], indices_[child]);
        }
      } else {
        int done = f.node;
        frames.pop_back();
        if (!frames.empty())
          lowlink_[frames.back().node] = std::min(lowlink_[frames.back().node], lowlink_[done]);
        if (lowlink_[done] == indices_[done]) {
          int size = 0;
          while (true) {
            int member = scc_stack_.back();
            scc_stack_.pop_back();
            on_stack_[member] = 0;
            scc_id_[member] = next_scc;
            ++size;
            if (member == done) break;
          }
          scc_size.push_back(size);
          ++next_scc;
        }
      }
    }
  }

  for (int f : a.accepting) {
    for (int pos = static_cast<int>(w.prefix.size()); pos < positions; ++pos) {
      int cur = node(f, pos);
      if (!reached_[cur]) continue;
      if (scc_size[static_cast<std::size_t>(scc_id_[cur])] >= 2) return true;
      if (succ[pos] != pos) continue;  // self edges need a period of one
      const LetterRows& rows = *at[pos];
      for (int k = rows.row[f]; k < rows.row[f + 1]; ++k)
        if (rows.targets[k] == f) return true;
    }
  }
  return false;
}

bool nba_accepts_lasso(const Nba& a, const LassoWord& w) {
  LassoChecker checker(a);
  return checker.accepts(w);
}

Nba substitute_props(const Nba& a, const std::unordered_map<PropId, PropId>& map) {
  Nba out = a;
  auto rewrite = [&](std::vector<PropId>& props) {
    for (PropId& p : props) {
      auto it = map.find(p);
      if (it != map.end()) p = it->second;
    }
  };
  for (auto& t : out.transitions) {
    rewrite(t.guard.require);
    rewrite(t.guard.forbid);
    t.guard.normalize();
  }
  rewrite(out.alphabet);
  out.finalize();
  return out;
}

}  // namespace inp
