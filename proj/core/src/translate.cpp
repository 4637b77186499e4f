#include "inp/translate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace inp {

namespace {

using FormulaSet = std::set<Formula>;

constexpr int kInitMark = -1;

struct Expansion {
  // Emitted tableau nodes, keyed by (old, next) for merging.
  std::map<std::pair<FormulaSet, FormulaSet>, int> index;
  std::vector<FormulaSet> old_of;
  std::vector<FormulaSet> next_of;
  std::vector<std::set<int>> incoming_of;

  struct Work {
    std::set<int> incoming;
    FormulaSet news, old, next;
  };

  static bool is_literal(const Formula& f) {
    return f.kind() == FormulaKind::Atom ||
           (f.kind() == FormulaKind::Not && f.left().kind() == FormulaKind::Atom);
  }

  static Formula literal_negation(const Formula& f) {
    return f.kind() == FormulaKind::Not ? f.left() : Formula::negation(f);
  }

  void expand(Work node) {
    if (node.news.empty()) {
      auto key = std::make_pair(node.old, node.next);
      auto it = index.find(key);
      if (it != index.end()) {
        incoming_of[it->second].insert(node.incoming.begin(), node.incoming.end());
        return;
      }
      int id = static_cast<int>(old_of.size());
      index.emplace(std::move(key), id);
      old_of.push_back(node.old);
      next_of.push_back(node.next);
      incoming_of.push_back(node.incoming);
      Work succ;
      succ.incoming = {id};
      succ.news = node.next;
      expand(std::move(succ));
      return;
    }

    Formula eta = *node.news.begin();
    node.news.erase(node.news.begin());
    if (node.old.count(eta)) {
      expand(std::move(node));
      return;
    }
    switch (eta.kind()) {
      case FormulaKind::False:
        return;  // contradiction, branch dies
      case FormulaKind::True:
        expand(std::move(node));
        return;
      case FormulaKind::Atom:
      case FormulaKind::Not:
        if (node.old.count(literal_negation(eta))) return;
        node.old.insert(eta);
        expand(std::move(node));
        return;
      case FormulaKind::And: {
        node.old.insert(eta);
        if (!node.old.count(eta.left())) node.news.insert(eta.left());
        if (!node.old.count(eta.right())) node.news.insert(eta.right());
        expand(std::move(node));
        return;
      }
      case FormulaKind::Next: {
        node.old.insert(eta);
        node.next.insert(eta.left());
        expand(std::move(node));
        return;
      }
      case FormulaKind::Or: {
        Work other = node;
        node.old.insert(eta);
        other.old.insert(eta);
        if (!node.old.count(eta.left())) node.news.insert(eta.left());
        if (!other.old.count(eta.right())) other.news.insert(eta.right());
        expand(std::move(node));
        expand(std::move(other));
        return;
      }
      case FormulaKind::Until: {
        // a U b  =  b or (a and X(a U b))
        Work other = node;
        node.old.insert(eta);
        other.old.insert(eta);
        if (!node.old.count(eta.left())) node.news.insert(eta.left());
        node.next.insert(eta);
        if (!other.old.count(eta.right())) other.news.insert(eta.right());
        expand(std::move(node));
        expand(std::move(other));
        return;
      }
      case FormulaKind::Release: {
        // a R b  =  b and (a or X(a R b))
        Work other = node;
        node.old.insert(eta);
        other.old.insert(eta);
        if (!node.old.count(eta.right())) node.news.insert(eta.right());
        node.next.insert(eta);
        if (!other.old.count(eta.left())) other.news.insert(eta.left());
        if (!other.old.count(eta.right())) other.news.insert(eta.right());
        expand(std::move(node));
        expand(std::move(other));
        return;
      }
    }
    throw std::logic_error("translate: unreachable");
  }
};

void collect_untils(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
      return;
    case FormulaKind::Not:
    case FormulaKind::Next:
      collect_untils(f.left(), out);
      return;
    case FormulaKind::Until:
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      collect_untils(f.left(), out);
      collect_untils(f.right(), out);
      return;
    default:
      collect_untils(f.left(), out);
      collect_untils(f.right(), out);
  }
}

Guard guard_of(const FormulaSet& old) {
  Guard g;
  for (const Formula& f : old) {
    if (f.kind() == FormulaKind::Atom) g.require.push_back(f.prop());
    else if (f.kind() == FormulaKind::Not && f.left().kind() == FormulaKind::Atom)
      g.forbid.push_back(f.left().prop());
  }
  g.normalize();
  return g;
}

Nba strip_unreachable(const Nba& a) {
  std::vector<int> map(a.num_states, -1);
  std::vector<int> order;
  for (int s : a.initial) {
    if (map[s] < 0) {
      map[s] = static_cast<int>(order.size());
      order.push_back(s);
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& t : a.out(order[i])) {
      if (map[t.to] < 0) {
        map[t.to] = static_cast<int>(order.size());
        order.push_back(t.to);
      }
    }
  }
  Nba out;
  out.num_states = static_cast<int>(order.size());
  out.alphabet = a.alphabet;
  for (int s : a.initial) out.initial.push_back(map[s]);
  for (int s : a.accepting)
    if (map[s] >= 0) out.accepting.push_back(map[s]);
  for (const auto& t : a.transitions)
    if (map[t.from] >= 0 && map[t.to] >= 0) out.add_transition(map[t.from], map[t.to], t.guard);
  out.finalize();
  return out;
}

}  // namespace

Nba translate(const Formula& f) {
  Formula nnf = to_nnf(f);

  std::vector<Formula> untils;
  collect_untils(nnf, untils);
  const int k = static_cast<int>(untils.size());

  Expansion ex;
  Expansion::Work start;
  start.incoming = {kInitMark};
  start.news.insert(nnf);
  ex.expand(std::move(start));

  const int n = static_cast<int>(ex.old_of.size());

  // Per-until acceptance set: obligation absent or already discharged. A
  // trivially true right operand is never stored, so it counts as discharged.
  std::vector<std::vector<char>> in_f(std::max(k, 1), std::vector<char>(n, 0));
  for (int u = 0; u < k; ++u)
    for (int q = 0; q < n; ++q)
      in_f[u][q] = !ex.old_of[q].count(untils[u]) ||
                   untils[u].right().kind() == FormulaKind::True ||
                   ex.old_of[q].count(untils[u].right());

  std::vector<Guard> guards(n);
  for (int q = 0; q < n; ++q) guards[q] = guard_of(ex.old_of[q]);

  Nba out;
  out.alphabet = props_of(f);

  if (k <= 1) {
    out.num_states = n;
    for (int q = 0; q < n; ++q) {
      if (ex.incoming_of[q].count(kInitMark)) out.initial.push_back(q);
      if (k == 0 || in_f[0][q]) out.accepting.push_back(q);
      for (int p : ex.incoming_of[q])
        if (p != kInitMark) out.add_transition(p, q, guards[p]);
    }
  } else {
    // Counter construction: copy i waits for acceptance set i; leaving a
    // state in set i advances the counter, wrapping after the last set.
    out.num_states = n * k;
    auto id = [&](int q, int copy) { return q * k + copy; };
    for (int q = 0; q < n; ++q) {
      if (ex.incoming_of[q].count(kInitMark)) out.initial.push_back(id(q, 0));
      if (in_f[0][q]) out.accepting.push_back(id(q, 0));
      for (int p : ex.incoming_of[q]) {
        if (p == kInitMark) continue;
        for (int copy = 0; copy < k; ++copy) {
          int target_copy = in_f[copy][p] ? (copy + 1) % k : copy;
          out.add_transition(id(p, copy), id(q, target_copy), guards[p]);
        }
      }
    }
  }
  out.finalize();
  return strip_unreachable(out);
}

}  // namespace inp
