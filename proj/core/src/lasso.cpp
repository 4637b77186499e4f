#include "inp/lasso.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace inp {

Letter make_letter(std::initializer_list<PropId> props) {
  Letter l(props);
  std::sort(l.begin(), l.end());
  l.erase(std::unique(l.begin(), l.end()), l.end());
  return l;
}

bool letter_contains(const Letter& l, PropId p) {
  return std::binary_search(l.begin(), l.end(), p);
}

const Letter& LassoWord::at(std::size_t k) const {
  if (k < prefix.size()) return prefix[k];
  return suffix[(k - prefix.size()) % suffix.size()];
}

std::size_t LassoWord::canonical(std::size_t k) const {
  if (k < prefix.size()) return k;
  return prefix.size() + (k - prefix.size()) % suffix.size();
}

std::size_t LassoWord::successor(std::size_t pos) const {
  return canonical(pos + 1);
}

namespace {

struct Evaluator {
  const LassoWord& w;
  // Keyed by (node identity, canonical position).
  std::map<std::pair<const void*, std::size_t>, bool> memo;

  bool eval(const Formula& f, std::size_t pos) {
    auto key = std::make_pair(f.id(), pos);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = compute(f, pos);
    memo.emplace(key, v);
    return v;
  }

  bool compute(const Formula& f, std::size_t pos) {
    switch (f.kind()) {
      case FormulaKind::True:
        return true;
      case FormulaKind::False:
        return false;
      case FormulaKind::Atom:
        return letter_contains(w.at(pos), f.prop());
      case FormulaKind::Not:
        return !eval(f.left(), pos);
      case FormulaKind::And:
        return eval(f.left(), pos) && eval(f.right(), pos);
      case FormulaKind::Or:
        return eval(f.left(), pos) || eval(f.right(), pos);
      case FormulaKind::Next:
        return eval(f.left(), w.successor(pos));
      case FormulaKind::Until: {
        // Least fixpoint: walk the canonical chain; it cycles after at most
        // num_positions steps, and a cycle without the right operand fails.
        std::size_t p = pos;
        for (std::size_t step = 0; step <= w.num_positions(); ++step) {
          if (eval(f.right(), p)) return true;
          if (!eval(f.left(), p)) return false;
          p = w.successor(p);
        }
        return false;
      }
      case FormulaKind::Release: {
        // Greatest fixpoint: right must hold up to and including the step
        // where left holds; a cycle with right always true succeeds.
        std::size_t p = pos;
        for (std::size_t step = 0; step <= w.num_positions(); ++step) {
          if (!eval(f.right(), p)) return false;
          if (eval(f.left(), p)) return true;
          p = w.successor(p);
        }
        return true;
      }
    }
    throw std::logic_error("evaluate_lasso: unreachable");
  }
};

}  // namespace

bool evaluate_lasso(const Formula& f, const LassoWord& w) {
  if (w.suffix.empty()) throw std::invalid_argument("LassoWord: suffix must be nonempty");
  return Evaluator{w, {}}.eval(f, 0);
}

}  // namespace inp
