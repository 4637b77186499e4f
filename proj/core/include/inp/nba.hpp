#pragma once

#include <deque>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "inp/lasso.hpp"

namespace inp {

/// Conjunction of literals over atomic propositions. The empty guard is true.
/// A guard with the same proposition required and forbidden is unsatisfiable,
/// which is a legal (dead) transition label.
struct Guard {
  std::vector<PropId> require;  // sorted
  std::vector<PropId> forbid;   // sorted

  static Guard top() { return {}; }
  bool satisfied_by(const Letter& letter) const;
  void normalize();
};

struct NbaTransition {
  int from = 0;
  int to = 0;
  Guard guard;
};

/// Nondeterministic Buechi automaton with guard labelled transitions.
/// Guards stand for the set of letters over 2^alphabet that enable the
/// transition; a run consumes one letter per transition and is accepting
/// when it visits an accepting state infinitely often.
struct Nba {
  int num_states = 0;
  std::vector<int> initial;
  std::vector<int> accepting;
  std::vector<NbaTransition> transitions;
  std::vector<PropId> alphabet;  // sorted

  void add_transition(int from, int to, Guard g);
  /// Sorts transitions by source and builds the out-edge index. Must be
  /// called after the last mutation and before out()/acceptance queries.
  void finalize();
  std::span<const NbaTransition> out(int state) const;

  bool is_accepting(int state) const;
  /// Checks the structural invariants: endpoints in range, initial and
  /// accepting subsets of states, guards over the declared alphabet.
  void validate() const;

private:
  std::vector<int> row_;  // CSR offsets, size num_states+1
};

/// Whether some run over the ultimately periodic word is accepting.
/// Decided on the product of the automaton with the lasso positions, where a
/// reachable accepting product node lying on a cycle witnesses acceptance.
bool nba_accepts_lasso(const Nba& a, const LassoWord& w);

/// Reusable form of nba_accepts_lasso for sweeping many words over one
/// automaton: enabled transition lists are cached per letter and the
/// per-word scratch buffers are kept across calls.
class LassoChecker {
public:
  explicit LassoChecker(const Nba& a) : nba_(&a) {}
  bool accepts(const LassoWord& w);

private:
  struct LetterRows {
    std::vector<int> row;      // CSR offsets per source state
    std::vector<int> targets;
  };
  const LetterRows& rows_for(const Letter& letter);

  const Nba* nba_;
  std::deque<std::pair<Letter, LetterRows>> cache_;  // stable references on growth
  // scratch, sized on demand
  std::vector<char> reached_;
  std::vector<int> queue_, indices_, lowlink_, scc_id_, scc_stack_;
  std::vector<char> on_stack_;
};

/// Rewrites guard propositions (and the alphabet) through the map; ids
/// without an entry are kept. Used to instantiate template automata whose
/// placeholder propositions stand for selectable locations.
Nba substitute_props(const Nba& a, const std::unordered_map<PropId, PropId>& map);

}  // namespace inp
