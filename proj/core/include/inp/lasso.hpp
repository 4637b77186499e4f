#pragma once

#include <vector>

#include "inp/formula.hpp"

namespace inp {

/// One position of an infinite word: the set of propositions that hold,
/// kept sorted and duplicate free.
using Letter = std::vector<PropId>;

Letter make_letter(std::initializer_list<PropId> props);
bool letter_contains(const Letter& l, PropId p);

/// Ultimately periodic word: prefix once, then the suffix forever.
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> suffix;  // nonempty

  const Letter& at(std::size_t k) const;
  /// Canonical position index: positions beyond the prefix are reduced
  /// modulo the period, so there are prefix+suffix many distinct ones.
  std::size_t canonical(std::size_t k) const;
  std::size_t num_positions() const { return prefix.size() + suffix.size(); }
  std::size_t successor(std::size_t canonical_pos) const;
};

/// Direct recursive LTL semantics on ultimately periodic words.
/// This is the reference oracle the automaton pipeline is checked against.
bool evaluate_lasso(const Formula& f, const LassoWord& w);

}  // namespace inp
