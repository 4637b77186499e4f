#pragma once

#include "inp/formula.hpp"
#include "inp/nba.hpp"

namespace inp {

/// Tableau translation of an LTL formula into an NBA recognizing exactly the
/// words that satisfy it. The input is normalized internally; the automaton's
/// alphabet is the set of propositions occurring in the formula. Transition
/// guards constrain the letter read while leaving the source state, so a run
/// q0 q1 ... over w checks w(k) against the guard of the k-th transition.
Nba translate(const Formula& f);

}  // namespace inp
