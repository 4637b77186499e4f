#include "inp/formula.hpp"

#include <cassert>
#include <stdexcept>

namespace inp {

PropId PropRegistry::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  PropId id = static_cast<PropId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<PropId> PropRegistry::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& PropRegistry::name(PropId p) const {
  if (p < 0 || p >= static_cast<PropId>(names_.size()))
    throw std::out_of_range("PropRegistry::name: unknown proposition id");
  return names_[p];
}

Formula Formula::top() {
  static const Formula f{std::make_shared<const Node>(Node{FormulaKind::True})};
  return f;
}

Formula Formula::bottom() {
  static const Formula f{std::make_shared<const Node>(Node{FormulaKind::False})};
  return f;
}

Formula Formula::atom(PropId p) {
  return Formula{std::make_shared<const Node>(Node{FormulaKind::Atom, p})};
}

Formula Formula::negation(Formula f) {
  return Formula{std::make_shared<const Node>(Node{FormulaKind::Not, -1, f.node_})};
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula{std::make_shared<const Node>(Node{FormulaKind::And, -1, a.node_, b.node_})};
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula{std::make_shared<const Node>(Node{FormulaKind::Or, -1, a.node_, b.node_})};
}

Formula Formula::next(Formula f) {
  return Formula{std::make_shared<const Node>(Node{FormulaKind::Next, -1, f.node_})};
}

Formula Formula::until(Formula a, Formula b) {
  return Formula{std::make_shared<const Node>(Node{FormulaKind::Until, -1, a.node_, b.node_})};
}

Formula Formula::release(Formula a, Formula b) {
  return Formula{std::make_shared<const Node>(Node{FormulaKind::Release, -1, a.node_, b.node_})};
}

Formula Formula::eventually(Formula f) { return until(top(), std::move(f)); }
Formula Formula::always(Formula f) { return release(bottom(), std::move(f)); }
Formula Formula::implies(Formula a, Formula b) { return disj(negation(std::move(a)), std::move(b)); }

PropId Formula::prop() const {
  assert(node_->kind == FormulaKind::Atom);
  return node_->prop;
}

Formula Formula::left() const {
  assert(node_->l);
  return Formula{node_->l};
}

Formula Formula::right() const {
  assert(node_->r);
  return Formula{node_->r};
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.node_->kind != b.node_->kind)
    return a.node_->kind < b.node_->kind ? -1 : 1;
  switch (a.node_->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
      return 0;
    case FormulaKind::Atom:
      return a.node_->prop == b.node_->prop ? 0 : (a.node_->prop < b.node_->prop ? -1 : 1);
    case FormulaKind::Not:
    case FormulaKind::Next:
      return compare(a.left(), b.left());
    default: {
      int c = compare(a.left(), b.left());
      if (c != 0) return c;
      return compare(a.right(), b.right());
    }
  }
}

namespace {

Formula nnf_pos(const Formula& f);
Formula nnf_neg(const Formula& f);

Formula nnf_pos(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Not:
      return nnf_neg(f.left());
    case FormulaKind::And:
      return Formula::conj(nnf_pos(f.left()), nnf_pos(f.right()));
    case FormulaKind::Or:
      return Formula::disj(nnf_pos(f.left()), nnf_pos(f.right()));
    case FormulaKind::Next:
      return Formula::next(nnf_pos(f.left()));
    case FormulaKind::Until:
      return Formula::until(nnf_pos(f.left()), nnf_pos(f.right()));
    case FormulaKind::Release:
      return Formula::release(nnf_pos(f.left()), nnf_pos(f.right()));
  }
  throw std::logic_error("nnf_pos: unreachable");
}

Formula nnf_neg(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
      return Formula::bottom();
    case FormulaKind::False:
      return Formula::top();
    case FormulaKind::Atom:
      return Formula::negation(f);
    case FormulaKind::Not:
      return nnf_pos(f.left());
    case FormulaKind::And:
      return Formula::disj(nnf_neg(f.left()), nnf_neg(f.right()));
    case FormulaKind::Or:
      return Formula::conj(nnf_neg(f.left()), nnf_neg(f.right()));
    case FormulaKind::Next:
      return Formula::next(nnf_neg(f.left()));
    case FormulaKind::Until:
      return Formula::release(nnf_neg(f.left()), nnf_neg(f.right()));
    case FormulaKind::Release:
      return Formula::until(nnf_neg(f.left()), nnf_neg(f.right()));
  }
  throw std::logic_error("nnf_neg: unreachable");
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_pos(f); }

bool contains_next(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
      return false;
    case FormulaKind::Next:
      return true;
    case FormulaKind::Not:
      return contains_next(f.left());
    default:
      return contains_next(f.left()) || contains_next(f.right());
  }
}

void collect_props(const Formula& f, std::set<PropId>& out) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return;
    case FormulaKind::Atom:
      out.insert(f.prop());
      return;
    case FormulaKind::Not:
    case FormulaKind::Next:
      collect_props(f.left(), out);
      return;
    default:
      collect_props(f.left(), out);
      collect_props(f.right(), out);
  }
}

std::vector<PropId> props_of(const Formula& f) {
  std::set<PropId> s;
  collect_props(f, s);
  return {s.begin(), s.end()};
}

Formula substitute_props(const Formula& f, const std::unordered_map<PropId, PropId>& map) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Atom: {
      auto it = map.find(f.prop());
      return it == map.end() ? f : Formula::atom(it->second);
    }
    case FormulaKind::Not:
      return Formula::negation(substitute_props(f.left(), map));
    case FormulaKind::Next:
      return Formula::next(substitute_props(f.left(), map));
    case FormulaKind::And:
      return Formula::conj(substitute_props(f.left(), map), substitute_props(f.right(), map));
    case FormulaKind::Or:
      return Formula::disj(substitute_props(f.left(), map), substitute_props(f.right(), map));
    case FormulaKind::Until:
      return Formula::until(substitute_props(f.left(), map), substitute_props(f.right(), map));
    case FormulaKind::Release:
      return Formula::release(substitute_props(f.left(), map), substitute_props(f.right(), map));
  }
  throw std::logic_error("substitute_props: unreachable");
}

namespace {

void render(const Formula& f, const PropRegistry& props, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::True:
      out += "true";
      return;
    case FormulaKind::False:
      out += "false";
      return;
    case FormulaKind::Atom:
      out += props.name(f.prop());
      return;
    case FormulaKind::Not:
      out += "!";
      render(f.left(), props, out);
      return;
    case FormulaKind::Next:
      out += "X ";
      render(f.left(), props, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      out += "(";
      render(f.left(), props, out);
      out += f.kind() == FormulaKind::And ? " && " : " || ";
      render(f.right(), props, out);
      out += ")";
      return;
    }
    case FormulaKind::Until:
      if (f.left().kind() == FormulaKind::True) {  // F sugar
        out += "F ";
        render(f.right(), props, out);
        return;
      }
      out += "(";
      render(f.left(), props, out);
      out += " U ";
      render(f.right(), props, out);
      out += ")";
      return;
    case FormulaKind::Release:
      if (f.left().kind() == FormulaKind::False) {  // G sugar
        out += "G ";
        render(f.right(), props, out);
        return;
      }
      out += "(";
      render(f.left(), props, out);
      out += " R ";
      render(f.right(), props, out);
      out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f, const PropRegistry& props) {
  std::string out;
  render(f, props, out);
  return out;
}

}  // namespace inp
