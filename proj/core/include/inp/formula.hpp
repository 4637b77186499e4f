#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace inp {

using PropId = int;

/// Interning table mapping proposition names to dense ids.
/// Immutable once a scenario or test fixture has finished declaring names.
class PropRegistry {
public:
  PropId intern(std::string_view name);
  std::optional<PropId> find(std::string_view name) const;
  const std::string& name(PropId p) const;
  int size() const { return static_cast<int>(names_.size()); }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, PropId> ids_;
};

enum class FormulaKind { True, False, Atom, Not, And, Or, Next, Until, Release };

/// Immutable LTL formula tree. Eventually/always/implication are expanded
/// into the core connectives on construction, so two ways of writing the
/// same derived operator compare equal. Release is the negation dual of
/// Until and never appears in the user-facing grammar.
class Formula {
public:
  static Formula top();
  static Formula bottom();
  static Formula atom(PropId p);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula until(Formula a, Formula b);
  static Formula release(Formula a, Formula b);

  // Derived operators.
  static Formula eventually(Formula f);              // true U f
  static Formula always(Formula f);                  // false R f
  static Formula implies(Formula a, Formula b);      // !a || b

  FormulaKind kind() const { return node_->kind; }
  PropId prop() const;           // Atom only
  Formula left() const;          // unary child or left operand
  Formula right() const;         // right operand

  bool operator==(const Formula& other) const { return compare(*this, other) == 0; }
  bool operator!=(const Formula& other) const { return !(*this == other); }
  bool operator<(const Formula& other) const { return compare(*this, other) < 0; }

  /// Identity of the underlying node, usable as a memoization key.
  const void* id() const { return node_.get(); }

  static int compare(const Formula& a, const Formula& b);

private:
  struct Node {
    FormulaKind kind;
    PropId prop = -1;
    std::shared_ptr<const Node> l, r;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Negation normal form: Not applies to atoms only; logically equivalent input.
Formula to_nnf(const Formula& f);

bool contains_next(const Formula& f);

void collect_props(const Formula& f, std::set<PropId>& out);
std::vector<PropId> props_of(const Formula& f);

/// Rewrites every atom through the map; ids without an entry are kept.
Formula substitute_props(const Formula& f, const std::unordered_map<PropId, PropId>& map);

/// Renders with the grammar's concrete syntax; recognizes the F/G sugar.
std::string to_string(const Formula& f, const PropRegistry& props);

}  // namespace inp
