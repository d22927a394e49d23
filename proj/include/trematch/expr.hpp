#pragma once

// Two-level expression language: Boolean expressions over single-letter
// propositions, and timed regular expressions whose atoms are Boolean
// expressions.
//
// Regular layer, loosest to tightest:
//   E|F   choice
//   E&F   coincidence
//   E;F   concatenation
//   E*  E+  E%(m,n)  P:>   postfix
//   <:P                    prefix
// Boolean layer (inside atoms, binds tighter than any regular operator):
//   P||Q  <  P&&Q  <  !P
//
// Nodes are immutable and shared; structural equality is operator==.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace trematch {

using PropSet = std::uint64_t;
using Time = std::int64_t;

/// Bit index of a proposition letter (a-z -> 0..25, A-Z -> 26..51), or -1.
int prop_index(char c) noexcept;
char prop_letter(int index) noexcept;
constexpr PropSet prop_bit(int index) noexcept { return PropSet{1} << index; }

class BoolNode;
using BoolExpr = std::shared_ptr<const BoolNode>;

class BoolNode {
public:
  enum class Kind { Prop, Not, And, Or };

  static BoolExpr prop(char name);
  static BoolExpr negate(BoolExpr operand);
  static BoolExpr conj(BoolExpr lhs, BoolExpr rhs);
  static BoolExpr disj(BoolExpr lhs, BoolExpr rhs);

  Kind kind() const noexcept { return kind_; }
  char name() const noexcept { return name_; }
  const BoolExpr &lhs() const noexcept { return lhs_; }
  const BoolExpr &rhs() const noexcept { return rhs_; }

  /// Truth value under the valuation where exactly the propositions in
  /// `props` hold.
  bool holds(PropSet props) const noexcept;

  BoolNode(Kind kind, char name, BoolExpr lhs, BoolExpr rhs)
      : kind_(kind), name_(name), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

private:
  Kind kind_;
  char name_;
  BoolExpr lhs_;
  BoolExpr rhs_;
};

bool operator==(const BoolNode &a, const BoolNode &b) noexcept;
bool equal(const BoolExpr &a, const BoolExpr &b) noexcept;

class RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

class RegexNode {
public:
  enum class Kind { Atom, Concat, Choice, Coincide, Duration, Star, Plus };

  static Regex atom(BoolExpr expr, bool left_anchor = false,
                    bool right_anchor = false);
  static Regex concat(Regex lhs, Regex rhs);
  static Regex choice(Regex lhs, Regex rhs);
  static Regex coincide(Regex lhs, Regex rhs);
  /// Throws std::invalid_argument unless 0 <= lo <= hi.
  static Regex duration(Regex operand, Time lo, Time hi);
  static Regex star(Regex operand);
  /// `accepts_empty` marks a Plus produced by desugaring a Star.
  static Regex plus(Regex operand, bool accepts_empty = false);

  Kind kind() const noexcept { return kind_; }
  const BoolExpr &boolean() const noexcept { return boolean_; }
  bool left_anchor() const noexcept { return left_; }
  bool right_anchor() const noexcept { return right_; }
  const Regex &lhs() const noexcept { return lhs_; }
  const Regex &rhs() const noexcept { return rhs_; }
  /// Sole child of unary nodes.
  const Regex &operand() const noexcept { return lhs_; }
  Time lo() const noexcept { return lo_; }
  Time hi() const noexcept { return hi_; }
  bool accepts_empty() const noexcept { return accepts_empty_; }

  RegexNode(Kind kind, BoolExpr boolean, bool left, bool right, Regex lhs,
            Regex rhs, Time lo, Time hi, bool accepts_empty)
      : kind_(kind), boolean_(std::move(boolean)), left_(left), right_(right),
        lhs_(std::move(lhs)), rhs_(std::move(rhs)), lo_(lo), hi_(hi),
        accepts_empty_(accepts_empty) {}

private:
  Kind kind_;
  BoolExpr boolean_;
  bool left_;
  bool right_;
  Regex lhs_;
  Regex rhs_;
  Time lo_;
  Time hi_;
  bool accepts_empty_;
};

bool operator==(const RegexNode &a, const RegexNode &b) noexcept;
bool equal(const Regex &a, const Regex &b) noexcept;

/// Whether the expression admits the zero-duration match.
bool nullable(const RegexNode &e) noexcept;

/// Parses the pattern syntax. Throws ExprSyntaxError (line 1, 1-based
/// column) on malformed input, bad `%` bounds, or anchors on non-atoms.
Regex parse_expr(std::string_view text);

/// Parses a Boolean-layer expression only.
BoolExpr parse_boolean(std::string_view text);

/// Replaces every Star(E) by Plus(E) marked as accepting the empty match.
Regex desugar(const Regex &e);

/// Fully parenthesized form; parse_expr(to_string(e)) == e for parser output.
std::string to_string(const BoolNode &e);
std::string to_string(const RegexNode &e);

/// Number of nodes in the regular layer.
std::size_t size(const RegexNode &e) noexcept;
std::size_t depth(const RegexNode &e) noexcept;

} // namespace trematch
