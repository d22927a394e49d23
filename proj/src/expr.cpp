#include "trematch/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <stdexcept>

#include "trematch/error.hpp"

namespace trematch {

int prop_index(char c) noexcept {
  if (c >= 'a' && c <= 'z')
    return c - 'a';
  if (c >= 'A' && c <= 'Z')
    return 26 + (c - 'A');
  return -1;
}

char prop_letter(int index) noexcept {
  if (index >= 0 && index < 26)
    return static_cast<char>('a' + index);
  if (index >= 26 && index < 52)
    return static_cast<char>('A' + index - 26);
  return '?';
}

// ---------------------------------------------------------------------------
// Boolean layer

BoolExpr BoolNode::prop(char name) {
  if (prop_index(name) < 0)
    throw std::invalid_argument(std::string("not a proposition letter: ") +
                                name);
  return std::make_shared<const BoolNode>(Kind::Prop, name, nullptr, nullptr);
}

BoolExpr BoolNode::negate(BoolExpr operand) {
  return std::make_shared<const BoolNode>(Kind::Not, '\0', std::move(operand),
                                          nullptr);
}

BoolExpr BoolNode::conj(BoolExpr lhs, BoolExpr rhs) {
  return std::make_shared<const BoolNode>(Kind::And, '\0', std::move(lhs),
                                          std::move(rhs));
}

BoolExpr BoolNode::disj(BoolExpr lhs, BoolExpr rhs) {
  return std::make_shared<const BoolNode>(Kind::Or, '\0', std::move(lhs),
                                          std::move(rhs));
}

bool BoolNode::holds(PropSet props) const noexcept {
  switch (kind_) {
  case Kind::Prop:
    return (props & prop_bit(prop_index(name_))) != 0;
  case Kind::Not:
    return !lhs_->holds(props);
  case Kind::And:
    return lhs_->holds(props) && rhs_->holds(props);
  case Kind::Or:
    return lhs_->holds(props) || rhs_->holds(props);
  }
  return false;
}

bool operator==(const BoolNode &a, const BoolNode &b) noexcept {
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case BoolNode::Kind::Prop:
    return a.name() == b.name();
  case BoolNode::Kind::Not:
    return *a.lhs() == *b.lhs();
  default:
    return *a.lhs() == *b.lhs() && *a.rhs() == *b.rhs();
  }
}

bool equal(const BoolExpr &a, const BoolExpr &b) noexcept {
  if (!a || !b)
    return !a && !b;
  return *a == *b;
}

// ---------------------------------------------------------------------------
// Regular layer

Regex RegexNode::atom(BoolExpr expr, bool left_anchor, bool right_anchor) {
  if (!expr)
    throw std::invalid_argument("atom requires a Boolean expression");
  return std::make_shared<const RegexNode>(Kind::Atom, std::move(expr),
                                           left_anchor, right_anchor, nullptr,
                                           nullptr, 0, 0, false);
}

namespace {

Regex binary(RegexNode::Kind kind, Regex lhs, Regex rhs) {
  if (!lhs || !rhs)
    throw std::invalid_argument("binary node requires two operands");
  return std::make_shared<const RegexNode>(kind, nullptr, false, false,
                                           std::move(lhs), std::move(rhs), 0,
                                           0, false);
}

} // namespace

Regex RegexNode::concat(Regex lhs, Regex rhs) {
  return binary(Kind::Concat, std::move(lhs), std::move(rhs));
}

Regex RegexNode::choice(Regex lhs, Regex rhs) {
  return binary(Kind::Choice, std::move(lhs), std::move(rhs));
}

Regex RegexNode::coincide(Regex lhs, Regex rhs) {
  return binary(Kind::Coincide, std::move(lhs), std::move(rhs));
}

Regex RegexNode::duration(Regex operand, Time lo, Time hi) {
  if (!operand)
    throw std::invalid_argument("duration requires an operand");
  if (lo < 0 || lo > hi)
    throw std::invalid_argument("duration bounds must satisfy 0 <= m <= n");
  return std::make_shared<const RegexNode>(Kind::Duration, nullptr, false,
                                           false, std::move(operand), nullptr,
                                           lo, hi, false);
}

Regex RegexNode::star(Regex operand) {
  if (!operand)
    throw std::invalid_argument("star requires an operand");
  return std::make_shared<const RegexNode>(Kind::Star, nullptr, false, false,
                                           std::move(operand), nullptr, 0, 0,
                                           false);
}

Regex RegexNode::plus(Regex operand, bool accepts_empty) {
  if (!operand)
    throw std::invalid_argument("plus requires an operand");
  return std::make_shared<const RegexNode>(Kind::Plus, nullptr, false, false,
                                           std::move(operand), nullptr, 0, 0,
                                           accepts_empty);
}

bool operator==(const RegexNode &a, const RegexNode &b) noexcept {
  if (a.kind() != b.kind())
    return false;
  using K = RegexNode::Kind;
  switch (a.kind()) {
  case K::Atom:
    return a.left_anchor() == b.left_anchor() &&
           a.right_anchor() == b.right_anchor() && *a.boolean() == *b.boolean();
  case K::Concat:
  case K::Choice:
  case K::Coincide:
    return *a.lhs() == *b.lhs() && *a.rhs() == *b.rhs();
  case K::Duration:
    return a.lo() == b.lo() && a.hi() == b.hi() && *a.operand() == *b.operand();
  case K::Star:
    return *a.operand() == *b.operand();
  case K::Plus:
    return a.accepts_empty() == b.accepts_empty() &&
           *a.operand() == *b.operand();
  }
  return false;
}

bool equal(const Regex &a, const Regex &b) noexcept {
  if (!a || !b)
    return !a && !b;
  return *a == *b;
}

bool nullable(const RegexNode &e) noexcept {
  using K = RegexNode::Kind;
  switch (e.kind()) {
  case K::Atom:
    return false;
  case K::Concat:
  case K::Coincide:
    return nullable(*e.lhs()) && nullable(*e.rhs());
  case K::Choice:
    return nullable(*e.lhs()) || nullable(*e.rhs());
  case K::Duration:
    return e.lo() == 0 && nullable(*e.operand());
  case K::Star:
    return true;
  case K::Plus:
    return e.accepts_empty() || nullable(*e.operand());
  }
  return false;
}

std::size_t size(const RegexNode &e) noexcept {
  switch (e.kind()) {
  case RegexNode::Kind::Atom:
    return 1;
  case RegexNode::Kind::Concat:
  case RegexNode::Kind::Choice:
  case RegexNode::Kind::Coincide:
    return 1 + size(*e.lhs()) + size(*e.rhs());
  default:
    return 1 + size(*e.operand());
  }
}

std::size_t depth(const RegexNode &e) noexcept {
  switch (e.kind()) {
  case RegexNode::Kind::Atom:
    return 1;
  case RegexNode::Kind::Concat:
  case RegexNode::Kind::Choice:
  case RegexNode::Kind::Coincide:
    return 1 + std::max(depth(*e.lhs()), depth(*e.rhs()));
  default:
    return 1 + depth(*e.operand());
  }
}

Regex desugar(const Regex &e) {
  using K = RegexNode::Kind;
  switch (e->kind()) {
  case K::Atom:
    return e;
  case K::Concat:
    return RegexNode::concat(desugar(e->lhs()), desugar(e->rhs()));
  case K::Choice:
    return RegexNode::choice(desugar(e->lhs()), desugar(e->rhs()));
  case K::Coincide:
    return RegexNode::coincide(desugar(e->lhs()), desugar(e->rhs()));
  case K::Duration:
    return RegexNode::duration(desugar(e->operand()), e->lo(), e->hi());
  case K::Star:
    return RegexNode::plus(desugar(e->operand()), true);
  case K::Plus:
    return RegexNode::plus(desugar(e->operand()), e->accepts_empty());
  }
  return e;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const BoolNode &e) {
  switch (e.kind()) {
  case BoolNode::Kind::Prop:
    return std::string(1, e.name());
  case BoolNode::Kind::Not:
    return "!(" + to_string(*e.lhs()) + ")";
  case BoolNode::Kind::And:
    return "(" + to_string(*e.lhs()) + "&&" + to_string(*e.rhs()) + ")";
  case BoolNode::Kind::Or:
    return "(" + to_string(*e.lhs()) + "||" + to_string(*e.rhs()) + ")";
  }
  return {};
}

std::string to_string(const RegexNode &e) {
  using K = RegexNode::Kind;
  switch (e.kind()) {
  case K::Atom: {
    std::string s = "(";
    if (e.left_anchor())
      s += "<:";
    s += "(" + to_string(*e.boolean()) + ")";
    if (e.right_anchor())
      s += ":>";
    return s + ")";
  }
  case K::Concat:
    return "(" + to_string(*e.lhs()) + ";" + to_string(*e.rhs()) + ")";
  case K::Choice:
    return "(" + to_string(*e.lhs()) + "|" + to_string(*e.rhs()) + ")";
  case K::Coincide:
    return "(" + to_string(*e.lhs()) + "&" + to_string(*e.rhs()) + ")";
  case K::Duration:
    return "((" + to_string(*e.operand()) + ")%(" + std::to_string(e.lo()) +
           "," + std::to_string(e.hi()) + "))";
  case K::Star:
    return "((" + to_string(*e.operand()) + ")*)";
  case K::Plus:
    return "((" + to_string(*e.operand()) + (e.accepts_empty() ? ")*)" : ")+)");
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Regex parse_regex() {
    skip_ws();
    if (at_end())
      fail("empty expression");
    Regex e = parse_choice();
    skip_ws();
    if (!at_end())
      fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

  BoolExpr parse_bool_only() {
    skip_ws();
    if (at_end())
      fail("empty expression");
    BoolExpr e = parse_or();
    skip_ws();
    if (!at_end())
      fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool looking_at(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  // Single-character operator that is not the prefix of its doubled form.
  bool looking_at_single(char c) {
    skip_ws();
    return !at_end() && text_[pos_] == c &&
           (pos_ + 1 >= text_.size() || text_[pos_ + 1] != c);
  }

  [[noreturn]] void fail(const std::string &msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t pos, const std::string &msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ExprSyntaxError(msg, line, col);
  }

  void expect(std::string_view tok) {
    if (!looking_at(tok))
      fail("expected '" + std::string(tok) + "'");
    pos_ += tok.size();
  }

  Regex parse_choice() {
    Regex lhs = parse_coincide();
    while (looking_at_single('|')) {
      ++pos_;
      lhs = RegexNode::choice(std::move(lhs), parse_coincide());
    }
    return lhs;
  }

  Regex parse_coincide() {
    Regex lhs = parse_concat();
    while (looking_at_single('&')) {
      ++pos_;
      lhs = RegexNode::coincide(std::move(lhs), parse_concat());
    }
    return lhs;
  }

  Regex parse_concat() {
    Regex lhs = parse_postfix();
    while (looking_at(";")) {
      ++pos_;
      lhs = RegexNode::concat(std::move(lhs), parse_postfix());
    }
    return lhs;
  }

  Time parse_bound() {
    skip_ws();
    std::size_t start = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("duration bound must be a nonnegative integer");
    Time value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int digit = text_[pos_] - '0';
      if (value > (std::numeric_limits<Time>::max() / 4 - digit) / 10)
        fail_at(start, "duration bound out of range");
      value = value * 10 + digit;
      ++pos_;
    }
    if (!at_end() && (text_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(text_[pos_]))))
      fail("duration bound must be a nonnegative integer");
    return value;
  }

  Regex parse_postfix() {
    Regex e = parse_prefix();
    for (;;) {
      if (looking_at("*")) {
        ++pos_;
        e = RegexNode::star(std::move(e));
      } else if (looking_at("+")) {
        ++pos_;
        e = RegexNode::plus(std::move(e));
      } else if (looking_at("%")) {
        std::size_t at = pos_;
        ++pos_;
        expect("(");
        Time lo = parse_bound();
        expect(",");
        Time hi = parse_bound();
        expect(")");
        if (lo > hi)
          fail_at(at, "duration lower bound exceeds upper bound");
        e = RegexNode::duration(std::move(e), lo, hi);
      } else if (looking_at(":>")) {
        if (e->kind() != RegexNode::Kind::Atom || e->right_anchor())
          fail("anchor ':>' applies only to a Boolean expression");
        pos_ += 2;
        e = RegexNode::atom(e->boolean(), e->left_anchor(), true);
      } else {
        return e;
      }
    }
  }

  Regex parse_prefix() {
    skip_ws();
    if (at_end())
      fail("expected expression");
    if (looking_at("<:")) {
      std::size_t at = pos_;
      pos_ += 2;
      BoolExpr b;
      try {
        b = parse_or();
      } catch (const ExprSyntaxError &) {
        fail_at(at, "anchor '<:' applies only to a Boolean expression");
      }
      return RegexNode::atom(std::move(b), true, false);
    }
    char c = text_[pos_];
    if (c == '(') {
      std::size_t start = pos_;
      try {
        return RegexNode::atom(parse_or());
      } catch (const ExprSyntaxError &) {
        pos_ = start;
      }
      ++pos_;
      Regex inner = parse_choice();
      expect(")");
      return inner;
    }
    if (c == '!' || prop_index(c) >= 0)
      return RegexNode::atom(parse_or());
    fail(std::string("expected expression, found '") + c + "'");
  }

  BoolExpr parse_or() {
    BoolExpr lhs = parse_and();
    while (looking_at("||")) {
      pos_ += 2;
      lhs = BoolNode::disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  BoolExpr parse_and() {
    BoolExpr lhs = parse_not();
    while (looking_at("&&")) {
      pos_ += 2;
      lhs = BoolNode::conj(std::move(lhs), parse_not());
    }
    return lhs;
  }

  BoolExpr parse_not() {
    if (looking_at("!")) {
      ++pos_;
      return BoolNode::negate(parse_not());
    }
    return parse_bool_primary();
  }

  BoolExpr parse_bool_primary() {
    skip_ws();
    if (at_end())
      fail("expected proposition");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      BoolExpr inner = parse_or();
      expect(")");
      return inner;
    }
    if (prop_index(c) >= 0) {
      ++pos_;
      if (!at_end() && prop_index(text_[pos_]) >= 0)
        fail("propositions are single letters");
      return BoolNode::prop(c);
    }
    fail(std::string("expected proposition, found '") + c + "'");
  }
};

} // namespace

Regex parse_expr(std::string_view text) { return Parser(text).parse_regex(); }

BoolExpr parse_boolean(std::string_view text) {
  return Parser(text).parse_bool_only();
}

} // namespace trematch
