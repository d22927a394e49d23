#include "trematch/behavior.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "trematch/error.hpp"

namespace trematch {

bool Segment::has(char letter) const noexcept {
  int idx = prop_index(letter);
  return idx >= 0 && (props & prop_bit(idx)) != 0;
}

TimedBehavior::TimedBehavior(std::vector<Segment> segments) {
  segments_.reserve(segments.size());
  boundaries_.reserve(segments.size() + 1);
  for (const Segment &s : segments)
    push_back(s);
}

void TimedBehavior::push_back(Segment segment) {
  if (segment.duration < 1)
    throw std::invalid_argument("segment duration must be positive");
  segments_.push_back(segment);
  boundaries_.push_back(boundaries_.back() + segment.duration);
}

namespace {

class BehaviorReader {
public:
  explicit BehaviorReader(std::string_view text) : text_(text) {}

  TimedBehavior read() {
    TimedBehavior b;
    skip_blank(true);
    while (!at_end()) {
      b.push_back(read_segment());
      // A separator is a single ';' and/or any number of newlines.
      bool separated = false;
      bool semicolon = false;
      for (;;) {
        skip_blank(false);
        if (at_end())
          return b;
        char c = text_[pos_];
        if (c == '\n') {
          separated = true;
          advance();
        } else if (c == ';' && !semicolon) {
          separated = semicolon = true;
          advance();
        } else {
          break;
        }
      }
      if (!separated)
        fail("expected ';' or newline between segments");
    }
    return b;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  bool at_end() const { return pos_ >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank(bool newlines) {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n'))
        advance();
      else
        break;
    }
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw BehaviorSyntaxError(msg, line_, col_);
  }

  void expect(char c) {
    skip_blank(false);
    if (at_end() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    advance();
  }

  Segment read_segment() {
    expect('(');
    skip_blank(false);
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a positive integer duration");
    std::size_t line = line_, col = col_;
    Time dur = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int digit = text_[pos_] - '0';
      if (dur > (std::numeric_limits<Time>::max() / 4 - digit) / 10)
        throw BehaviorSyntaxError("duration out of range", line, col);
      dur = dur * 10 + digit;
      advance();
    }
    if (!at_end() && text_[pos_] == '.')
      fail("duration must be an integer");
    if (dur == 0)
      throw BehaviorSyntaxError("duration must be positive", line, col);
    expect(',');
    skip_blank(false);
    PropSet props = 0;
    while (!at_end() && text_[pos_] != ')') {
      char c = text_[pos_];
      int idx = prop_index(c);
      if (idx < 0) {
        if (c == ' ' || c == '\t')
          break;
        fail(std::string("invalid proposition '") + c + "'");
      }
      props |= prop_bit(idx);
      advance();
    }
    expect(')');
    return Segment{dur, props};
  }
};

} // namespace

TimedBehavior parse_behavior(std::string_view text) {
  return BehaviorReader(text).read();
}

std::string serialize_props(PropSet props) {
  std::string out;
  for (int i = 0; i < 52; ++i)
    if (props & prop_bit(i))
      out += prop_letter(i);
  return out;
}

std::string serialize_behavior(const TimedBehavior &b) {
  std::string out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k)
      out += ';';
    out += '(';
    out += std::to_string(b[k].duration);
    out += ',';
    out += serialize_props(b[k].props);
    out += ')';
  }
  return out;
}

std::vector<Interval> eval_boolean(const TimedBehavior &b, const BoolNode &e) {
  std::vector<Interval> out;
  // Valuations repeat heavily in practice; memoize the last one.
  PropSet last_props = 0;
  bool last_truth = e.holds(0);
  for (std::size_t k = 0; k < b.size(); ++k) {
    PropSet props = b[k].props;
    if (props != last_props) {
      last_props = props;
      last_truth = e.holds(props);
    }
    if (!last_truth)
      continue;
    Time lo = b.boundary(k), hi = b.boundary(k + 1);
    if (!out.empty() && out.back().hi == lo)
      out.back().hi = hi;
    else
      out.push_back({lo, hi});
  }
  return out;
}

} // namespace trematch
