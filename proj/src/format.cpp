#include "trematch/format.hpp"

#include <charconv>
#include <stdexcept>

namespace trematch {

namespace {

std::string lower_text(Limit l) {
  if (l.infinite)
    return "-inf <";
  return std::to_string(l.value) + (l.strict ? " <" : " <=");
}

std::string upper_text(Limit l) {
  if (l.infinite)
    return "< inf";
  return std::string(l.strict ? "< " : "<= ") + std::to_string(l.value);
}

std::string variable_text(const char *name, Limit lo, Limit hi) {
  if (!lo.infinite && !hi.infinite && !lo.strict && !hi.strict &&
      lo.value == hi.value)
    return std::string(name) + " = " + std::to_string(lo.value);
  return lower_text(lo) + " " + name + " " + upper_text(hi);
}

void append_limit(std::string &out, Limit l, bool lower) {
  if (l.infinite)
    out += lower ? "-inf,0" : "inf,0";
  else
    out += std::to_string(l.value) + (l.strict ? ",1" : ",0");
}

Limit parse_limit(std::string_view value, std::string_view strict, bool lower,
                  std::size_t line) {
  auto bad = [&](const std::string &what) {
    return std::runtime_error("csv line " + std::to_string(line) + ": " + what);
  };
  if (strict != "0" && strict != "1")
    throw bad("strictness must be 0 or 1");
  if (value == (lower ? "-inf" : "inf")) {
    if (strict != "0")
      throw bad("unbounded limit must be non-strict");
    return Limit::none();
  }
  Time v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw bad("malformed integer '" + std::string(value) + "'");
  return {v, strict == "1", false};
}

} // namespace

std::string format_human(const Zone &z) {
  return variable_text("t", z.b_lo(), z.b_hi()) + ", " +
         variable_text("t'", z.e_lo(), z.e_hi()) + ", " +
         variable_text("t'-t", z.d_lo(), z.d_hi());
}

const std::string &csv_header() {
  static const std::string header =
      "bmin,bmin_strict,bmax,bmax_strict,emin,emin_strict,emax,emax_strict,"
      "dmin,dmin_strict,dmax,dmax_strict";
  return header;
}

std::string format_csv_row(const Zone &z) {
  std::string out;
  append_limit(out, z.b_lo(), true);
  out += ',';
  append_limit(out, z.b_hi(), false);
  out += ',';
  append_limit(out, z.e_lo(), true);
  out += ',';
  append_limit(out, z.e_hi(), false);
  out += ',';
  append_limit(out, z.d_lo(), true);
  out += ',';
  append_limit(out, z.d_hi(), false);
  return out;
}

std::vector<Zone> parse_zones_csv(std::string_view text) {
  std::vector<Zone> zones;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (!header_seen) {
      if (line != csv_header())
        throw std::runtime_error("csv line 1: unexpected header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    if (fields.size() != 12)
      throw std::runtime_error("csv line " + std::to_string(line_no) +
                               ": expected 12 fields");
    Limit l[6];
    for (int i = 0; i < 6; ++i)
      l[i] = parse_limit(fields[2 * i], fields[2 * i + 1], i % 2 == 0, line_no);
    zones.emplace_back(l[0], l[1], l[2], l[3], l[4], l[5]);
  }
  if (!header_seen && !zones.empty())
    throw std::runtime_error("csv: missing header");
  return zones;
}

} // namespace trematch
