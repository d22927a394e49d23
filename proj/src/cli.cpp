#include "trematch/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "trematch/behavior.hpp"
#include "trematch/error.hpp"
#include "trematch/offline.hpp"
#include "trematch/online.hpp"

namespace trematch {

namespace {

constexpr const char *kProgram = "tre-match";

class ZonePrinter {
public:
  ZonePrinter(std::ostream &out, OutputFormat format)
      : out_(out), format_(format) {}

  void print(const Zone &z) {
    if (format_ == OutputFormat::Csv) {
      if (!header_done_) {
        out_ << csv_header() << '\n';
        header_done_ = true;
      }
      out_ << format_csv_row(z) << '\n';
    } else {
      out_ << format_human(z) << '\n';
    }
    ++count_;
  }

  std::size_t count() const { return count_; }

private:
  std::ostream &out_;
  OutputFormat format_;
  bool header_done_ = false;
  std::size_t count_ = 0;
};

void report_expr_error(std::ostream &err, const std::string &expr,
                       const ExprSyntaxError &e) {
  err << kProgram << ": expression:" << e.line() << ':' << e.column()
      << ": error: " << e.what() << '\n'
      << "  " << expr << '\n'
      << "  " << std::string(e.column() > 0 ? e.column() - 1 : 0, ' ') << "^\n";
}

void report_input_error(std::ostream &err, const std::string &source,
                        std::size_t line, std::size_t column,
                        const std::string &what) {
  err << kProgram << ": " << source << ':' << line << ':' << column
      << ": error: " << what << '\n';
}

void report_stats(std::ostream &err, const char *mode, std::size_t segments,
                  std::size_t zones,
                  std::chrono::steady_clock::time_point start) {
  auto elapsed = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  err << "stats: mode=" << mode << " segments=" << segments
      << " zones=" << zones << " wall_ms=" << std::fixed
      << std::setprecision(3) << elapsed << '\n';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

int run_offline(const RunConfig &config, const Regex &expr, std::istream &in,
                std::ostream &out, std::ostream &err,
                const std::string &source) {
  auto start = std::chrono::steady_clock::now();
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  TimedBehavior behavior;
  try {
    behavior = parse_behavior(text);
  } catch (const BehaviorSyntaxError &e) {
    report_input_error(err, source, e.line(), e.column(), e.what());
    return kExitInputError;
  }
  ZoneSet result = match_expr(behavior, expr, {config.fixpoint_cap});
  // ZoneSet members are already in canonical order.
  ZonePrinter printer(out, config.format);
  for (const Zone &z : result)
    printer.print(z);
  out.flush();
  if (config.stats)
    report_stats(err, "offline", behavior.size(), printer.count(), start);
  return kExitOk;
}

int run_online(const RunConfig &config, const Regex &expr, std::istream &in,
               std::ostream &out, std::ostream &err,
               const std::string &source) {
  auto start = std::chrono::steady_clock::now();
  OnlineMatcher matcher(expr, config.fixpoint_cap);
  ZonePrinter printer(out, config.format);
  std::vector<Zone> held; // only with --sort
  auto deliver = [&](const ZoneSet &zones) {
    for (const Zone &z : zones) {
      if (config.sort)
        held.push_back(z);
      else
        printer.print(z);
    }
    out.flush();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty())
      continue;
    if (body == ".")
      break;
    std::size_t offset = static_cast<std::size_t>(body.data() - line.data());
    TimedBehavior segments;
    try {
      if (body.front() == '(') {
        segments = parse_behavior(body);
      } else {
        std::string wrapped = "(" + std::string(body) + ")";
        try {
          segments = parse_behavior(wrapped);
        } catch (const BehaviorSyntaxError &e) {
          throw BehaviorSyntaxError(e.what(), 1, e.column() > 1 ? e.column() - 1 : 1);
        }
      }
    } catch (const BehaviorSyntaxError &e) {
      report_input_error(err, source, line_no, e.column() + offset, e.what());
      return kExitInputError;
    }
    for (const Segment &seg : segments.segments())
      deliver(matcher.feed(seg));
  }
  deliver(matcher.flush());
  if (config.sort) {
    std::sort(held.begin(), held.end(), zone_less);
    for (const Zone &z : held)
      printer.print(z);
    out.flush();
  }
  if (config.stats)
    report_stats(err, "online", matcher.segments_seen(), printer.count(), start);
  return kExitOk;
}

} // namespace

int run(const RunConfig &config, std::istream &in, std::ostream &out,
        std::ostream &err) {
  Regex expr;
  try {
    expr = parse_expr(config.expr_text);
  } catch (const ExprSyntaxError &e) {
    report_expr_error(err, config.expr_text, e);
    return kExitExprError;
  }

  std::ifstream file;
  std::istream *source = &in;
  std::string source_name = "<stdin>";
  if (config.input) {
    file.open(*config.input, std::ios::binary);
    if (!file) {
      err << kProgram << ": cannot open '" << *config.input << "'\n";
      return kExitInputError;
    }
    source = &file;
    source_name = *config.input;
  }

  try {
    return config.online
               ? run_online(config, expr, *source, out, err, source_name)
               : run_offline(config, expr, *source, out, err, source_name);
  } catch (const InvariantViolation &e) {
    out.flush();
    err << kProgram << ": internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(const std::vector<std::string> &args, std::istream &in,
        std::ostream &out, std::ostream &err) {
  CLI::App app{"Timed pattern matching over piecewise-constant behaviors",
               kProgram};
  RunConfig config;
  std::string format = "human";
  std::string input;
  app.add_option("-e,--expr", config.expr_text, "timed regular expression")
      ->required();
  app.add_flag("--online", config.online,
               "read one segment per line and emit matches as they are "
               "confirmed; a line '.' ends the stream");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "csv"}));
  app.add_flag("--sort", config.sort,
               "print zones in canonical (csv tuple) order");
  app.add_flag("--stats", config.stats,
               "print segment count, zone count and wall time to stderr");
  std::size_t cap = 0;
  auto *cap_opt =
      app.add_option("--fixpoint-cap", cap,
                     "debugging: fail with exit 3 when a repetition needs more "
                     "rounds than this")
          ->check(CLI::PositiveNumber);
  app.add_option("FILE", input, "behavior file (default: standard input)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << kProgram << ": " << e.what() << '\n'
        << "usage: tre-match [--online] [--format human|csv] -e EXPR [FILE]\n";
    return kExitUsage;
  }
  config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Human;
  if (cap_opt->count() > 0)
    config.fixpoint_cap = cap;
  if (!input.empty() && input != "-")
    config.input = input;
  return run(config, in, out, err);
}

} // namespace trematch
