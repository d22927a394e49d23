// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// gating criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "zone_gen.hpp"
#include "trematch/cli.hpp"
#include "trematch/offline.hpp"
#include "trematch/online.hpp"

using namespace trematch;
using namespace trematch::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string &name) {
  return std::string(TREMATCH_GOLDEN_DIR) + "/" + name;
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args, const std::string &input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

ZoneSet set_of(std::vector<Zone> zs) { return ZoneSet::from_zones(std::move(zs)); }

ZoneSet cumulative(const std::vector<ZoneSet> &emissions) {
  ZoneSet out;
  for (const ZoneSet &e : emissions)
    for (const Zone &z : e)
      out.insert(z);
  return out;
}

// ---------------------------------------------------------------------------

Verdict paper_example() {
  auto start = Clock::now();
  Verdict v;
  TimedBehavior b = parse_behavior("(3,pq);(2,q);(2,p)");
  ZoneSet p = match_expr(b, parse_expr("p"));
  ZoneSet q = match_expr(b, parse_expr("q"));
  bool zones_ok = p == set_of({make_triangle(0, 3), make_triangle(5, 7)}) &&
                  q == set_of({make_triangle(0, 5)});
  CliResult pc = cli({"--format", "csv", "-e", "p", golden("example.txt")});
  CliResult qc = cli({"--format", "csv", "-e", "q", golden("example.txt")});
  bool csv_ok = pc.code == 0 && qc.code == 0 &&
                pc.out == slurp(golden("example_p.csv")) &&
                qc.out == slurp(golden("example_q.csv"));
  double took = seconds_since(start);
  v.pass = zones_ok && csv_ok && took < 1.0;
  v.detail = std::string("zones ") + (zones_ok ? "exact" : "WRONG") +
             ", csv golden " + (csv_ok ? "byte-identical" : "DIFFERS") +
             ", " + fixed(took) + " s";
  return v;
}

struct CorpusCase {
  TimedBehavior b;
  Regex e;
};

std::vector<CorpusCase> corpus() {
  std::vector<CorpusCase> out;
  for (std::uint64_t k = 0; k < 500; ++k)
    out.push_back({random_behavior(1000 + k, 12, 5, 3),
                   random_expr(0xC0FFEE + 7919 * k, 4, 3)});
  return out;
}

Verdict oracle_equivalence(const std::vector<CorpusCase> &cases) {
  auto start = Clock::now();
  std::size_t points = 0, bad = 0, bad_pairs = 0;
  std::string first;
  for (const CorpusCase &c : cases) {
    ZoneSet got = match_expr(c.b, c.e);
    GridOracle o(c.b, c.e);
    std::size_t here = 0;
    for (Time i = 0; i <= o.last_point(); ++i)
      for (Time j = i + 1; j <= o.last_point(); ++j) {
        ++points;
        if (got.contains_point(i, j, 4) != o.matches(i, j))
          ++here;
      }
    if (here && first.empty())
      first = serialize_behavior(c.b) + " / " + to_string(*c.e);
    bad += here;
    bad_pairs += here != 0;
  }
  Verdict v;
  v.pass = bad == 0;
  v.detail = std::to_string(cases.size()) + " pairs, " +
             std::to_string(points) + " grid points, " + std::to_string(bad) +
             " disagreements, " + fixed(seconds_since(start), 1) + " s";
  if (!first.empty())
    v.detail += "; first: " + first;
  return v;
}

Verdict online_duality(const std::vector<CorpusCase> &cases) {
  std::size_t unequal = 0, retracted = 0, late = 0;
  for (const CorpusCase &c : cases) {
    ZoneSet offline = match_expr(c.b, c.e);
    OnlineMatcher m(c.e);
    std::vector<ZoneSet> emissions;
    for (const Segment &s : c.b.segments()) {
      emissions.push_back(m.feed(s));
      for (const Zone &z : emissions.back())
        retracted += !offline.covers(z);
    }
    emissions.push_back(m.flush());
    for (const Zone &z : emissions.back())
      retracted += !offline.covers(z);
    unequal += cumulative(emissions).zones() != offline.zones();

    // After segment k + 1 every match ending by T_k has been emitted.
    for (std::size_t k = 0; k + 1 < c.b.size(); ++k) {
      ZoneSet so_far = cumulative(
          {emissions.begin(), emissions.begin() + static_cast<long>(k) + 2});
      Time tk = c.b.boundary(k + 1);
      Zone upto(Limit::none(), Limit::none(), Limit::none(), Limit::closed(tk),
                Limit::none(), Limit::none());
      for (const Zone &z : offline) {
        auto clipped = intersect(z, upto);
        if (!clipped)
          continue;
        for (Time i = 0; i <= 4 * tk; ++i)
          for (Time j = i + 1; j <= 4 * tk; ++j)
            if (contains_point(*clipped, i, j, 4) &&
                !so_far.contains_point(i, j, 4))
              ++late;
      }
    }
  }
  Verdict v;
  v.pass = unequal == 0 && retracted == 0 && late == 0;
  v.detail = std::to_string(cases.size()) + " pairs, " +
             std::to_string(unequal) + " unequal sets, " +
             std::to_string(retracted) + " retractions, " +
             std::to_string(late) + " late points";
  return v;
}

Verdict zone_laws() {
  constexpr int kZones = 10000;
  constexpr Time kMax = 32;
  ZoneGenerator gen(20240611, kMax);
  std::vector<Zone> zs;
  zs.reserve(kZones);
  for (int k = 0; k < kZones; ++k)
    zs.push_back(gen.next());

  std::size_t idem = 0, preserve = 0, comm = 0, iidem = 0, assoc = 0,
              order = 0, includes_hits = 0;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Time> val(0, kMax);
  auto raw_limit = [&] {
    switch (rng() % 3) {
    case 0:
      return Limit::none();
    case 1:
      return Limit::closed(val(rng));
    default:
      return Limit::open(val(rng));
    }
  };
  for (int k = 0; k < kZones; ++k) {
    const Zone &a = zs[k];
    const Zone &b = zs[(k + 1) % kZones];
    const Zone &c = zs[(k + 2) % kZones];
    idem += tighten(a) != a;

    Zone raw(raw_limit(), raw_limit(), raw_limit(), raw_limit(), raw_limit(),
             raw_limit());
    auto t = tighten(raw);
    if (t)
      idem += tighten(*t) != t;
    for (Time i = 0; i <= 4 * kMax; i += 1 + static_cast<Time>(k % 3))
      for (Time j = 0; j <= 4 * kMax; ++j)
        preserve += contains_point(raw, i, j, 4) != (t && contains_point(*t, i, j, 4));

    comm += intersect(a, b) != intersect(b, a);
    iidem += intersect(a, a) != a;
    auto ab = compose(a, b), bc = compose(b, c);
    auto left = ab ? compose(*ab, c) : std::nullopt;
    auto right = bc ? compose(a, *bc) : std::nullopt;
    assoc += left != right;

    // Partial order: reflexive, antisymmetric, transitive. Intersections
    // give related pairs and chains.
    order += !includes(a, a);
    if (auto ib = intersect(a, b)) {
      ++includes_hits;
      order += !includes(a, *ib);
      if (includes(*ib, a))
        order += *ib != a;
      if (auto ibc = intersect(*ib, c))
        order += !includes(a, *ibc);
    }
    if (includes(a, b) && includes(b, a))
      order += a != b;
    if (includes(a, b) && includes(b, c))
      order += !includes(a, c);
  }
  Verdict v;
  std::size_t total = idem + preserve + comm + iidem + assoc + order;
  v.pass = total == 0;
  v.detail = std::to_string(kZones) + " zones in [0," + std::to_string(kMax) +
             "]: idempotence " + std::to_string(idem) + ", tightening " +
             std::to_string(preserve) + ", commutativity " +
             std::to_string(comm) + ", intersect idempotence " +
             std::to_string(iidem) + ", associativity " +
             std::to_string(assoc) + ", order " + std::to_string(order) +
             " violations (" + std::to_string(includes_hits) +
             " related pairs)";
  return v;
}

// --- Sprint patterns -------------------------------------------------------

constexpr Time kTick = 500; // ms; every planted duration is a multiple

struct Planted {
  TimedBehavior ms;     // durations in milliseconds
  TimedBehavior ticks;  // same behavior in 500 ms ticks
  std::vector<std::size_t> episodes; // index of each episode's first segment
};

Segment make_segment(Time d, const std::string &props) {
  Segment s;
  s.duration = d;
  for (char c : props)
    s.props |= prop_bit(prop_index(c));
  return s;
}

// Background play over {p,q,d,e} with occasional r and f, and planted
// episodes: possession (g, sometimes with f) right before a sprint, a run of
// s lasting 2..20 ticks over one to three segments, then a calm segment.
Planted planted_behavior(std::uint64_t seed, std::size_t segments) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](Time lo, Time hi) {
    return std::uniform_int_distribution<Time>(lo, hi)(rng);
  };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  std::vector<std::pair<Time, std::string>> segs;
  Planted out;
  auto background = [&] {
    std::string props;
    for (char c : {'p', 'q', 'd', 'e'})
      if (chance(0.5))
        props += c;
    if (chance(0.1))
      props += 'r';
    if (chance(0.05))
      props += 'f';
    segs.push_back({uniform(1, 6), props});
  };
  while (segs.size() < segments) {
    if (segs.size() + 8 < segments && chance(0.12)) {
      segs.push_back({uniform(1, 3), "pd"}); // no f, g, r, s
      out.episodes.push_back(segs.size());
      segs.push_back({uniform(1, 3), chance(0.5) ? "gp" : "fgq"});
      Time total = uniform(2, 20);
      int parts = static_cast<int>(uniform(1, std::min<Time>(3, total)));
      for (int k = 0; k < parts; ++k) {
        Time d = k + 1 == parts ? total : uniform(1, total - (parts - k - 1));
        total -= d;
        segs.push_back({d, chance(0.5) ? "s" : "se"});
      }
      segs.push_back({uniform(1, 3), "qd"});
    } else {
      background();
    }
  }
  for (auto &[d, props] : segs) {
    out.ms.push_back(make_segment(d * kTick, props));
    out.ticks.push_back(make_segment(d, props));
  }
  return out;
}

TimedBehavior slice(const TimedBehavior &b, std::size_t from, std::size_t count) {
  TimedBehavior out;
  for (std::size_t k = from; k < from + count && k < b.size(); ++k)
    out.push_back(b[k]);
  return out;
}

Verdict sprint_patterns() {
  using R = RegexNode;
  using B = BoolNode;
  const std::string p1 = "(<:s:>)%(1000,10000)";
  const std::string p2 = "(<:g);(<:(r||s):>)%(1000,10000)";
  const std::string p3 = "(<:(f||g));((<:s:>)%(1000,2000))";
  auto s_atom = R::atom(B::prop('s'), true, true);
  bool ast_ok =
      equal(parse_expr(p1), R::duration(s_atom, 1000, 10000)) &&
      equal(parse_expr(p2),
            R::concat(R::atom(B::prop('g'), true),
                      R::duration(R::atom(B::disj(B::prop('r'), B::prop('s')),
                                          true, true),
                                  1000, 10000))) &&
      equal(parse_expr(p3),
            R::concat(R::atom(B::disj(B::prop('f'), B::prop('g')), true),
                      R::duration(s_atom, 1000, 2000)));

  // The same patterns with bounds in ticks, for the oracle.
  const std::vector<std::pair<std::string, std::string>> patterns = {
      {p1, "(<:s:>)%(2,20)"},
      {p2, "(<:g);(<:(r||s):>)%(2,20)"},
      {p3, "(<:(f||g));((<:s:>)%(2,4))"}};

  Planted world = planted_behavior(31337, 5000);
  // Excerpt of 50 segments starting just before the second planted episode.
  std::size_t from = world.episodes.at(1) - 1;
  TimedBehavior ex_ms = slice(world.ms, from, 50);
  TimedBehavior ex_ticks = slice(world.ticks, from, 50);
  Time origin = world.ms.boundary(from);
  Time window = ex_ms.horizon();

  std::size_t bad_excerpt = 0, bad_full = 0, bad_online = 0, found = 0;
  std::size_t sprint_matches = 0;
  for (const auto &[ms_text, tick_text] : patterns) {
    Regex e_ms = parse_expr(ms_text);
    ZoneSet full = match_expr(world.ms, e_ms);
    ZoneSet local = match_expr(ex_ms, e_ms);
    GridOracle o(ex_ticks, parse_expr(tick_text));
    // Oracle grid step is a quarter tick, 125 ms.
    for (Time i = 0; i <= o.last_point(); ++i)
      for (Time j = i + 1; j <= o.last_point(); ++j) {
        bool want = o.matches(i, j);
        found += want;
        Time t = i * kTick / 4, tp = j * kTick / 4;
        bad_excerpt += local.contains_point(t, tp) != want;
        // Inside the window the full behavior decides the same way.
        if (t > 0 && tp < window)
          bad_full += full.contains_point(origin + t, origin + tp) != want;
      }
    OnlineMatcher m(e_ms);
    std::vector<ZoneSet> emissions;
    for (const Segment &s : world.ms.segments())
      emissions.push_back(m.feed(s));
    emissions.push_back(m.flush());
    bad_online += cumulative(emissions).zones() != full.zones();
    if (ms_text == p1)
      sprint_matches = full.size();
  }
  Verdict v;
  v.pass = ast_ok && bad_excerpt == 0 && bad_full == 0 && bad_online == 0 &&
           found > 0 && sprint_matches >= world.episodes.size();
  v.detail = std::string("ASTs ") + (ast_ok ? "as documented" : "WRONG") +
             "; 5000 segments, " + std::to_string(world.episodes.size()) +
             " planted sprints, P1 finds " + std::to_string(sprint_matches) +
             "; 50-segment excerpt: " + std::to_string(found) +
             " oracle matches, " + std::to_string(bad_excerpt) + "+" +
             std::to_string(bad_full) + " disagreements; online " +
             (bad_online ? "DIFFERS" : "equal");
  return v;
}

// --- Throughput ------------------------------------------------------------

TimedBehavior random_field(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Time> dur(1, 20);
  TimedBehavior b;
  for (std::size_t k = 0; k < n; ++k) {
    Segment s;
    s.duration = dur(rng) * 100;
    s.props = rng() & (prop_bit(prop_index('p')) | prop_bit(prop_index('q')) |
                       prop_bit(prop_index('r')) | prop_bit(prop_index('s')));
    b.push_back(s);
  }
  return b;
}

double best_offline_seconds(const TimedBehavior &b, const Regex &e, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto start = Clock::now();
    ZoneSet z = match_expr(b, e);
    best = std::min(best, seconds_since(start));
    if (z.empty())
      best = 1e300; // random fields always contain sprints of s
  }
  return best;
}

std::string stats_line(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  std::istringstream in;
  run(args, in, out, err);
  std::string line = err.str();
  if (!line.empty() && line.back() == '\n')
    line.pop_back();
  return line;
}

double wall_seconds(const std::string &stats) {
  auto at = stats.find("wall_ms=");
  return at == std::string::npos ? 1e300 : std::stod(stats.substr(at + 8)) / 1000.0;
}

Verdict throughput() {
  Regex p1 = parse_expr("(<:s:>)%(1000,10000)");
  std::vector<double> per_segment;
  std::string sizes;
  for (std::size_t n : {10000u, 100000u, 1000000u}) {
    TimedBehavior b = random_field(n, n);
    double s = best_offline_seconds(b, p1, n < 1000000 ? 7 : 3);
    per_segment.push_back(s / static_cast<double>(n));
    sizes += (sizes.empty() ? "" : ", ") + std::to_string(n) + ": " +
             fixed(s * 1000, 1) + " ms";
  }
  double spread = *std::max_element(per_segment.begin(), per_segment.end()) /
                  *std::min_element(per_segment.begin(), per_segment.end());

  // The soft figures go through the command line with --stats.
  auto path = std::filesystem::temp_directory_path() /
              ("trematch-acceptance-" + std::to_string(::getpid()) + ".txt");
  TimedBehavior field = random_field(4242, 1000000);
  {
    std::ofstream f(path);
    f << serialize_behavior(field) << '\n';
  }
  std::vector<std::string> base = {"--stats", "-e", "(<:s:>)%(1000,10000)",
                                   path.string()};
  std::string off = stats_line(base);
  std::vector<std::string> on_args = base;
  on_args.insert(on_args.begin(), "--online");
  // Online mode reads one segment per line.
  {
    std::ofstream f(path);
    for (const Segment &s : field.segments())
      f << '(' << s.duration << ',' << serialize_props(s.props) << ")\n";
  }
  std::string on = stats_line(on_args);
  std::filesystem::remove(path);
  bool soft = wall_seconds(off) <= 60 && wall_seconds(on) <= 600;

  Verdict v;
  v.pass = spread <= 2.0;
  v.detail = "offline P1 " + sizes + ", per-segment spread " +
             fixed(spread, 2) + "x (limit 2x); soft 1M target " +
             (soft ? "met" : "MISSED") + ": [" + off + "] [" + on + "]";
  return v;
}

// --- CLI contract ----------------------------------------------------------

Verdict cli_contract() {
  struct Case {
    std::string name;
    std::vector<std::string> args;
    std::string input;
    int code;
    std::string out; // golden file name or empty
  };
  const std::string example = golden("example.txt");
  const std::vector<Case> cases = {
      {"human", {"-e", "p", example}, "", 0, "example_p.txt"},
      {"csv", {"--format", "csv", "-e", "q", example}, "", 0, "example_q.csv"},
      {"zero matches", {"--format", "csv", "-e", "z", example}, "", 0, ""},
      {"empty input", {"-e", "p", golden("empty.txt")}, "", 0, ""},
      {"online sentinel", {"--online", "-e", "<:p:>"},
       slurp(golden("online_sentinel.txt")), 0, "online_sentinel.out"},
      {"online bare", {"--online", "--format", "csv", "-e", "p;q"},
       slurp(golden("online_bare.txt")), 0, "online_bare.csv"},
      {"expression error", {"-e", "p;;q", example}, "", 1, ""},
      {"behavior error", {"-e", "p", golden("bad_behavior.txt")}, "", 2, ""},
      {"stream error", {"--online", "-e", "p"}, slurp(golden("online_bad.txt")),
       2, "example_p_first.txt"},
      {"internal error", {"--fixpoint-cap", "2", "-e", "(p%(1,1))+",
                          golden("long_run.txt")}, "", 3, ""},
  };
  std::size_t bad = 0;
  std::string failed;
  for (const Case &c : cases) {
    CliResult r = cli(c.args, c.input);
    std::string want = c.out.empty() ? "" : slurp(golden(c.out));
    if (r.code != c.code || r.out != want) {
      ++bad;
      failed += " [" + c.name + "]";
    }
  }
  CliResult diag = cli({"-e", "p;;q", example});
  bool caret = diag.err == slurp(golden("expr_error.err"));
  Verdict v;
  v.pass = bad == 0 && caret;
  v.detail = std::to_string(cases.size()) + " cases over exit codes 0/1/2/3, " +
             std::to_string(bad) + " failing" + failed +
             (caret ? "; diagnostic golden matches" : "; diagnostic DIFFERS");
  return v;
}

} // namespace

int main() {
  std::vector<CorpusCase> cases = corpus();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"paper-example", paper_example},
      {"oracle-equivalence", [&] { return oracle_equivalence(cases); }},
      {"online-offline-duality", [&] { return online_duality(cases); }},
      {"zone-algebra-laws", zone_laws},
      {"sprint-patterns", sprint_patterns},
      {"throughput", throughput},
      {"cli-contract", cli_contract},
  };
  int failures = 0;
  for (const auto &[name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
