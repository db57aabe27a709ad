#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "freelink/bracket.hpp"
#include "freelink/diagram.hpp"
#include "freelink/error.hpp"
#include "freelink/group_words.hpp"
#include "freelink/invariant.hpp"
#include "freelink/moves.hpp"

namespace freelink::cli {

namespace {

// Raised for usage problems detected after flag parsing.
struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Diagram load(const std::string& path) {
  try {
    return parse_diagram(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.what());
  }
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text, std::size_t n) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--pair expects I,J");
  std::size_t i = 0;
  std::size_t j = 0;
  try {
    i = std::stoul(text.substr(0, comma));
    j = std::stoul(text.substr(comma + 1));
  } catch (const std::logic_error&) {
    throw UsageError("--pair expects two component indices, got '" + text + "'");
  }
  if (i == 0 || j == 0 || i > n || j > n || i == j)
    throw UsageError("--pair " + text + " is not a pair of distinct components of 1.." + std::to_string(n));
  return {i, j};
}

std::vector<Basepoint> parse_basepoints(const std::string& text) {
  std::vector<Basepoint> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--basepoints expects comma-separated component:offset items");
    try {
      out.push_back({std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw UsageError("malformed basepoint '" + item + "'");
    }
  }
  return out;
}

std::size_t resolve_along(const std::optional<std::size_t>& along, std::pair<std::size_t, std::size_t> pair) {
  if (!along) return pair.first;
  if (*along != pair.first && *along != pair.second) throw UsageError("--along must be one of the --pair indices");
  return *along;
}

// The word used by `invariant` and `orbit`.
Word diagram_word(const Diagram& d, std::size_t along, std::size_t other, const std::optional<std::string>& basepoints,
                  bool class_word) {
  if (d.kind == DiagramKind::tangle) {
    if (basepoints) throw UsageError("--basepoints applies to links only");
    return word_invariant(d, along, other);
  }
  if (basepoints) return link_word(d, parse_basepoints(*basepoints), along, other);
  if (class_word) return link_invariant(d, along, other);
  std::vector<Basepoint> origin;
  for (std::size_t k = 1; k <= d.components.size(); ++k) origin.push_back({k, 0});
  return link_word(d, origin, along, other);
}

std::string render_mask(std::uint64_t mask, std::size_t width) {
  Letter x{mask, width};
  return render(x);
}

struct Options {
  unsigned jobs = 1;
  std::string file;
  std::string second;
  std::optional<std::string> pair;
  std::optional<std::size_t> along;
  std::optional<std::string> basepoints;
  std::size_t depth = 2;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  bool forbid_pure = false;
  std::size_t max_size = 16;
};

int cmd_validate(const Options& o, std::ostream& out) {
  Diagram d = load(o.file);
  auto violations = validate(d);
  if (!violations.empty()) {
    out << "invalid\n";
    for (const auto& v : violations) out << "  " << v.rule << " violation at " << v.location << ": " << v.message << '\n';
    return kPrecondition;
  }
  auto good = is_good_condition(d);
  out << "valid, n=" << d.component_count() << ", crossings=" << d.crossing_count()
      << ", good-condition=" << (good.good ? "true" : "false") << ", pure=" << pure_crossings(d).size() << '\n';
  return kSuccess;
}

int cmd_invariant(const Options& o, std::ostream& out) {
  Diagram d = load(o.file);
  require_valid(d);
  if (!o.pair) throw UsageError("invariant requires --pair I,J");
  auto pair = parse_pair(*o.pair, d.component_count());
  auto along = resolve_along(o.along, pair);
  auto other = along == pair.first ? pair.second : pair.first;
  out << render(diagram_word(d, along, other, o.basepoints, true)) << '\n';
  return kSuccess;
}

int cmd_orbit(const Options& o, std::ostream& out) {
  Diagram d = load(o.file);
  require_valid(d);
  if (!o.pair) throw UsageError("orbit requires --pair I,J");
  auto pair = parse_pair(*o.pair, d.component_count());
  auto along = resolve_along(o.along, pair);
  auto other = along == pair.first ? pair.second : pair.first;
  Word w = diagram_word(d, along, other, o.basepoints, false);
  auto orbit = slide_orbit(w);
  out << "word " << render(w) << '\n';
  for (const auto& entry : orbit)
    out << "mask " << render_mask(entry.mask, w.context.width()) << ' ' << render(entry.representative) << '\n';
  out << "class " << render(canonical_class_word(w)) << '\n';
  return kSuccess;
}

int cmd_bracket(const Options& o, std::ostream& out) {
  Diagram d = load(o.file);
  BracketOptions opts;
  opts.jobs = o.jobs;
  out << serialize(bracket(d, opts));
  return kSuccess;
}

bool pure_free_good(const Diagram& d) { return pure_crossings(d).empty() && is_good_condition(d).good; }

int cmd_compare(const Options& o, std::ostream& out) {
  Diagram a = load(o.file);
  Diagram b = load(o.second);
  require_valid(a);
  require_valid(b);
  if (a.component_count() != b.component_count())
    throw PreconditionError("diagrams have different component counts");
  if (a.kind != b.kind) throw PreconditionError("cannot compare a tangle with a link");
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  if (o.pair) pair = parse_pair(*o.pair, a.component_count());

  if (pure_free_good(a) && pure_free_good(b)) {
    auto fa = fingerprint(a);
    auto fb = fingerprint(b);
    std::optional<FingerprintKey> diff;
    if (pair) {
      auto lo = std::min(pair->first, pair->second);
      auto hi = std::max(pair->first, pair->second);
      for (auto along : {pair->first, pair->second}) {
        FingerprintKey key{lo, hi, along};
        if (!(fa.words.at(key) == fb.words.at(key))) {
          diff = key;
          break;
        }
      }
    }
    if (!diff) diff = first_difference(fa, fb);
    if (diff) {
      out << "distinct\n";
      out << "certificate: pair (" << diff->i << "," << diff->j << ") along " << diff->along << ": "
          << render(fa.words.at(*diff)) << " vs " << render(fb.words.at(*diff)) << '\n';
      return kDistinct;
    }
  }

  BracketOptions opts;
  opts.jobs = o.jobs;
  auto verdict = bracket_equal(bracket(a, opts), bracket(b, opts), o.depth);
  out << to_string(verdict.outcome) << '\n';
  if (verdict.outcome == Outcome::distinct) {
    out << "certificate: " << verdict.certificate << '\n';
    return kDistinct;
  }
  for (std::size_t t = 0; t < verdict.traces.size(); ++t) {
    const auto& trace = verdict.traces[t];
    out << "trace " << t + 1 << ": " << trace.moves.size() << (trace.moves.size() == 1 ? " move" : " moves") << '\n';
    out << format_trace(trace.moves);
  }
  return kSuccess;
}

// Checks every invariant the walk must preserve; returns a reason on failure.
std::optional<std::string> check_step(const Diagram& initial, const Diagram& current, const MoveSite& move,
                                      const Diagram& before, const GoodCondition& parity,
                                      const std::optional<Fingerprint>& fp, const std::optional<Bracket>& br) {
  if (current.component_count() != initial.component_count() || current.kind != initial.kind)
    return "component structure changed";
  for (std::size_t k = 0; k < current.components.size(); ++k)
    if (current.components[k].closed != initial.components[k].closed) return "component openness changed";
  if (!validate(current).empty()) return "diagram became invalid";
  if (is_good_condition(current).parity != parity.parity) return "good-condition parity table changed";

  const bool pure_free = pure_crossings(current).empty();
  if (fp && pure_free) {
    if (!(fingerprint(current) == *fp)) return "word invariant changed";
    if (current.kind == DiagramKind::tangle &&
        (move.kind == MoveKind::R2_delete || move.kind == MoveKind::R2_insert)) {
      const Diagram& host = move.kind == MoveKind::R2_delete ? before : current;
      if (!(lk_vector(host, move.crossings[0]) == lk_vector(host, move.crossings[1])))
        return "crossings of an R2 move have different lk vectors";
    }
  }
  if (br && pure_crossings(current).size() <= 10) {
    auto verdict = bracket_equal(*br, bracket(current), 0);
    if (verdict.outcome == Outcome::distinct) return "bracket changed: " + verdict.certificate;
  }
  return std::nullopt;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
  Diagram d = load(o.file);
  require_valid(d);
  WalkOptions opts;
  opts.forbid_pure = o.forbid_pure;
  opts.max_size = o.max_size;
  auto trace = random_walk(d, o.steps, o.seed, opts);

  const auto parity = is_good_condition(d);
  std::optional<Fingerprint> fp;
  if (pure_free_good(d)) fp = fingerprint(d);
  std::optional<Bracket> br;
  if (!o.forbid_pure && pure_crossings(d).size() <= 10) br = bracket(d);

  Diagram current = d;
  for (std::size_t step = 0; step < trace.moves.size(); ++step) {
    const auto& move = trace.moves[step];
    Diagram next = apply_move(current, move);
    std::optional<std::string> failure;
    if (o.forbid_pure && !pure_crossings(next).empty()) failure = "pure crossing appeared under --forbid-pure";
    if (!failure) failure = check_step(d, next, move, current, parity, fp, br);
    if (failure) {
      out << "FAIL step " << step + 1 << ": " << *failure << '\n';
      out << "# trace\n" << format_trace({trace.moves.begin(), trace.moves.begin() + static_cast<std::ptrdiff_t>(step) + 1});
      return kDistinct;
    }
    current = std::move(next);
  }
  out << "PASS steps=" << trace.moves.size() << " crossings=" << d.crossing_count() << "->"
      << current.crossing_count() << '\n';
  out << "# trace\n" << format_trace(trace.moves);
  return kSuccess;
}

int cmd_replay(const Options& o, std::ostream& out) {
  Diagram d = load(o.file);
  require_valid(d);
  auto moves = parse_trace(read_file(o.second));
  out << serialize(replay(d, moves));
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of enumerated free knots, links and n-n tangles", "freelink"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--jobs", o.jobs, "Worker threads for bracket enumeration")->check(CLI::Range(1u, 256u));

  auto* validate_cmd = app.add_subcommand("validate", "Check a diagram file and summarize it");
  validate_cmd->add_option("file", o.file)->required();

  auto* invariant_cmd = app.add_subcommand("invariant", "Word invariant for a pair of components");
  invariant_cmd->add_option("file", o.file)->required();
  invariant_cmd->add_option("--pair", o.pair, "I,J")->required();
  invariant_cmd->add_option("--along", o.along, "Component the crossings are ordered along (default I)");
  invariant_cmd->add_option("--basepoints", o.basepoints, "Cut points for links, e.g. \"1:0,2:3\"");

  auto* bracket_cmd = app.add_subcommand("bracket", "Splicing bracket of a diagram");
  bracket_cmd->add_option("file", o.file)->required();

  auto* compare_cmd = app.add_subcommand("compare", "Compare two diagrams: equal, distinct or unknown");
  compare_cmd->add_option("file", o.file)->required();
  compare_cmd->add_option("other", o.second)->required();
  compare_cmd->add_option("--pair", o.pair, "Pair to report a certificate for");
  compare_cmd->add_option("--depth", o.depth, "Move budget per summand search")->capture_default_str();

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random move walk with invariant checks after every move");
  fuzz_cmd->add_option("file", o.file)->required();
  fuzz_cmd->add_option("--steps", o.steps)->required();
  fuzz_cmd->add_option("--seed", o.seed)->required();
  fuzz_cmd->add_flag("--forbid-pure", o.forbid_pure, "Never create pure crossings");
  fuzz_cmd->add_option("--max-size", o.max_size, "Crossing cap for insertions")->capture_default_str();

  auto* orbit_cmd = app.add_subcommand("orbit", "Slide orbit of a word up to conjugacy");
  orbit_cmd->add_option("file", o.file)->required();
  orbit_cmd->add_option("--pair", o.pair, "I,J")->required();
  orbit_cmd->add_option("--along", o.along);
  orbit_cmd->add_option("--basepoints", o.basepoints);

  auto* replay_cmd = app.add_subcommand("replay", "Apply a move trace to a diagram and print the result");
  replay_cmd->add_option("file", o.file)->required();
  replay_cmd->add_option("trace", o.second)->required();

  for (auto* sub : {validate_cmd, invariant_cmd, bracket_cmd, compare_cmd, fuzz_cmd, orbit_cmd, replay_cmd})
    sub->add_option("--jobs", o.jobs, "Worker threads for bracket enumeration")->check(CLI::Range(1u, 256u));

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*invariant_cmd) return cmd_invariant(o, out);
    if (*bracket_cmd) return cmd_bracket(o, out);
    if (*compare_cmd) return cmd_compare(o, out);
    if (*fuzz_cmd) return cmd_fuzz(o, out);
    if (*orbit_cmd) return cmd_orbit(o, out);
    if (*replay_cmd) return cmd_replay(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const MoveError& e) {
    err << "trace error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  }
  return kUsage;
}

}  // namespace freelink::cli
