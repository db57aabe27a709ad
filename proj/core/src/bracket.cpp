#include "freelink/bracket.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "freelink/error.hpp"

namespace freelink {

namespace {

constexpr int kNone = -1;

// Half-edge model of a diagram. Pass p has ports in(p) = 2p and
// out(p) = 2p + 1; open component c adds its endpoints after all passes.
class PortGraph {
 public:
  explicit PortGraph(const Diagram& d) : d_(d) {
    std::size_t passes = 0;
    for (const auto& comp : d.components) {
      base_.push_back(passes);
      passes += comp.passes.size();
    }
    pass_count_ = passes;
    const std::size_t ports = 2 * passes + 2 * d.components.size();
    edge_.assign(ports, kNone);
    internal_.assign(ports, kNone);
    pass_name_.resize(passes);

    std::unordered_map<std::string_view, std::vector<std::size_t>> where;
    for (std::size_t c = 0; c < d.components.size(); ++c) {
      const auto& comp = d.components[c];
      const std::size_t len = comp.passes.size();
      const std::size_t b = base_[c];
      for (std::size_t t = 0; t < len; ++t) {
        const std::size_t p = b + t;
        pass_name_[p] = &comp.passes[t];
        where[comp.passes[t]].push_back(p);
        internal_[in(p)] = static_cast<int>(out(p));
        internal_[out(p)] = static_cast<int>(in(p));
      }
      if (comp.closed) {
        for (std::size_t t = 0; t < len; ++t) link(out(b + t), in(b + (t + 1) % len));
      } else if (len == 0) {
        link(start(c), end(c));
      } else {
        link(start(c), in(b));
        for (std::size_t t = 0; t + 1 < len; ++t) link(out(b + t), in(b + t + 1));
        link(out(b + len - 1), end(c));
      }
    }
    for (auto& [name, list] : where)
      if (list.size() == 2) passes_of_[std::string(name)] = {list[0], list[1]};
  }

  std::pair<std::size_t, std::size_t> passes(const CrossingId& c) const {
    auto it = passes_of_.find(c);
    if (it == passes_of_.end()) throw PreconditionError("unknown crossing '" + c + "'");
    return it->second;
  }

  void set_straight(std::size_t p, std::size_t q) {
    join(in(p), out(p));
    join(in(q), out(q));
  }

  void set_branch(std::size_t p, std::size_t q, SpliceBranch branch) {
    if (branch == SpliceBranch::A) {
      join(in(p), out(q));
      join(in(q), out(p));
    } else {
      join(in(p), in(q));
      join(out(p), out(q));
    }
  }

  // Number of components after the current reconnection.
  std::size_t count_components() const {
    std::vector<char> seen(edge_.size(), 0);
    std::size_t count = 0;
    for (std::size_t c = 0; c < d_.components.size(); ++c) {
      const auto& comp = d_.components[c];
      if (!comp.closed) {
        walk_open(c, seen, nullptr);
        ++count;
      } else if (comp.passes.empty()) {
        ++count;
      }
    }
    for (std::size_t port = 0; port < 2 * pass_count_; ++port)
      if (!seen[port]) {
        walk_closed(port, seen, nullptr);
        ++count;
      }
    return count;
  }

  // Components in output order: one primary piece per source component
  // (same index), then remaining pieces.
  std::vector<ComponentCode> components() const {
    std::vector<char> seen(edge_.size(), 0);
    std::vector<ComponentCode> out;
    for (std::size_t c = 0; c < d_.components.size(); ++c) {
      const auto& comp = d_.components[c];
      ComponentCode piece;
      piece.closed = comp.closed;
      if (!comp.closed)
        walk_open(c, seen, &piece.passes);
      else if (!comp.passes.empty())
        walk_closed(in(base_[c]), seen, &piece.passes);
      out.push_back(std::move(piece));
    }
    for (std::size_t port = 0; port < 2 * pass_count_; ++port)
      if (!seen[port]) {
        ComponentCode piece;
        piece.closed = true;
        walk_closed(port, seen, &piece.passes);
        out.push_back(std::move(piece));
      }
    return out;
  }

 private:
  static std::size_t in(std::size_t p) { return 2 * p; }
  static std::size_t out(std::size_t p) { return 2 * p + 1; }
  std::size_t start(std::size_t c) const { return 2 * pass_count_ + 2 * c; }
  std::size_t end(std::size_t c) const { return 2 * pass_count_ + 2 * c + 1; }

  void link(std::size_t a, std::size_t b) {
    edge_[a] = static_cast<int>(b);
    edge_[b] = static_cast<int>(a);
  }
  void join(std::size_t a, std::size_t b) {
    internal_[a] = static_cast<int>(b);
    internal_[b] = static_cast<int>(a);
  }

  // Follows internal then edge links from an arrival port; records a pass
  // whenever the path goes straight through it.
  void step_from(std::size_t& port, std::vector<char>& seen, std::vector<CrossingId>* record) const {
    const auto through = static_cast<std::size_t>(internal_[port]);
    seen[port] = seen[through] = 1;
    if ((port ^ 1u) == through && record) record->push_back(*pass_name_[port / 2]);
    port = static_cast<std::size_t>(edge_[through]);
  }

  void walk_open(std::size_t c, std::vector<char>& seen, std::vector<CrossingId>* record) const {
    seen[start(c)] = 1;
    std::size_t port = static_cast<std::size_t>(edge_[start(c)]);
    while (port != end(c)) step_from(port, seen, record);
    seen[end(c)] = 1;
  }

  void walk_closed(std::size_t first, std::vector<char>& seen, std::vector<CrossingId>* record) const {
    std::size_t port = first;
    do {
      step_from(port, seen, record);
    } while (port != first);
  }

  const Diagram& d_;
  std::size_t pass_count_ = 0;
  std::vector<std::size_t> base_;
  std::vector<int> edge_;
  std::vector<int> internal_;
  std::vector<const CrossingId*> pass_name_;
  std::map<CrossingId, std::pair<std::size_t, std::size_t>> passes_of_;
};

}  // namespace

Diagram splice(const Diagram& d, const std::vector<SpliceChoice>& choices) {
  require_valid(d);
  const auto types = crossing_types(d);
  PortGraph graph(d);
  std::set<CrossingId> used;
  for (const auto& choice : choices) {
    auto it = types.find(choice.crossing);
    if (it == types.end()) throw PreconditionError("unknown crossing '" + choice.crossing + "'");
    if (!it->second.pure()) throw PreconditionError("crossing '" + choice.crossing + "' is not pure");
    if (!used.insert(choice.crossing).second)
      throw PreconditionError("crossing '" + choice.crossing + "' spliced twice");
    auto [p, q] = graph.passes(choice.crossing);
    graph.set_branch(p, q, choice.branch);
  }
  Diagram out;
  out.kind = d.kind;
  out.components = graph.components();
  return out;
}

Diagram splice(const Diagram& d, const SpliceChoice& choice) { return splice(d, std::vector<SpliceChoice>{choice}); }

Bracket bracket(const Diagram& d, const BracketOptions& opts) {
  require_valid(d);
  const auto pure = pure_crossings(d);
  const std::vector<CrossingId> pure_list(pure.begin(), pure.end());
  const std::size_t m = pure_list.size();
  if (m > opts.max_pure)
    throw PreconditionError("diagram has " + std::to_string(m) + " pure crossings; the bracket enumerates at most 2^" +
                            std::to_string(opts.max_pure) + " splicings");
  const std::size_t n = d.components.size();
  const std::uint64_t total = std::uint64_t{1} << m;

  // Each worker folds its share of assignments into a mod-2 set; merging
  // by symmetric difference is independent of scheduling.
  const auto fold = [&](std::uint64_t lo, std::uint64_t hi, std::map<std::string, Diagram>& acc) {
    PortGraph graph(d);
    std::vector<std::pair<std::size_t, std::size_t>> passes;
    for (const auto& c : pure_list) passes.push_back(graph.passes(c));
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      for (std::size_t t = 0; t < m; ++t)
        graph.set_branch(passes[t].first, passes[t].second, ((mask >> t) & 1u) ? SpliceBranch::B : SpliceBranch::A);
      if (graph.count_components() != n) continue;
      Diagram summand;
      summand.kind = d.kind;
      summand.components = graph.components();
      Diagram canon = canonical_form(summand);
      auto key = serialize(canon);
      auto it = acc.find(key);
      if (it != acc.end())
        acc.erase(it);
      else
        acc.emplace(std::move(key), std::move(canon));
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<std::map<std::string, Diagram>> partial(jobs);
  if (jobs == 1) {
    fold(0, total, partial[0]);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t lo = total * w / jobs;
      const std::uint64_t hi = total * (w + 1) / jobs;
      workers.emplace_back(fold, lo, hi, std::ref(partial[w]));
    }
    for (auto& t : workers) t.join();
  }
  std::map<std::string, Diagram> merged;
  for (auto& part : partial)
    for (auto& [key, diagram] : part) {
      auto it = merged.find(key);
      if (it != merged.end())
        merged.erase(it);
      else
        merged.emplace(key, std::move(diagram));
    }

  Bracket b;
  b.n = n;
  b.kind = d.kind;
  for (auto& [key, diagram] : merged) b.summands.push_back(std::move(diagram));
  return b;
}

std::string serialize(const Bracket& b) {
  std::ostringstream out;
  out << "bracket n=" << b.n << " summands=" << b.summands.size() << '\n';
  for (const auto& s : b.summands) out << serialize(s);
  return out.str();
}

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::equal: return "equal";
    case Outcome::distinct: return "distinct";
    case Outcome::unknown: return "unknown";
  }
  return "?";
}

std::string SummandSignature::key() const {
  std::string out = "parity";
  for (const auto& [pair, parity] : parity.parity)
    out += " " + std::to_string(pair.first) + "," + std::to_string(pair.second) + "=" + std::to_string(parity);
  if (fingerprint) {
    for (const auto& [k, w] : fingerprint->words)
      out += " | (" + std::to_string(k.i) + "," + std::to_string(k.j) + ")/" + std::to_string(k.along) + " " + render(w);
  }
  return out;
}

SummandSignature summand_signature(const Diagram& d) {
  SummandSignature sig;
  sig.parity = is_good_condition(d);
  if (sig.parity.good && pure_crossings(d).empty()) sig.fingerprint = fingerprint(d);
  return sig;
}

namespace {

// Signatures with odd multiplicity, keyed by SummandSignature::key().
std::map<std::string, SummandSignature> odd_signatures(const std::vector<const Diagram*>& summands) {
  std::map<std::string, SummandSignature> odd;
  for (const auto* s : summands) {
    auto sig = summand_signature(*s);
    auto key = sig.key();
    auto it = odd.find(key);
    if (it != odd.end())
      odd.erase(it);
    else
      odd.emplace(std::move(key), std::move(sig));
  }
  return odd;
}

void describe_difference(Verdict& v, const std::map<std::string, SummandSignature>& left,
                         const std::map<std::string, SummandSignature>& right) {
  const SummandSignature* l = nullptr;
  const SummandSignature* r = nullptr;
  for (const auto& [key, sig] : left)
    if (!right.count(key)) {
      l = &sig;
      break;
    }
  for (const auto& [key, sig] : right)
    if (!left.count(key)) {
      r = &sig;
      break;
    }
  // Prefer a word certificate between two fingerprinted summands.
  if (l && r && l->fingerprint && r->fingerprint && l->parity.parity == r->parity.parity) {
    if (auto key = first_difference(*l->fingerprint, *r->fingerprint)) {
      v.key = key;
      v.left_word = l->fingerprint->words.at(*key);
      v.right_word = r->fingerprint->words.at(*key);
      v.certificate = "pair (" + std::to_string(key->i) + "," + std::to_string(key->j) + ") along " +
                      std::to_string(key->along) + ": " + render(*v.left_word) + " vs " + render(*v.right_word);
      return;
    }
  }
  const auto* only = l ? l : r;
  v.certificate = std::string("summand signature occurring an odd number of times only in the ") +
                  (l ? "first" : "second") + " bracket: " + only->key();
  if (only->fingerprint && !only->fingerprint->words.empty()) {
    for (const auto& [key, word] : only->fingerprint->words)
      if (!word.letters.empty()) {
        v.key = key;
        (l ? v.left_word : v.right_word) = word;
        break;
      }
  }
}

}  // namespace

Verdict bracket_equal(const Bracket& p, const Bracket& q, std::size_t depth) {
  if (p.n != q.n)
    throw PreconditionError("brackets have different component counts (" + std::to_string(p.n) + " vs " +
                            std::to_string(q.n) + ")");
  if (p.kind != q.kind) throw PreconditionError("cannot compare the bracket of a tangle with that of a link");

  Verdict v;
  if (p.summands == q.summands) {
    v.outcome = Outcome::equal;
    return v;
  }

  // Identical summands cancel.
  std::map<std::string, const Diagram*> left;
  std::map<std::string, const Diagram*> right;
  for (const auto& s : p.summands) left.emplace(serialize(s), &s);
  for (const auto& s : q.summands) right.emplace(serialize(s), &s);
  std::vector<const Diagram*> only_left;
  std::vector<const Diagram*> only_right;
  for (const auto& [key, s] : left)
    if (!right.count(key)) only_left.push_back(s);
  for (const auto& [key, s] : right)
    if (!left.count(key)) only_right.push_back(s);

  std::vector<std::string> left_sig;
  std::vector<std::string> right_sig;
  for (const auto* s : only_left) left_sig.push_back(summand_signature(*s).key());
  for (const auto* s : only_right) right_sig.push_back(summand_signature(*s).key());

  // Maximum matching by augmenting paths; an edge is a successful search.
  std::map<std::pair<std::size_t, std::size_t>, std::optional<WalkTrace>> edges;
  const auto edge = [&](std::size_t a, std::size_t b) -> const std::optional<WalkTrace>& {
    auto key = std::make_pair(a, b);
    auto it = edges.find(key);
    if (it != edges.end()) return it->second;
    std::optional<WalkTrace> trace;
    if (left_sig[a] == right_sig[b]) {
      SearchOptions opts;
      opts.forbid_pure = true;
      auto verdict = bounded_equivalence_search(*only_left[a], *only_right[b], depth, opts);
      if (verdict.equivalent) trace = std::move(verdict.trace);
    }
    return edges.emplace(key, std::move(trace)).first->second;
  };
  std::vector<int> match_right(only_right.size(), -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t a, std::vector<char>& visited) {
    for (std::size_t b = 0; b < only_right.size(); ++b) {
      if (visited[b] || !edge(a, b)) continue;
      visited[b] = 1;
      if (match_right[b] < 0 || augment(static_cast<std::size_t>(match_right[b]), visited)) {
        match_right[b] = static_cast<int>(a);
        return true;
      }
    }
    return false;
  };
  std::vector<char> matched_left(only_left.size(), 0);
  for (std::size_t a = 0; a < only_left.size(); ++a) {
    std::vector<char> visited(only_right.size(), 0);
    if (augment(a, visited)) matched_left[a] = 1;
  }
  // augment may rematch earlier rows; recompute from the final assignment.
  std::fill(matched_left.begin(), matched_left.end(), 0);
  for (std::size_t b = 0; b < only_right.size(); ++b)
    if (match_right[b] >= 0) matched_left[static_cast<std::size_t>(match_right[b])] = 1;

  const bool perfect = only_left.size() == only_right.size() &&
                       std::all_of(match_right.begin(), match_right.end(), [](int a) { return a >= 0; });
  if (perfect) {
    v.outcome = Outcome::equal;
    for (std::size_t b = 0; b < only_right.size(); ++b)
      v.traces.push_back(*edge(static_cast<std::size_t>(match_right[b]), b));
    return v;
  }

  std::vector<const Diagram*> rest_left;
  std::vector<const Diagram*> rest_right;
  for (std::size_t a = 0; a < only_left.size(); ++a)
    if (!matched_left[a]) rest_left.push_back(only_left[a]);
  for (std::size_t b = 0; b < only_right.size(); ++b)
    if (match_right[b] < 0) rest_right.push_back(only_right[b]);
  const auto odd_left = odd_signatures(rest_left);
  const auto odd_right = odd_signatures(rest_right);
  if (odd_left.size() == odd_right.size() &&
      std::equal(odd_left.begin(), odd_left.end(), odd_right.begin(),
                 [](const auto& a, const auto& b) { return a.first == b.first; })) {
    v.outcome = Outcome::unknown;
    return v;
  }
  v.outcome = Outcome::distinct;
  describe_difference(v, odd_left, odd_right);
  return v;
}

}  // namespace freelink
