#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace freelink::testing {

std::string data_path(const std::string& name) { return std::string(FREELINK_TEST_DATA_DIR) + "/" + name; }

Diagram load_fixture(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

Diagram from_codes(DiagramKind kind, const std::vector<std::string>& codes) {
  Diagram d;
  d.kind = kind;
  for (const auto& code : codes) {
    ComponentCode comp;
    comp.closed = kind == DiagramKind::link;
    std::istringstream in(code);
    std::string tok;
    while (in >> tok) comp.passes.push_back(tok);
    d.components.push_back(std::move(comp));
  }
  return d;
}

Diagram t_star() { return from_codes(DiagramKind::tangle, {"a b d e", "a c f d", "b c e f"}); }
Diagram t_star_closure() { return from_codes(DiagramKind::link, {"a b d e", "a c f d", "b c e f"}); }
Diagram t3() { return from_codes(DiagramKind::tangle, {"x y", "x z", "y z"}); }

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void insert_random(std::mt19937_64& rng, std::vector<CrossingId>& seq, const CrossingId& c) {
  seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, seq.size())), c);
}

Diagram empty_diagram(DiagramKind kind, std::size_t n) {
  return kind == DiagramKind::tangle ? trivial_tangle(n) : unlink(n);
}

}  // namespace

Diagram random_good_diagram(std::mt19937_64& rng, DiagramKind kind, std::size_t n, std::size_t max_crossings) {
  Diagram d = empty_diagram(kind, n);
  // A single component cannot carry mixed crossings.
  const std::size_t pairs = n < 2 ? 0 : uniform(rng, 0, max_crossings / 2);
  std::size_t next = 1;
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t i = uniform(rng, 0, n - 1);
    std::size_t j = uniform(rng, 0, n - 2);
    if (j >= i) ++j;
    for (int twice = 0; twice < 2; ++twice) {
      const CrossingId c = "c" + std::to_string(next++);
      insert_random(rng, d.components[i].passes, c);
      insert_random(rng, d.components[j].passes, c);
    }
  }
  return d;
}

Diagram random_diagram(std::mt19937_64& rng, DiagramKind kind, std::size_t n, std::size_t crossings) {
  Diagram d = empty_diagram(kind, n);
  for (std::size_t k = 1; k <= crossings; ++k) {
    const CrossingId c = "c" + std::to_string(k);
    insert_random(rng, d.components[uniform(rng, 0, n - 1)].passes, c);
    insert_random(rng, d.components[uniform(rng, 0, n - 1)].passes, c);
  }
  return d;
}

Diagram scramble(std::mt19937_64& rng, const Diagram& d) {
  auto names = d.crossing_names();
  std::vector<CrossingId> fresh;
  for (std::size_t k = 0; k < names.size(); ++k) fresh.push_back("s" + std::to_string(k));
  std::shuffle(fresh.begin(), fresh.end(), rng);
  std::map<CrossingId, CrossingId> rename;
  std::size_t t = 0;
  for (const auto& name : names) rename[name] = fresh[t++];

  Diagram out = d;
  for (auto& comp : out.components) {
    for (auto& c : comp.passes) c = rename[c];
    if (comp.closed && !comp.passes.empty()) {
      std::rotate(comp.passes.begin(), comp.passes.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, comp.passes.size() - 1)),
                  comp.passes.end());
      if (uniform(rng, 0, 1)) std::reverse(comp.passes.begin(), comp.passes.end());
    }
  }
  return out;
}

Diagram brute_force_canonical(const Diagram& d) {
  std::vector<std::size_t> choices;
  for (const auto& comp : d.components)
    choices.push_back(comp.closed && !comp.passes.empty() ? 2 * comp.passes.size() : 1);

  std::vector<std::vector<int>> best;
  std::vector<std::size_t> pick(d.components.size(), 0);
  while (true) {
    std::map<CrossingId, int> labels;
    std::vector<std::vector<int>> code;
    for (std::size_t k = 0; k < d.components.size(); ++k) {
      const auto& passes = d.components[k].passes;
      const std::size_t len = passes.size();
      std::vector<int> seq;
      for (std::size_t t = 0; t < len; ++t) {
        std::size_t idx = t;
        if (choices[k] > 1) {
          const std::size_t start = pick[k] % len;
          idx = pick[k] < len ? (start + t) % len : (start + len - t) % len;
        }
        auto [it, inserted] = labels.try_emplace(passes[idx], static_cast<int>(labels.size()) + 1);
        seq.push_back(it->second);
      }
      code.push_back(std::move(seq));
    }
    if (best.empty() || code < best) best = code;

    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == choices[k]) pick[k++] = 0;
    if (k == pick.size()) break;
  }

  Diagram out;
  out.kind = d.kind;
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    ComponentCode comp;
    comp.closed = d.components[k].closed;
    for (int label : best[k]) comp.passes.push_back(std::to_string(label));
    out.components.push_back(std::move(comp));
  }
  return out;
}

namespace {

struct Piece {
  bool closed;
  std::vector<CrossingId> seq;
  std::size_t source;
};

using Seq = std::vector<CrossingId>;

Seq concat(std::initializer_list<Seq> parts) {
  Seq out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Seq reversed(Seq s) {
  std::reverse(s.begin(), s.end());
  return s;
}

// Rotates a closed sequence so that position `at` comes first.
Seq rotated(const Seq& s, std::size_t at) {
  Seq out(s.begin() + static_cast<std::ptrdiff_t>(at), s.end());
  out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(at));
  return out;
}

std::vector<std::vector<Piece>> splice_both(const std::vector<Piece>& pieces, const CrossingId& x) {
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t k = 0; k < pieces.size(); ++k)
    for (std::size_t t = 0; t < pieces[k].seq.size(); ++t)
      if (pieces[k].seq[t] == x) where.emplace_back(k, t);

  std::vector<std::vector<Piece>> results;
  const auto without = [&](std::initializer_list<std::size_t> drop) {
    std::vector<Piece> rest;
    for (std::size_t k = 0; k < pieces.size(); ++k)
      if (std::find(drop.begin(), drop.end(), k) == drop.end()) rest.push_back(pieces[k]);
    return rest;
  };

  if (where[0].first == where[1].first) {
    const auto k = where[0].first;
    const auto& piece = pieces[k];
    if (!piece.closed) {
      const auto p = where[0].second;
      const auto q = where[1].second;
      Seq before(piece.seq.begin(), piece.seq.begin() + static_cast<std::ptrdiff_t>(p));
      Seq mid(piece.seq.begin() + static_cast<std::ptrdiff_t>(p) + 1, piece.seq.begin() + static_cast<std::ptrdiff_t>(q));
      Seq after(piece.seq.begin() + static_cast<std::ptrdiff_t>(q) + 1, piece.seq.end());
      auto split = without({k});
      split.push_back({false, concat({before, after}), piece.source});
      split.push_back({true, mid, piece.source});
      auto turned = without({k});
      turned.push_back({false, concat({before, reversed(mid), after}), piece.source});
      results = {split, turned};
    } else {
      Seq s = rotated(piece.seq, where[0].second);
      const auto q = where[1].second >= where[0].second ? where[1].second - where[0].second
                                                        : where[1].second + s.size() - where[0].second;
      Seq mid(s.begin() + 1, s.begin() + static_cast<std::ptrdiff_t>(q));
      Seq after(s.begin() + static_cast<std::ptrdiff_t>(q) + 1, s.end());
      auto split = without({k});
      split.push_back({true, mid, piece.source});
      split.push_back({true, after, piece.source});
      auto turned = without({k});
      turned.push_back({true, concat({mid, reversed(after)}), piece.source});
      results = {split, turned};
    }
  } else {
    auto ku = where[0].first;
    auto kv = where[1].first;
    auto tu = where[0].second;
    auto tv = where[1].second;
    if (pieces[kv].closed == false) {
      std::swap(ku, kv);
      std::swap(tu, tv);
    }
    const auto& u = pieces[ku];
    const auto& v = pieces[kv];
    Seq vrest = rotated(v.seq, tv);
    vrest.erase(vrest.begin());
    for (bool flip : {false, true}) {
      Seq body = flip ? reversed(vrest) : vrest;
      auto merged = without({ku, kv});
      if (!u.closed) {
        Seq before(u.seq.begin(), u.seq.begin() + static_cast<std::ptrdiff_t>(tu));
        Seq after(u.seq.begin() + static_cast<std::ptrdiff_t>(tu) + 1, u.seq.end());
        merged.push_back({false, concat({before, body, after}), u.source});
      } else {
        Seq urest = rotated(u.seq, tu);
        urest.erase(urest.begin());
        merged.push_back({true, concat({urest, body}), u.source});
      }
      results.push_back(std::move(merged));
    }
  }
  return results;
}

}  // namespace

std::vector<std::string> brute_force_bracket_keys(const Diagram& d) {
  const auto pure = pure_crossings(d);
  const std::vector<CrossingId> order(pure.begin(), pure.end());
  std::vector<Piece> start;
  for (std::size_t k = 0; k < d.components.size(); ++k)
    start.push_back({d.components[k].closed, d.components[k].passes, k});

  std::set<std::string> odd;
  std::function<void(std::size_t, const std::vector<Piece>&)> recurse = [&](std::size_t depth,
                                                                             const std::vector<Piece>& pieces) {
    if (depth == order.size()) {
      if (pieces.size() != d.components.size()) return;
      Diagram out;
      out.kind = d.kind;
      out.components.resize(pieces.size());
      for (const auto& p : pieces) out.components[p.source] = ComponentCode{p.closed, p.seq};
      auto key = canonical_key(out);
      if (!odd.erase(key)) odd.insert(key);
      return;
    }
    for (const auto& next : splice_both(pieces, order[depth])) recurse(depth + 1, next);
  };
  recurse(0, start);
  return {odd.begin(), odd.end()};
}

Word random_word(std::mt19937_64& rng, const GroupContext& ctx, std::size_t max_len) {
  Word w{ctx, {}};
  const std::size_t len = uniform(rng, 0, max_len);
  const std::uint64_t letters = std::uint64_t{1} << ctx.width();
  for (std::size_t t = 0; t < len; ++t)
    w.letters.push_back(Letter{std::uniform_int_distribution<std::uint64_t>(0, letters - 1)(rng), ctx.width()});
  return w;
}

bool brute_force_conjugate(const Word& u, const Word& v, std::size_t max_len) {
  const auto target = reduce(v).letters;
  const std::uint64_t letters = std::uint64_t{1} << u.context.width();
  std::vector<Letter> g;
  std::function<bool()> search = [&]() -> bool {
    Word conj{u.context, {}};
    conj.letters.assign(g.rbegin(), g.rend());
    conj.letters.insert(conj.letters.end(), u.letters.begin(), u.letters.end());
    conj.letters.insert(conj.letters.end(), g.begin(), g.end());
    if (reduce(conj).letters == target) return true;
    if (g.size() == max_len) return false;
    for (std::uint64_t b = 0; b < letters; ++b) {
      Letter x{b, u.context.width()};
      if (!g.empty() && g.back() == x) continue;
      g.push_back(x);
      if (search()) return true;
      g.pop_back();
    }
    return false;
  };
  return search();
}

}  // namespace freelink::testing
