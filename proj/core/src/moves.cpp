#include "freelink/moves.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>

#include "freelink/error.hpp"

namespace freelink {

std::string_view to_string(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::R1_delete: return "R1_delete";
    case MoveKind::R1_insert: return "R1_insert";
    case MoveKind::R2_delete: return "R2_delete";
    case MoveKind::R2_insert: return "R2_insert";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

std::optional<MoveKind> move_kind_from_string(std::string_view text) noexcept {
  for (auto kind : {MoveKind::R1_delete, MoveKind::R1_insert, MoveKind::R2_delete, MoveKind::R2_insert, MoveKind::R3})
    if (to_string(kind) == text) return kind;
  return std::nullopt;
}

namespace {

bool is_insertion(MoveKind kind) { return kind == MoveKind::R1_insert || kind == MoveKind::R2_insert; }

std::size_t expected_slots(MoveKind kind) {
  switch (kind) {
    case MoveKind::R1_delete:
    case MoveKind::R1_insert: return 1;
    case MoveKind::R2_delete:
    case MoveKind::R2_insert: return 2;
    case MoveKind::R3: return 3;
  }
  return 0;
}

// A pass inside the diagram: (0-based component, index).
using PassRef = std::pair<std::size_t, std::size_t>;

const std::vector<CrossingId>& passes_of(const Diagram& d, std::size_t component) {
  if (component == 0 || component > d.components.size())
    throw MoveError("component " + std::to_string(component) + " out of range");
  return d.components[component - 1].passes;
}

// Positions covered by the adjacent pair starting at `slot`.
std::array<PassRef, 2> pair_at(const Diagram& d, const Slot& slot) {
  const auto& comp = d.components.at(slot.component - 1);
  const std::size_t len = comp.passes.size();
  const std::size_t c = slot.component - 1;
  if (slot.pos + 1 < len) return {PassRef{c, slot.pos}, PassRef{c, slot.pos + 1}};
  if (comp.closed && len >= 2 && slot.pos == len - 1) return {PassRef{c, slot.pos}, PassRef{c, 0}};
  throw MoveError("no adjacent pair at component " + std::to_string(slot.component) + " position " +
                  std::to_string(slot.pos));
}

const CrossingId& at(const Diagram& d, PassRef ref) { return d.components[ref.first].passes[ref.second]; }

struct PairInfo {
  Slot slot;
  std::array<PassRef, 2> refs;
  const CrossingId* first;
  const CrossingId* second;
};

// All adjacent pairs of `d`; a closed component of length 2 contributes one.
std::vector<PairInfo> adjacent_pairs(const Diagram& d) {
  std::vector<PairInfo> pairs;
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const auto& comp = d.components[k];
    const std::size_t len = comp.passes.size();
    std::size_t count = 0;
    if (comp.closed)
      count = len >= 3 ? len : (len == 2 ? 1 : 0);
    else
      count = len >= 1 ? len - 1 : 0;
    for (std::size_t s = 0; s < count; ++s) {
      Slot slot{k + 1, s};
      auto refs = pair_at(d, slot);
      pairs.push_back({slot, refs, &at(d, refs[0]), &at(d, refs[1])});
    }
  }
  return pairs;
}

bool disjoint(const std::array<PassRef, 2>& a, const std::array<PassRef, 2>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x == y) return false;
  return true;
}

Diagram remove_passes(const Diagram& d, const std::vector<PassRef>& removed) {
  Diagram out = d;
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    auto& passes = out.components[k].passes;
    passes.clear();
    const auto& src = d.components[k].passes;
    for (std::size_t t = 0; t < src.size(); ++t)
      if (std::find(removed.begin(), removed.end(), PassRef{k, t}) == removed.end()) passes.push_back(src[t]);
  }
  return out;
}

std::set<CrossingId> unordered(const CrossingId& a, const CrossingId& b) { return {a, b}; }

void check_site_shape(const MoveSite& m) {
  if (m.crossings.size() != expected_slots(m.kind) || m.slots.size() != expected_slots(m.kind))
    throw MoveError(std::string(to_string(m.kind)) + " site has the wrong number of crossings or slots");
}

struct InsertionPlacement {
  std::size_t component;  // 1-based
  std::size_t first_pos;  // index of the first inserted pass in the result
  bool straddles;         // pair is (len - 1, 0)
};

// Applies insertions; `contents[t]` goes to `m.slots[t]`.
Diagram insert_pairs(const Diagram& d, const MoveSite& m, const std::vector<std::array<CrossingId, 2>>& contents,
                     std::vector<InsertionPlacement>* placements) {
  const auto names = d.crossing_names();
  for (const auto& c : m.crossings) {
    if (names.count(c)) throw MoveError("inserted crossing '" + c + "' already exists");
    if (!is_valid_crossing_name(c)) throw MoveError("invalid crossing name '" + c + "'");
  }
  if (m.crossings.size() == 2 && m.crossings[0] == m.crossings[1])
    throw MoveError("inserted crossings must be distinct");

  Diagram out = d;
  if (placements) placements->assign(m.slots.size(), {});
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const auto& comp = d.components[k];
    const std::size_t len = comp.passes.size();
    std::vector<std::size_t> here;
    for (std::size_t t = 0; t < m.slots.size(); ++t)
      if (m.slots[t].component == k + 1) here.push_back(t);
    if (here.empty()) continue;

    std::optional<std::size_t> wrap;
    for (auto t : here) {
      const auto pos = m.slots[t].pos;
      const bool is_wrap = comp.closed && pos == len + 1;
      if (!is_wrap && pos > len)
        throw MoveError("slot " + std::to_string(pos) + " out of range on component " + std::to_string(k + 1));
      if (is_wrap) {
        if (wrap) throw MoveError("at most one straddling insertion per component");
        wrap = t;
      }
    }

    std::vector<CrossingId> seq;
    std::vector<std::size_t> first_pos(m.slots.size(), 0);
    if (wrap) seq.push_back(contents[*wrap][1]);
    for (std::size_t p = 0; p <= len; ++p) {
      for (auto t : here) {
        if (wrap && t == *wrap) continue;
        if (m.slots[t].pos != p) continue;
        first_pos[t] = seq.size();
        seq.push_back(contents[t][0]);
        seq.push_back(contents[t][1]);
      }
      if (p < len) seq.push_back(comp.passes[p]);
    }
    if (wrap) {
      first_pos[*wrap] = seq.size();
      seq.push_back(contents[*wrap][0]);
    }
    out.components[k].passes = std::move(seq);
    if (placements)
      for (auto t : here) (*placements)[t] = {k + 1, first_pos[t], wrap && t == *wrap};
  }
  return out;
}

std::vector<std::array<CrossingId, 2>> insertion_contents(const MoveSite& m) {
  if (m.kind == MoveKind::R1_insert) return {{m.crossings[0], m.crossings[0]}};
  const auto& x = m.crossings[0];
  const auto& y = m.crossings[1];
  return {{x, y}, m.reversed ? std::array<CrossingId, 2>{y, x} : std::array<CrossingId, 2>{x, y}};
}

// Verifies a deletion or R3 site and returns the pairs it covers.
std::vector<std::array<PassRef, 2>> matched_pairs(const Diagram& d, const MoveSite& m) {
  std::vector<std::array<PassRef, 2>> pairs;
  for (const auto& slot : m.slots) {
    passes_of(d, slot.component);
    pairs.push_back(pair_at(d, slot));
  }
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      if (!disjoint(pairs[a], pairs[b])) throw MoveError("move pairs overlap");

  const auto fail = [&] { throw MoveError(std::string(to_string(m.kind)) + " pattern absent at the stated location"); };
  if (m.kind == MoveKind::R1_delete) {
    if (at(d, pairs[0][0]) != m.crossings[0] || at(d, pairs[0][1]) != m.crossings[0]) fail();
  } else if (m.kind == MoveKind::R2_delete) {
    const auto want = unordered(m.crossings[0], m.crossings[1]);
    if (want.size() != 2) fail();
    for (const auto& p : pairs)
      if (unordered(at(d, p[0]), at(d, p[1])) != want) fail();
  } else {
    const auto& x = m.crossings[0];
    const auto& y = m.crossings[1];
    const auto& z = m.crossings[2];
    std::multiset<std::set<CrossingId>> want{unordered(x, y), unordered(x, z), unordered(y, z)};
    std::multiset<std::set<CrossingId>> got;
    for (const auto& p : pairs) got.insert(unordered(at(d, p[0]), at(d, p[1])));
    if (std::set<CrossingId>{x, y, z}.size() != 3 || got != want) fail();
  }
  return pairs;
}

}  // namespace

Diagram apply_move(const Diagram& d, const MoveSite& m) {
  check_site_shape(m);
  for (const auto& s : m.slots) passes_of(d, s.component);
  if (is_insertion(m.kind)) return insert_pairs(d, m, insertion_contents(m), nullptr);

  auto pairs = matched_pairs(d, m);
  if (m.kind == MoveKind::R3) {
    Diagram out = d;
    for (const auto& p : pairs)
      std::swap(out.components[p[0].first].passes[p[0].second], out.components[p[1].first].passes[p[1].second]);
    return out;
  }
  std::vector<PassRef> removed;
  for (const auto& p : pairs) removed.insert(removed.end(), p.begin(), p.end());
  return remove_passes(d, removed);
}

MoveSite inverse_move(const Diagram& d, const MoveSite& m) {
  check_site_shape(m);
  if (m.kind == MoveKind::R3) {
    matched_pairs(d, m);
    return m;
  }
  if (is_insertion(m.kind)) {
    std::vector<InsertionPlacement> placed;
    insert_pairs(d, m, insertion_contents(m), &placed);
    MoveSite inv;
    inv.kind = m.kind == MoveKind::R1_insert ? MoveKind::R1_delete : MoveKind::R2_delete;
    inv.crossings = m.crossings;
    for (const auto& p : placed) inv.slots.push_back({p.component, p.first_pos});
    return inv;
  }

  auto pairs = matched_pairs(d, m);
  std::vector<PassRef> removed;
  for (const auto& p : pairs) removed.insert(removed.end(), p.begin(), p.end());

  // Order pairs by position so that two insertions sharing a slot come back
  // in their original order.
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs[a][0] < pairs[b][0]; });

  MoveSite inv;
  inv.kind = m.kind == MoveKind::R1_delete ? MoveKind::R1_insert : MoveKind::R2_insert;
  std::vector<std::array<CrossingId, 2>> contents;
  for (auto t : order) {
    const auto& p = pairs[t];
    const auto k = p[0].first;
    const auto& comp = d.components[k];
    std::size_t remaining = 0;
    for (std::size_t q = 0; q < comp.passes.size(); ++q)
      if (std::find(removed.begin(), removed.end(), PassRef{k, q}) == removed.end()) ++remaining;
    const bool straddles = comp.closed && p[1].second == 0 && p[0].second + 1 == comp.passes.size();
    std::size_t slot = 0;
    if (straddles) {
      slot = remaining + 1;
    } else {
      for (std::size_t q = 0; q < p[0].second; ++q)
        if (std::find(removed.begin(), removed.end(), PassRef{k, q}) == removed.end()) ++slot;
    }
    inv.slots.push_back({k + 1, slot});
    contents.push_back({at(d, p[0]), at(d, p[1])});
  }
  if (inv.kind == MoveKind::R1_insert) {
    inv.crossings = {contents[0][0]};
  } else {
    inv.crossings = {contents[0][0], contents[0][1]};
    inv.reversed = contents[1][0] != contents[0][0];
  }
  return inv;
}

std::vector<MoveSite> enumerate_moves(const Diagram& d, const EnumerateOptions& opts) {
  require_valid(d);
  const auto pairs = adjacent_pairs(d);
  std::vector<MoveSite> sites;

  const bool want_r1 = opts.kinds.count(MoveKind::R1_delete) && !opts.forbid_pure;
  const bool want_r2 = opts.kinds.count(MoveKind::R2_delete) != 0;
  const bool want_r3 = opts.kinds.count(MoveKind::R3) != 0;

  if (want_r1)
    for (const auto& p : pairs)
      if (*p.first == *p.second) sites.push_back({MoveKind::R1_delete, {*p.first}, {p.slot}, false});

  // Adjacent pairs of distinct crossings keyed by the (ordered) name pair.
  std::map<std::pair<CrossingId, CrossingId>, std::vector<const PairInfo*>> by_key;
  for (const auto& p : pairs) {
    if (*p.first == *p.second) continue;
    auto key = std::minmax(*p.first, *p.second);
    by_key[{key.first, key.second}].push_back(&p);
  }

  if (want_r2) {
    for (const auto& [key, list] : by_key)
      for (std::size_t a = 0; a < list.size(); ++a)
        for (std::size_t b = a + 1; b < list.size(); ++b)
          if (disjoint(list[a]->refs, list[b]->refs))
            sites.push_back({MoveSite{MoveKind::R2_delete, {key.first, key.second}, {list[a]->slot, list[b]->slot}}});
  }

  if (want_r3) {
    for (const auto& [xy, list_xy] : by_key) {
      const auto& [x, y] = xy;
      for (const auto& [xz, list_xz] : by_key) {
        if (xz.first != x || xz.second <= y) continue;
        const auto& z = xz.second;
        auto yz = by_key.find({y, z});
        if (yz == by_key.end()) continue;
        for (const auto* p1 : list_xy)
          for (const auto* p2 : list_xz) {
            if (!disjoint(p1->refs, p2->refs)) continue;
            for (const auto* p3 : yz->second)
              if (disjoint(p1->refs, p3->refs) && disjoint(p2->refs, p3->refs))
                sites.push_back({MoveKind::R3, {x, y, z}, {p1->slot, p2->slot, p3->slot}, false});
          }
      }
    }
  }

  if (opts.forbid_pure) {
    std::erase_if(sites, [&](const MoveSite& m) { return !pure_crossings(apply_move(d, m)).empty(); });
  }
  return sites;
}

CrossingId fresh_crossing(const Diagram& d, const std::vector<CrossingId>& avoid) {
  const auto names = d.crossing_names();
  for (std::size_t k = 1;; ++k) {
    CrossingId name = "n" + std::to_string(k);
    if (!names.count(name) && std::find(avoid.begin(), avoid.end(), name) == avoid.end()) return name;
  }
}

namespace {

std::vector<Slot> insertion_slots(const Diagram& d) {
  std::vector<Slot> slots;
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const auto& comp = d.components[k];
    const std::size_t len = comp.passes.size();
    const std::size_t count = comp.closed ? std::max<std::size_t>(len, 1) : len + 1;
    for (std::size_t s = 0; s < count; ++s) slots.push_back({k + 1, s});
  }
  return slots;
}

}  // namespace

std::vector<MoveSite> enumerate_insertions(const Diagram& d, bool forbid_pure, std::size_t max_crossings) {
  std::vector<MoveSite> sites;
  const auto count = d.crossing_count();
  const auto slots = insertion_slots(d);
  const auto x = fresh_crossing(d);
  if (!forbid_pure && count + 1 <= max_crossings)
    for (const auto& s : slots) sites.push_back({MoveKind::R1_insert, {x}, {s}, false});
  if (count + 2 <= max_crossings) {
    const auto y = fresh_crossing(d, {x});
    for (std::size_t a = 0; a < slots.size(); ++a)
      for (std::size_t b = a; b < slots.size(); ++b) {
        if (forbid_pure && slots[a].component == slots[b].component) continue;
        for (bool reversed : {false, true}) sites.push_back({MoveKind::R2_insert, {x, y}, {slots[a], slots[b]}, reversed});
      }
  }
  return sites;
}

Diagram replay(const Diagram& initial, const std::vector<MoveSite>& moves) {
  Diagram d = initial;
  for (const auto& m : moves) d = apply_move(d, m);
  return d;
}

std::string format_move(const MoveSite& m) {
  std::ostringstream out;
  out << to_string(m.kind);
  for (const auto& c : m.crossings) out << ' ' << c;
  for (const auto& s : m.slots) out << ' ' << s.component << ':' << s.pos;
  if (m.kind == MoveKind::R2_insert) out << (m.reversed ? " reversed" : " same");
  return out.str();
}

MoveSite parse_move(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string token;
  if (!(in >> token)) throw MoveError("empty move line");
  auto kind = move_kind_from_string(token);
  if (!kind) throw MoveError("unknown move kind '" + token + "'");
  MoveSite m;
  m.kind = *kind;
  bool saw_order = false;
  while (in >> token) {
    if (auto colon = token.find(':'); colon != std::string::npos) {
      Slot s;
      try {
        std::size_t used = 0;
        s.component = std::stoul(token.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("component");
        s.pos = std::stoul(token.substr(colon + 1), &used);
        if (used != token.size() - colon - 1) throw std::invalid_argument("pos");
      } catch (const std::logic_error&) {
        throw MoveError("malformed location '" + token + "'");
      }
      m.slots.push_back(s);
    } else if (m.kind == MoveKind::R2_insert && (token == "same" || token == "reversed")) {
      m.reversed = token == "reversed";
      saw_order = true;
    } else {
      if (!m.slots.empty()) throw MoveError("crossing name '" + token + "' after locations");
      m.crossings.push_back(token);
    }
  }
  if (m.kind == MoveKind::R2_insert && !saw_order) throw MoveError("R2_insert needs 'same' or 'reversed'");
  check_site_shape(m);
  return m;
}

std::string format_trace(const std::vector<MoveSite>& moves) {
  std::string out;
  for (const auto& m : moves) {
    out += format_move(m);
    out += '\n';
  }
  return out;
}

std::vector<MoveSite> parse_trace(std::string_view text) {
  std::vector<MoveSite> moves;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    moves.push_back(parse_move(line));
  }
  return moves;
}

WalkTrace random_walk(const Diagram& d, std::size_t steps, std::uint64_t seed, const WalkOptions& opts) {
  require_valid(d);
  std::mt19937_64 rng(seed);
  const auto pick = [&rng](std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); };

  WalkTrace trace{d, {}, d};
  Diagram current = d;
  const std::size_t n = d.components.size();
  for (std::size_t step = 0; step < steps; ++step) {
    EnumerateOptions eopts;
    eopts.forbid_pure = opts.forbid_pure;
    eopts.kinds = {MoveKind::R1_delete, MoveKind::R2_delete, MoveKind::R3};
    auto sites = enumerate_moves(current, eopts);
    std::map<MoveKind, std::vector<MoveSite>> by_kind;
    for (auto& s : sites) by_kind[s.kind].push_back(std::move(s));

    const auto count = current.crossing_count();
    std::vector<MoveKind> families;
    for (const auto& [kind, list] : by_kind) families.push_back(kind);
    if (!opts.forbid_pure && n >= 1 && count + 1 <= opts.max_size) families.push_back(MoveKind::R1_insert);
    if (count + 2 <= opts.max_size && n >= (opts.forbid_pure ? 2u : 1u)) families.push_back(MoveKind::R2_insert);
    std::sort(families.begin(), families.end());
    if (families.empty()) break;

    const auto family = families[pick(families.size())];
    MoveSite move;
    if (family == MoveKind::R1_insert || family == MoveKind::R2_insert) {
      const auto random_slot = [&](std::size_t component) {
        const auto& comp = current.components[component - 1];
        const std::size_t len = comp.passes.size();
        const std::size_t options = comp.closed ? std::max<std::size_t>(len, 1) : len + 1;
        return Slot{component, pick(options)};
      };
      const auto x = fresh_crossing(current);
      if (family == MoveKind::R1_insert) {
        move = {MoveKind::R1_insert, {x}, {random_slot(pick(n) + 1)}, false};
      } else {
        std::size_t c1 = pick(n) + 1;
        std::size_t c2 = pick(n) + 1;
        if (opts.forbid_pure) {
          c2 = pick(n - 1) + 1;
          if (c2 >= c1) ++c2;
        }
        move = {MoveKind::R2_insert, {x, fresh_crossing(current, {x})}, {random_slot(c1), random_slot(c2)},
                pick(2) == 1};
      }
    } else {
      const auto& list = by_kind[family];
      move = list[pick(list.size())];
    }
    current = apply_move(current, move);
    trace.moves.push_back(std::move(move));
  }
  trace.final = current;
  return trace;
}

}  // namespace freelink
