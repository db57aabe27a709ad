#include <algorithm>
#include <unordered_map>

#include "freelink/error.hpp"
#include "freelink/moves.hpp"

namespace freelink {

namespace {

std::vector<MoveSite> neighbor_moves(const Diagram& d, bool forbid_pure, std::size_t cap) {
  EnumerateOptions opts;
  opts.forbid_pure = forbid_pure;
  auto moves = enumerate_moves(d, opts);
  auto inserts = enumerate_insertions(d, forbid_pure, cap);
  moves.insert(moves.end(), std::make_move_iterator(inserts.begin()), std::make_move_iterator(inserts.end()));
  return moves;
}

struct Frontier {
  // canonical key -> parent key (empty for the root)
  std::unordered_map<std::string, std::string> parent;
  std::vector<std::pair<std::string, Diagram>> layer;
  std::size_t depth = 0;
};

std::vector<std::string> chain_to_root(const Frontier& side, const std::string& key) {
  std::vector<std::string> chain{key};
  for (auto it = side.parent.find(key); it != side.parent.end() && !it->second.empty();
       it = side.parent.find(it->second))
    chain.push_back(it->second);
  return chain;
}

}  // namespace

SearchVerdict bounded_equivalence_search(const Diagram& a, const Diagram& b, std::size_t depth,
                                         const SearchOptions& opts) {
  require_valid(a);
  require_valid(b);
  if (a.component_count() != b.component_count())
    throw PreconditionError("diagrams have different component counts (" + std::to_string(a.component_count()) +
                            " vs " + std::to_string(b.component_count()) + ")");
  if (a.kind != b.kind) throw PreconditionError("cannot compare a tangle with a link");
  for (std::size_t k = 0; k < a.components.size(); ++k)
    if (a.components[k].closed != b.components[k].closed)
      throw PreconditionError("component " + std::to_string(k + 1) + " is open in one diagram and closed in the other");

  if (opts.forbid_pure && (!pure_crossings(a).empty() || !pure_crossings(b).empty())) return {};

  const std::size_t cap = std::max(a.crossing_count(), b.crossing_count()) + opts.insertion_slack;
  const auto ka = canonical_key(a);
  const auto kb = canonical_key(b);
  if (ka == kb) return {true, WalkTrace{a, {}, a}};

  Frontier from_a;
  Frontier from_b;
  from_a.parent[ka] = "";
  from_a.layer.emplace_back(ka, canonical_form(a));
  from_b.parent[kb] = "";
  from_b.layer.emplace_back(kb, canonical_form(b));

  std::optional<std::string> meet;
  while (!meet && from_a.depth + from_b.depth < depth) {
    const bool grow_a = from_a.layer.size() <= from_b.layer.size();
    Frontier& side = grow_a ? from_a : from_b;
    const Frontier& other = grow_a ? from_b : from_a;
    if (side.layer.empty()) break;

    std::vector<std::pair<std::string, Diagram>> next;
    for (const auto& [key, state] : side.layer) {
      for (const auto& m : neighbor_moves(state, opts.forbid_pure, cap)) {
        Diagram child = canonical_form(apply_move(state, m));
        std::string child_key = serialize(child);
        if (side.parent.count(child_key)) continue;
        side.parent.emplace(child_key, key);
        if (other.parent.count(child_key)) {
          meet = child_key;
          break;
        }
        next.emplace_back(std::move(child_key), std::move(child));
      }
      if (meet) break;
    }
    side.layer = std::move(next);
    ++side.depth;
  }
  if (!meet) return {};

  // Canonical states along the path, from a to b.
  auto left = chain_to_root(from_a, *meet);
  std::reverse(left.begin(), left.end());
  auto right = chain_to_root(from_b, *meet);
  std::vector<std::string> keys = left;
  keys.insert(keys.end(), right.begin() + 1, right.end());

  // Realize the path on the concrete input: every step of the canonical
  // path has an isomorphic counterpart among the moves of the current diagram.
  WalkTrace trace{a, {}, a};
  Diagram current = a;
  for (std::size_t t = 1; t < keys.size(); ++t) {
    bool found = false;
    for (const auto& m : neighbor_moves(current, opts.forbid_pure, cap)) {
      Diagram next = apply_move(current, m);
      if (canonical_key(next) == keys[t]) {
        current = std::move(next);
        trace.moves.push_back(m);
        found = true;
        break;
      }
    }
    if (!found) throw Error("internal error: search path step " + std::to_string(t) + " could not be realized");
  }
  trace.final = current;
  return {true, std::move(trace)};
}

}  // namespace freelink
