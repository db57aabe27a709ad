#include "freelink/invariant.hpp"

#include <algorithm>

#include "freelink/error.hpp"

namespace freelink {

namespace {

void require_tangle(const Diagram& d) {
  for (std::size_t k = 0; k < d.components.size(); ++k)
    if (d.components[k].closed)
      throw PreconditionError("component " + std::to_string(k + 1) + " is closed; lk is defined on n-n tangles");
}

// Number of passes of type-(component, k) crossings strictly before `index`.
std::size_t count_before(const Diagram& d, const std::map<CrossingId, CrossingType>& types, std::size_t component,
                         std::size_t index, std::size_t k) {
  const auto& passes = d.components[component - 1].passes;
  std::size_t count = 0;
  for (std::size_t t = 0; t < index; ++t) {
    const auto& type = types.at(passes[t]);
    if (type == CrossingType{std::min(component, k), std::max(component, k)}) ++count;
  }
  return count;
}

std::size_t position_on(const Diagram& d, std::size_t component, const CrossingId& c) {
  const auto& passes = d.components[component - 1].passes;
  return static_cast<std::size_t>(std::find(passes.begin(), passes.end(), c) - passes.begin());
}

int lk_with_types(const Diagram& d, const std::map<CrossingId, CrossingType>& types, const CrossingId& c,
                  const CrossingType& type, std::size_t k) {
  const auto before_i = count_before(d, types, type.first, position_on(d, type.first, c), k);
  const auto before_j = count_before(d, types, type.second, position_on(d, type.second, c), k);
  return static_cast<int>((before_i + before_j) & 1u);
}

CrossingType mixed_type(const std::map<CrossingId, CrossingType>& types, const CrossingId& c) {
  auto it = types.find(c);
  if (it == types.end()) throw PreconditionError("unknown crossing '" + c + "'");
  if (it->second.pure()) throw PreconditionError("crossing '" + c + "' is pure");
  return it->second;
}

Letter lk_vector_with_types(const Diagram& d, const std::map<CrossingId, CrossingType>& types, const CrossingId& c) {
  const auto type = mixed_type(types, c);
  const auto ctx = GroupContext::make(d.components.size(), type.first, type.second);
  Letter x;
  x.width = ctx.width();
  std::size_t rank = 0;
  for (auto k : ctx.complement()) {
    if (lk_with_types(d, types, c, type, k)) x.bits |= std::uint64_t{1} << rank;
    ++rank;
  }
  return x;
}

}  // namespace

void require_good_pure_free(const Diagram& d) {
  require_valid(d);
  if (auto pure = pure_crossings(d); !pure.empty())
    throw PreconditionError("diagram has pure crossings (e.g. '" + *pure.begin() + "')");
  auto good = is_good_condition(d);
  if (!good.good) {
    for (const auto& [pair, parity] : good.parity)
      if (parity)
        throw PreconditionError("good condition fails: odd number of type (" + std::to_string(pair.first) + "," +
                                std::to_string(pair.second) + ") crossings");
  }
}

int lk(const Diagram& d, const CrossingId& c, std::size_t k) {
  require_tangle(d);
  const auto types = crossing_types(d);
  const auto type = mixed_type(types, c);
  if (k == type.first || k == type.second)
    throw PreconditionError("k=" + std::to_string(k) + " belongs to the type of '" + c + "'");
  if (k == 0 || k > d.components.size()) throw PreconditionError("component " + std::to_string(k) + " out of range");
  return lk_with_types(d, types, c, type, k);
}

Letter lk_vector(const Diagram& d, const CrossingId& c) {
  require_tangle(d);
  return lk_vector_with_types(d, crossing_types(d), c);
}

Word word_invariant(const Diagram& d, std::size_t along, std::size_t other) {
  const auto ctx = GroupContext::make(d.components.size(), along, other);
  require_tangle(d);
  require_good_pure_free(d);
  const auto types = crossing_types(d);
  const CrossingType want{ctx.i, ctx.j};
  Word w{ctx, {}};
  for (const auto& c : d.components[along - 1].passes)
    if (types.at(c) == want) w.letters.push_back(lk_vector_with_types(d, types, c));
  return reduce(w);
}

Word link_word(const Diagram& d, const std::vector<Basepoint>& basepoints, std::size_t along, std::size_t other) {
  require_good_pure_free(d);
  return word_invariant(cut_link(d, basepoints), along, other);
}

Word link_invariant(const Diagram& d, std::size_t along, std::size_t other) {
  std::vector<Basepoint> basepoints;
  for (std::size_t k = 1; k <= d.components.size(); ++k) basepoints.push_back({k, 0});
  return canonical_class_word(link_word(d, basepoints, along, other));
}

Fingerprint fingerprint(const Diagram& d) {
  require_good_pure_free(d);
  Fingerprint fp;
  fp.kind = d.kind;
  const std::size_t n = d.components.size();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      for (std::size_t along : {i, j}) {
        const std::size_t other = along == i ? j : i;
        fp.words[{i, j, along}] =
            d.kind == DiagramKind::tangle ? word_invariant(d, along, other) : link_invariant(d, along, other);
      }
  return fp;
}

std::optional<FingerprintKey> first_difference(const Fingerprint& a, const Fingerprint& b) {
  for (const auto& [key, word] : a.words) {
    auto it = b.words.find(key);
    if (it == b.words.end() || !(it->second == word)) return key;
  }
  for (const auto& [key, word] : b.words)
    if (!a.words.count(key)) return key;
  return std::nullopt;
}

}  // namespace freelink
