#include <algorithm>
#include <unordered_map>

#include "freelink/diagram.hpp"
#include "freelink/error.hpp"

namespace freelink {

namespace {

// Labels assigned so far (crossing -> 1-based label) plus the next fresh label.
struct Labeling {
  std::unordered_map<std::string_view, int> labels;
  int next = 1;
};

// Keys are views into the source diagram, which outlives every Labeling.
template <typename Seq>
std::vector<int> relabel(const Seq& seq, Labeling& state) {
  std::vector<int> out;
  out.reserve(seq.size());
  for (const auto& c : seq) {
    auto [it, inserted] = state.labels.try_emplace(c, state.next);
    if (inserted) ++state.next;
    out.push_back(it->second);
  }
  return out;
}

std::vector<std::string_view> oriented(const std::vector<CrossingId>& passes, std::size_t start, bool reverse) {
  const std::size_t len = passes.size();
  std::vector<std::string_view> out;
  out.reserve(len);
  for (std::size_t t = 0; t < len; ++t) {
    std::size_t idx = reverse ? (start + len - t) % len : (start + t) % len;
    out.push_back(passes[idx]);
  }
  return out;
}

}  // namespace

Diagram canonical_form(const Diagram& d) {
  require_valid(d);

  // Every tie carries its own labeling and the relabeled components so far.
  struct Partial {
    Labeling labeling;
    std::vector<std::vector<int>> codes;
  };
  std::vector<Partial> ties(1);

  for (const auto& comp : d.components) {
    const std::size_t len = comp.passes.size();
    // Open components and circles with at most one pass have a single reading.
    const bool free_start = comp.closed && len > 1;
    std::vector<Partial> next;
    std::vector<int> best;
    for (const auto& p : ties) {
      for (int reverse = 0; reverse < (free_start ? 2 : 1); ++reverse) {
        for (std::size_t start = 0; start < (free_start ? len : 1); ++start) {
          Partial candidate = p;
          auto code = relabel(oriented(comp.passes, start, reverse != 0), candidate.labeling);
          if (!next.empty() && code > best) continue;
          if (next.empty() || code < best) {
            best = code;
            next.clear();
          }
          candidate.codes.push_back(std::move(code));
          // Different rotations may reach the same labeling; keep one copy.
          bool duplicate = std::any_of(next.begin(), next.end(), [&](const Partial& q) {
            return q.labeling.labels == candidate.labeling.labels;
          });
          if (!duplicate) next.push_back(std::move(candidate));
        }
      }
    }
    ties = std::move(next);
  }

  Diagram out;
  out.kind = d.kind;
  const auto& codes = ties.front().codes;
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    ComponentCode comp;
    comp.closed = d.components[k].closed;
    for (int label : codes[k]) comp.passes.push_back(std::to_string(label));
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace freelink
