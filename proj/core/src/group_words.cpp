#include "freelink/group_words.hpp"

#include <algorithm>

#include "freelink/error.hpp"

namespace freelink {

namespace {

constexpr std::size_t kMaxMaskWidth = 24;

void check_letters(const Word& w) {
  for (const auto& x : w.letters)
    if (x.width != w.context.width())
      throw PreconditionError("letter of width " + std::to_string(x.width) + " in a word over G_" +
                              std::to_string(w.context.n) + " (expected width " + std::to_string(w.context.width()) +
                              ")");
}

void check_same_context(const Word& u, const Word& v) {
  if (!(u.context == v.context)) throw PreconditionError("words belong to different groups");
  check_letters(u);
  check_letters(v);
}

std::uint64_t mask_count(const GroupContext& ctx) {
  if (ctx.width() > kMaxMaskWidth)
    throw PreconditionError("slide orbits are enumerated only for n <= " + std::to_string(kMaxMaskWidth + 2));
  return std::uint64_t{1} << ctx.width();
}

bool is_rotation(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    bool same = true;
    for (std::size_t t = 0; t < a.size() && same; ++t) same = a[(t + shift) % a.size()] == b[t];
    if (same) return true;
  }
  return false;
}

}  // namespace

GroupContext GroupContext::make(std::size_t n, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0 || i > n || j > n)
    throw PreconditionError("pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for n=" +
                            std::to_string(n));
  if (i == j) throw PreconditionError("pair indices must differ");
  if (n - 2 > 63) throw PreconditionError("at most 65 components are supported");
  return {n, std::min(i, j), std::max(i, j)};
}

std::vector<std::size_t> GroupContext::complement() const {
  std::vector<std::size_t> k;
  for (std::size_t c = 1; c <= n; ++c)
    if (c != i && c != j) k.push_back(c);
  return k;
}

std::size_t GroupContext::rank_of(std::size_t component) const {
  if (component == i || component == j || component == 0 || component > n)
    throw PreconditionError("component " + std::to_string(component) + " is not in {1.." + std::to_string(n) +
                            "} \\ {" + std::to_string(i) + "," + std::to_string(j) + "}");
  std::size_t rank = component - 1;
  if (component > i) --rank;
  if (component > j) --rank;
  return rank;
}

Letter make_letter(const std::vector<int>& tuple) {
  Letter x;
  x.width = tuple.size();
  for (std::size_t r = 0; r < tuple.size(); ++r)
    if (tuple[r] & 1) x.bits |= std::uint64_t{1} << r;
  return x;
}

std::size_t letter_index(const Letter& x) noexcept { return static_cast<std::size_t>(x.bits); }

Word reduce(const Word& w) {
  check_letters(w);
  Word out{w.context, {}};
  for (const auto& x : w.letters) {
    if (!out.letters.empty() && out.letters.back() == x)
      out.letters.pop_back();
    else
      out.letters.push_back(x);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.letters.size();
  while (hi - lo >= 2 && r.letters[lo] == r.letters[hi - 1]) {
    ++lo;
    --hi;
  }
  return {r.context, {r.letters.begin() + static_cast<std::ptrdiff_t>(lo), r.letters.begin() + static_cast<std::ptrdiff_t>(hi)}};
}

bool conjugate_equal(const Word& u, const Word& v) {
  check_same_context(u, v);
  return is_rotation(cyclic_reduce(u).letters, cyclic_reduce(v).letters);
}

Word slide(const Word& w, std::size_t l) {
  check_letters(w);
  return apply_mask(w, std::uint64_t{1} << w.context.rank_of(l));
}

Word apply_mask(const Word& w, std::uint64_t mask) {
  check_letters(w);
  Word out = w;
  for (auto& x : out.letters) x.bits ^= mask;
  return out;
}

bool slide_conjugacy_equal(const Word& u, const Word& v) {
  check_same_context(u, v);
  const auto target = cyclic_reduce(v).letters;
  const auto base = cyclic_reduce(u);
  const auto masks = mask_count(u.context);
  for (std::uint64_t b = 0; b < masks; ++b)
    if (is_rotation(apply_mask(base, b).letters, target)) return true;
  return false;
}

Word least_rotation(const Word& w) {
  Word best = w;
  const auto len = w.letters.size();
  for (std::size_t shift = 1; shift < len; ++shift) {
    Word candidate{w.context, {}};
    for (std::size_t t = 0; t < len; ++t) candidate.letters.push_back(w.letters[(t + shift) % len]);
    if (candidate.letters < best.letters) best = std::move(candidate);
  }
  return best;
}

std::vector<OrbitEntry> slide_orbit(const Word& w) {
  const auto base = cyclic_reduce(w);
  const auto masks = mask_count(w.context);
  std::vector<OrbitEntry> orbit;
  orbit.reserve(masks);
  for (std::uint64_t b = 0; b < masks; ++b) orbit.push_back({b, least_rotation(apply_mask(base, b))});
  return orbit;
}

Word canonical_class_word(const Word& w) {
  auto orbit = slide_orbit(w);
  auto best = std::min_element(orbit.begin(), orbit.end(), [](const OrbitEntry& a, const OrbitEntry& b) {
    return a.representative.letters < b.representative.letters;
  });
  return best->representative;
}

std::string render(const Letter& x) {
  std::string out = "(";
  for (std::size_t r = 0; r < x.width; ++r) {
    if (r) out += ',';
    out += x.bit(r) ? '1' : '0';
  }
  out += ')';
  return out;
}

std::string render(const Word& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (std::size_t t = 0; t < w.letters.size(); ++t) {
    if (t) out += "·";
    out += render(w.letters[t]);
  }
  return out;
}

}  // namespace freelink
