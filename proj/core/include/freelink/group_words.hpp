#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace freelink {

/// The group generated by all maps sigma: K -> Z2 with sigma^2 = 1, where
/// K = {1..n} \ {i, j}. It is a free product of 2^(n-2) copies of Z2, one
/// factor per generator; letter_index numbers the factors.
struct GroupContext {
  std::size_t n = 2;
  std::size_t i = 1;  // i < j
  std::size_t j = 2;

  // Throws PreconditionError unless 1 <= i, j <= n and i != j.
  static GroupContext make(std::size_t n, std::size_t i, std::size_t j);

  std::vector<std::size_t> complement() const;  // K in ascending order
  std::size_t width() const noexcept { return n - 2; }
  std::size_t rank_of(std::size_t component) const;  // position of a component in K

  friend bool operator==(const GroupContext&, const GroupContext&) = default;
};

// A generator: bit r is sigma(k_r) for the r-th smallest k in K.
struct Letter {
  std::uint64_t bits = 0;
  std::size_t width = 0;

  bool bit(std::size_t rank) const noexcept { return ((bits >> rank) & 1u) != 0; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Ordering by factor index; letters of different widths never mix in a word.
inline std::strong_ordering operator<=>(const Letter& a, const Letter& b) noexcept {
  if (auto c = a.width <=> b.width; c != 0) return c;
  return a.bits <=> b.bits;
}

// Builds a letter from its tuple (sigma(k))_k, k ascending.
Letter make_letter(const std::vector<int>& tuple);

struct Word {
  GroupContext context;
  std::vector<Letter> letters;

  friend bool operator==(const Word&, const Word&) = default;
};

std::size_t letter_index(const Letter& x) noexcept;

Word reduce(const Word& w);
Word cyclic_reduce(const Word& w);
bool conjugate_equal(const Word& u, const Word& v);

// Applies f_l: flips the bit of component l (l in K) in every letter.
Word slide(const Word& w, std::size_t l);
// Applies the product of f_l over the ranks set in `mask`.
Word apply_mask(const Word& w, std::uint64_t mask);

bool slide_conjugacy_equal(const Word& u, const Word& v);

// Lexicographically least rotation of a cyclically reduced word.
Word least_rotation(const Word& w);

/// Normal form of the slide + conjugacy class: the least rotation of
/// cyclic_reduce(apply_mask(w, b)) over all 2^(n-2) masks b.
Word canonical_class_word(const Word& w);

struct OrbitEntry {
  std::uint64_t mask = 0;
  Word representative;  // least rotation of the cyclically reduced masked word
};

// One entry per mask of Z2^(n-2), in mask order.
std::vector<OrbitEntry> slide_orbit(const Word& w);

std::string render(const Letter& x);
// Letters joined by a middle dot; the empty word renders as "1".
std::string render(const Word& w);

}  // namespace freelink
