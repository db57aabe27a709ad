#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freelink/diagram.hpp"
#include "freelink/group_words.hpp"

namespace freelink {

// Parity of the type-(i,k) passes before c on component i plus the
// type-(j,k) passes before c on component j, where c has type (i,j).
// `d` must be a tangle; c must be a mixed crossing and k outside its type.
int lk(const Diagram& d, const CrossingId& c, std::size_t k);

// The generator lk_c of G_n^{(i,j)}, (i,j) the type of c.
Letter lk_vector(const Diagram& d, const CrossingId& c);

/// The reduced word lk_{c_1} ... lk_{c_m} over the type-(along, other)
/// crossings, ordered along component `along` from its lower endpoint.
/// `d` must be a tangle in good condition without pure crossings.
Word word_invariant(const Diagram& d, std::size_t along, std::size_t other);

// Cuts the link at `basepoints` and takes the tangle word.
Word link_word(const Diagram& d, const std::vector<Basepoint>& basepoints, std::size_t along, std::size_t other);

// Class representative of the link word; basepoints at offset 0.
Word link_invariant(const Diagram& d, std::size_t along, std::size_t other);

struct FingerprintKey {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  std::size_t along = 0;  // i or j

  friend auto operator<=>(const FingerprintKey&, const FingerprintKey&) = default;
};

// Tangles store the reduced words themselves; links store class words.
struct Fingerprint {
  DiagramKind kind = DiagramKind::tangle;
  std::map<FingerprintKey, Word> words;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const Diagram& d);

// First entry where the fingerprints differ, if any.
std::optional<FingerprintKey> first_difference(const Fingerprint& a, const Fingerprint& b);

// Precondition check shared by the word invariants.
void require_good_pure_free(const Diagram& d);

}  // namespace freelink
