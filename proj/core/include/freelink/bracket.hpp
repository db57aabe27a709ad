#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freelink/diagram.hpp"
#include "freelink/invariant.hpp"
#include "freelink/moves.hpp"

namespace freelink {

// The two reconnections of a crossing. Relative to the orientation of the
// diagram being spliced, with passes p and q of the crossing:
//   A joins in(p)-out(q) and in(q)-out(p)   (splits a component),
//   B joins in(p)-in(q) and out(p)-out(q)   (reverses the segment between).
enum class SpliceBranch { A, B };

struct SpliceChoice {
  CrossingId crossing;
  SpliceBranch branch = SpliceBranch::A;
};

/// Splices pure crossings of `d`. Branches refer to the orientation of `d`,
/// so the result does not depend on the order of `choices`. A component
/// keeps its index when it contains the start of its source component (or
/// its first pass, for closed ones); further pieces are appended as closed
/// components.
Diagram splice(const Diagram& d, const std::vector<SpliceChoice>& choices);
Diagram splice(const Diagram& d, const SpliceChoice& choice);

struct BracketOptions {
  std::size_t max_pure = 20;
  unsigned jobs = 1;
};

// Mod-2 sum of canonical n-component splicings (no pure crossings left).
struct Bracket {
  std::size_t n = 0;
  DiagramKind kind = DiagramKind::tangle;
  std::vector<Diagram> summands;  // canonical, sorted by serialization

  friend bool operator==(const Bracket&, const Bracket&) = default;
};

Bracket bracket(const Diagram& d, const BracketOptions& opts = {});

std::string serialize(const Bracket& b);

enum class Outcome { equal, distinct, unknown };
std::string_view to_string(Outcome outcome) noexcept;

struct Verdict {
  Outcome outcome = Outcome::unknown;
  std::string certificate;
  // Fingerprint entry separating the brackets, when the certificate is a word.
  std::optional<FingerprintKey> key;
  std::optional<Word> left_word;
  std::optional<Word> right_word;
  // Search traces for the summand pairs matched in stage 2.
  std::vector<WalkTrace> traces;
};

// Invariant of a pure-crossing-free diagram under g-equivalence: the
// good-condition parity table plus, in good condition, its fingerprint.
struct SummandSignature {
  GoodCondition parity;
  std::optional<Fingerprint> fingerprint;

  std::string key() const;
};

SummandSignature summand_signature(const Diagram& d);

/// Compares brackets: identical summand sets, then a perfect matching by
/// bounded search (g-equivalence, at most `depth` moves per pair), then
/// mod-2 signature multisets of the unmatched summands. "equal" and
/// "distinct" are sound; everything else is unknown.
Verdict bracket_equal(const Bracket& p, const Bracket& q, std::size_t depth);

}  // namespace freelink
