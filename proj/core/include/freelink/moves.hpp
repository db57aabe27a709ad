#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "freelink/diagram.hpp"

namespace freelink {

enum class MoveKind { R1_delete, R1_insert, R2_delete, R2_insert, R3 };

std::string_view to_string(MoveKind kind) noexcept;
std::optional<MoveKind> move_kind_from_string(std::string_view text) noexcept;

// A location on component `component` (1-based).
//  - delete / R3 sites: `pos` is the index of the first pass of an adjacent
//    pair; on a closed component pos = len - 1 names the pair (len - 1, 0).
//  - insert sites: `pos` is a slot, the new passes go before passes[pos]
//    (slot len appends). On a closed component slot len + 1 straddles the
//    basepoint: the first new pass is appended and the second prepended.
//    This keeps inverse moves exact on the stored code.
struct Slot {
  std::size_t component = 1;
  std::size_t pos = 0;

  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

// A located Reidemeister move for free diagrams.
//
//   R1_delete  crossings {x}        slots {pair}
//   R1_insert  crossings {x}        slots {slot}             inserts "x x"
//   R2_delete  crossings {x, y}     slots {pair, pair}
//   R2_insert  crossings {x, y}     slots {slot, slot}       inserts "x y", then
//                                                            "x y" or "y x" if reversed
//   R3         crossings {x, y, z}  slots {pair, pair, pair} swaps each pair
//
// Two insertions sharing a slot are emitted in site order.
struct MoveSite {
  MoveKind kind = MoveKind::R1_delete;
  std::vector<CrossingId> crossings;
  std::vector<Slot> slots;
  bool reversed = false;

  friend bool operator==(const MoveSite&, const MoveSite&) = default;
};

struct EnumerateOptions {
  bool forbid_pure = false;
  std::set<MoveKind> kinds = {MoveKind::R1_delete, MoveKind::R2_delete, MoveKind::R3};
};

// All deletion and R3 sites of the requested kinds. Under forbid_pure R1
// sites are dropped and so is every site whose result has a pure crossing.
std::vector<MoveSite> enumerate_moves(const Diagram& d, const EnumerateOptions& opts = {});

Diagram apply_move(const Diagram& d, const MoveSite& m);

// The site that undoes `m`, expressed on apply_move(d, m).
MoveSite inverse_move(const Diagram& d, const MoveSite& m);

// A crossing name not used in `d`, distinct from every name in `avoid`.
CrossingId fresh_crossing(const Diagram& d, const std::vector<CrossingId>& avoid = {});

// Every R1/R2 insertion (one representative per slot choice) that keeps the
// crossing count at most `max_crossings`. Under forbid_pure only R2
// insertions across two different components are produced.
std::vector<MoveSite> enumerate_insertions(const Diagram& d, bool forbid_pure, std::size_t max_crossings);

struct WalkTrace {
  Diagram initial;
  std::vector<MoveSite> moves;
  Diagram final;
};

// Replays `moves` from `initial`.
Diagram replay(const Diagram& initial, const std::vector<MoveSite>& moves);

std::string format_move(const MoveSite& m);
MoveSite parse_move(std::string_view line);
std::string format_trace(const std::vector<MoveSite>& moves);
std::vector<MoveSite> parse_trace(std::string_view text);

struct WalkOptions {
  bool forbid_pure = false;
  std::size_t max_size = 16;  // crossings
};

/// Seeded random walk. Each step picks a move family uniformly among those
/// with at least one legal move (R1_delete, R1_insert, R2_delete,
/// R2_insert, R3), then a uniform move inside it. Insertions never exceed
/// max_size crossings; under forbid_pure R1 moves and same-component R2
/// insertions are never chosen. Stops early when nothing applies.
WalkTrace random_walk(const Diagram& d, std::size_t steps, std::uint64_t seed, const WalkOptions& opts = {});

struct SearchOptions {
  bool forbid_pure = false;
  std::size_t insertion_slack = 2;
};

struct SearchVerdict {
  bool equivalent = false;
  std::optional<WalkTrace> trace;
};

/// Bidirectional breadth-first search over canonical forms. Paths use at
/// most `depth` moves; insertions are capped at the larger input's crossing
/// count plus the slack. Returns a replayable trace from `a` to a diagram
/// with the same canonical form as `b`, or unknown.
SearchVerdict bounded_equivalence_search(const Diagram& a, const Diagram& b, std::size_t depth,
                                         const SearchOptions& opts = {});

}  // namespace freelink
