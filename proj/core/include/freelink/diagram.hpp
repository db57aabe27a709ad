#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freelink {

using CrossingId = std::string;

enum class DiagramKind { tangle, link };

// One unicursal component. Open components run from the lower endpoint to
// the upper endpoint; closed components are cyclic with the basepoint
// sitting before passes[0].
struct ComponentCode {
  bool closed = false;
  std::vector<CrossingId> passes;

  friend bool operator==(const ComponentCode&, const ComponentCode&) = default;
  friend auto operator<=>(const ComponentCode&, const ComponentCode&) = default;
};

// An enumerated free tangle or link given by an unsigned Gauss code.
// Component k (1-based) is components[k - 1].
struct Diagram {
  DiagramKind kind = DiagramKind::tangle;
  std::vector<ComponentCode> components;

  std::size_t component_count() const noexcept { return components.size(); }
  const ComponentCode& component(std::size_t index) const { return components.at(index - 1); }

  std::size_t pass_count() const noexcept;
  std::size_t crossing_count() const noexcept { return pass_count() / 2; }
  std::set<CrossingId> crossing_names() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

// A cut point on component `component` (1-based) between passes
// offset - 1 and offset.
struct Basepoint {
  std::size_t component = 1;
  std::size_t offset = 0;
};

// Indices of the components carrying the two passes of a crossing, first <= second.
struct CrossingType {
  std::size_t first = 0;
  std::size_t second = 0;

  bool pure() const noexcept { return first == second; }
  friend bool operator==(const CrossingType&, const CrossingType&) = default;
  friend auto operator<=>(const CrossingType&, const CrossingType&) = default;
};

struct Violation {
  std::string rule;      // "arity", "kind", "name"
  std::string location;  // crossing name or "component k"
  std::string message;
};

// Parity of the number of type-(i, j) crossings for every pair i < j.
struct GoodCondition {
  bool good = true;
  std::map<std::pair<std::size_t, std::size_t>, int> parity;
};

// Parses the line-oriented text format. Throws ParseError on syntax errors,
// arity violations and duplicate or missing component indices.
Diagram parse_diagram(std::string_view text);
std::string serialize(const Diagram& d);

bool is_valid_crossing_name(std::string_view name) noexcept;

std::vector<Violation> validate(const Diagram& d);
void require_valid(const Diagram& d);

CrossingType crossing_type(const Diagram& d, const CrossingId& c);
std::map<CrossingId, CrossingType> crossing_types(const Diagram& d);
std::set<CrossingId> pure_crossings(const Diagram& d);
GoodCondition is_good_condition(const Diagram& d);

/// Representative of `d` up to renaming crossings and rotating or reversing
/// closed components. Open components keep their orientation. Crossings are
/// renamed 1, 2, 3, ... in order of first occurrence; each closed component
/// takes the rotation/reversal giving the lexicographically least relabeled
/// code, ties carried forward to later components.
Diagram canonical_form(const Diagram& d);

// Serialization of canonical_form(d); usable as a hash key.
std::string canonical_key(const Diagram& d);

// Cuts every closed component at its basepoint, producing an n-n tangle.
Diagram cut_link(const Diagram& d, const std::vector<Basepoint>& basepoints);

// Trivial diagrams used throughout the tests and the CLI.
Diagram trivial_tangle(std::size_t n);
Diagram unlink(std::size_t n);

}  // namespace freelink
