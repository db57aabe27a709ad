#pragma once

#include <cstddef>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "freelink/diagram.hpp"
#include "freelink/group_words.hpp"

namespace freelink::testing {

std::string data_path(const std::string& name);
Diagram load_fixture(const std::string& name);

// Fixed diagrams.
Diagram t_star();           // 3 open strands, two crossings per pair
Diagram t_star_closure();   // the same code, closed
Diagram t3();               // x y / x z / y z
Diagram from_codes(DiagramKind kind, const std::vector<std::string>& codes);

// Random pure-crossing-free diagram in good condition: crossings come in
// pairs of equal type between distinct components.
Diagram random_good_diagram(std::mt19937_64& rng, DiagramKind kind, std::size_t n, std::size_t max_crossings);
// Random valid diagram, pure crossings allowed.
Diagram random_diagram(std::mt19937_64& rng, DiagramKind kind, std::size_t n, std::size_t crossings);
// Renames crossings and rotates/reverses closed components at random.
Diagram scramble(std::mt19937_64& rng, const Diagram& d);

// Canonical form by trying every rotation/reversal combination.
Diagram brute_force_canonical(const Diagram& d);

// Bracket by sequential splicing of Gauss sequences, relabeling branches
// relative to whatever orientation the intermediate code has.
std::vector<std::string> brute_force_bracket_keys(const Diagram& d);

Word random_word(std::mt19937_64& rng, const GroupContext& ctx, std::size_t max_len);
// True iff some reduced conjugator g with |g| <= max_len has g^-1 u g = v.
bool brute_force_conjugate(const Word& u, const Word& v, std::size_t max_len);

}  // namespace freelink::testing

namespace freelink {
// Readable gtest failure output.
inline void PrintTo(const Diagram& d, std::ostream* os) { *os << '\n' << serialize(d); }
inline void PrintTo(const Word& w, std::ostream* os) { *os << render(w); }
}  // namespace freelink
