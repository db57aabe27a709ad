#include "freelink/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "freelink/error.hpp"

namespace freelink {

std::size_t Diagram::pass_count() const noexcept {
  std::size_t total = 0;
  for (const auto& comp : components) total += comp.passes.size();
  return total;
}

std::set<CrossingId> Diagram::crossing_names() const {
  std::set<CrossingId> names;
  for (const auto& comp : components) names.insert(comp.passes.begin(), comp.passes.end());
  return names;
}

bool is_valid_crossing_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
  });
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    tokens.push_back({line.substr(start, pos - start), start + 1});
  }
  return tokens;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

struct PassLocation {
  std::size_t line;
  std::size_t column;
};

}  // namespace

Diagram parse_diagram(std::string_view text) {
  Diagram d;
  std::optional<std::size_t> declared;
  std::vector<std::optional<ComponentCode>> slots;
  std::map<CrossingId, std::vector<PassLocation>> seen;
  std::size_t header_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (!declared) {
      if (tokens[0].text != "tangle" && tokens[0].text != "link")
        throw ParseError(line_no, tokens[0].column, "expected 'tangle n=<N>' or 'link n=<N>'");
      d.kind = tokens[0].text == "tangle" ? DiagramKind::tangle : DiagramKind::link;
      if (tokens.size() != 2 || !tokens[1].text.starts_with("n="))
        throw ParseError(line_no, tokens.size() > 1 ? tokens[1].column : tokens[0].column + tokens[0].text.size(),
                         "expected 'n=<N>' after diagram kind");
      auto n = parse_count(tokens[1].text.substr(2));
      if (!n) throw ParseError(line_no, tokens[1].column + 2, "component count is not a non-negative integer");
      declared = *n;
      slots.assign(*n, std::nullopt);
      header_line = line_no;
      if (end == text.size()) break;
      continue;
    }

    if (tokens[0].text != "component")
      throw ParseError(line_no, tokens[0].column, "expected 'component <i> open:' or 'component <i> closed:'");
    if (tokens.size() < 3) throw ParseError(line_no, tokens.back().column, "incomplete component line");
    auto index = parse_count(tokens[1].text);
    if (!index || *index == 0) throw ParseError(line_no, tokens[1].column, "component index must be a positive integer");
    if (*index > *declared)
      throw ParseError(line_no, tokens[1].column,
                       "component index " + std::to_string(*index) + " exceeds n=" + std::to_string(*declared));
    if (slots[*index - 1])
      throw ParseError(line_no, tokens[1].column, "duplicate component index " + std::to_string(*index));

    ComponentCode comp;
    if (tokens[2].text != "open:" && tokens[2].text != "closed:")
      throw ParseError(line_no, tokens[2].column, "expected 'open:' or 'closed:'");
    comp.closed = tokens[2].text == "closed:";

    for (std::size_t t = 3; t < tokens.size(); ++t) {
      const auto& tok = tokens[t];
      if (!is_valid_crossing_name(tok.text))
        throw ParseError(line_no, tok.column, "invalid crossing name '" + std::string(tok.text) + "'");
      comp.passes.emplace_back(tok.text);
      seen[comp.passes.back()].push_back({line_no, tok.column});
    }
    slots[*index - 1] = std::move(comp);
    if (end == text.size()) break;
  }

  if (!declared) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'tangle n=<N>' or 'link n=<N>' header");
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k]) throw ParseError(header_line, 1, "component " + std::to_string(k + 1) + " is missing");
    d.components.push_back(std::move(*slots[k]));
  }
  for (const auto& [name, locations] : seen) {
    if (locations.size() != 2) {
      const auto& at = locations.size() > 2 ? locations[2] : locations[0];
      throw ParseError(at.line, at.column,
                       "crossing '" + name + "' occurs " + std::to_string(locations.size()) + " times (expected 2)");
    }
  }
  return d;
}

std::string serialize(const Diagram& d) {
  std::ostringstream out;
  out << (d.kind == DiagramKind::tangle ? "tangle" : "link") << " n=" << d.components.size() << '\n';
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const auto& comp = d.components[k];
    out << "component " << k + 1 << (comp.closed ? " closed:" : " open:");
    for (const auto& c : comp.passes) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

std::vector<Violation> validate(const Diagram& d) {
  std::vector<Violation> violations;
  std::map<CrossingId, std::size_t> counts;
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const auto& comp = d.components[k];
    std::string where = "component " + std::to_string(k + 1);
    if (d.kind == DiagramKind::tangle && comp.closed)
      violations.push_back({"kind", where, "tangle components must be open"});
    if (d.kind == DiagramKind::link && !comp.closed)
      violations.push_back({"kind", where, "link components must be closed"});
    for (const auto& c : comp.passes) {
      if (!is_valid_crossing_name(c))
        violations.push_back({"name", where, "invalid crossing name '" + c + "'"});
      ++counts[c];
    }
  }
  for (const auto& [name, count] : counts) {
    if (count != 2)
      violations.push_back({"arity", name, "occurs " + std::to_string(count) + " times (expected 2)"});
  }
  return violations;
}

void require_valid(const Diagram& d) {
  auto violations = validate(d);
  if (violations.empty()) return;
  const auto& v = violations.front();
  throw PreconditionError("invalid diagram: " + v.rule + " violation at " + v.location + ": " + v.message);
}

std::map<CrossingId, CrossingType> crossing_types(const Diagram& d) {
  std::map<CrossingId, CrossingType> types;
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    for (const auto& c : d.components[k].passes) {
      auto [it, inserted] = types.try_emplace(c, CrossingType{k + 1, k + 1});
      if (!inserted) it->second.second = k + 1;
    }
  }
  return types;
}

CrossingType crossing_type(const Diagram& d, const CrossingId& c) {
  auto types = crossing_types(d);
  auto it = types.find(c);
  if (it == types.end()) throw PreconditionError("unknown crossing '" + c + "'");
  return it->second;
}

std::set<CrossingId> pure_crossings(const Diagram& d) {
  std::set<CrossingId> pure;
  for (const auto& [name, type] : crossing_types(d))
    if (type.pure()) pure.insert(name);
  return pure;
}

GoodCondition is_good_condition(const Diagram& d) {
  GoodCondition result;
  const std::size_t n = d.components.size();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) result.parity[{i, j}] = 0;
  for (const auto& [name, type] : crossing_types(d)) {
    if (type.pure()) continue;
    result.parity[{type.first, type.second}] ^= 1;
  }
  for (const auto& [pair, parity] : result.parity)
    if (parity != 0) result.good = false;
  return result;
}

std::string canonical_key(const Diagram& d) { return serialize(canonical_form(d)); }

Diagram cut_link(const Diagram& d, const std::vector<Basepoint>& basepoints) {
  if (d.kind != DiagramKind::link) throw PreconditionError("cut_link expects a link");
  const std::size_t n = d.components.size();
  if (basepoints.size() != n)
    throw PreconditionError("expected one basepoint per component (" + std::to_string(n) + "), got " +
                            std::to_string(basepoints.size()));
  std::vector<std::optional<std::size_t>> offsets(n);
  for (const auto& b : basepoints) {
    if (b.component == 0 || b.component > n)
      throw PreconditionError("basepoint component " + std::to_string(b.component) + " out of range");
    if (offsets[b.component - 1])
      throw PreconditionError("two basepoints on component " + std::to_string(b.component));
    const auto len = d.components[b.component - 1].passes.size();
    if (b.offset > len)
      throw PreconditionError("basepoint offset " + std::to_string(b.offset) + " exceeds length " +
                              std::to_string(len) + " of component " + std::to_string(b.component));
    offsets[b.component - 1] = b.offset;
  }
  Diagram out;
  out.kind = DiagramKind::tangle;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& passes = d.components[k].passes;
    ComponentCode comp;
    comp.closed = false;
    const std::size_t len = passes.size();
    for (std::size_t t = 0; t < len; ++t) comp.passes.push_back(passes[(*offsets[k] + t) % len]);
    out.components.push_back(std::move(comp));
  }
  return out;
}

Diagram trivial_tangle(std::size_t n) {
  Diagram d;
  d.kind = DiagramKind::tangle;
  d.components.assign(n, ComponentCode{false, {}});
  return d;
}

Diagram unlink(std::size_t n) {
  Diagram d;
  d.kind = DiagramKind::link;
  d.components.assign(n, ComponentCode{true, {}});
  return d;
}

}  // namespace freelink
