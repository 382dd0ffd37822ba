#include "ramsum/element_spec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ramsum {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

AtomId resolve_or_throw(AtomTable& table, std::string_view label) {
  const auto id = table.resolve(label);
  if (!id) {
    throw ParseError("unknown atom label '" + std::string(label) + "' in instance " +
                     table.source().descriptor());
  }
  return *id;
}

}  // namespace

Element parse_element(AtomTable& table, std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw ParseError("empty element spec");

  std::vector<Factor> factors;
  if (std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const auto n = parse_number<std::uint64_t>(spec, "integer");
    if (n == 0) throw ParseError("element spec must be a positive integer");
    const auto parts = table.source().factor_integer(n);
    if (!parts) {
      throw ParseError("instance " + table.source().descriptor() + " does not accept integer specs");
    }
    for (const auto& [label, exp] : *parts) factors.push_back({resolve_or_throw(table, label), exp});
    return Element::from_factors(std::move(factors));
  }

  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t star = spec.find('*', pos);
    const auto term = trim(spec.substr(pos, star == std::string_view::npos ? spec.npos : star - pos));
    if (term.empty()) throw ParseError("empty factor in '" + std::string(spec) + "'");
    const std::size_t caret = term.find('^');
    const auto label = trim(term.substr(0, caret));
    std::uint32_t exp = 1;
    if (caret != std::string_view::npos) {
      exp = parse_number<std::uint32_t>(trim(term.substr(caret + 1)), "exponent");
      if (exp == 0) throw ParseError("exponents must be positive");
    }
    factors.push_back({resolve_or_throw(table, label), exp});
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return Element::from_factors(std::move(factors));
}

std::string format_element(const AtomList& atoms, const Element& e) {
  if (e.is_zero()) return "1";
  std::vector<std::pair<std::string_view, std::uint32_t>> parts;
  for (const auto& f : e.factors()) parts.emplace_back(atoms[f.atom].label, f.exp);
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& [label, exp] : parts) {
    if (!out.empty()) out += '*';
    out += label;
    if (exp > 1) out += "^" + std::to_string(exp);
  }
  return out;
}

}  // namespace ramsum
