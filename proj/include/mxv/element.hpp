#pragma once

#include <array>
#include <span>
#include <string_view>

namespace mxv {

struct Element {
  std::string_view symbol;
  int atomic_number = 0;
  double covalent_radius = 0.0;  // Å, single-bond
  double display_radius = 0.0;   // Å
  std::array<double, 3> color{};  // RGB in [0,1]

  friend bool operator==(const Element& a, const Element& b) {
    return a.atomic_number == b.atomic_number;
  }
};

/// All tabulated elements, Z = 1..103, indexed by Z-1.
std::span<const Element> element_table();

/// Looks an element up by atomic number; throws UnknownElement outside 1..103.
const Element& element_by_number(int z);

/// Resolves a symbol or a species tag ("Si", "MoSe2", "Si7.0-s2p2d1", "C60tag")
/// to an element. Only the leading alphabetic characters are considered; a
/// two-letter symbol is preferred over a one-letter one, case-insensitively.
/// Throws UnknownElement when nothing matches.
const Element& element_lookup(std::string_view symbol_or_tag);

}  // namespace mxv
