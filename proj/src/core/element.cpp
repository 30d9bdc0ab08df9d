#include "mxv/element.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "mxv/error.hpp"

namespace mxv {
namespace {

// Covalent radii: Cordero et al. single-bond table (Å) for Z <= 96, 1.5 Å
// beyond it. Colors follow the Jmol scheme. Display radius is half the
// covalent radius.
constexpr Element kElements[] = {
    {"H", 1, 0.31, 0.155, {1.000, 1.000, 1.000}},
    {"He", 2, 0.28, 0.140, {0.851, 1.000, 1.000}},
    {"Li", 3, 1.28, 0.640, {0.800, 0.502, 1.000}},
    {"Be", 4, 0.96, 0.480, {0.761, 1.000, 0.000}},
    {"B", 5, 0.84, 0.420, {1.000, 0.710, 0.710}},
    {"C", 6, 0.76, 0.380, {0.565, 0.565, 0.565}},
    {"N", 7, 0.71, 0.355, {0.188, 0.314, 0.973}},
    {"O", 8, 0.66, 0.330, {1.000, 0.051, 0.051}},
    {"F", 9, 0.57, 0.285, {0.565, 0.878, 0.314}},
    {"Ne", 10, 0.58, 0.290, {0.702, 0.890, 0.961}},
    {"Na", 11, 1.66, 0.830, {0.671, 0.361, 0.949}},
    {"Mg", 12, 1.41, 0.705, {0.541, 1.000, 0.000}},
    {"Al", 13, 1.21, 0.605, {0.749, 0.651, 0.651}},
    {"Si", 14, 1.11, 0.555, {0.941, 0.784, 0.627}},
    {"P", 15, 1.07, 0.535, {1.000, 0.502, 0.000}},
    {"S", 16, 1.05, 0.525, {1.000, 1.000, 0.188}},
    {"Cl", 17, 1.02, 0.510, {0.122, 0.941, 0.122}},
    {"Ar", 18, 1.06, 0.530, {0.502, 0.820, 0.890}},
    {"K", 19, 2.03, 1.015, {0.561, 0.251, 0.831}},
    {"Ca", 20, 1.76, 0.880, {0.239, 1.000, 0.000}},
    {"Sc", 21, 1.70, 0.850, {0.902, 0.902, 0.902}},
    {"Ti", 22, 1.60, 0.800, {0.749, 0.761, 0.780}},
    {"V", 23, 1.53, 0.765, {0.651, 0.651, 0.671}},
    {"Cr", 24, 1.39, 0.695, {0.541, 0.600, 0.780}},
    {"Mn", 25, 1.39, 0.695, {0.612, 0.478, 0.780}},
    {"Fe", 26, 1.32, 0.660, {0.878, 0.400, 0.200}},
    {"Co", 27, 1.26, 0.630, {0.941, 0.565, 0.627}},
    {"Ni", 28, 1.24, 0.620, {0.314, 0.816, 0.314}},
    {"Cu", 29, 1.32, 0.660, {0.784, 0.502, 0.200}},
    {"Zn", 30, 1.22, 0.610, {0.490, 0.502, 0.690}},
    {"Ga", 31, 1.22, 0.610, {0.761, 0.561, 0.561}},
    {"Ge", 32, 1.20, 0.600, {0.400, 0.561, 0.561}},
    {"As", 33, 1.19, 0.595, {0.741, 0.502, 0.890}},
    {"Se", 34, 1.20, 0.600, {1.000, 0.631, 0.000}},
    {"Br", 35, 1.20, 0.600, {0.651, 0.161, 0.161}},
    {"Kr", 36, 1.16, 0.580, {0.361, 0.722, 0.820}},
    {"Rb", 37, 2.20, 1.100, {0.439, 0.180, 0.690}},
    {"Sr", 38, 1.95, 0.975, {0.000, 1.000, 0.000}},
    {"Y", 39, 1.90, 0.950, {0.580, 1.000, 1.000}},
    {"Zr", 40, 1.75, 0.875, {0.580, 0.878, 0.878}},
    {"Nb", 41, 1.64, 0.820, {0.451, 0.761, 0.788}},
    {"Mo", 42, 1.54, 0.770, {0.329, 0.710, 0.710}},
    {"Tc", 43, 1.47, 0.735, {0.231, 0.620, 0.620}},
    {"Ru", 44, 1.46, 0.730, {0.141, 0.561, 0.561}},
    {"Rh", 45, 1.42, 0.710, {0.039, 0.490, 0.549}},
    {"Pd", 46, 1.39, 0.695, {0.000, 0.412, 0.522}},
    {"Ag", 47, 1.45, 0.725, {0.753, 0.753, 0.753}},
    {"Cd", 48, 1.44, 0.720, {1.000, 0.851, 0.561}},
    {"In", 49, 1.42, 0.710, {0.651, 0.459, 0.451}},
    {"Sn", 50, 1.39, 0.695, {0.400, 0.502, 0.502}},
    {"Sb", 51, 1.39, 0.695, {0.620, 0.388, 0.710}},
    {"Te", 52, 1.38, 0.690, {0.831, 0.478, 0.000}},
    {"I", 53, 1.39, 0.695, {0.580, 0.000, 0.580}},
    {"Xe", 54, 1.40, 0.700, {0.259, 0.620, 0.690}},
    {"Cs", 55, 2.44, 1.220, {0.341, 0.090, 0.561}},
    {"Ba", 56, 2.15, 1.075, {0.000, 0.788, 0.000}},
    {"La", 57, 2.07, 1.035, {0.439, 0.831, 1.000}},
    {"Ce", 58, 2.04, 1.020, {1.000, 1.000, 0.780}},
    {"Pr", 59, 2.03, 1.015, {0.851, 1.000, 0.780}},
    {"Nd", 60, 2.01, 1.005, {0.780, 1.000, 0.780}},
    {"Pm", 61, 1.99, 0.995, {0.639, 1.000, 0.780}},
    {"Sm", 62, 1.98, 0.990, {0.561, 1.000, 0.780}},
    {"Eu", 63, 1.98, 0.990, {0.380, 1.000, 0.780}},
    {"Gd", 64, 1.96, 0.980, {0.271, 1.000, 0.780}},
    {"Tb", 65, 1.94, 0.970, {0.188, 1.000, 0.780}},
    {"Dy", 66, 1.92, 0.960, {0.122, 1.000, 0.780}},
    {"Ho", 67, 1.92, 0.960, {0.000, 1.000, 0.612}},
    {"Er", 68, 1.89, 0.945, {0.000, 0.902, 0.459}},
    {"Tm", 69, 1.90, 0.950, {0.000, 0.831, 0.322}},
    {"Yb", 70, 1.87, 0.935, {0.000, 0.749, 0.220}},
    {"Lu", 71, 1.87, 0.935, {0.000, 0.671, 0.141}},
    {"Hf", 72, 1.75, 0.875, {0.302, 0.761, 1.000}},
    {"Ta", 73, 1.70, 0.850, {0.302, 0.651, 1.000}},
    {"W", 74, 1.62, 0.810, {0.129, 0.580, 0.839}},
    {"Re", 75, 1.51, 0.755, {0.149, 0.490, 0.671}},
    {"Os", 76, 1.44, 0.720, {0.149, 0.400, 0.588}},
    {"Ir", 77, 1.41, 0.705, {0.090, 0.329, 0.529}},
    {"Pt", 78, 1.36, 0.680, {0.816, 0.816, 0.878}},
    {"Au", 79, 1.36, 0.680, {1.000, 0.820, 0.137}},
    {"Hg", 80, 1.32, 0.660, {0.722, 0.722, 0.816}},
    {"Tl", 81, 1.45, 0.725, {0.651, 0.329, 0.302}},
    {"Pb", 82, 1.46, 0.730, {0.341, 0.349, 0.380}},
    {"Bi", 83, 1.48, 0.740, {0.620, 0.310, 0.710}},
    {"Po", 84, 1.40, 0.700, {0.671, 0.361, 0.000}},
    {"At", 85, 1.50, 0.750, {0.459, 0.310, 0.271}},
    {"Rn", 86, 1.50, 0.750, {0.259, 0.510, 0.588}},
    {"Fr", 87, 2.60, 1.300, {0.259, 0.000, 0.400}},
    {"Ra", 88, 2.21, 1.105, {0.000, 0.490, 0.000}},
    {"Ac", 89, 2.15, 1.075, {0.439, 0.671, 0.980}},
    {"Th", 90, 2.06, 1.030, {0.000, 0.729, 1.000}},
    {"Pa", 91, 2.00, 1.000, {0.000, 0.631, 1.000}},
    {"U", 92, 1.96, 0.980, {0.000, 0.561, 1.000}},
    {"Np", 93, 1.90, 0.950, {0.000, 0.502, 1.000}},
    {"Pu", 94, 1.87, 0.935, {0.000, 0.420, 1.000}},
    {"Am", 95, 1.80, 0.900, {0.329, 0.361, 0.949}},
    {"Cm", 96, 1.69, 0.845, {0.471, 0.361, 0.890}},
    {"Bk", 97, 1.50, 0.750, {0.541, 0.310, 0.890}},
    {"Cf", 98, 1.50, 0.750, {0.631, 0.212, 0.831}},
    {"Es", 99, 1.50, 0.750, {0.702, 0.122, 0.831}},
    {"Fm", 100, 1.50, 0.750, {0.702, 0.122, 0.729}},
    {"Md", 101, 1.50, 0.750, {0.702, 0.051, 0.651}},
    {"No", 102, 1.50, 0.750, {0.741, 0.051, 0.529}},
    {"Lr", 103, 1.50, 0.750, {0.780, 0.000, 0.400}},
};

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool symbol_equals(std::string_view symbol, std::string_view candidate) {
  return symbol.size() == candidate.size() &&
         std::equal(symbol.begin(), symbol.end(), candidate.begin(),
                    [](char a, char b) { return lower(a) == lower(b); });
}

const Element* find_symbol(std::string_view candidate) {
  for (const auto& e : kElements) {
    if (symbol_equals(e.symbol, candidate)) return &e;
  }
  return nullptr;
}

}  // namespace

std::span<const Element> element_table() { return kElements; }

const Element& element_by_number(int z) {
  if (z < 1 || z > static_cast<int>(std::size(kElements))) {
    throw Error("UnknownElement", "no element with atomic number " + std::to_string(z));
  }
  return kElements[z - 1];
}

const Element& element_lookup(std::string_view tag) {
  // Leading whitespace and quote characters are not part of a tag.
  while (!tag.empty() && (std::isspace(static_cast<unsigned char>(tag.front())) ||
                          tag.front() == '\'' || tag.front() == '"')) {
    tag.remove_prefix(1);
  }
  std::size_t alpha = 0;
  while (alpha < tag.size() && alpha < 2 && std::isalpha(static_cast<unsigned char>(tag[alpha]))) {
    ++alpha;
  }
  for (std::size_t len = alpha; len > 0; --len) {
    if (const Element* e = find_symbol(tag.substr(0, len))) return *e;
  }
  throw Error("UnknownElement", "cannot resolve element from '" + std::string(tag) + "'");
}

}  // namespace mxv
