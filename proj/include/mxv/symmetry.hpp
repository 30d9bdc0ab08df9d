#pragma once

#include <array>
#include <numeric>
#include <string>
#include <string_view>

#include "mxv/model.hpp"

namespace mxv {

// Exact rational p/q with q > 0, kept in lowest terms.
struct Fraction {
  long num = 0;
  long den = 1;

  static Fraction make(long p, long q);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Reduces into [0, 1).
  Fraction wrapped() const;

  friend Fraction operator+(Fraction a, Fraction b) {
    return make(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// A coordinate triplet such as "-x, y+1/2, -z+1/2": x' = R x + t (mod 1).
struct SymmetryOp {
  std::array<std::array<int, 3>, 3> rotation{};
  std::array<Fraction, 3> translation{};

  Vec3 apply(const Vec3& frac) const;
  int determinant() const;
  std::string to_xyz() const;

  friend bool operator==(const SymmetryOp&, const SymmetryOp&) = default;
};

/// Throws BadSymmetryExpr on an unknown token, a missing comma, or a
/// rotation whose determinant is not +-1.
SymmetryOp parse_symmetry_op(std::string_view expr);

SymmetryOp identity_op();

}  // namespace mxv
