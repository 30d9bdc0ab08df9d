#include "mxv/symmetry.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "mxv/error.hpp"

namespace mxv {
namespace {

[[noreturn]] void bad(std::string_view expr, const std::string& why) {
  throw Error("BadSymmetryExpr", "cannot parse symmetry operator '" + std::string(expr) + "': " + why);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Reads an unsigned integer, decimal, or p/q constant starting at pos.
Fraction read_constant(std::string_view s, std::size_t& pos, std::string_view expr) {
  long num = 0;
  long den = 1;
  std::size_t start = pos;
  while (pos < s.size() && is_digit(s[pos])) {
    num = num * 10 + (s[pos] - '0');
    ++pos;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && is_digit(s[pos])) {
      if (den > 100000000L) bad(expr, "too many decimals");
      num = num * 10 + (s[pos] - '0');
      den *= 10;
      ++pos;
    }
  }
  if (pos == start) bad(expr, "expected a number");
  while (pos < s.size() && is_space(s[pos])) ++pos;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    while (pos < s.size() && is_space(s[pos])) ++pos;
    long q = 0;
    std::size_t qstart = pos;
    while (pos < s.size() && is_digit(s[pos])) {
      q = q * 10 + (s[pos] - '0');
      ++pos;
    }
    if (pos == qstart || q == 0) bad(expr, "bad denominator");
    den *= q;
  }
  return Fraction::make(num, den);
}

}  // namespace

Fraction Fraction::make(long p, long q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const long g = std::gcd(p < 0 ? -p : p, q);
  return g > 1 ? Fraction{p / g, q / g} : Fraction{p, q};
}

Fraction Fraction::wrapped() const {
  long r = num % den;
  if (r < 0) r += den;
  return make(r, den);
}

Vec3 SymmetryOp::apply(const Vec3& frac) const {
  Vec3 out;
  for (int r = 0; r < 3; ++r) {
    out[r] = rotation[r][0] * frac[0] + rotation[r][1] * frac[1] + rotation[r][2] * frac[2] +
             translation[r].value();
  }
  return out;
}

int SymmetryOp::determinant() const {
  const auto& m = rotation;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::string SymmetryOp::to_xyz() const {
  static constexpr char kAxis[3] = {'x', 'y', 'z'};
  std::string out;
  for (int r = 0; r < 3; ++r) {
    if (r > 0) out += ", ";
    std::string term;
    for (int c = 0; c < 3; ++c) {
      if (rotation[r][c] == 0) continue;
      if (rotation[r][c] < 0) {
        term += '-';
      } else if (!term.empty()) {
        term += '+';
      }
      term += kAxis[c];
    }
    if (translation[r].num != 0) {
      term += '+' + std::to_string(translation[r].num) + '/' + std::to_string(translation[r].den);
    }
    out += term.empty() ? "0" : term;
  }
  return out;
}

SymmetryOp identity_op() {
  SymmetryOp op;
  for (int i = 0; i < 3; ++i) op.rotation[i][i] = 1;
  return op;
}

SymmetryOp parse_symmetry_op(std::string_view expr) {
  SymmetryOp op;
  std::size_t pos = 0;
  for (int row = 0; row < 3; ++row) {
    Fraction constant;
    bool any_term = false;
    while (true) {
      while (pos < expr.size() && is_space(expr[pos])) ++pos;
      if (pos >= expr.size() || expr[pos] == ',') break;
      int sign = 1;
      if (expr[pos] == '+' || expr[pos] == '-') {
        sign = expr[pos] == '-' ? -1 : 1;
        ++pos;
        while (pos < expr.size() && is_space(expr[pos])) ++pos;
      } else if (any_term) {
        bad(expr, "missing operator between terms");
      }
      if (pos >= expr.size()) bad(expr, "dangling sign");
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(expr[pos])));
      if (c == 'x' || c == 'y' || c == 'z') {
        const int col = c - 'x';
        if (op.rotation[row][col] != 0) bad(expr, "repeated axis in one component");
        op.rotation[row][col] = sign;
        ++pos;
      } else if (is_digit(c) || c == '.') {
        Fraction f = read_constant(expr, pos, expr);
        f.num *= sign;
        constant = constant + f;
      } else {
        bad(expr, std::string("unexpected character '") + expr[pos] + "'");
      }
      any_term = true;
    }
    if (!any_term) bad(expr, "empty component");
    op.translation[row] = constant.wrapped();
    if (row < 2) {
      if (pos >= expr.size() || expr[pos] != ',') bad(expr, "expected three comma-separated components");
      ++pos;
    }
  }
  while (pos < expr.size() && is_space(expr[pos])) ++pos;
  if (pos != expr.size()) bad(expr, "trailing characters");
  if (std::abs(op.determinant()) != 1) bad(expr, "rotation part is not orthogonal");
  return op;
}

}  // namespace mxv
