#include "linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace qclust::linalg {

using Rational = boost::multiprecision::cpp_rational;

Row primitive(Row v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  if (g == 0 || g == 1) return v;
  for (auto& x : v) x /= g;
  return v;
}

std::vector<Row> kernel_basis(const std::vector<Row>& a, std::size_t cols) {
  std::vector<std::vector<Rational>> m;
  m.reserve(a.size());
  for (const auto& r : a) m.emplace_back(r.begin(), r.end());

  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[row][j];
    }
    pivot_cols.push_back(c);
    ++row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  std::vector<Row> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -m[r][free];
    BigInt lcm = 1;
    for (const auto& x : v) {
      const BigInt den = boost::multiprecision::denominator(x);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    Row iv;
    iv.reserve(cols);
    for (const auto& x : v) iv.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
    basis.push_back(primitive(std::move(iv)));
  }
  return basis;
}

}  // namespace qclust::linalg
