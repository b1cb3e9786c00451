#pragma once

// Exact Laurent polynomials in v = q^{1/2} with arbitrary-precision integer
// coefficients. Exponents are always counted in units of v, so q^m is v^{2m}.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qclust {

using BigInt = boost::multiprecision::cpp_int;

class VPoly {
 public:
  using Term = std::pair<std::int64_t, BigInt>;

  VPoly() = default;
  VPoly(long long c);  // NOLINT(google-explicit-constructor)
  explicit VPoly(BigInt c);

  /// c * v^exp.
  static VPoly monomial(std::int64_t exp, BigInt coeff = 1);

  /// Sorts, merges equal exponents and drops zeros.
  static VPoly from_terms(std::vector<Term> terms);

  /// Terms sorted by increasing exponent; no zero coefficients.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  // Precondition for the accessors below: !is_zero().
  std::int64_t min_exp() const { return terms_.front().first; }
  std::int64_t max_exp() const { return terms_.back().first; }
  const BigInt& leading_coeff() const { return terms_.back().second; }

  /// v^shift * p.
  VPoly shifted(std::int64_t shift) const;

  /// v -> v^{-1}.
  VPoly bar() const;

  /// Every coefficient strictly positive (true for the zero polynomial).
  bool is_nonneg() const;

  /// Specialization v = 1.
  BigInt at_one() const;

  /// Exact quotient p / d, or nothing when d does not divide p in Z[v^{+-1}].
  std::optional<VPoly> divide_exact(const VPoly& d) const;

  VPoly operator-() const;
  VPoly& operator+=(const VPoly& r);
  VPoly& operator-=(const VPoly& r);
  VPoly& operator*=(const VPoly& r);

  friend VPoly operator+(VPoly p, const VPoly& r) { return p += r; }
  friend VPoly operator-(VPoly p, const VPoly& r) { return p -= r; }
  friend VPoly operator*(const VPoly& p, const VPoly& r);
  friend bool operator==(const VPoly&, const VPoly&) = default;

  /// Renders v-powers as q^{m/2}, e.g. "q^{3/2} + 2 - q^{-1}".
  std::string pretty() const;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const VPoly& p);

/// "q^{3/2}", "q^{-1}", "" for exponent 0.
std::string format_q_power(std::int64_t v_exp);

}  // namespace qclust
