#pragma once

// The based quantum torus P(L): generators X_i with X_i X_j = q^{l_ij} X_j X_i.
//
// Elements are stored as coordinates in the normalized basis {X^a}, where X^a
// is the bar-invariant rescaling of the ordered product of generators. In this
// basis the product is
//
//   X^a X^b = v^{<a,b>} X^{a+b},   <a,b> = sum_{i,j} a_i b_j l_ij,
//
// with v = q^{1/2}. Bar fixes every X^a and inverts v.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qclust/coeffs.hpp"
#include "qclust/matrix.hpp"

namespace qclust {

/// Integer exponent vector indexed by positions of K. Ordered lexicographically.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  explicit ExponentVector(std::vector<std::int64_t> e) : e_(std::move(e)) {}
  ExponentVector(std::initializer_list<std::int64_t> e) : e_(e) {}

  static ExponentVector unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return e_.size(); }
  std::int64_t operator[](std::size_t i) const { return e_[i]; }
  std::int64_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::int64_t>& values() const noexcept { return e_; }

  bool is_zero() const;
  bool is_nonneg() const;

  ExponentVector& operator+=(const ExponentVector& o);
  ExponentVector& operator-=(const ExponentVector& o);
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<std::int64_t> e_;
};

std::ostream& operator<<(std::ostream& os, const ExponentVector& a);

/// The ambient algebra: just the skew-symmetric matrix L.
class QuantumTorus {
 public:
  explicit QuantumTorus(IntMatrix lambda);

  const IntMatrix& lambda() const noexcept { return lambda_; }
  std::size_t rank() const noexcept { return lambda_.rows(); }

  /// <a,b> = sum_{i,j} a_i b_j l_ij, the v-exponent in X^a X^b = v^{<a,b>} X^{a+b}.
  std::int64_t twist(const ExponentVector& a, const ExponentVector& b) const;

  /// v-exponent relating X^a to the ordered product X_1^{a_1}...X_n^{a_n}:
  /// X^a = v^{sum_{i>j} a_i a_j l_ij} * ordered product.
  std::int64_t ordering_exponent(const ExponentVector& a) const;

 private:
  IntMatrix lambda_;
};

using TorusPtr = std::shared_ptr<const QuantumTorus>;

TorusPtr make_torus(IntMatrix lambda);

class TorusElement {
 public:
  using TermMap = std::map<ExponentVector, VPoly>;

  /// The zero element of `torus`.
  explicit TorusElement(TorusPtr torus);

  static TorusElement one(TorusPtr torus);
  /// The basis element X^a (unit coefficient in the normalized basis).
  static TorusElement monomial(TorusPtr torus, ExponentVector a, VPoly coeff = 1);
  static TorusElement generator(TorusPtr torus, std::size_t i);

  const TorusPtr& torus() const noexcept { return torus_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  /// Coefficient at a (zero when absent).
  VPoly coeff(const ExponentVector& a) const;

  /// Lexicographically largest exponent. Precondition: !is_zero().
  const TermMap::value_type& leading_term() const { return *terms_.rbegin(); }
  const TermMap::value_type& trailing_term() const { return *terms_.begin(); }

  /// Adds c * X^a in place.
  void add_term(const ExponentVector& a, const VPoly& c);

  /// Multiply every coefficient by v^shift.
  TorusElement shifted(std::int64_t shift) const;
  TorusElement scaled(const VPoly& c) const;

  /// Applies bar to every coefficient; X^a is fixed.
  TorusElement bar() const;

  /// Every coefficient in Z_{>=0}[v^{+-1}].
  bool is_nonneg() const;

  TorusElement operator-() const;
  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(const TorusElement& a, const TorusElement& b);

  /// Same ambient (by content) and identical term maps.
  friend bool operator==(const TorusElement& a, const TorusElement& b);

  /// "X^(-1,0) + q^{-1}*X^(0,1)" style rendering in the normalized basis.
  std::string pretty() const;

 private:
  void require_same_ambient(const TorusElement& o) const;

  TorusPtr torus_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const TorusElement& a);

/// Integer power of a torus element, n >= 0.
TorusElement power(const TorusElement& a, std::int64_t n);

/// The unique C with A*C = B. Throws DivisionByZero for A = 0 and NotDivisible
/// when no Laurent quotient exists.
TorusElement divide_left_exact(const TorusElement& a, const TorusElement& b);

/// The unique C with C*A = B, via bar: C*A = B iff bar(A)*bar(C) = bar(B).
TorusElement divide_right_exact(const TorusElement& a, const TorusElement& b);

/// The integer c with A*B = q^c B*A, if one exists. A and B nonzero.
std::optional<std::int64_t> qcommute(const TorusElement& a, const TorusElement& b);

}  // namespace qclust
