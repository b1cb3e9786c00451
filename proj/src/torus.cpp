#include "qclust/torus.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include "qclust/errors.hpp"

namespace qclust {

ExponentVector ExponentVector::unit(std::size_t n, std::size_t i) {
  ExponentVector e(n);
  e[i] = 1;
  return e;
}

bool ExponentVector::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](std::int64_t x) { return x == 0; });
}

bool ExponentVector::is_nonneg() const {
  return std::all_of(e_.begin(), e_.end(), [](std::int64_t x) { return x >= 0; });
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& o) {
  if (o.size() != size()) throw ShapeError("ExponentVector: length mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = checked_add(e_[i], o.e_[i]);
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& o) {
  if (o.size() != size()) throw ShapeError("ExponentVector: length mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = checked_add(e_[i], -o.e_[i]);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ExponentVector& a) {
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a[i];
  }
  return os << ')';
}

QuantumTorus::QuantumTorus(IntMatrix lambda) : lambda_(std::move(lambda)) {
  if (!lambda_.is_skew_symmetric()) throw ShapeError("QuantumTorus: L must be square and skew-symmetric");
}

std::int64_t QuantumTorus::twist(const ExponentVector& a, const ExponentVector& b) const {
  if (a.size() != rank() || b.size() != rank()) throw ShapeError("QuantumTorus: exponent length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (b[j] == 0 || lambda_(i, j) == 0) continue;
      s = checked_add(s, checked_mul(checked_mul(a[i], b[j]), lambda_(i, j)));
    }
  }
  return s;
}

std::int64_t QuantumTorus::ordering_exponent(const ExponentVector& a) const {
  if (a.size() != rank()) throw ShapeError("QuantumTorus: exponent length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < i; ++j) s = checked_add(s, checked_mul(checked_mul(a[i], a[j]), lambda_(i, j)));
  return s;
}

TorusPtr make_torus(IntMatrix lambda) { return std::make_shared<const QuantumTorus>(std::move(lambda)); }

namespace {

bool same_ambient(const TorusPtr& a, const TorusPtr& b) {
  return a == b || (a && b && a->lambda() == b->lambda());
}

}  // namespace

TorusElement::TorusElement(TorusPtr torus) : torus_(std::move(torus)) {
  if (!torus_) throw ShapeError("TorusElement: null ambient torus");
}

TorusElement TorusElement::one(TorusPtr torus) {
  const std::size_t n = torus->rank();
  return monomial(std::move(torus), ExponentVector(n));
}

TorusElement TorusElement::monomial(TorusPtr torus, ExponentVector a, VPoly coeff) {
  if (a.size() != torus->rank()) throw ShapeError("TorusElement::monomial: exponent length mismatch");
  TorusElement t(std::move(torus));
  if (!coeff.is_zero()) t.terms_.emplace(std::move(a), std::move(coeff));
  return t;
}

TorusElement TorusElement::generator(TorusPtr torus, std::size_t i) {
  const std::size_t n = torus->rank();
  if (i >= n) throw ShapeError("TorusElement::generator: index out of range");
  return monomial(std::move(torus), ExponentVector::unit(n, i));
}

VPoly TorusElement::coeff(const ExponentVector& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? VPoly{} : it->second;
}

void TorusElement::add_term(const ExponentVector& a, const VPoly& c) {
  if (c.is_zero()) return;
  if (a.size() != torus_->rank()) throw ShapeError("TorusElement::add_term: exponent length mismatch");
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TorusElement TorusElement::shifted(std::int64_t shift) const {
  TorusElement out = *this;
  for (auto& [a, c] : out.terms_) c = c.shifted(shift);
  return out;
}

TorusElement TorusElement::scaled(const VPoly& c) const {
  TorusElement out(torus_);
  if (c.is_zero()) return out;
  for (const auto& [a, x] : terms_) out.terms_.emplace_hint(out.terms_.end(), a, x * c);
  return out;
}

TorusElement TorusElement::bar() const {
  TorusElement out = *this;
  for (auto& [a, c] : out.terms_) c = c.bar();
  return out;
}

bool TorusElement::is_nonneg() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_nonneg(); });
}

TorusElement TorusElement::operator-() const {
  TorusElement out = *this;
  for (auto& [a, c] : out.terms_) c = -c;
  return out;
}

void TorusElement::require_same_ambient(const TorusElement& o) const {
  if (!same_ambient(torus_, o.torus_)) throw AmbientMismatch("torus elements live over different L matrices");
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  require_same_ambient(o);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
  require_same_ambient(o);
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
  a.require_same_ambient(b);
  const QuantumTorus& T = *a.torus_;
  TorusElement out(a.torus_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, (ca * cb).shifted(T.twist(ea, eb)));
  return out;
}

bool operator==(const TorusElement& a, const TorusElement& b) {
  return same_ambient(a.torus_, b.torus_) && a.terms_ == b.terms_;
}

std::string TorusElement::pretty() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, c] = *it;
    if (!first) os << " + ";
    first = false;
    if (c == VPoly(1)) {
      os << "X^" << a;
    } else if (c.is_monomial() && c.terms()[0].second == 1) {
      os << format_q_power(c.min_exp()) << "*X^" << a;
    } else {
      os << "(" << c.pretty() << ")*X^" << a;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TorusElement& a) { return os << a.pretty(); }

TorusElement power(const TorusElement& a, std::int64_t n) {
  if (n < 0) throw ShapeError("power: negative exponent");
  TorusElement result = TorusElement::one(a.torus());
  TorusElement base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

namespace {

struct Box {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
};

Box support_box(const TorusElement& x) {
  const std::size_t n = x.torus()->rank();
  Box b{std::vector<std::int64_t>(n, std::numeric_limits<std::int64_t>::max()),
        std::vector<std::int64_t>(n, std::numeric_limits<std::int64_t>::min())};
  for (const auto& [e, c] : x.terms())
    for (std::size_t i = 0; i < n; ++i) {
      b.lo[i] = std::min(b.lo[i], e[i]);
      b.hi[i] = std::max(b.hi[i], e[i]);
    }
  return b;
}

}  // namespace

TorusElement divide_left_exact(const TorusElement& a, const TorusElement& b) {
  if (a.is_zero()) throw DivisionByZero("divide_left_exact: zero divisor");
  if (!same_ambient(a.torus(), b.torus())) throw AmbientMismatch("divide_left_exact: ambient mismatch");
  const QuantumTorus& T = *a.torus();
  TorusElement quotient(a.torus());
  if (b.is_zero()) return quotient;

  // In a domain the coordinate extremes of a product add up, so the quotient's
  // support is confined to this box. Quotient exponents are produced in strictly
  // decreasing lex order, which bounds the loop by the box size.
  const Box ba = support_box(a);
  const Box bb = support_box(b);
  const std::size_t n = T.rank();
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = bb.lo[i] - ba.lo[i];
    hi[i] = bb.hi[i] - ba.hi[i];
    if (lo[i] > hi[i]) throw NotDivisible("divide_left_exact: degree bounds admit no Laurent quotient");
  }

  const auto& [lead_exp, lead_coeff] = a.leading_term();
  TorusElement rem = b;
  while (!rem.is_zero()) {
    const auto& [r_exp, r_coeff] = rem.leading_term();
    ExponentVector c = r_exp - lead_exp;
    for (std::size_t i = 0; i < n; ++i)
      if (c[i] < lo[i] || c[i] > hi[i]) throw NotDivisible("divide_left_exact: remainder leaves the quotient's Newton box");
    std::optional<VPoly> gamma = r_coeff.divide_exact(lead_coeff.shifted(T.twist(lead_exp, c)));
    if (!gamma) throw NotDivisible("divide_left_exact: leading coefficient does not divide");
    TorusElement step = TorusElement::monomial(a.torus(), c, *gamma);
    rem -= a * step;
    quotient.add_term(c, *gamma);
  }
  return quotient;
}

TorusElement divide_right_exact(const TorusElement& a, const TorusElement& b) {
  return divide_left_exact(a.bar(), b.bar()).bar();
}

std::optional<std::int64_t> qcommute(const TorusElement& a, const TorusElement& b) {
  if (a.is_zero() || b.is_zero()) throw DivisionByZero("qcommute: arguments must be nonzero");
  const TorusElement ab = a * b;
  const TorusElement ba = b * a;
  const VPoly& lab = ab.leading_term().second;
  const VPoly& lba = ba.leading_term().second;
  const std::int64_t s = lab.min_exp() - lba.min_exp();
  if (s % 2 != 0) return std::nullopt;
  if (ab != ba.shifted(s)) return std::nullopt;
  return s / 2;
}

}  // namespace qclust
