#include "qclust/coeffs.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "qclust/errors.hpp"

namespace qclust {

namespace {

// Dense accumulation is used when the exponent span is not much larger than
// the number of partial products.
constexpr std::int64_t kDenseSlack = 64;

std::vector<VPoly::Term> merge(const std::vector<VPoly::Term>& a, const std::vector<VPoly::Term>& b,
                               bool negate_b) {
  std::vector<VPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, negate_b ? BigInt(-ib->second) : ib->second);
      ++ib;
    } else {
      BigInt c = negate_b ? BigInt(ia->second - ib->second) : BigInt(ia->second + ib->second);
      if (!c.is_zero()) out.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

VPoly::VPoly(long long c) : VPoly(BigInt(c)) {}

VPoly::VPoly(BigInt c) {
  if (!c.is_zero()) terms_.emplace_back(0, std::move(c));
}

VPoly VPoly::monomial(std::int64_t exp, BigInt coeff) {
  VPoly p;
  if (!coeff.is_zero()) p.terms_.emplace_back(exp, std::move(coeff));
  return p;
}

VPoly VPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  VPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
  return p;
}

VPoly VPoly::shifted(std::int64_t shift) const {
  VPoly p = *this;
  for (auto& t : p.terms_) t.first += shift;
  return p;
}

VPoly VPoly::bar() const {
  VPoly p;
  p.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) p.terms_.emplace_back(-it->first, it->second);
  return p;
}

bool VPoly::is_nonneg() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second > 0; });
}

BigInt VPoly::at_one() const {
  BigInt s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

VPoly VPoly::operator-() const {
  VPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

VPoly& VPoly::operator+=(const VPoly& r) {
  terms_ = merge(terms_, r.terms_, false);
  return *this;
}

VPoly& VPoly::operator-=(const VPoly& r) {
  terms_ = merge(terms_, r.terms_, true);
  return *this;
}

VPoly& VPoly::operator*=(const VPoly& r) {
  *this = *this * r;
  return *this;
}

VPoly operator*(const VPoly& p, const VPoly& r) {
  if (p.is_zero() || r.is_zero()) return {};
  if (p.is_monomial()) {
    VPoly out = r.shifted(p.min_exp());
    for (auto& t : out.terms_) t.second *= p.terms_[0].second;
    return out;
  }
  if (r.is_monomial()) return r * p;

  const std::int64_t lo = p.min_exp() + r.min_exp();
  const std::int64_t hi = p.max_exp() + r.max_exp();
  const auto products = static_cast<std::int64_t>(p.size() * r.size());
  VPoly out;
  if (hi - lo <= 2 * products + kDenseSlack) {
    std::vector<BigInt> dense(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e1, c1] : p.terms_)
      for (const auto& [e2, c2] : r.terms_) dense[static_cast<std::size_t>(e1 + e2 - lo)] += c1 * c2;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (!dense[i].is_zero()) out.terms_.emplace_back(lo + static_cast<std::int64_t>(i), std::move(dense[i]));
    return out;
  }
  std::map<std::int64_t, BigInt> acc;
  for (const auto& [e1, c1] : p.terms_)
    for (const auto& [e2, c2] : r.terms_) acc[e1 + e2] += c1 * c2;
  for (auto& [e, c] : acc)
    if (!c.is_zero()) out.terms_.emplace_back(e, std::move(c));
  return out;
}

std::optional<VPoly> VPoly::divide_exact(const VPoly& d) const {
  if (d.is_zero()) throw DivisionByZero("VPoly::divide_exact: zero divisor");
  if (is_zero()) return VPoly{};
  if (d.is_monomial()) {
    const BigInt& dc = d.terms_[0].second;
    VPoly out;
    out.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
      if (c % dc != 0) return std::nullopt;
      out.terms_.emplace_back(e - d.min_exp(), c / dc);
    }
    return out;
  }
  const std::int64_t q_lo = min_exp() - d.min_exp();
  const std::int64_t q_hi = max_exp() - d.max_exp();
  if (q_lo > q_hi) return std::nullopt;

  const std::int64_t base = min_exp();
  std::vector<BigInt> rem(static_cast<std::size_t>(max_exp() - base + 1));
  for (const auto& [e, c] : terms_) rem[static_cast<std::size_t>(e - base)] = c;

  const BigInt& lead = d.leading_coeff();
  std::vector<Term> quotient;
  for (std::int64_t e = q_hi; e >= q_lo; --e) {
    BigInt& top = rem[static_cast<std::size_t>(e + d.max_exp() - base)];
    if (top.is_zero()) continue;
    if (top % lead != 0) return std::nullopt;
    BigInt c = top / lead;
    for (const auto& [de, dc] : d.terms_) rem[static_cast<std::size_t>(e + de - base)] -= c * dc;
    quotient.emplace_back(e, std::move(c));
  }
  if (std::any_of(rem.begin(), rem.end(), [](const BigInt& c) { return !c.is_zero(); })) return std::nullopt;
  std::reverse(quotient.begin(), quotient.end());
  VPoly out;
  out.terms_ = std::move(quotient);
  return out;
}

std::string format_q_power(std::int64_t v_exp) {
  if (v_exp == 0) return "";
  if (v_exp == 2) return "q";
  std::ostringstream os;
  os << "q^{";
  if (v_exp % 2 == 0) {
    os << v_exp / 2;
  } else {
    os << v_exp << "/2";
  }
  os << "}";
  return os.str();
}

std::string VPoly::pretty() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest power first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const std::string qp = format_q_power(e);
    if (qp.empty()) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << qp;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const VPoly& p) { return os << p.pretty(); }

}  // namespace qclust
