#pragma once

// Generators and independent oracles shared by the test binaries.
//
// The classical oracle works at v = 1 with rational numbers: cluster
// variables become values at a random point, mutation is the commutative
// exchange relation, and B mutates by the entrywise rule written out here
// rather than taken from the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qclust/seed.hpp"
#include "qclust/torus.hpp"

namespace qtest {

using qclust::BigInt;
using Rational = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline qclust::VPoly random_vpoly(std::mt19937_64& rng, int max_terms = 3, std::int64_t span = 4,
                                  std::int64_t max_coeff = 5) {
  std::vector<qclust::VPoly::Term> terms;
  const int n = static_cast<int>(uniform(rng, 1, max_terms));
  for (int i = 0; i < n; ++i) {
    std::int64_t c = uniform(rng, -max_coeff, max_coeff);
    if (c == 0) c = 1;
    terms.emplace_back(uniform(rng, -span, span), BigInt(c));
  }
  qclust::VPoly p = qclust::VPoly::from_terms(std::move(terms));
  return p.is_zero() ? qclust::VPoly(1) : p;
}

inline qclust::IntMatrix random_skew(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  qclust::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = uniform(rng, -bound, bound);
      m(j, i) = -m(i, j);
    }
  return m;
}

inline qclust::ExponentVector random_exponent(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  qclust::ExponentVector a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = uniform(rng, -bound, bound);
  return a;
}

inline qclust::TorusElement random_element(std::mt19937_64& rng, const qclust::TorusPtr& t, int max_terms = 4,
                                           std::int64_t bound = 3) {
  qclust::TorusElement x(t);
  while (x.is_zero()) {
    const int n = static_cast<int>(uniform(rng, 1, max_terms));
    for (int i = 0; i < n; ++i) x.add_term(random_exponent(rng, t->rank(), bound), random_vpoly(rng));
  }
  return x;
}

// --- classical oracle -------------------------------------------------------

struct ClassicalSeed {
  Matrix B;                       // n x n_ex, columns follow ex
  std::vector<std::size_t> ex;    // positions owning the columns
  std::vector<Rational> x;        // values at the sample point
};

inline ClassicalSeed classical_from(const qclust::QuantumSeed& s, const std::vector<Rational>& point) {
  ClassicalSeed c;
  c.B = s.B().to_rows();
  c.ex = s.indices().ex_positions();
  c.x = point;
  return c;
}

inline Rational rpow(const Rational& a, std::int64_t e) {
  Rational r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= a;
  return r;
}

inline ClassicalSeed classical_mutate(const ClassicalSeed& s, std::size_t k) {
  const std::size_t kc = static_cast<std::size_t>(std::find(s.ex.begin(), s.ex.end(), k) - s.ex.begin());
  ClassicalSeed out = s;
  Rational pos = 1, neg = 1;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const std::int64_t b = s.B[i][kc];
    if (b > 0) pos *= rpow(s.x[i], b);
    if (b < 0) neg *= rpow(s.x[i], -b);
  }
  out.x[k] = (pos + neg) / s.x[k];
  for (std::size_t i = 0; i < s.B.size(); ++i)
    for (std::size_t j = 0; j < s.ex.size(); ++j) {
      if (i == k || j == kc) {
        out.B[i][j] = -s.B[i][j];
      } else {
        const std::int64_t bik = s.B[i][kc], bkj = s.B[k][j];
        out.B[i][j] = s.B[i][j] + (bik > 0 && bkj > 0 ? bik * bkj : 0) - (bik < 0 && bkj < 0 ? bik * bkj : 0);
      }
    }
  return out;
}

inline std::vector<Rational> sample_point(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) p.emplace_back(uniform(rng, 2, 97), uniform(rng, 2, 97));
  return p;
}

/// A torus element at v = 1 evaluated at a point.
inline Rational evaluate(const qclust::TorusElement& x, const std::vector<Rational>& point) {
  Rational sum = 0;
  for (const auto& [a, c] : x.terms()) {
    Rational term(c.at_one());
    for (std::size_t i = 0; i < a.size(); ++i) term *= a[i] >= 0 ? rpow(point[i], a[i]) : 1 / rpow(point[i], -a[i]);
    sum += term;
  }
  return sum;
}

/// Number of distinct variable values over every seed reachable in at most
/// `depth` classical mutations.
inline std::size_t classical_variable_count(const ClassicalSeed& root, std::size_t depth) {
  std::set<Rational> values(root.x.begin(), root.x.end());
  std::set<std::vector<Rational>> seen{root.x};
  std::vector<ClassicalSeed> level{root};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<ClassicalSeed> next;
    for (const auto& s : level)
      for (auto k : s.ex) {
        ClassicalSeed t = classical_mutate(s, k);
        if (!seen.insert(t.x).second) continue;
        values.insert(t.x[k]);
        next.push_back(std::move(t));
      }
    level = std::move(next);
  }
  return values.size();
}

/// Smallest t <= bound with the cluster back at its start after applying `seq`
/// cyclically; with `fold`, equality up to a permutation of exchangeable slots.
inline std::size_t classical_period(ClassicalSeed s, const std::vector<std::size_t>& seq, std::size_t bound,
                                    bool fold) {
  const ClassicalSeed start = s;
  for (std::size_t t = 1; t <= bound; ++t) {
    s = classical_mutate(s, seq[(t - 1) % seq.size()]);
    if (!fold) {
      if (s.x == start.x && s.B == start.B) return t;
      continue;
    }
    std::vector<Rational> a = s.x, b = start.x;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) return t;
  }
  return 0;
}

}  // namespace qtest
