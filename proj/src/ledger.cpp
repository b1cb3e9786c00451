#include "qclust/ledger.hpp"

#include <algorithm>
#include <sstream>

#include "linalg.hpp"
#include "qclust/errors.hpp"

namespace qclust {

namespace {

std::int64_t half(std::int64_t x, const char* what) {
  if (x % 2 != 0) throw NonIntegral(std::string(what) + " is not an integer (odd numerator " + std::to_string(x) + ")");
  return x / 2;
}

Weight weighted_sum(const WeightData& w, const ExponentVector& c) {
  Weight mu(w.lattice.rank(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t s = 0; s < mu.size(); ++s) mu[s] = checked_add(mu[s], checked_mul(c[i], w.D[i][s]));
  return mu;
}

std::string label_pair(const IndexSet& idx, std::size_t i, std::size_t j) {
  return "(" + std::to_string(idx.label(i)) + "," + std::to_string(idx.label(j)) + ")";
}

// Lambda(M_j, M'_k) and Lambda(M'_k, M_j) from the exact sequences.
std::pair<std::int64_t, std::int64_t> lambda_with_new(const MonoidalLedger& l, std::size_t j, std::size_t k) {
  const std::size_t kc = l.indices.column(k);
  std::int64_t left = -l.Lambda(j, k);
  std::int64_t right = -l.Lambda(k, j);
  for (std::size_t i = 0; i < l.indices.size(); ++i) {
    const std::int64_t b = l.B(i, kc);
    if (b < 0) left = checked_add(left, -checked_mul(l.Lambda(j, i), b));
    if (b > 0) right = checked_add(right, checked_mul(l.Lambda(i, j), b));
  }
  return {left, right};
}

void validate_or_throw(const MonoidalLedger& ledger, const LedgerOptions& opts, const char* stage) {
  const MonoidalReport rep = check_monoidal(ledger, opts);
  if (rep.ok()) return;
  std::ostringstream os;
  os << stage << ": ledger fails the monoidal seed conditions:";
  for (const auto& v : rep.violations) os << "\n  " << v.message;
  throw LedgerInvalid(os.str());
}

}  // namespace

std::int64_t GramLattice::pair(const Weight& a, const Weight& b) const {
  if (a.size() != rank() || b.size() != rank()) throw ShapeError("GramLattice::pair: weight length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) s = checked_add(s, checked_mul(checked_mul(a[i], G(i, j)), b[j]));
  return s;
}

bool WeightData::all_zero() const {
  return std::all_of(D.begin(), D.end(),
                     [](const Weight& w) { return std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; }); });
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::Shape: return "shape";
    case Condition::GramNotSymmetric: return "gram-not-symmetric";
    case Condition::GramOddDiagonal: return "gram-odd-diagonal";
    case Condition::LambdaNotSkew: return "lambda-not-skew";
    case Condition::PrincipalNotSkew: return "principal-not-skew";
    case Condition::Compatibility: return "compatibility";
    case Condition::Parity: return "parity";
    case Condition::WeightBalance: return "weight-balance";
  }
  return "unknown";
}

bool MonoidalReport::has(Condition c) const {
  return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.condition == c; });
}

MonoidalReport check_monoidal(const MonoidalLedger& ledger, const LedgerOptions& opts) {
  MonoidalReport rep;
  const IndexSet& idx = ledger.indices;
  const std::size_t n = idx.size();
  const std::size_t m = idx.num_exchangeable();
  const GramLattice& lat = ledger.weights.lattice;
  auto add = [&](Condition c, std::optional<std::size_t> i, std::optional<std::size_t> j, std::string msg) {
    Violation v{c, std::nullopt, std::nullopt, to_string(c) + ": " + std::move(msg)};
    if (i) v.i = idx.label(*i);
    if (j) v.j = idx.label(*j);
    rep.violations.push_back(std::move(v));
  };

  bool shapes_ok = ledger.Lambda.rows() == n && ledger.Lambda.cols() == n && ledger.B.rows() == n &&
                   ledger.B.cols() == m && lat.G.is_square() && ledger.weights.D.size() == n;
  if (shapes_ok)
    for (const auto& w : ledger.weights.D) shapes_ok = shapes_ok && w.size() == lat.rank();
  if (!shapes_ok) {
    add(Condition::Shape, std::nullopt, std::nullopt,
        "expected Lambda |K|x|K|, B |K|x|K_ex|, square gram and one weight of lattice rank per index");
    return rep;
  }

  if (!lat.G.is_symmetric()) add(Condition::GramNotSymmetric, std::nullopt, std::nullopt, "gram matrix is not symmetric");
  for (std::size_t s = 0; s < lat.rank(); ++s)
    if (lat.G(s, s) % 2 != 0)
      add(Condition::GramOddDiagonal, std::nullopt, std::nullopt,
          "gram diagonal entry " + std::to_string(s) + " is odd, so (beta,beta) is not always even");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (ledger.Lambda(i, j) != -ledger.Lambda(j, i))
        add(Condition::LambdaNotSkew, i, j, "Lambda" + label_pair(idx, i, j) + " != -Lambda" + label_pair(idx, j, i));

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      if (ledger.B(idx.ex_position(a), b) != -ledger.B(idx.ex_position(b), a))
        add(Condition::PrincipalNotSkew, idx.ex_position(a), idx.ex_position(b),
            "principal part of B is not skew-symmetric at " + label_pair(idx, idx.ex_position(a), idx.ex_position(b)));

  // (L, B) with L = -Lambda, i.e. -sum_i Lambda_ji b_ik = d delta_jk.
  const IntMatrix LB = ledger.L() * ledger.B;
  std::optional<std::int64_t> d = LB(idx.ex_position(0), 0);
  if (!opts.allow_any_d && *d != 2) d = 2;
  bool compatible = *d > 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < m; ++c) {
      const bool diagonal = idx.ex_position(c) == j;
      const std::int64_t expected = diagonal ? *d : 0;
      if (LB(j, c) != expected || (diagonal && expected <= 0)) {
        compatible = false;
        add(Condition::Compatibility, j, idx.ex_position(c),
            "-sum_i Lambda_ji b_ik = " + std::to_string(LB(j, c)) + " at (j,k)=" +
                label_pair(idx, j, idx.ex_position(c)) + ", expected " + std::to_string(expected));
      }
    }
  if (compatible) rep.d = d;

  if (!ledger.weights.all_zero()) {
    // Lambda_ij = (d_i, d_j) mod 2. Since -Lambda = Lambda mod 2 this is also
    // the requirement l_ij - (d_i, d_j) in 2Z on L = -Lambda.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::int64_t p = lat.pair(ledger.weights.D[i], ledger.weights.D[j]);
        if ((ledger.Lambda(i, j) - p) % 2 != 0)
          add(Condition::Parity, i, j,
              "Lambda" + label_pair(idx, i, j) + " = " + std::to_string(ledger.Lambda(i, j)) +
                  " has different parity from (d_i,d_j) = " + std::to_string(p));
      }
    for (std::size_t c = 0; c < m; ++c) {
      Weight s(lat.rank(), 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < lat.rank(); ++t)
          s[t] = checked_add(s[t], checked_mul(ledger.B(i, c), ledger.weights.D[i][t]));
      if (std::any_of(s.begin(), s.end(), [](auto x) { return x != 0; }))
        add(Condition::WeightBalance, idx.ex_position(c), std::nullopt,
            "sum_i b_ik d_i != 0 for k=" + std::to_string(idx.label(idx.ex_position(c))));
    }
  }
  return rep;
}

PairingStats pairing_stats(const MonoidalLedger& ledger, std::size_t i, std::size_t j) {
  const std::size_t n = ledger.indices.size();
  if (i >= n || j >= n) throw ShapeError("pairing_stats: index out of range");
  const auto& D = ledger.weights.D;
  PairingStats s;
  s.lambda = ledger.Lambda(i, j);
  s.tilde_lambda = half(checked_add(s.lambda, ledger.weights.lattice.pair(D[i], D[j])), "tilde Lambda");
  s.delta = half(checked_add(s.lambda, ledger.Lambda(j, i)), "delta");
  return s;
}

WeightData mutate_D(const WeightData& w, const IndexSet& idx, const IntMatrix& B, std::size_t k) {
  require_exchangeable(idx, k);
  const std::size_t kc = idx.column(k);
  WeightData out = w;
  Weight& z = out.D[k];
  for (auto& x : z) x = -x;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::int64_t b = B(i, kc);
    if (b <= 0) continue;
    for (std::size_t s = 0; s < z.size(); ++s) z[s] = checked_add(z[s], checked_mul(b, w.D[i][s]));
  }
  return out;
}

GradingShifts grading_shifts(const MonoidalLedger& ledger, std::size_t k) {
  const IndexSet& idx = ledger.indices;
  require_exchangeable(idx, k);
  const std::size_t kc = idx.column(k);
  const Weight zeta = mutate_D(ledger.weights, idx, ledger.B, k).D[k];
  const std::int64_t dz = ledger.weights.lattice.pair(ledger.weights.D[k], zeta);
  std::int64_t neg = 0;
  std::int64_t pos = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const std::int64_t b = ledger.B(i, kc);
    const std::int64_t term = checked_mul(-ledger.Lambda(k, i), b);  // l_ki b_ik with l = -Lambda
    if (b < 0) neg = checked_add(neg, term);
    if (b > 0) pos = checked_add(pos, term);
  }
  return {half(checked_add(dz, neg), "m_k"), half(checked_add(dz, pos), "m'_k")};
}

LedgerMutation mutate_ledger(const MonoidalLedger& ledger, std::size_t k, const LedgerOptions& opts) {
  require_exchangeable(ledger.indices, k);
  validate_or_throw(ledger, opts, "mutate_ledger");
  const IndexSet& idx = ledger.indices;
  const std::size_t n = idx.size();

  LedgerMutationReport rep;
  rep.k = k;
  rep.shifts = grading_shifts(ledger, k);

  MonoidalLedger out{idx, ledger.Lambda, mutate_B(idx, ledger.B, k), mutate_D(ledger.weights, idx, ledger.B, k)};
  rep.zeta = out.weights.D[k];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    const auto [left, right] = lambda_with_new(ledger, j, k);
    out.Lambda(j, k) = left;
    out.Lambda(k, j) = right;
  }
  out.Lambda(k, k) = 0;

  const auto [kk_left, kk_right] = lambda_with_new(ledger, k, k);
  rep.lambda_k_kprime = kk_left;
  rep.lambda_kprime_k = kk_right;
  rep.delta = half(checked_add(kk_left, kk_right), "delta(M_k, M'_k)");
  if (rep.delta != 1)
    throw SimplyLinkedViolation("mutate_ledger: delta(M_k, M'_k) = " + std::to_string(rep.delta) + ", expected 1");
  rep.tilde_lambda = half(checked_add(kk_left, ledger.weights.lattice.pair(ledger.weights.D[k], rep.zeta)),
                          "tilde Lambda(M_k, M'_k)");
  if (rep.tilde_lambda != rep.shifts.m)
    throw CrossCheckMismatch("mutate_ledger: tilde Lambda(M_k, M'_k) = " + std::to_string(rep.tilde_lambda) +
                             " but m_k = " + std::to_string(rep.shifts.m));

  rep.cross_check = out.L() == mutate_L(idx, ledger.L(), ledger.B, k);
  if (!rep.cross_check) throw CrossCheckMismatch("mutate_ledger: mutated Lambda disagrees with E^T L E for L = -Lambda");

  validate_or_throw(out, opts, "mutate_ledger (result)");
  return {std::move(out), std::move(rep)};
}

std::int64_t lambda_of_monomials(const MonoidalLedger& ledger, const ExponentVector& c, const ExponentVector& c2) {
  const std::size_t n = ledger.indices.size();
  if (c.size() != n || c2.size() != n) throw ShapeError("lambda_of_monomials: exponent length mismatch");
  if (!c.is_nonneg() || !c2.is_nonneg()) throw ShapeError("lambda_of_monomials: exponents must be nonnegative");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s = checked_add(s, checked_mul(checked_mul(c[i], c2[j]), ledger.Lambda(i, j)));
  return s;
}

CompatiblePair ledger_pair(const MonoidalLedger& ledger) {
  return CompatiblePair::make(ledger.indices, ledger.L(), ledger.B);
}

DecatReport decat_verify(const MonoidalLedger& ledger, std::size_t k) {
  return decat_verify(ledger, k, grading_shifts(ledger, k));
}

DecatReport decat_verify(const MonoidalLedger& ledger, std::size_t k, const GradingShifts& shifts) {
  const IndexSet& idx = ledger.indices;
  require_exchangeable(idx, k);
  const std::size_t n = idx.size();
  const std::size_t kc = idx.column(k);
  const GramLattice& lat = ledger.weights.lattice;
  const auto& D = ledger.weights.D;
  TorusPtr T = make_torus(ledger.L());

  // [M_i] = q^{(d_i,d_i)/4} X_i and [odot M_i^{a_i}] = q^{(mu,mu)/4} X^a; in v units
  // the quarter powers become halves of even numbers.
  const Weight zeta = mutate_D(ledger.weights, idx, ledger.B, k).D[k];
  const std::int64_t zz = half(lat.pair(zeta, zeta), "(zeta,zeta)/2");
  const std::int64_t dd = half(lat.pair(D[k], D[k]), "(d_k,d_k)/2");

  const auto [a1, a2] = exchange_vectors(idx, ledger.B, k);
  const TorusElement xk = TorusElement::generator(T, k);
  const TorusElement xk_new = TorusElement::monomial(T, a1) + TorusElement::monomial(T, a2);

  ExponentVector bpos(n), bneg(n);
  for (std::size_t i = 0; i < n; ++i) {
    bpos[i] = std::max<std::int64_t>(0, ledger.B(i, kc));
    bneg[i] = std::max<std::int64_t>(0, -ledger.B(i, kc));
  }
  auto product_class = [&](const ExponentVector& a) {
    const Weight mu = weighted_sum(ledger.weights, a);
    return TorusElement::monomial(T, a).shifted(half(lat.pair(mu, mu), "(mu,mu)/2"));
  };
  const TorusElement ppos = product_class(bpos);
  const TorusElement pneg = product_class(bneg);

  const TorusElement lhs1 = (xk * xk_new).shifted(2 * shifts.m + dd + zz);
  const TorusElement rhs1 = ppos.shifted(2) + pneg;
  const TorusElement lhs2 = (xk_new * xk).shifted(2 * shifts.m_prime + zz + dd);
  const TorusElement rhs2 = ppos + pneg.shifted(2);

  DecatReport rep;
  rep.shifts = shifts;
  rep.shift_gap = 1;  // q^1 on the b > 0 product against q^0 on the b < 0 product
  const auto [kk_left, kk_right] = lambda_with_new(ledger, k, k);
  rep.gap_matches_delta = (kk_left + kk_right) == 2 * rep.shift_gap;

  auto witness = [](const TorusElement& lhs, const TorusElement& rhs) {
    const TorusElement diff = lhs - rhs;
    std::ostringstream os;
    const auto& [e, c] = diff.leading_term();
    os << "at X^" << e << ": lhs coefficient " << lhs.coeff(e) << ", rhs coefficient " << rhs.coeff(e);
    return os.str();
  };
  if (lhs1 != rhs1) {
    rep.failed_identity = 1;
    rep.witness = witness(lhs1, rhs1);
  } else if (lhs2 != rhs2) {
    rep.failed_identity = 2;
    rep.witness = witness(lhs2, rhs2);
  }
  rep.passed = rep.failed_identity == 0;
  return rep;
}

MonoidalLedger random_monoidal_ledger(std::mt19937_64& rng, const RandomLedgerOptions& opts) {
  RandomPairOptions po = opts.pair;
  po.target_d = 1;
  CompatiblePair pair = random_compatible_pair(rng, po);
  const std::size_t n = pair.indices.size();
  const std::size_t m = pair.indices.num_exchangeable();

  std::uniform_int_distribution<std::size_t> rank_dist(1, std::max<std::size_t>(1, opts.max_lattice_rank));
  const std::size_t r = rank_dist(rng);
  std::uniform_int_distribution<int> small(-1, 1);
  std::uniform_int_distribution<int> diag(1, 2);
  IntMatrix G(r, r);
  for (std::size_t a = 0; a < r; ++a) {
    G(a, a) = 2 * diag(rng);
    for (std::size_t b = a + 1; b < r; ++b) G(a, b) = G(b, a) = 2 * small(rng);
  }

  // Weights must satisfy sum_i b_ik d_i = 0: each lattice coordinate is drawn
  // from the left kernel of B.
  std::vector<linalg::Row> bt(m, linalg::Row(n, 0));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t i = 0; i < n; ++i) bt[c][i] = pair.B(i, c);
  const auto kernel = linalg::kernel_basis(bt, n);
  std::vector<Weight> D(n, Weight(r, 0));
  std::uniform_int_distribution<int> coef(-1, 1);
  for (std::size_t s = 0; s < r; ++s)
    for (const auto& v : kernel) {
      const int c = coef(rng);
      for (std::size_t i = 0; i < n; ++i) D[i][s] += c * static_cast<std::int64_t>(v[i]);
    }

  IntMatrix lambda = -pair.L;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lambda(i, j) *= 2;
  return MonoidalLedger{pair.indices, std::move(lambda), pair.B, WeightData{GramLattice{std::move(G)}, std::move(D)}};
}

}  // namespace qclust
