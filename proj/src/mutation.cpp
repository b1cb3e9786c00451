#include "qclust/mutation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "linalg.hpp"
#include "qclust/errors.hpp"

namespace qclust {

IndexSet IndexSet::from_labels(std::vector<Label> ex, std::vector<Label> fr) {
  if (ex.empty()) throw ShapeError("IndexSet: no exchangeable indices");
  std::set<Label> ex_set(ex.begin(), ex.end());
  std::set<Label> fr_set(fr.begin(), fr.end());
  if (ex_set.size() != ex.size() || fr_set.size() != fr.size()) throw ShapeError("IndexSet: duplicate label");
  for (Label l : fr_set)
    if (ex_set.count(l)) throw ShapeError("IndexSet: label " + std::to_string(l) + " is both exchangeable and frozen");

  IndexSet idx;
  std::set<Label> all(ex_set);
  all.insert(fr_set.begin(), fr_set.end());
  idx.labels_.assign(all.begin(), all.end());
  idx.column_.resize(idx.labels_.size());
  for (std::size_t pos = 0; pos < idx.labels_.size(); ++pos) {
    if (ex_set.count(idx.labels_[pos])) {
      idx.column_[pos] = idx.ex_positions_.size();
      idx.ex_positions_.push_back(pos);
    }
  }
  return idx;
}

IndexSet IndexSet::standard(std::size_t n, std::size_t num_ex) {
  std::vector<Label> ex, fr;
  for (std::size_t i = 1; i <= n; ++i) (i <= num_ex ? ex : fr).push_back(static_cast<Label>(i));
  return from_labels(std::move(ex), std::move(fr));
}

std::optional<std::size_t> IndexSet::position(Label label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t IndexSet::column(std::size_t pos) const {
  const auto& c = column_.at(pos);
  if (!c) throw NotExchangeable("index " + std::to_string(labels_[pos]) + " is frozen");
  return *c;
}

std::vector<Label> IndexSet::ex_labels() const {
  std::vector<Label> out;
  for (auto p : ex_positions_) out.push_back(labels_[p]);
  return out;
}

std::vector<Label> IndexSet::fr_labels() const {
  std::vector<Label> out;
  for (std::size_t p = 0; p < labels_.size(); ++p)
    if (!column_[p]) out.push_back(labels_[p]);
  return out;
}

void require_exchangeable(const IndexSet& idx, std::size_t k) {
  if (k >= idx.size()) throw NotExchangeable("direction " + std::to_string(k) + " out of range");
  if (!idx.is_exchangeable(k)) throw NotExchangeable("index " + std::to_string(idx.label(k)) + " is frozen");
}

namespace {

void check_shapes(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B) {
  const std::size_t n = idx.size();
  const std::size_t m = idx.num_exchangeable();
  if (L.rows() != n || L.cols() != n) throw ShapeError("L must be |K| x |K|");
  if (B.rows() != n || B.cols() != m) throw ShapeError("B must be |K| x |K_ex|");
  if (!L.is_skew_symmetric()) throw ShapeError("L is not skew-symmetric");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (B(idx.ex_position(a), b) != -B(idx.ex_position(b), a))
        throw ShapeError("principal part of B is not skew-symmetric");
}

void check_B_shape(const IndexSet& idx, const IntMatrix& B) {
  if (B.rows() != idx.size() || B.cols() != idx.num_exchangeable()) throw ShapeError("B must be |K| x |K_ex|");
}

}  // namespace

std::int64_t check_compatible(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B) {
  check_shapes(idx, L, B);
  const IntMatrix LB = L * B;
  const std::size_t first = idx.ex_position(0);
  const std::int64_t d = LB(first, 0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.num_exchangeable(); ++j) {
      const std::int64_t expected = idx.ex_position(j) == i ? d : 0;
      if (LB(i, j) != expected || (expected == d && d <= 0)) {
        std::ostringstream os;
        os << "not compatible at (" << idx.label(i) << "," << idx.label(idx.ex_position(j))
           << "): sum_k l_ik b_kj = " << LB(i, j);
        if (d <= 0) os << " (no positive d)";
        throw NotCompatible(os.str(), i, j);
      }
    }
  }
  return d;
}

CompatiblePair CompatiblePair::make(IndexSet indices, IntMatrix L, IntMatrix B) {
  const std::int64_t d = check_compatible(indices, L, B);
  return CompatiblePair{std::move(indices), std::move(L), std::move(B), d};
}

EFMatrices ef_matrices(const IndexSet& idx, const IntMatrix& B, std::size_t k) {
  require_exchangeable(idx, k);
  check_B_shape(idx, B);
  const std::size_t n = idx.size();
  const std::size_t m = idx.num_exchangeable();
  const std::size_t kc = idx.column(k);

  IntMatrix E = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) E(i, k) = i == k ? -1 : std::max<std::int64_t>(0, -B(i, kc));

  IntMatrix F = IntMatrix::identity(m);
  for (std::size_t j = 0; j < m; ++j) F(kc, j) = j == kc ? -1 : std::max<std::int64_t>(0, B(k, j));
  return {std::move(E), std::move(F)};
}

IntMatrix mutate_B_product(const IndexSet& idx, const IntMatrix& B, std::size_t k) {
  const auto [E, F] = ef_matrices(idx, B, k);
  return E * B * F;
}

IntMatrix mutate_B_direct(const IndexSet& idx, const IntMatrix& B, std::size_t k) {
  require_exchangeable(idx, k);
  check_B_shape(idx, B);
  const std::size_t kc = idx.column(k);
  IntMatrix out(B.rows(), B.cols());
  for (std::size_t i = 0; i < B.rows(); ++i) {
    for (std::size_t j = 0; j < B.cols(); ++j) {
      if (i == k || j == kc) {
        out(i, j) = -B(i, j);
        continue;
      }
      const std::int64_t bik = B(i, kc);
      const std::int64_t prod = std::max<std::int64_t>(checked_mul(bik, B(k, j)), 0);
      out(i, j) = checked_add(B(i, j), bik < 0 ? -prod : prod);
    }
  }
  return out;
}

IntMatrix mutate_B(const IndexSet& idx, const IntMatrix& B, std::size_t k) {
  IntMatrix a = mutate_B_product(idx, B, k);
  if (a != mutate_B_direct(idx, B, k)) throw InternalMismatch("mutate_B: E B F disagrees with the case formula");
  return a;
}

IntMatrix mutate_L_product(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B, std::size_t k) {
  const auto ef = ef_matrices(idx, B, k);
  if (L.rows() != idx.size() || L.cols() != idx.size()) throw ShapeError("L must be |K| x |K|");
  return ef.E.transposed() * L * ef.E;
}

IntMatrix mutate_L_direct(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B, std::size_t k) {
  require_exchangeable(idx, k);
  check_B_shape(idx, B);
  if (L.rows() != idx.size() || L.cols() != idx.size()) throw ShapeError("L must be |K| x |K|");
  const std::size_t n = idx.size();
  const std::size_t kc = idx.column(k);
  auto neg_part = [&](std::size_t t) { return std::max<std::int64_t>(0, -B(t, kc)); };

  IntMatrix out = L;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    std::int64_t row = -L(k, j);
    std::int64_t col = -L(j, k);
    for (std::size_t t = 0; t < n; ++t) {
      row = checked_add(row, checked_mul(neg_part(t), L(t, j)));
      col = checked_add(col, checked_mul(neg_part(t), L(j, t)));
    }
    out(k, j) = row;
    out(j, k) = col;
  }
  out(k, k) = 0;
  return out;
}

IntMatrix mutate_L(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B, std::size_t k) {
  IntMatrix a = mutate_L_product(idx, L, B, k);
  if (a != mutate_L_direct(idx, L, B, k)) throw InternalMismatch("mutate_L: E^T L E disagrees with the case formula");
  return a;
}

CompatiblePair mutate_pair(const CompatiblePair& p, std::size_t k) {
  CompatiblePair out{p.indices, mutate_L(p.indices, p.L, p.B, k), mutate_B(p.indices, p.B, k), 0};
  out.d = check_compatible(out.indices, out.L, out.B);
  if (out.d != p.d) throw InternalMismatch("mutate_pair: compatibility degree changed under mutation");
  return out;
}

CompatiblePair random_compatible_pair(std::mt19937_64& rng, const RandomPairOptions& opts) {
  using linalg::Row;
  std::uniform_int_distribution<std::size_t> rank_dist(opts.min_rank, opts.max_rank);
  std::uniform_int_distribution<std::int64_t> entry(-opts.max_entry, opts.max_entry);
  std::uniform_int_distribution<int> coef(-2, 2);

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const std::size_t n = rank_dist(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, n)(rng);

    std::vector<Label> perm(n);
    std::iota(perm.begin(), perm.end(), Label{1});
    std::shuffle(perm.begin(), perm.end(), rng);
    IndexSet idx = IndexSet::from_labels({perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m)},
                                         {perm.begin() + static_cast<std::ptrdiff_t>(m), perm.end()});

    IntMatrix B(n, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const std::int64_t r = entry(rng);
        B(idx.ex_position(a), b) = r;
        B(idx.ex_position(b), a) = -r;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (!idx.is_exchangeable(i))
        for (std::size_t j = 0; j < m; ++j) B(i, j) = entry(rng);

    // Unknowns: l_ij for i < j, then d. One equation per (i, column j).
    std::vector<std::pair<std::size_t, std::size_t>> var;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) var.emplace_back(i, j);
    const std::size_t nv = var.size() + 1;
    std::vector<Row> eqs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Row r(nv, 0);
        for (std::size_t v = 0; v < var.size(); ++v) {
          const auto [a, b] = var[v];
          if (a == i) r[v] += B(b, j);   // l_ib with b > i
          if (b == i) r[v] -= B(a, j);   // l_ia = -l_ai with a < i
        }
        if (idx.ex_position(j) == i) r[nv - 1] = -1;
        eqs.push_back(std::move(r));
      }
    const auto basis = linalg::kernel_basis(eqs, nv);
    if (basis.empty()) continue;

    for (int tries = 0; tries < 8; ++tries) {
      Row x(nv, 0);
      for (const auto& b : basis) {
        const int c = coef(rng);
        for (std::size_t v = 0; v < nv; ++v) x[v] += c * b[v];
      }
      if (x[nv - 1] == 0) continue;
      if (x[nv - 1] < 0)
        for (auto& e : x) e = -e;
      x = linalg::primitive(std::move(x));
      BigInt d = x[nv - 1];
      if (opts.target_d > 0) {
        if (opts.target_d % d != 0) break;
        const BigInt scale = opts.target_d / d;
        for (auto& e : x) e *= scale;
      }
      bool fits = true;
      for (const auto& e : x) fits = fits && boost::multiprecision::abs(e) < 1000;
      if (!fits) continue;

      IntMatrix L(n, n);
      for (std::size_t v = 0; v < var.size(); ++v) {
        const auto [a, b] = var[v];
        L(a, b) = static_cast<std::int64_t>(x[v]);
        L(b, a) = -L(a, b);
      }
      return CompatiblePair::make(std::move(idx), std::move(L), std::move(B));
    }
  }
  throw Error("random_compatible_pair: attempt budget exhausted");
}

}  // namespace qclust
