#pragma once

// Compatible pairs (L, B) and their mutation.
//
// Every mutation is computed twice: once as the matrix products E^T L E and
// E B F, once by the entrywise case formulas. The public mutate_* functions
// throw InternalMismatch if the routes disagree.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qclust/matrix.hpp"

namespace qclust {

using Label = std::int64_t;

/// K = K_ex (disjoint union) K_fr. Positions follow ascending label order;
/// columns of B follow ascending exchangeable labels.
class IndexSet {
 public:
  IndexSet() = default;
  static IndexSet from_labels(std::vector<Label> ex, std::vector<Label> fr);
  /// Labels 1..n with the first `num_ex` exchangeable.
  static IndexSet standard(std::size_t n, std::size_t num_ex);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t num_exchangeable() const noexcept { return ex_positions_.size(); }

  Label label(std::size_t pos) const { return labels_.at(pos); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> position(Label label) const;

  bool is_exchangeable(std::size_t pos) const { return column_.at(pos).has_value(); }
  /// Column of B belonging to an exchangeable position.
  std::size_t column(std::size_t pos) const;
  /// Position of the exchangeable index owning column `col`.
  std::size_t ex_position(std::size_t col) const { return ex_positions_.at(col); }
  const std::vector<std::size_t>& ex_positions() const noexcept { return ex_positions_; }

  std::vector<Label> ex_labels() const;
  std::vector<Label> fr_labels() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Label> labels_;
  std::vector<std::optional<std::size_t>> column_;
  std::vector<std::size_t> ex_positions_;
};

/// Returns d > 0 with sum_t l_it b_tj = delta_ij d. Throws ShapeError on bad
/// shapes or non-skew inputs and NotCompatible at the first violating entry.
std::int64_t check_compatible(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B);

struct CompatiblePair {
  IndexSet indices;
  IntMatrix L;
  IntMatrix B;
  std::int64_t d = 0;

  /// Validates and records d.
  static CompatiblePair make(IndexSet indices, IntMatrix L, IntMatrix B);

  friend bool operator==(const CompatiblePair&, const CompatiblePair&) = default;
};

struct EFMatrices {
  IntMatrix E;  // K x K
  IntMatrix F;  // K_ex x K_ex
};

/// E and F for direction k (a position in K, which must be exchangeable).
EFMatrices ef_matrices(const IndexSet& idx, const IntMatrix& B, std::size_t k);

IntMatrix mutate_B_product(const IndexSet& idx, const IntMatrix& B, std::size_t k);
IntMatrix mutate_B_direct(const IndexSet& idx, const IntMatrix& B, std::size_t k);
IntMatrix mutate_B(const IndexSet& idx, const IntMatrix& B, std::size_t k);

IntMatrix mutate_L_product(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B, std::size_t k);
IntMatrix mutate_L_direct(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B, std::size_t k);
IntMatrix mutate_L(const IndexSet& idx, const IntMatrix& L, const IntMatrix& B, std::size_t k);

/// mu_k of the pair. d is recomputed and must match the input's d.
CompatiblePair mutate_pair(const CompatiblePair& p, std::size_t k);

/// Throws NotExchangeable unless k is an exchangeable position of idx.
void require_exchangeable(const IndexSet& idx, std::size_t k);

struct RandomPairOptions {
  std::size_t min_rank = 2;
  std::size_t max_rank = 6;
  std::int64_t max_entry = 2;  // bound on |b_ij| when sampling B
  std::int64_t target_d = 2;   // 0 accepts any primitive solution
  int max_attempts = 10000;
};

/// Samples B (skew principal part, random frozen rows), then solves the
/// compatibility relation for a skew-symmetric L over the integers. Draws that
/// admit no solution with the requested d are rejected and resampled.
CompatiblePair random_compatible_pair(std::mt19937_64& rng, const RandomPairOptions& opts = {});

}  // namespace qclust
