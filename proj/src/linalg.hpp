#pragma once

// Small exact linear algebra used by the random fixture generators.

#include <cstdint>
#include <vector>

#include "qclust/coeffs.hpp"

namespace qclust::linalg {

using Row = std::vector<BigInt>;

/// Basis of {x : A x = 0} over Q, each vector scaled to a primitive integer
/// vector. A is given by rows of equal length `cols`.
std::vector<Row> kernel_basis(const std::vector<Row>& a, std::size_t cols);

/// Divides by the gcd of the entries (no-op for the zero vector).
Row primitive(Row v);

}  // namespace qclust::linalg
