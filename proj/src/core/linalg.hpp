#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace geuclid {

/// Sparse column over a coefficient domain: (row, value) pairs, rows distinct.
using SparseColumn = std::vector<std::pair<std::size_t, Scalar>>;
using IntColumn = std::vector<std::pair<std::size_t, mpz_class>>;

/// Exact kernel search over a field. Columns are processed in order; the
/// result is the unique (up to scale) relation among columns 0..f where f is
/// the first column dependent on its predecessors, normalized so that its
/// first nonzero entry is 1. Returns nullopt when the columns are independent.
std::optional<std::vector<Scalar>> first_kernel_vector(Domain domain, std::size_t nrows,
                                                       const std::vector<SparseColumn>& columns);

/// One relation per column dependent on its predecessors, with coefficient 1
/// at that column and support among it and earlier columns; together a basis
/// of the kernel.
std::vector<SparseColumn> kernel_basis(Domain domain, std::size_t nrows, const std::vector<SparseColumn>& columns);

/// Some x with sum_j x_j columns_j = target over a field, or nullopt.
std::optional<std::vector<Scalar>> solve_field(Domain domain, std::size_t nrows, const std::vector<SparseColumn>& columns,
                                               const SparseColumn& target);

/// Rank over a field.
std::size_t column_rank(Domain domain, std::size_t nrows, const std::vector<SparseColumn>& columns);

/// Integer solution of sum_j x_j columns_j = target, or nullopt. Exact:
/// column Hermite reduction with unimodular bookkeeping.
std::optional<std::vector<mpz_class>> solve_integer(std::size_t nrows, const std::vector<IntColumn>& columns,
                                                    const IntColumn& target);

}  // namespace geuclid
