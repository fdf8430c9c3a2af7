#pragma once

#include <cstdint>
#include <vector>

namespace optmod::lattice {

/// Symmetric integer Gram matrix G of a positive-definite integral quadratic
/// form Q(x) = x^T G x / 2 (so the diagonal is even).
using GramMatrix = std::vector<std::vector<std::int64_t>>;

/// LLL-reduces the basis underlying g (delta = 0.99). The transformation is
/// unimodular and applied exactly; floating point only chooses the steps.
GramMatrix lll_reduce(const GramMatrix& g);

/// counts[n] = #{x in Z^k : Q(x) = n} for 0 <= n <= bound, by Fincke-Pohst
/// enumeration over an LLL-reduced basis. Norms are evaluated exactly.
std::vector<std::int64_t> theta_counts(const GramMatrix& g, std::int64_t bound);

/// Minimal nonzero value of Q, searched up to `bound`; 0 if none found.
std::int64_t minimum(const GramMatrix& g, std::int64_t bound);

std::int64_t determinant(const GramMatrix& g);

}  // namespace optmod::lattice
