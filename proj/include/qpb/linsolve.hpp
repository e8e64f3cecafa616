#pragma once

#include <optional>
#include <vector>

#include "qpb/qscalar.hpp"

namespace qpb {

/// Exact dense Gaussian elimination over Q(q). Returns one solution of
/// A x = b (free variables set to zero), or nullopt when inconsistent.
std::optional<std::vector<QScalar>> solve_linear(std::vector<std::vector<QScalar>> A,
                                                 std::vector<QScalar> b);

}  // namespace qpb
