#pragma once

#include <span>
#include <vector>

#include "multipoint/model.hpp"

namespace multipoint {

/// Order of accuracy used when verifying computed functions against the
/// differential expression. Second order is available for convergence studies.
inline constexpr int kVerificationOrder = 8;

/// Fornberg weights for the first derivative at `z` from nodes `x`.
std::vector<double> first_derivative_weights(double z, std::span<const double> x);

/// u'(t_k) at every node: centered stencils of the given even order in the
/// interior and one-sided stencils of the same order near the ends. The order
/// drops to what the grid supports when it has fewer than order + 1 nodes.
/// Throws ValidationError for grids with fewer than 3 nodes.
GridFunction differentiate(const GridFunction& u, int order = kVerificationOrder);

}  // namespace multipoint
