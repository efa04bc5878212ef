#pragma once

#include <span>
#include <vector>

#include "unirat/cheb_minimax.hpp"

namespace unirat::detail {

struct FullFamilyPoint {
    BarycentricRational r;
    bool newton;  ///< from the optimality solve rather than the descent
};

/// Local minimax search over all of R_n, with no symmetry imposed, in the
/// parameterization r(ix) = P(ix) / Q(ix), Q(0) = 1. Starts are start itself
/// under small seeded perturbations, x -> start(e^{i psi} ix) for a few
/// rotations psi, and seeded random coefficients. Each gets a short
/// trust-region descent on the grid, the two best a longer one, and the
/// winner a Newton solve of the optimality conditions. Returns the end
/// points; the caller keeps whichever has the smallest error.
[[nodiscard]] std::vector<FullFamilyPoint> full_family_search(const Target& target,
                                                              const BarycentricRational& start,
                                                              std::span<const double> grid);

}  // namespace unirat::detail
