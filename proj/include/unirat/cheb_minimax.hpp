#pragma once

// Complex Chebyshev approximation of e^{omega z} on z in i[-1, 1] by AAA
// followed by Lawson reweighting, then Newton solves of the first-order
// optimality system, first among conjugate-symmetric r and then, after a
// multi-start descent, over all of R_n. The smallest refined error wins.
// Beyond some omega the best r is not conjugate-symmetric and the problem
// has several local minima, so error_c is the best value found.

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "unirat/types.hpp"

namespace unirat {

/// r(z) = sum_j w_j v_j / (z - z_j) / sum_j w_j / (z - z_j).
class BarycentricRational {
public:
    /// Throws std::invalid_argument for mismatched sizes, repeated support
    /// points or all-zero weights.
    BarycentricRational(std::vector<cplx> support, std::vector<cplx> values, std::vector<cplx> weights);

    [[nodiscard]] std::span<const cplx> support() const noexcept { return support_; }
    [[nodiscard]] std::span<const cplx> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const cplx> weights() const noexcept { return weights_; }
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(support_.size()) - 1; }

    [[nodiscard]] cplx at(cplx z) const;
    /// r(ix).
    [[nodiscard]] cplx operator()(double x) const { return at(cplx{0.0, x}); }

    /// Zeros of the denominator sum_j w_j prod_{k != j} (z - z_k).
    [[nodiscard]] std::vector<cplx> poles() const;

private:
    std::vector<cplx> support_;
    std::vector<cplx> values_;
    std::vector<cplx> weights_;
};

struct MinimaxResult {
    Target target;
    BarycentricRational approximant;
    double error_c = 0.0;
    std::vector<double> grid;         ///< working grid x_k (the points are i x_k)
    std::vector<double> error_curve;  ///< |r(i x_k) - e^{i omega x_k}|
    int lawson_iters = 0;
    bool converged = false;
    double flatness = 0.0;
    bool degree_unreachable = false;  ///< AAA resolved the target below degree n
    bool froissart_detected = false;  ///< a pole sat on a support point; that point was replaced once
    bool polished = false;            ///< the Newton optimality solve produced the reported approximant
};

inline int default_grid_size(int n) { return std::max(1000, 20 * (2 * n + 2)); }

/// Chebyshev approximant of degree n on a Chebyshev grid of grid_size points.
/// Throws std::invalid_argument when grid_size < max(1000, 20 (2n+2)).
[[nodiscard]] MinimaxResult solve_chebyshev(const Target& target, int grid_size, int lawson_iters = 1000);
[[nodiscard]] inline MinimaxResult solve_chebyshev(const Target& target) {
    return solve_chebyshev(target, default_grid_size(target.degree()));
}

struct MonotonicityReport {
    bool pass = true;
    std::optional<std::size_t> first_violation;  ///< k with error_c[k] > error_c[k+1] + tol
    std::vector<double> errors;
};

/// Solve on each frequency and check error_c(omega_k) <= error_c(omega_{k+1}) + tol.
/// Throws std::invalid_argument when omegas is decreasing somewhere.
[[nodiscard]] MonotonicityReport error_monotonicity_check(int n, std::span<const double> omegas, int grid_size = 0,
                                                          int lawson_iters = 1000, double tol = 1e-8);

}  // namespace unirat
