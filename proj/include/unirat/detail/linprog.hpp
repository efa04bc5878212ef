#pragma once

#include <Eigen/Dense>

#include <optional>

namespace unirat::detail {

/// minimize c^T x subject to A x <= b, by a Mehrotra predictor-corrector
/// interior-point method. Meant for small dense problems (tens of variables).
/// Stops once the primal residual and the duality gap are below tol and the
/// dual residual below sqrt(tol), all relative to the data; the normal
/// equations limit the attainable dual accuracy on degenerate problems.
/// Returns nullopt otherwise, which includes infeasible and unbounded problems.
[[nodiscard]] std::optional<Eigen::VectorXd> solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                                                      const Eigen::VectorXd& b, double tol = 1e-10,
                                                      int max_iter = 100);

}  // namespace unirat::detail
