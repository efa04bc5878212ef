#pragma once

// Unitary best approximation to e^{i omega x} on [-1, 1].
//
// For 0 < omega < (n+1) pi the best approximant r = p^dag/p is characterized
// by a phase error g(x) - omega x that equioscillates with amplitude alpha at
// 2n+2 points eta_1 = -1 < ... < eta_{2n+2} = 1, and vanishes at 2n+1
// interpolation nodes x_j in (eta_j, eta_{j+1}). The solver moves the nodes
// until the local maxima of |g(x) - omega x| between them level out.

#include <span>
#include <vector>

#include "unirat/types.hpp"
#include "unirat/unitary_core.hpp"

namespace unirat {

struct PhaseCertificate {
    Target target;
    UnitaryRational approximant;
    std::vector<double> eta{};  ///< 2n+2 equioscillation points, eta.front() = -1, eta.back() = 1
    std::vector<double> nodes{};  ///< 2n+1 interpolation nodes
    double alpha = 0.0;         ///< mean of the extreme |phase error| values
    double error_u = 0.0;       ///< 2 sin(alpha/2)
    double deviation = 0.0;     ///< (max m_j - min m_j) / max m_j over the local maxima m_j
    int iterations = 0;
    bool near_degenerate = false;  ///< omega >= 0.995 (n+1) pi
    bool symmetric = true;         ///< nodes and eta symmetric about 0 within 1e-8
};

/// The certificate that came closest to equioscillation is kept.
class NotConverged : public Error {
public:
    NotConverged(PhaseCertificate best, int max_iter);

    [[nodiscard]] const PhaseCertificate& best() const noexcept { return best_; }
    [[nodiscard]] int max_iter() const noexcept { return max_iter_; }

private:
    PhaseCertificate best_;
    int max_iter_;
};

/// Unitary r = p^dag/p with r(i x_j) = e^{i omega x_j} at the 2n+1 nodes.
///
/// Each condition is the real linear equation Im(e^{i omega x_j / 2} p(i x_j)) = 0
/// in the 2n+2 real unknowns (Re a_k, Im a_k); p spans the null space of that
/// (2n+1) x (2n+2) system. Throws RankDeficient when the null space is not
/// one-dimensional and PoleOnInterval when p vanishes on [-1, 1].
[[nodiscard]] UnitaryRational interpolate_unitary(const Target& target, std::span<const double> nodes);

/// Locate the 2n+2 local maxima of |phase error| between the given nodes and
/// assemble a certificate. Used by the solver and exposed for verification.
[[nodiscard]] PhaseCertificate certify(const Target& target, const UnitaryRational& approximant,
                                       std::span<const double> nodes);

/// Best unitary approximant for 0 < omega < (n+1) pi, with deviation <= tol.
/// Throws FrequencyOutOfRange outside that range and NotConverged when max_iter
/// rebalancing steps do not reach tol.
[[nodiscard]] PhaseCertificate solve_unitary(const Target& target, double tol = 1e-10, int max_iter = 200);

}  // namespace unirat
