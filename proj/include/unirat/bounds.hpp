#pragma once

// Executable forms of the error relations between the unitary best
// approximant (error E^u) and the Chebyshev approximant (error E^c):
// E^u/2 <= E^c < E^u for omega > 0, closed forms for n = 0, the common
// leading term c_n omega^{2n+1}, the Kolmogorov test showing r^u is not
// locally optimal in R_n, and the degenerate regime omega >= (n+1) pi.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "unirat/cheb_minimax.hpp"
#include "unirat/types.hpp"
#include "unirat/unitary_remez.hpp"

namespace unirat {

struct ErrorPair {
    double error_c;
    double error_u;
};

/// E^c = sin omega on [0, pi/2] and 1 beyond; E^u = 2 sin(omega/2) on [0, pi) and 2 beyond.
[[nodiscard]] ErrorPair closed_form_n0(double omega);

using BigInt = boost::multiprecision::checked_int256_t;

struct Rational {
    BigInt numerator;
    BigInt denominator;

    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string str() const;
};

/// c_n = (n!)^2 / (4^n (2n)! (2n+1)!) in exact integer arithmetic.
/// Throws Overflow once the denominator leaves the 256-bit range.
[[nodiscard]] Rational asymptotic_constant(int n);

/// gamma(eta_j) = e^{i omega eta_j} conj(r(i eta_j)) - 1 at the certificate's
/// equioscillation points. Throws CriterionMismatch unless every
/// Re gamma(eta_j) is negative and within 1e-8 of cos(alpha) - 1.
[[nodiscard]] std::vector<cplx> kolmogorov_gamma(const PhaseCertificate& cert);

/// Interpolation setting of an approximant zeta with defect d: nodes where
/// zeta = f and points of local extrema of |zeta - f| interlacing them.
struct VPSetting {
    int defect = 0;
    std::vector<double> nodes;
    std::vector<double> eta;
    std::vector<double> extreme_errors;

    /// Throws InvalidInterlacing unless
    /// -1 <= eta_1 < x_1 < eta_2 < ... < x_m < eta_{m+1} <= 1 with nonnegative errors.
    void validate() const;
};

/// Half the smallest extreme error.
[[nodiscard]] double vp_lower_bound(const VPSetting& setting);

struct DegenerateCase {
    double error_c = 1.0;
    double error_u = 2.0;
    VPSetting witness;  ///< zeta = (-1)^n, defect n
};

/// Throws FrequencyTooSmall when omega < (n+1) pi.
[[nodiscard]] DegenerateCase degenerate_errors(int n, double omega);

struct BoundsReport {
    int n = 0;
    double omega = 0.0;
    double error_u = 0.0;
    double error_c = 0.0;
    bool lower_ok = false;
    bool upper_ok = false;
    double asym_ratio_u = 1.0;
    double asym_ratio_c = 1.0;
    double max_re_gamma = 0.0;
    bool degenerate = false;
    bool exact = false;             ///< omega = 0
    double lower_gap = 0.0;         ///< E^c - E^u/2, recorded without an assertion
    bool unitary_converged = true;  ///< false when the certificate is the best of a NotConverged run
    bool chebyshev_converged = true;

    [[nodiscard]] double ratio_c_over_u() const { return error_u > 0.0 ? error_c / error_u : 1.0; }
};

/// Flags for given errors: lower_ok := E^u/2 <= E^c + 1e-8 E^u and
/// upper_ok := E^c <= E^u - max(1e-8 E^u, 1e-10). At omega = 0 both hold.
[[nodiscard]] BoundsReport verify_bounds(int n, double omega, double error_u, double error_c,
                                         double max_re_gamma = 0.0);

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 200;
    int grid_size = 0;  ///< 0 picks default_grid_size(n)
    int lawson_iters = 1000;
};

/// Run both solvers (or the exact / degenerate branch) and verify.
[[nodiscard]] BoundsReport compute_bounds_report(int n, double omega, const SolveOptions& options = {});

}  // namespace unirat
