#pragma once

// Unitary rational functions r = p^dag / p, evaluated on the imaginary axis.
//
// A polynomial p(z) = sum_k a_k z^k is stored by its monomial coefficients in
// z = i x. Its dagger p^dag(z) = sum_k conj(a_k) (-z)^k satisfies
// p^dag(ix) = conj(p(ix)) for real x, so |r(ix)| = 1 wherever p(ix) != 0.
// The monomial basis is adequate for the degrees handled here (n <= 12 on
// [-1, 1]); coefficients are normalized to unit max modulus.

#include <algorithm>
#include <concepts>
#include <span>
#include <vector>

#include "unirat/detail/numerics.hpp"
#include "unirat/types.hpp"

namespace unirat {

/// Coefficients b_k = conj(a_k) (-1)^k of p^dag.
[[nodiscard]] std::vector<cplx> dagger(std::span<const cplx> p);

/// Evaluate sum_k a_k z^k (Horner).
[[nodiscard]] cplx polyval(std::span<const cplx> coeffs, cplx z);

class UnitaryRational {
public:
    /// Throws std::invalid_argument for an empty or all-zero coefficient vector.
    explicit UnitaryRational(std::vector<cplx> coeffs);

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    /// p(ix), the denominator on the axis.
    [[nodiscard]] cplx denominator(double x) const { return polyval(coeffs_, cplx{0.0, x}); }

    /// r(ix) = p^dag(ix) / p(ix); throws PoleOnAxis when p(ix) vanishes.
    [[nodiscard]] cplx operator()(double x) const;

    /// Fix the unimodular gauge (p(0) real positive, or else the first nonzero
    /// coefficient) and scale to unit max modulus. r is unchanged.
    [[nodiscard]] UnitaryRational normalized() const;

private:
    std::vector<cplx> coeffs_;
};

[[nodiscard]] inline cplx eval(const UnitaryRational& r, double x) { return r(x); }

/// Zeros of sum_k a_k z^k from the companion matrix. Leading coefficients
/// below 1e-14 of the largest are dropped first.
[[nodiscard]] std::vector<cplx> polyroots(std::span<const cplx> coeffs);

/// The phase error g(x) - omega x of a unitary r = p^dag/p as a continuous
/// function on [-1, 1], with the value at x = 0 in (-pi, pi].
///
/// The branch comes from the zeros z_k of p: each factor (ix - z_k) has an
/// argument that is continuous along the axis when z_k is off it, so their
/// sum predicts the unwrapped value regardless of how steeply it turns. The
/// returned value is the directly computed -2 arg(e^{i omega x/2} p(ix))
/// shifted to the predicted branch.
class PhaseErrorFunction {
public:
    PhaseErrorFunction(const UnitaryRational& r, double omega);

    [[nodiscard]] double operator()(double x) const;
    /// d/dx of the phase error, -omega - 2 Im(p_x / p) with p_x = d/dx p(ix).
    [[nodiscard]] double slope(double x) const;

private:
    [[nodiscard]] double wrapped(double x) const;
    [[nodiscard]] double predicted(double x) const;

    double omega_;
    std::vector<cplx> coeffs_;
    std::vector<cplx> roots_;
    double offset_ = 0.0;
};

struct PhaseSample {
    double x;
    double phase_error;      ///< g(x) - omega x, radians, continuous in x
    double pointwise_error;  ///< |r(ix) - e^{i omega x}|
};

/// Continuous phase error of r against the target on a sorted grid in [-1, 1],
/// sampled from PhaseErrorFunction. Throws BranchJump when adjacent samples
/// differ by more than pi/2, i.e. the grid is too coarse to resolve the phase.
[[nodiscard]] std::vector<PhaseSample> phase_error(const UnitaryRational& r, const Target& target,
                                                   std::span<const double> xs);

/// Anything that maps x in [-1, 1] to an approximation of e^{i omega x}.
template <class F>
concept AxisApproximant = requires(const F& f, double x) {
    { f(x) } -> std::convertible_to<cplx>;
};

/// Grid estimate of max_{x in [-1,1]} |r(ix) - e^{i omega x}|. Every local
/// maximum of the sampled error is refined by golden-section search to 1e-12
/// in x, so the result is a lower bound on the true sup norm that converges
/// with grid refinement. Requires grid_size >= 2n+2.
template <AxisApproximant F>
[[nodiscard]] double sup_error(const F& r, const Target& target, int grid_size) {
    if (grid_size < std::max(2, 2 * target.degree() + 2)) {
        throw std::invalid_argument("sup_error: grid_size must be at least 2n+2");
    }
    auto err = [&](double x) { return std::abs(cplx(r(x)) - target(x)); };
    const auto xs = detail::linspace(-1.0, 1.0, static_cast<std::size_t>(grid_size));
    std::vector<double> e(xs.size());
    std::transform(xs.begin(), xs.end(), e.begin(), err);
    double best = *std::max_element(e.begin(), e.end());
    const std::size_t last = xs.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const bool left_ok = k == 0 || e[k] >= e[k - 1];
        const bool right_ok = k == last || e[k] >= e[k + 1];
        if (!(left_ok && right_ok)) continue;
        const double lo = xs[k == 0 ? 0 : k - 1];
        const double hi = xs[k == last ? last : k + 1];
        best = std::max(best, detail::golden_section_max(err, lo, hi).value);
    }
    return best;
}

}  // namespace unirat
