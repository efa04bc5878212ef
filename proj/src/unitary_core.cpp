#include "unirat/unitary_core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace unirat {

Target::Target(double omega, int degree) : omega_(omega), degree_(degree) {
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("Target: omega must be finite and >= 0");
    }
    if (degree < 0) throw std::invalid_argument("Target: degree must be >= 0");
}

std::vector<cplx> dagger(std::span<const cplx> p) {
    std::vector<cplx> out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        out[k] = (k % 2 == 0) ? std::conj(p[k]) : -std::conj(p[k]);
    }
    return out;
}

cplx polyval(std::span<const cplx> coeffs, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

UnitaryRational::UnitaryRational(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("UnitaryRational: empty coefficient vector");
    const bool all_zero = std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx a) { return a == cplx{}; });
    if (all_zero) throw std::invalid_argument("UnitaryRational: zero polynomial");
}

cplx UnitaryRational::operator()(double x) const {
    const cplx p = denominator(x);
    double scale = 0.0;
    double xk = 1.0;
    for (const cplx& a : coeffs_) {
        scale += std::abs(a) * xk;
        xk *= std::abs(x);
    }
    const double threshold = std::max(1e-300, 1e-14 * scale);
    if (std::abs(p) < threshold) throw PoleOnAxis("r = p^dag/p has a pole on the imaginary axis");
    // conj(p)/p = exp(-2i arg p); the polar form keeps the modulus at 1 to rounding
    return std::polar(1.0, -2.0 * std::arg(p));
}

UnitaryRational UnitaryRational::normalized() const {
    double max_abs = 0.0;
    for (const cplx& a : coeffs_) max_abs = std::max(max_abs, std::abs(a));
    // entries below this are treated as zero when picking the gauge coefficient
    const double tiny = 1e-14 * max_abs;
    std::size_t pivot = 0;
    while (pivot + 1 < coeffs_.size() && std::abs(coeffs_[pivot]) <= tiny) ++pivot;
    const cplx rot = std::conj(coeffs_[pivot]) / std::abs(coeffs_[pivot]);
    std::vector<cplx> out(coeffs_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeffs_[k] * rot / max_abs;
    out[pivot] = cplx{out[pivot].real(), 0.0};
    return UnitaryRational(std::move(out));
}

std::vector<cplx> polyroots(std::span<const cplx> coeffs) {
    double scale = 0.0;
    for (const cplx& a : coeffs) scale = std::max(scale, std::abs(a));
    auto degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
    while (degree > 0 && std::abs(coeffs[degree]) <= 1e-14 * scale) --degree;
    if (degree < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion, false);
    return {eig.eigenvalues().begin(), eig.eigenvalues().end()};
}

PhaseErrorFunction::PhaseErrorFunction(const UnitaryRational& r, double omega)
    : omega_(omega), coeffs_(r.coeffs().begin(), r.coeffs().end()), roots_(polyroots(coeffs_)) {
    const double w = wrapped(0.0);
    double at0 = w + 2.0 * kPi * std::round((predicted(0.0) - w) / (2.0 * kPi));
    at0 = std::remainder(at0, 2.0 * kPi);
    if (at0 <= -kPi) at0 += 2.0 * kPi;
    offset_ = at0 - predicted(0.0);
}

double PhaseErrorFunction::wrapped(double x) const {
    const cplx h = std::polar(1.0, 0.5 * omega_ * x) * polyval(coeffs_, cplx{0.0, x});
    return -2.0 * std::arg(h);
}

double PhaseErrorFunction::predicted(double x) const {
    // arg p(ix) = arg(lead) + sum_k arg(ix - z_k) up to multiples of pi; flipping the
    // factor for Re z_k > 0 keeps each term in (-pi/2, pi/2) and continuous in x
    double a = 0.0;
    for (const cplx& z : roots_) {
        const cplx f = cplx{0.0, x} - z;
        a += std::arg(z.real() > 0.0 ? -f : f);
    }
    return -2.0 * a - omega_ * x + offset_;
}

double PhaseErrorFunction::operator()(double x) const {
    const double w = wrapped(x);
    return w + 2.0 * kPi * std::round((predicted(x) - w) / (2.0 * kPi));
}

double PhaseErrorFunction::slope(double x) const {
    const cplx z{0.0, x};
    cplx p{};
    cplx dp{};
    for (auto k = coeffs_.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + coeffs_[k];
    }
    return -omega_ - 2.0 * (cplx{0.0, 1.0} * dp / p).imag();
}

std::vector<PhaseSample> phase_error(const UnitaryRational& r, const Target& target, std::span<const double> xs) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (xs[k] < -1.0 || xs[k] > 1.0) throw std::invalid_argument("phase_error: grid outside [-1, 1]");
        if (k > 0 && xs[k] < xs[k - 1]) throw std::invalid_argument("phase_error: grid not sorted");
    }
    const PhaseErrorFunction phi(r, target.omega());
    std::vector<PhaseSample> out;
    out.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double phase = phi(xs[k]);
        if (k > 0 && std::abs(phase - out.back().phase_error) > 0.5 * kPi) {
            throw BranchJump("phase_error: adjacent samples differ by more than pi/2");
        }
        out.push_back({xs[k], phase, std::abs(r(xs[k]) - target(xs[k]))});
    }
    return out;
}

}  // namespace unirat
