#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

namespace unirat::detail {

struct Extremum {
    double x;
    double value;
};

/// Golden-section search for a maximum of f on [lo, hi], stopping once the
/// bracket is narrower than tol. The endpoints are compared against the
/// interior result so a monotone f returns the larger endpoint.
template <class F>
Extremum golden_section_max(F&& f, double lo, double hi, double tol = 1e-12) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    Extremum best{0.5 * (a + b), f(0.5 * (a + b))};
    if (const double v = f(lo); v > best.value) best = {lo, v};
    if (const double v = f(hi); v > best.value) best = {hi, v};
    return best;
}

/// count equispaced points on [lo, hi], endpoints included.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> xs(count);
    if (count == 1) {
        xs[0] = lo;
        return xs;
    }
    const double h = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) xs[k] = lo + h * static_cast<double>(k);
    xs.back() = hi;
    return xs;
}

/// Chebyshev points of the second kind on [-1, 1] in increasing order.
inline std::vector<double> chebyshev_lobatto(std::size_t count) {
    std::vector<double> xs(count);
    if (count == 1) {
        xs[0] = 0.0;
        return xs;
    }
    const double m = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        // sin form keeps the points exactly antisymmetric
        xs[k] = std::sin(std::numbers::pi * (2.0 * static_cast<double>(k) - m) / (2.0 * m));
    }
    return xs;
}

/// Maximize g over [lo, hi]: scan `samples` equispaced points, then refine the
/// best bracket with golden-section search.
template <class F>
Extremum scan_and_refine_max(F&& g, double lo, double hi, int samples, double tol = 1e-12) {
    const auto xs = linspace(lo, hi, static_cast<std::size_t>(samples));
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double v = g(xs[k]);
        if (v > best) {
            best = v;
            arg = k;
        }
    }
    const double a = xs[arg == 0 ? 0 : arg - 1];
    const double b = xs[arg + 1 == xs.size() ? arg : arg + 1];
    auto refined = golden_section_max(g, a, b, tol);
    if (refined.value < best) refined = {xs[arg], best};
    return refined;
}

}  // namespace unirat::detail
