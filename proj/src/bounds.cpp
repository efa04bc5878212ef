#include "unirat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace unirat {

ErrorPair closed_form_n0(double omega) {
    if (!(omega >= 0.0)) throw std::invalid_argument("closed_form_n0: omega must be >= 0");
    const double ec = omega <= 0.5 * kPi ? std::sin(omega) : 1.0;
    const double eu = omega < kPi ? 2.0 * std::sin(0.5 * omega) : 2.0;
    return {ec, eu};
}

double Rational::to_double() const { return numerator.convert_to<double>() / denominator.convert_to<double>(); }

std::string Rational::str() const {
    if (denominator == 1) return numerator.str();
    return numerator.str() + "/" + denominator.str();
}

Rational asymptotic_constant(int n) {
    if (n < 0) throw std::invalid_argument("asymptotic_constant: n must be >= 0");
    try {
        BigInt num = 1;
        BigInt den = 1;
        for (int k = 1; k <= n; ++k) num *= k * k;
        for (int k = 0; k < n; ++k) den *= 4;
        for (int k = 1; k <= 2 * n; ++k) den *= k;
        for (int k = 1; k <= 2 * n + 1; ++k) den *= k;
        const BigInt g = boost::multiprecision::gcd(num, den);
        return {num / g, den / g};
    } catch (const std::overflow_error&) {
        throw Overflow("asymptotic_constant: c_n exceeds 256-bit integer arithmetic");
    }
}

namespace {

std::vector<cplx> gamma_values(const PhaseCertificate& cert) {
    std::vector<cplx> out;
    for (double eta : cert.eta) {
        // theta = arg(e^{i omega eta} conj(r)); 2i sin(theta/2) e^{i theta/2} keeps Re gamma accurate for small theta
        const cplx u = std::polar(1.0, cert.target.omega() * eta) * std::conj(cert.approximant(eta));
        const double theta = std::arg(u);
        out.push_back(cplx{0.0, 2.0 * std::sin(0.5 * theta)} * std::polar(1.0, 0.5 * theta));
    }
    return out;
}

double max_real(const std::vector<cplx>& g) {
    double m = -std::numeric_limits<double>::infinity();
    for (const cplx& v : g) m = std::max(m, v.real());
    return m;
}

double asym_ratio(int n, double omega, double error) {
    if (omega == 0.0) return 1.0;
    return error / (asymptotic_constant(n).to_double() * std::pow(omega, 2 * n + 1));
}

}  // namespace

std::vector<cplx> kolmogorov_gamma(const PhaseCertificate& cert) {
    const auto g = gamma_values(cert);
    const double s = std::sin(0.5 * cert.alpha);
    const double expected = -2.0 * s * s;
    for (const cplx& v : g) {
        if (!(std::abs(v.real() - expected) <= 1e-8) || !(v.real() < 0.0)) {
            throw CriterionMismatch("kolmogorov_gamma: Re gamma(eta_j) does not match cos(alpha) - 1 < 0");
        }
    }
    return g;
}

void VPSetting::validate() const {
    if (defect < 0) throw InvalidInterlacing("VPSetting: negative defect");
    if (nodes.empty() || eta.size() != nodes.size() + 1 || extreme_errors.size() != eta.size()) {
        throw InvalidInterlacing("VPSetting: need m nodes, m+1 extrema and m+1 extreme errors");
    }
    if (eta.front() < -1.0 || eta.back() > 1.0) throw InvalidInterlacing("VPSetting: extrema outside [-1, 1]");
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!(eta[j] < nodes[j] && nodes[j] < eta[j + 1])) {
            throw InvalidInterlacing("VPSetting: nodes and extrema do not interlace");
        }
    }
    for (double e : extreme_errors) {
        if (!(e >= 0.0)) throw InvalidInterlacing("VPSetting: extreme errors must be nonnegative");
    }
}

double vp_lower_bound(const VPSetting& setting) {
    setting.validate();
    return 0.5 * *std::min_element(setting.extreme_errors.begin(), setting.extreme_errors.end());
}

DegenerateCase degenerate_errors(int n, double omega) {
    if (n < 0) throw std::invalid_argument("degenerate_errors: n must be >= 0");
    if (!(omega >= (n + 1) * kPi)) throw FrequencyTooSmall("degenerate_errors: omega < (n+1) pi");
    DegenerateCase out;
    out.witness.defect = n;
    const cplx zeta = n % 2 == 0 ? 1.0 : -1.0;
    for (int j = 1; j <= n + 2; ++j) {
        const double eta = (2.0 * (j - 1) - n - 1) * kPi / omega;
        out.witness.eta.push_back(eta);
        out.witness.extreme_errors.push_back(std::abs(zeta - std::polar(1.0, omega * eta)));
    }
    for (int j = 1; j <= n + 1; ++j) out.witness.nodes.push_back((2.0 * (j - 1) - n) * kPi / omega);
    out.witness.validate();
    return out;
}

BoundsReport verify_bounds(int n, double omega, double error_u, double error_c, double max_re_gamma) {
    BoundsReport r;
    r.n = n;
    r.omega = omega;
    r.error_u = error_u;
    r.error_c = error_c;
    r.max_re_gamma = max_re_gamma;
    r.degenerate = omega >= (n + 1) * kPi;
    r.exact = omega == 0.0;
    r.lower_gap = error_c - 0.5 * error_u;
    if (r.exact) {
        r.lower_ok = r.upper_ok = true;
    } else {
        r.lower_ok = 0.5 * error_u <= error_c + 1e-8 * error_u;
        r.upper_ok = error_c <= error_u - std::max(1e-8 * error_u, 1e-10);
    }
    r.asym_ratio_u = asym_ratio(n, omega, error_u);
    r.asym_ratio_c = asym_ratio(n, omega, error_c);
    return r;
}

BoundsReport compute_bounds_report(int n, double omega, const SolveOptions& options) {
    const Target target(omega, n);
    if (omega == 0.0) return verify_bounds(n, omega, 0.0, 0.0, 0.0);
    if (target.is_degenerate()) {
        const auto d = degenerate_errors(n, omega);
        // r = (-1)^n puts e^{i omega eta_j} conj(r) at -1, so gamma = -2
        return verify_bounds(n, omega, d.error_u, d.error_c, -2.0);
    }

    bool unitary_converged = true;
    std::optional<PhaseCertificate> cert;
    try {
        cert = solve_unitary(target, options.tol, options.max_iter);
    } catch (const NotConverged& e) {
        cert = e.best();
        unitary_converged = false;
    }
    const int grid = options.grid_size > 0 ? options.grid_size : default_grid_size(n);
    const auto cheb = solve_chebyshev(target, grid, options.lawson_iters);
    auto report = verify_bounds(n, omega, cert->error_u, cheb.error_c, max_real(gamma_values(*cert)));
    report.unitary_converged = unitary_converged;
    report.chebyshev_converged = cheb.converged || cheb.polished;
    return report;
}

}  // namespace unirat
