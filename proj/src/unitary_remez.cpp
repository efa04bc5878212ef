#include "unirat/unitary_remez.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "unirat/detail/numerics.hpp"

namespace unirat {

NotConverged::NotConverged(PhaseCertificate best, int max_iter)
    : Error("solve_unitary: no equioscillation within " + std::to_string(max_iter) +
            " iterations (best deviation " + std::to_string(best.deviation) + ")"),
      best_(std::move(best)),
      max_iter_(max_iter) {}

namespace {

std::vector<double> chebyshev_interior_nodes(int n) {
    const int count = 2 * n + 1;
    std::vector<double> nodes(count);
    for (int j = 1; j <= count; ++j) nodes[j - 1] = -std::cos(kPi * j / (2.0 * n + 2.0));
    return nodes;
}

bool is_symmetric(std::span<const double> v, double tol) {
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(v[j] + v[v.size() - 1 - j]) > tol) return false;
    }
    return true;
}

void validate_nodes(const Target& target, std::span<const double> nodes) {
    const auto expected = static_cast<std::size_t>(2 * target.degree() + 1);
    if (nodes.size() != expected) throw std::invalid_argument("interpolate_unitary: need 2n+1 nodes");
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!(nodes[j] > -1.0 && nodes[j] < 1.0)) {
            throw std::invalid_argument("interpolate_unitary: nodes must lie in (-1, 1)");
        }
        if (j > 0 && !(nodes[j] > nodes[j - 1])) {
            throw std::invalid_argument("interpolate_unitary: nodes must be strictly increasing");
        }
    }
}

void check_no_pole_on_interval(const UnitaryRational& r) {
    double scale = 0.0;
    for (const cplx& a : r.coeffs()) scale += std::abs(a);
    auto modulus = [&](double x) { return std::abs(r.denominator(x)); };
    const auto xs = detail::linspace(-1.0, 1.0, 4001);
    std::size_t arg = 0;
    for (std::size_t k = 1; k < xs.size(); ++k) {
        if (modulus(xs[k]) < modulus(xs[arg])) arg = k;
    }
    const double lo = xs[arg == 0 ? 0 : arg - 1];
    const double hi = xs[arg + 1 == xs.size() ? arg : arg + 1];
    const auto refined = detail::golden_section_max([&](double x) { return -modulus(x); }, lo, hi);
    if (-refined.value < 1e-12 * scale) {
        throw PoleOnInterval("interpolate_unitary: p vanishes on the imaginary axis segment");
    }
}

struct Extrema {
    std::vector<double> m;
    std::vector<double> eta;
};

Extrema locate_extrema(const PhaseErrorFunction& phi, std::span<const double> nodes) {
    std::vector<double> breaks{-1.0};
    breaks.insert(breaks.end(), nodes.begin(), nodes.end());
    breaks.push_back(1.0);
    Extrema out;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double lo = breaks[j];
        const double hi = breaks[j + 1];
        auto e = detail::scan_and_refine_max([&](double x) { return std::abs(phi(x)); }, lo, hi, 200);
        // golden section pins an interior maximum only to about sqrt(eps); the slope root is sharper
        const double h = (hi - lo) / 199.0;
        const double a = std::max(lo, e.x - h);
        const double b = std::min(hi, e.x + h);
        if (e.x > lo && e.x < hi && phi.slope(a) * phi.slope(b) < 0.0) {
            boost::uintmax_t iters = 100;
            const auto root = boost::math::tools::toms748_solve(
                [&](double x) { return phi.slope(x); }, a, b,
                [](double l, double u) { return u - l <= 4.0 * std::numeric_limits<double>::epsilon(); }, iters);
            const double x = 0.5 * (root.first + root.second);
            e = {x, std::abs(phi(x))};
        }
        out.m.push_back(e.value);
        out.eta.push_back(e.x);
    }
    return out;
}

double relative_spread(std::span<const double> m) {
    const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
    return *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
}

PhaseCertificate make_certificate(const Target& target, const UnitaryRational& r, std::span<const double> nodes,
                                  const PhaseErrorFunction& phi) {
    const auto ex = locate_extrema(phi, nodes);
    PhaseCertificate cert{target, r};
    cert.eta = ex.eta;
    cert.nodes.assign(nodes.begin(), nodes.end());
    cert.alpha = std::accumulate(ex.m.begin(), ex.m.end(), 0.0) / static_cast<double>(ex.m.size());
    cert.error_u = 2.0 * std::sin(0.5 * cert.alpha);
    cert.deviation = relative_spread(ex.m);
    cert.near_degenerate = target.omega() >= 0.995 * target.degenerate_frequency();
    cert.symmetric = is_symmetric(cert.nodes, 1e-8) && is_symmetric(cert.eta, 1e-8);
    return cert;
}

/// A unitary approximant together with its equioscillation data, the state
/// carried by the Newton polish and the frequency continuation.
struct Equioscillation {
    std::vector<cplx> coeffs;
    std::vector<double> eta;
    double alpha = 0.0;
};

/// Newton's method on the equioscillation system
///   phi(eta_j) = (-1)^{j+1} alpha,  phi'(eta_j) = 0 (interior j),  <a, a0> = <a0, a0>
/// in the unknowns (Re a, Im a, alpha, interior eta).
std::optional<Equioscillation> newton_polish(double omega, const Equioscillation& start, int max_steps = 40) {
    const int n = static_cast<int>(start.coeffs.size()) - 1;
    const int nc = 2 * n + 2;
    const int ne = 2 * n;
    const int size = nc + 1 + ne;

    Eigen::VectorXd v(size);
    for (int k = 0; k <= n; ++k) {
        v(k) = start.coeffs[k].real();
        v(n + 1 + k) = start.coeffs[k].imag();
    }
    v(nc) = start.alpha;
    for (int j = 0; j < ne; ++j) v(nc + 1 + j) = start.eta[j + 1];
    const Eigen::VectorXd v0 = v.head(nc);

    auto unpack_coeffs = [&](const Eigen::VectorXd& u) {
        std::vector<cplx> a(n + 1);
        for (int k = 0; k <= n; ++k) a[k] = {u(k), u(n + 1 + k)};
        return a;
    };
    auto eta_at = [&](const Eigen::VectorXd& u, int j) {
        if (j == 0) return -1.0;
        if (j == nc - 1) return 1.0;
        return u(nc + j);
    };

    // p, p_x = d/dx p(ix), p_xx at x, with the monomial powers z^k and k z^{k-1}
    struct Local {
        cplx p, px, pxx;
        std::vector<cplx> zk, dzk;
    };
    auto local = [&](const std::vector<cplx>& a, double x) {
        Local l;
        const cplx z{0.0, x};
        const cplx i{0.0, 1.0};
        l.zk.resize(n + 1);
        l.dzk.resize(n + 1);
        cplx zp{1.0, 0.0};
        for (int k = 0; k <= n; ++k) {
            l.zk[k] = zp;
            zp *= z;
        }
        for (int k = 0; k <= n; ++k) l.dzk[k] = k == 0 ? cplx{} : static_cast<double>(k) * i * l.zk[k - 1];
        l.p = l.px = l.pxx = {};
        for (int k = 0; k <= n; ++k) {
            l.p += a[k] * l.zk[k];
            l.px += a[k] * l.dzk[k];
            if (k >= 2) l.pxx -= a[k] * static_cast<double>(k * (k - 1)) * l.zk[k - 2];
        }
        return l;
    };
    auto sign = [](int j) { return j % 2 == 0 ? 1.0 : -1.0; };

    auto residual = [&](const Eigen::VectorXd& u, Eigen::MatrixXd* jac) {
        const auto a = unpack_coeffs(u);
        const double alpha = u(nc);
        Eigen::VectorXd f(size);
        if (jac) jac->setZero(size, size);
        for (int j = 0; j < nc; ++j) {
            const double x = eta_at(u, j);
            const Local l = local(a, x);
            const double phase = -2.0 * std::arg(std::polar(1.0, 0.5 * omega * x) * l.p);
            f(j) = std::remainder(phase - sign(j) * alpha, 2.0 * kPi);
            if (!jac) continue;
            for (int k = 0; k <= n; ++k) {
                const cplx q = l.zk[k] / l.p;
                (*jac)(j, k) = -2.0 * q.imag();
                (*jac)(j, n + 1 + k) = -2.0 * q.real();
            }
            (*jac)(j, nc) = -sign(j);
            if (j > 0 && j < nc - 1) (*jac)(j, nc + j) = -omega - 2.0 * (l.px / l.p).imag();
        }
        for (int j = 1; j < nc - 1; ++j) {
            const double x = eta_at(u, j);
            const Local l = local(a, x);
            const cplx ratio = l.px / l.p;
            const int row = nc + j - 1;
            f(row) = -omega - 2.0 * ratio.imag();
            if (!jac) continue;
            for (int k = 0; k <= n; ++k) {
                const cplx d = l.dzk[k] / l.p - l.px * l.zk[k] / (l.p * l.p);
                (*jac)(row, k) = -2.0 * d.imag();
                (*jac)(row, n + 1 + k) = -2.0 * d.real();
            }
            (*jac)(row, nc + j) = -2.0 * (l.pxx / l.p - ratio * ratio).imag();
        }
        f(size - 1) = u.head(nc).dot(v0) - v0.dot(v0);
        if (jac) jac->row(size - 1).head(nc) = v0.transpose();
        return f;
    };

    Eigen::MatrixXd jac;
    Eigen::VectorXd f = residual(v, &jac);
    for (int step = 0; step < max_steps; ++step) {
        if (!f.allFinite()) return std::nullopt;
        const Eigen::VectorXd d = jac.colPivHouseholderQr().solve(-f);
        if (!d.allFinite()) return std::nullopt;
        double t = 1.0;
        Eigen::VectorXd trial = v + d;
        Eigen::VectorXd ft = residual(trial, nullptr);
        while (!(ft.allFinite() && ft.lpNorm<Eigen::Infinity>() <= f.lpNorm<Eigen::Infinity>()) && t > 1e-3) {
            t *= 0.5;
            trial = v + t * d;
            ft = residual(trial, nullptr);
        }
        v = trial;
        f = residual(v, &jac);
        if (t * d.lpNorm<Eigen::Infinity>() <= 1e-14 * std::max(1.0, v.lpNorm<Eigen::Infinity>())) break;
    }
    if (!f.allFinite() || f.lpNorm<Eigen::Infinity>() > 1e-11) return std::nullopt;

    Equioscillation out{unpack_coeffs(v), {}, v(nc)};
    for (int j = 0; j < nc; ++j) out.eta.push_back(eta_at(v, j));
    if (!(out.alpha > 0.0 && out.alpha < kPi)) return std::nullopt;
    for (int j = 1; j < nc; ++j) {
        if (!(out.eta[j] > out.eta[j - 1])) return std::nullopt;
    }
    return out;
}

/// Zeros of the phase error between consecutive equioscillation points.
std::optional<std::vector<double>> phase_zeros(const PhaseErrorFunction& phi, std::span<const double> eta) {
    std::vector<double> nodes;
    for (std::size_t j = 0; j + 1 < eta.size(); ++j) {
        const double a = eta[j];
        const double b = eta[j + 1];
        const double fa = phi(a);
        const double fb = phi(b);
        if (!(fa * fb < 0.0)) return std::nullopt;
        boost::uintmax_t iters = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            [&](double x) { return phi(x); }, a, b, fa, fb,
            [](double lo, double hi) { return hi - lo <= 4.0 * std::numeric_limits<double>::epsilon(); }, iters);
        const double x = 0.5 * (bracket.first + bracket.second);
        if (!(x > a && x < b)) return std::nullopt;
        nodes.push_back(x);
    }
    return nodes;
}

struct Brasil {
    std::optional<PhaseCertificate> best;
    int iterations = 0;
    bool slipped = false;
};

/// Interval rebalancing from the given nodes until the local maxima of
/// |phase error| agree to tol.
Brasil rebalance(const Target& target, std::vector<double> nodes, double tol, int max_iter) {
    Brasil out;
    double beta = 0.5;
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        std::optional<PhaseCertificate> current;
        std::vector<double> m;
        try {
            const auto r = interpolate_unitary(target, nodes);
            const PhaseErrorFunction phi(r, target.omega());
            m = locate_extrema(phi, nodes).m;
            current = make_certificate(target, r, nodes, phi);
        } catch (const Error&) {
            out.slipped = true;
            break;
        }
        if (*std::max_element(m.begin(), m.end()) >= kPi) {
            out.slipped = true;
            break;
        }
        PhaseCertificate& cert = *current;
        const double dev = cert.deviation;
        cert.iterations = out.iterations;
        if (!out.best || dev < out.best->deviation) out.best = cert;
        if (dev <= tol) break;
        if (dev > previous) beta *= 0.5;
        previous = dev;

        const double mean = std::accumulate(m.begin(), m.end(), 0.0) / static_cast<double>(m.size());
        std::vector<double> breaks{-1.0};
        breaks.insert(breaks.end(), nodes.begin(), nodes.end());
        breaks.push_back(1.0);
        std::vector<double> lengths(m.size());
        for (std::size_t j = 0; j < m.size(); ++j) {
            lengths[j] = (breaks[j + 1] - breaks[j]) * std::pow(m[j] / mean, -beta);
        }
        const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
        double acc = -1.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            acc += 2.0 * lengths[j] / total;
            nodes[j] = acc;
        }
        std::vector<double> mirrored(nodes.rbegin(), nodes.rend());
        for (std::size_t j = 0; j < nodes.size(); ++j) nodes[j] = 0.5 * (nodes[j] - mirrored[j]);
    }
    return out;
}

Equioscillation state_of(const PhaseCertificate& cert) {
    const auto c = cert.approximant.coeffs();
    return {std::vector<cplx>(c.begin(), c.end()), cert.eta, cert.alpha};
}

/// Certificate for a Newton solution, with nodes at the zeros of the phase error.
std::optional<PhaseCertificate> certify_state(const Target& target, const Equioscillation& state) {
    try {
        const auto r = UnitaryRational(state.coeffs).normalized();
        const PhaseErrorFunction phi(r, target.omega());
        const auto nodes = phase_zeros(phi, state.eta);
        if (!nodes) return std::nullopt;
        return make_certificate(target, r, *nodes, phi);
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Follow the solution from a frequency where rebalancing is reliable up to
/// the requested one.
std::optional<Equioscillation> continuation(const Target& target, int& iterations) {
    const int n = target.degree();
    const double omega = target.omega();
    double start = std::min(omega, 0.5 * (n + 1) * kPi);
    std::optional<Equioscillation> state;
    for (int attempt = 0; attempt < 12; ++attempt) {
        const Target t0(start, n);
        const auto b = rebalance(t0, chebyshev_interior_nodes(n), 1e-3, 200);
        iterations += b.iterations;
        if (b.best && b.best->deviation <= 1e-2) state = newton_polish(start, state_of(*b.best));
        if (state) break;
        start *= 0.5;
    }
    if (!state) return std::nullopt;
    double at = start;
    double step = 0.05 * (n + 1) * kPi;
    while (at < omega) {
        const double next = std::min(omega, at + step);
        auto trial = newton_polish(next, *state);
        ++iterations;
        if (trial) {
            state = std::move(trial);
            at = next;
            step *= 1.5;
        } else {
            step *= 0.5;
            if (step < 1e-8 * (n + 1) * kPi) return std::nullopt;
        }
    }
    return state;
}

}  // namespace

UnitaryRational interpolate_unitary(const Target& target, std::span<const double> nodes) {
    validate_nodes(target, nodes);
    const int n = target.degree();
    if (target.omega() == 0.0) return UnitaryRational({cplx{1.0, 0.0}});

    const int rows = 2 * n + 1;
    const int cols = 2 * n + 2;
    Eigen::MatrixXd a(rows, cols);
    for (int j = 0; j < rows; ++j) {
        const double x = nodes[j];
        const cplx ph = std::polar(1.0, 0.5 * target.omega() * x);
        cplx zk{1.0, 0.0};
        for (int k = 0; k <= n; ++k) {
            const cplx t = ph * zk;
            a(j, 2 * k) = t.imag();
            a(j, 2 * k + 1) = t.real();
            zk *= cplx{0.0, x};
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(rows - 1) < 1e-12 * s(0)) {
        throw RankDeficient("interpolate_unitary: interpolation conditions are degenerate");
    }
    const Eigen::VectorXd null = svd.matrixV().col(cols - 1);
    std::vector<cplx> coeffs(n + 1);
    for (int k = 0; k <= n; ++k) coeffs[k] = {null(2 * k), null(2 * k + 1)};
    UnitaryRational r = UnitaryRational(std::move(coeffs)).normalized();
    check_no_pole_on_interval(r);
    return r;
}

PhaseCertificate certify(const Target& target, const UnitaryRational& approximant, std::span<const double> nodes) {
    return make_certificate(target, approximant, nodes, PhaseErrorFunction(approximant, target.omega()));
}

PhaseCertificate solve_unitary(const Target& target, double tol, int max_iter) {
    if (!(tol >= 1e-13 && tol <= 1e-2)) throw std::invalid_argument("solve_unitary: tol must lie in [1e-13, 1e-2]");
    if (max_iter < 1) throw std::invalid_argument("solve_unitary: max_iter must be positive");
    if (!(target.omega() > 0.0)) throw FrequencyOutOfRange("exact: r ≡ 1");
    if (target.is_degenerate()) {
        throw FrequencyOutOfRange("solve_unitary: omega >= (n+1) pi; every unitary function has error 2");
    }

    const auto brasil = rebalance(target, chebyshev_interior_nodes(target.degree()), tol, max_iter);
    int iterations = brasil.iterations;
    std::optional<PhaseCertificate> best = brasil.best;
    auto consider = [&](std::optional<PhaseCertificate> cert) {
        if (!cert) return false;
        cert->iterations = iterations;
        if (!best || cert->deviation < best->deviation) best = std::move(cert);
        return best->deviation <= tol;
    };

    if (best && best->deviation <= tol) return *best;
    if (best && !brasil.slipped && best->deviation <= 1e-2) {
        const auto polished = newton_polish(target.omega(), state_of(*best));
        ++iterations;
        if (polished && consider(certify_state(target, *polished))) return *best;
    }
    if (const auto state = continuation(target, iterations)) {
        if (consider(certify_state(target, *state))) return *best;
    }
    if (!best) {
        throw NotConverged(PhaseCertificate{target, UnitaryRational({cplx{1.0, 0.0}})}, max_iter);
    }
    best->iterations = iterations;
    throw NotConverged(*best, max_iter);
}

}  // namespace unirat
