#include "unirat/cheb_minimax.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "unirat/detail/full_family.hpp"
#include "unirat/detail/numerics.hpp"
#include "unirat/unitary_remez.hpp"

namespace unirat {

BarycentricRational::BarycentricRational(std::vector<cplx> support, std::vector<cplx> values,
                                         std::vector<cplx> weights)
    : support_(std::move(support)), values_(std::move(values)), weights_(std::move(weights)) {
    if (support_.empty()) throw std::invalid_argument("BarycentricRational: no support points");
    if (values_.size() != support_.size() || weights_.size() != support_.size()) {
        throw std::invalid_argument("BarycentricRational: support, values and weights differ in size");
    }
    for (std::size_t j = 0; j < support_.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            if (support_[j] == support_[k]) throw std::invalid_argument("BarycentricRational: repeated support point");
        }
    }
    if (std::all_of(weights_.begin(), weights_.end(), [](cplx w) { return w == cplx{}; })) {
        throw std::invalid_argument("BarycentricRational: all weights are zero");
    }
}

cplx BarycentricRational::at(cplx z) const {
    cplx num{};
    cplx den{};
    for (std::size_t j = 0; j < support_.size(); ++j) {
        if (z == support_[j]) {
            if (weights_[j] != cplx{}) return values_[j];
            continue;
        }
        const cplx c = weights_[j] / (z - support_[j]);
        num += c * values_[j];
        den += c;
    }
    return num / den;
}

std::vector<cplx> BarycentricRational::poles() const {
    // coefficients of sum_j w_j prod_{k != j} (z - z_k), lowest degree first
    const std::size_t m = support_.size();
    std::vector<cplx> den(m, cplx{});
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<cplx> term{weights_[j]};
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j) continue;
            std::vector<cplx> next(term.size() + 1, cplx{});
            for (std::size_t d = 0; d < term.size(); ++d) {
                next[d] -= support_[k] * term[d];
                next[d + 1] += term[d];
            }
            term = std::move(next);
        }
        for (std::size_t d = 0; d < term.size(); ++d) den[d] += term[d];
    }
    double scale = 0.0;
    for (const cplx& c : den) scale = std::max(scale, std::abs(c));
    while (den.size() > 1 && std::abs(den.back()) <= 1e-13 * scale) den.pop_back();
    const auto degree = static_cast<Eigen::Index>(den.size()) - 1;
    if (degree < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -den[i] / den.back();
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion, false);
    std::vector<cplx> out(eig.eigenvalues().begin(), eig.eigenvalues().end());
    return out;
}

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Problem {
    Target target;
    std::vector<double> x;
    std::vector<cplx> z;
    std::vector<cplx> f;
};

Problem make_problem(const Target& target, int grid_size) {
    Problem p{target, detail::chebyshev_lobatto(static_cast<std::size_t>(grid_size)), {}, {}};
    for (double x : p.x) {
        p.z.emplace_back(0.0, x);
        p.f.push_back(target(x));
    }
    return p;
}

std::vector<double> error_curve(const BarycentricRational& r, const Problem& p) {
    std::vector<double> e(p.x.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::abs(r.at(p.z[k]) - p.f[k]);
    return e;
}

/// Max of the error curve after golden-section refinement around each local maximum.
double refined_max(const BarycentricRational& r, const Problem& p, std::span<const double> e) {
    auto err = [&](double x) { return std::abs(r(x) - p.target(x)); };
    double best = *std::max_element(e.begin(), e.end());
    const std::size_t last = e.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const bool left_ok = k == 0 || e[k] >= e[k - 1];
        const bool right_ok = k == last || e[k] >= e[k + 1];
        if (!(left_ok && right_ok)) continue;
        const double lo = p.x[k == 0 ? 0 : k - 1];
        const double hi = p.x[k == last ? last : k + 1];
        best = std::max(best, detail::golden_section_max(err, lo, hi).value);
    }
    return best;
}

bool pole_on_segment(const BarycentricRational& r) {
    for (const cplx& z : r.poles()) {
        if (std::abs(z.real()) < 1e-8 && std::abs(z.imag()) <= 1.0 + 1e-8) return true;
    }
    return false;
}

struct Aaa {
    std::vector<std::size_t> support;
    bool unreachable = false;
};

/// Greedy AAA up to n+1 support points.
Aaa run_aaa(const Problem& p, int n) {
    const std::size_t m = p.x.size();
    Aaa out;
    std::vector<bool> used(m, false);
    const cplx mean = std::accumulate(p.f.begin(), p.f.end(), cplx{}) / static_cast<double>(m);
    std::vector<cplx> r(m, mean);
    double fscale = 0.0;
    for (const cplx& v : p.f) fscale = std::max(fscale, std::abs(v));
    for (int step = 0; step <= n; ++step) {
        std::size_t worst = m;
        double worst_err = -1.0;
        for (std::size_t k = 0; k < m; ++k) {
            if (used[k]) continue;
            const double e = std::abs(p.f[k] - r[k]);
            if (e > worst_err) {
                worst_err = e;
                worst = k;
            }
        }
        if (step > 0 && worst_err <= 1e-14 * fscale) {
            out.unreachable = true;
            break;
        }
        used[worst] = true;
        out.support.push_back(worst);

        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < m; ++k) {
            if (!used[k]) rest.push_back(k);
        }
        const auto cols = static_cast<Eigen::Index>(out.support.size());
        Mat c(static_cast<Eigen::Index>(rest.size()), cols);
        Mat loewner(c.rows(), cols);
        for (Eigen::Index i = 0; i < c.rows(); ++i) {
            for (Eigen::Index j = 0; j < cols; ++j) {
                const std::size_t s = out.support[j];
                c(i, j) = 1.0 / (p.z[rest[i]] - p.z[s]);
                loewner(i, j) = (p.f[rest[i]] - p.f[s]) * c(i, j);
            }
        }
        const Eigen::JacobiSVD<Mat> svd(loewner, Eigen::ComputeThinV);
        const Vec w = svd.matrixV().col(cols - 1);
        Vec fw(cols);
        for (Eigen::Index j = 0; j < cols; ++j) fw(j) = w(j) * p.f[out.support[j]];
        const Vec num = c * fw;
        const Vec den = c * w;
        r = p.f;
        for (Eigen::Index i = 0; i < c.rows(); ++i) r[rest[i]] = num(i) / den(i);
    }
    return out;
}

struct Lawson {
    Vec a;  ///< numerator coefficients: N(z) = sum_j a_j / (z - z_j)
    Vec b;  ///< denominator coefficients
    double max_err = std::numeric_limits<double>::infinity();
    double flatness = 1.0;
    int iterations = 0;
};

/// Lawson iteration with the denominator-normalized linearization: b is the
/// smallest right singular vector of (I - QQ*) sqrt(W) F C with Q spanning
/// sqrt(W) C, and a is the weighted least-squares numerator for that b.
Lawson run_lawson(const Problem& p, std::span<const std::size_t> support, int max_iters) {
    const auto cols = static_cast<Eigen::Index>(support.size());
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < p.x.size(); ++k) {
        if (std::find(support.begin(), support.end(), k) == support.end()) rest.push_back(k);
    }
    const auto rows = static_cast<Eigen::Index>(rest.size());
    Mat c(rows, cols);
    Vec f(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        f(i) = p.f[rest[i]];
        for (Eigen::Index j = 0; j < cols; ++j) c(i, j) = 1.0 / (p.z[rest[i]] - p.z[support[j]]);
    }
    Eigen::VectorXd weights = Eigen::VectorXd::Constant(rows, 1.0 / static_cast<double>(rows));
    const Mat fc = f.asDiagonal() * c;

    Lawson best;
    std::vector<double> flat_history;
    for (int it = 0; it < std::max(1, max_iters); ++it) {
        const Eigen::VectorXd sq = weights.cwiseSqrt();
        const Mat a_mat = sq.cast<cplx>().asDiagonal() * c;
        const Eigen::HouseholderQR<Mat> qr(a_mat);
        const Mat q = qr.householderQ() * Mat::Identity(rows, cols);
        Mat bm = sq.cast<cplx>().asDiagonal() * fc;
        bm -= q * (q.adjoint() * bm);
        const Eigen::HouseholderQR<Mat> qb(bm);
        const Mat rb = qb.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
        const Eigen::JacobiSVD<Mat> svd(rb, Eigen::ComputeFullV);
        const Vec b = svd.matrixV().col(cols - 1);
        const Vec den = c * b;
        const Vec rhs = sq.cast<cplx>().cwiseProduct(f.cwiseProduct(den));
        const Vec a = qr.solve(rhs);
        const Vec num = c * a;

        Eigen::VectorXd e(rows);
        for (Eigen::Index i = 0; i < rows; ++i) e(i) = std::abs(num(i) / den(i) - f(i));
        if (!e.allFinite()) break;
        const double emax = e.maxCoeff();
        const double rms = std::sqrt(weights.dot(e.cwiseAbs2()));
        const double flat = emax > 0.0 ? std::clamp((emax - rms) / emax, 0.0, 1.0) : 0.0;
        flat_history.push_back(flat);
        if (emax < best.max_err) {
            best.a = a;
            best.b = b;
            best.max_err = emax;
            best.flatness = flat;
        }
        best.iterations = it + 1;
        if (it >= 50 && flat_history[it - 50] - flat < 1e-4) break;

        weights = weights.cwiseProduct(e);
        const double total = weights.sum();
        if (!(total > 0.0)) break;
        weights /= total;
    }
    return best;
}

BarycentricRational lawson_approximant(const Problem& p, std::span<const std::size_t> support, const Lawson& l) {
    std::vector<cplx> zs;
    std::vector<cplx> values;
    std::vector<cplx> weights;
    for (std::size_t j = 0; j < support.size(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        zs.push_back(p.z[support[j]]);
        weights.push_back(l.b(jj));
        values.push_back(l.b(jj) == cplx{} ? cplx{} : l.a(jj) / l.b(jj));
    }
    return BarycentricRational(std::move(zs), std::move(values), std::move(weights));
}

/// Rational functions with r(ix) = P(i omega x) / Q(i omega x), P and Q real,
/// Q(0) = 1. These satisfy r(-ix) = conj(r(ix)), the symmetry of the target.
/// theta = (P_0..P_n, Q_1..Q_n).
class SymmetricFamily {
public:
    SymmetricFamily(int n, double omega) : n_(n), omega_(omega) {}

    struct Eval {
        cplx r, e, de;
        Eigen::VectorXcd jac;
    };

    Eval eval(const Eigen::VectorXd& theta, double x, bool with_jac = true) const {
        const cplx u{0.0, omega_ * x};
        cplx pv{}, qv{1.0, 0.0}, dp{}, dq{};
        std::vector<cplx> pw(n_ + 1);
        cplx up{1.0, 0.0};
        for (int k = 0; k <= n_; ++k) {
            pw[k] = up;
            up *= u;
        }
        for (int k = 0; k <= n_; ++k) {
            pv += theta(k) * pw[k];
            if (k >= 1) {
                dp += theta(k) * static_cast<double>(k) * pw[k - 1];
                qv += theta(n_ + k) * pw[k];
                dq += theta(n_ + k) * static_cast<double>(k) * pw[k - 1];
            }
        }
        Eval out;
        const cplx iw{0.0, omega_};
        const cplx target = std::polar(1.0, omega_ * x);
        out.r = pv / qv;
        out.e = out.r - target;
        out.de = (dp * qv - pv * dq) / (qv * qv) * iw - iw * target;
        if (with_jac) {
            out.jac.resize(2 * n_ + 1);
            for (int k = 0; k <= n_; ++k) out.jac(k) = pw[k] / qv;
            for (int k = 1; k <= n_; ++k) out.jac(n_ + k) = -out.r * pw[k] / qv;
        }
        return out;
    }

    double phi(const Eigen::VectorXd& theta, double x) const { return std::norm(eval(theta, x, false).e); }

    Eigen::VectorXd grad(const Eigen::VectorXd& theta, double x) const {
        const auto v = eval(theta, x);
        return 2.0 * (std::conj(v.e) * v.jac).real();
    }

    double dphi_dx(const Eigen::VectorXd& theta, double x) const {
        const auto v = eval(theta, x, false);
        return 2.0 * (std::conj(v.e) * v.de).real();
    }

    /// Least-squares fit of P - r Q = 0 to the symmetric part of r on [0, 1].
    template <class R>
    Eigen::VectorXd fit(const R& r) const {
        const int count = 400;
        const int unknowns = 2 * n_ + 1;
        Eigen::MatrixXd a(2 * count, unknowns);
        Eigen::VectorXd rhs(2 * count);
        const auto xs = detail::linspace(0.0, 1.0, count);
        for (int i = 0; i < count; ++i) {
            const double x = xs[i];
            const cplx rs = 0.5 * (r(x) + std::conj(r(-x)));
            const cplx u{0.0, omega_ * x};
            cplx up{1.0, 0.0};
            for (int k = 0; k <= n_; ++k) {
                a(i, k) = up.real();
                a(count + i, k) = up.imag();
                if (k >= 1) {
                    a(i, n_ + k) = (-rs * up).real();
                    a(count + i, n_ + k) = (-rs * up).imag();
                }
                up *= u;
            }
            rhs(i) = rs.real();
            rhs(count + i) = rs.imag();
        }
        return a.colPivHouseholderQr().solve(rhs);
    }

    /// Barycentric form on n+1 Chebyshev points of i[-1, 1].
    BarycentricRational to_barycentric(const Eigen::VectorXd& theta) const {
        std::vector<cplx> zs;
        for (int j = 0; j <= n_; ++j) zs.emplace_back(0.0, -std::cos(kPi * (j + 0.5) / (n_ + 1)));
        std::vector<cplx> values;
        std::vector<cplx> weights;
        for (int j = 0; j <= n_; ++j) {
            const cplx u = omega_ * zs[j];
            cplx qv{1.0, 0.0}, pv{}, up{1.0, 0.0};
            for (int k = 0; k <= n_; ++k) {
                pv += theta(k) * up;
                if (k >= 1) qv += theta(n_ + k) * up;
                up *= u;
            }
            cplx lprime{1.0, 0.0};
            for (int k = 0; k <= n_; ++k) {
                if (k != j) lprime *= zs[j] - zs[k];
            }
            values.push_back(pv / qv);
            weights.push_back(qv / lprime);
        }
        double scale = 0.0;
        for (const cplx& w : weights) scale = std::max(scale, std::abs(w));
        for (cplx& w : weights) w /= scale;
        return BarycentricRational(std::move(zs), std::move(values), std::move(weights));
    }

    int n() const { return n_; }

private:
    int n_;
    double omega_;
};

/// Newton solve of the first-order optimality conditions on [0, 1] for the
/// symmetric family, with active set {1} plus n interior error maxima:
///   phi(x_k) = E^2,  phi'(x_k) = 0 (interior),  sum_k lambda_k grad phi(x_k) = 0,  sum_k lambda_k = 1.
std::optional<Eigen::VectorXd> kkt_polish(const SymmetricFamily& fam, Eigen::VectorXd theta) {
    const int n = fam.n();
    const int m = 2 * n + 1;
    const auto xs = detail::linspace(0.0, 1.0, 4001);
    std::vector<double> a(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) a[k] = std::sqrt(fam.phi(theta, xs[k]));
    if (!std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); })) return std::nullopt;
    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k + 1 < xs.size(); ++k) {
        if (a[k] >= a[k - 1] && a[k] >= a[k + 1]) peaks.push_back(k);
    }
    if (static_cast<int>(peaks.size()) < n) return std::nullopt;
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });
    peaks.resize(n);
    std::sort(peaks.begin(), peaks.end());

    const int size = 4 * n + 3;
    Eigen::VectorXd v(size);
    v.head(m) = theta;
    for (int k = 0; k < n; ++k) v(m + k) = xs[peaks[k]];
    {
        Eigen::MatrixXd g(m + 1, n + 1);
        g.row(m).setOnes();
        g.col(0).head(m) = fam.grad(theta, 1.0);
        for (int k = 0; k < n; ++k) g.col(k + 1).head(m) = fam.grad(theta, xs[peaks[k]]);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
        rhs(m) = 1.0;
        v.segment(m + n, n + 1) = g.colPivHouseholderQr().solve(rhs);
    }
    v(size - 1) = std::pow(*std::max_element(a.begin(), a.end()), 2);

    auto residual = [&](const Eigen::VectorXd& u) {
        const Eigen::VectorXd th = u.head(m);
        Eigen::VectorXd f(size);
        Eigen::VectorXd stationarity = Eigen::VectorXd::Zero(m);
        for (int k = 0; k <= n; ++k) {
            const double x = k == 0 ? 1.0 : u(m + k - 1);
            const double lambda = u(m + n + k);
            f(k) = fam.phi(th, x) - u(size - 1);
            if (k > 0) f(n + k) = fam.dphi_dx(th, x);
            stationarity += lambda * fam.grad(th, x);
        }
        f.segment(2 * n + 1, m) = stationarity;
        f(size - 1) = u.segment(m + n, n + 1).sum() - 1.0;
        return f;
    };

    Eigen::VectorXd f = residual(v);
    for (int it = 0; it < 40; ++it) {
        if (!f.allFinite()) return std::nullopt;
        Eigen::MatrixXd jac(size, size);
        for (int i = 0; i < size; ++i) {
            const double h = 1e-7 * std::max(1.0, std::abs(v(i)));
            Eigen::VectorXd vp = v;
            Eigen::VectorXd vm = v;
            vp(i) += h;
            vm(i) -= h;
            jac.col(i) = (residual(vp) - residual(vm)) / (2.0 * h);
        }
        const Eigen::VectorXd d = jac.colPivHouseholderQr().solve(-f);
        if (!d.allFinite()) return std::nullopt;
        const double fnorm = f.lpNorm<Eigen::Infinity>();
        double t = 1.0;
        Eigen::VectorXd trial = v + d;
        Eigen::VectorXd ft = residual(trial);
        while (t > 1e-3 && !(ft.allFinite() && ft.lpNorm<Eigen::Infinity>() < fnorm * (1.0 - 0.1 * t))) {
            t *= 0.5;
            trial = v + t * d;
            ft = residual(trial);
        }
        v = trial;
        f = ft;
        if ((t * d).lpNorm<Eigen::Infinity>() < 1e-15) break;
    }
    if (!v.allFinite()) return std::nullopt;
    return Eigen::VectorXd(v.head(m));
}

struct Candidate {
    BarycentricRational r;
    std::vector<double> curve;
    double error = std::numeric_limits<double>::infinity();
    bool polished = false;
};

Candidate evaluate(BarycentricRational r, const Problem& p, bool polished, bool check_poles = true) {
    Candidate c{std::move(r), {}, std::numeric_limits<double>::infinity(), polished};
    if (check_poles && pole_on_segment(c.r)) return c;
    c.curve = error_curve(c.r, p);
    if (!std::all_of(c.curve.begin(), c.curve.end(), [](double v) { return std::isfinite(v); })) return c;
    c.error = refined_max(c.r, p, c.curve);
    return c;
}

/// cos(alpha) r^u from the unitary best approximant: with |phase error| <= alpha,
/// |cos(alpha) e^{i phi} - 1|^2 = 1 + cos^2 alpha - 2 cos alpha cos phi <= sin^2 alpha,
/// so for alpha < pi/2 this has error sin alpha < 2 sin(alpha/2).
std::optional<BarycentricRational> scaled_unitary(const Target& target) {
    if (!(target.omega() > 0.0) || target.is_degenerate()) return std::nullopt;
    std::optional<PhaseCertificate> cert;
    try {
        cert = solve_unitary(target);
    } catch (const NotConverged& e) {
        if (e.best().eta.empty()) return std::nullopt;
        cert = e.best();
    } catch (const Error&) {
        return std::nullopt;
    }
    if (!(cert->alpha < 0.5 * kPi)) return std::nullopt;
    const double c = std::cos(cert->alpha);
    const int n = target.degree();
    const auto a = cert->approximant.coeffs();
    const auto ad = dagger(a);
    std::vector<cplx> zs;
    std::vector<cplx> values;
    std::vector<cplx> weights;
    for (int j = 0; j <= n; ++j) zs.emplace_back(0.0, -std::cos(kPi * (j + 0.5) / (n + 1)));
    for (int j = 0; j <= n; ++j) {
        cplx lprime{1.0, 0.0};
        for (int k = 0; k <= n; ++k) {
            if (k != j) lprime *= zs[j] - zs[k];
        }
        const cplx pz = polyval(a, zs[j]);
        values.push_back(c * polyval(ad, zs[j]) / pz);
        weights.push_back(pz / lprime);
    }
    double scale = 0.0;
    for (const cplx& w : weights) scale = std::max(scale, std::abs(w));
    for (cplx& w : weights) w /= scale;
    return BarycentricRational(std::move(zs), std::move(values), std::move(weights));
}

bool froissart(const BarycentricRational& r) {
    const auto poles = r.poles();
    for (const cplx& z : r.support()) {
        for (const cplx& pole : poles) {
            if (std::abs(pole - z) < 1e-12) return true;
        }
    }
    for (const cplx& w : r.weights()) {
        if (w == cplx{}) return true;
    }
    return false;
}

}  // namespace

MinimaxResult solve_chebyshev(const Target& target, int grid_size, int lawson_iters) {
    const int n = target.degree();
    if (grid_size < default_grid_size(n)) {
        throw std::invalid_argument("solve_chebyshev: grid_size must be at least max(1000, 20 (2n+2))");
    }
    if (lawson_iters < 0) throw std::invalid_argument("solve_chebyshev: lawson_iters must be nonnegative");
    const Problem p = make_problem(target, grid_size);

    if (target.omega() == 0.0) {
        BarycentricRational one({cplx{}}, {cplx{1.0, 0.0}}, {cplx{1.0, 0.0}});
        return MinimaxResult{target, std::move(one), 0.0, p.x, std::vector<double>(p.x.size(), 0.0),
                             0, true, 0.0, false, false, false};
    }

    auto aaa = run_aaa(p, n);
    auto lawson = run_lawson(p, aaa.support, lawson_iters);
    bool froissart_detected = false;
    if (froissart(lawson_approximant(p, aaa.support, lawson))) {
        froissart_detected = true;
        const auto r = lawson_approximant(p, aaa.support, lawson);
        const auto curve = error_curve(r, p);
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t k = 0; k < curve.size(); ++k) {
            const bool is_support = std::find(aaa.support.begin(), aaa.support.end(), k) != aaa.support.end();
            if (!is_support && std::isfinite(curve[k]) && curve[k] > worst_err) {
                worst_err = curve[k];
                worst = k;
            }
        }
        const auto poles = r.poles();
        for (std::size_t j = 0; j < aaa.support.size(); ++j) {
            const cplx z = p.z[aaa.support[j]];
            const bool doubled = lawson.b(static_cast<Eigen::Index>(j)) == cplx{} ||
                                 std::any_of(poles.begin(), poles.end(),
                                             [&](cplx pole) { return std::abs(pole - z) < 1e-12; });
            if (doubled) {
                aaa.support[j] = worst;
                break;
            }
        }
        lawson = run_lawson(p, aaa.support, lawson_iters);
    }

    std::vector<Candidate> candidates;
    const auto lawson_r = lawson_approximant(p, aaa.support, lawson);
    candidates.push_back(evaluate(lawson_r, p, false));

    const SymmetricFamily fam(n, target.omega());
    auto polish_from = [&](const BarycentricRational& start) {
        const Eigen::VectorXd theta0 = fam.fit(start);
        if (!theta0.allFinite()) return;
        if (const auto theta = kkt_polish(fam, theta0)) {
            candidates.push_back(evaluate(fam.to_barycentric(*theta), p, true));
        }
    };
    polish_from(lawson_r);
    if (const auto su = scaled_unitary(target)) {
        candidates.push_back(evaluate(*su, p, false));
        polish_from(*su);
    }

    std::vector<cplx> zeros(aaa.support.size(), cplx{});
    std::vector<cplx> ones(aaa.support.size(), cplx{1.0, 0.0});
    std::vector<cplx> zs;
    for (std::size_t s : aaa.support) zs.push_back(p.z[s]);
    // r = 0 has removable denominator zeros between the support points
    candidates.push_back(evaluate(BarycentricRational(zs, zeros, ones), p, false, false));

    auto by_error = [](const Candidate& a, const Candidate& b) { return a.error < b.error; };
    const auto symmetric_best = std::min_element(candidates.begin(), candidates.end(), by_error)->r;
    for (auto& point : detail::full_family_search(target, symmetric_best, p.x)) {
        candidates.push_back(evaluate(std::move(point.r), p, point.newton));
    }

    auto best = std::min_element(candidates.begin(), candidates.end(), by_error);
    MinimaxResult out{target, best->r, best->error, p.x, best->curve, lawson.iterations,
                      lawson.flatness <= 1e-3, lawson.flatness, aaa.unreachable, froissart_detected, best->polished};
    return out;
}

MonotonicityReport error_monotonicity_check(int n, std::span<const double> omegas, int grid_size, int lawson_iters,
                                            double tol) {
    for (std::size_t k = 1; k < omegas.size(); ++k) {
        if (omegas[k] < omegas[k - 1]) throw std::invalid_argument("error_monotonicity_check: omegas must increase");
    }
    if (grid_size <= 0) grid_size = default_grid_size(n);
    MonotonicityReport report;
    for (double omega : omegas) report.errors.push_back(solve_chebyshev(Target(omega, n), grid_size, lawson_iters).error_c);
    for (std::size_t k = 0; k + 1 < report.errors.size(); ++k) {
        if (report.errors[k] > report.errors[k + 1] + tol) {
            report.pass = false;
            report.first_violation = k;
            break;
        }
    }
    return report;
}

}  // namespace unirat
