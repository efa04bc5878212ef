#include "unirat/detail/full_family.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "unirat/detail/linprog.hpp"
#include "unirat/detail/numerics.hpp"

namespace unirat::detail {

namespace {

/// theta = (Re P_0..P_n, Im P_0..P_n, Re Q_1..Q_n, Im Q_1..Q_n) for
/// r(ix) = P(ix) / Q(ix) with Q_0 = 1.
class FullFamily {
public:
    FullFamily(int n, double omega) : n_(n), omega_(omega) {}

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int size() const { return 4 * n_ + 2; }

    struct Eval {
        cplx r, e, de;
        Eigen::VectorXcd jac;
    };

    [[nodiscard]] Eval eval(const Eigen::VectorXd& theta, double x, bool with_jac = true) const {
        const cplx z{0.0, x};
        std::vector<cplx> pw(static_cast<std::size_t>(n_) + 1);
        cplx up{1.0, 0.0};
        for (int k = 0; k <= n_; ++k) {
            pw[k] = up;
            up *= z;
        }
        cplx pv{}, qv{1.0, 0.0}, dp{}, dq{};
        for (int k = 0; k <= n_; ++k) {
            const cplx pk = p_coeff(theta, k);
            pv += pk * pw[k];
            if (k >= 1) {
                const cplx qk = q_coeff(theta, k);
                dp += pk * static_cast<double>(k) * pw[k - 1];
                qv += qk * pw[k];
                dq += qk * static_cast<double>(k) * pw[k - 1];
            }
        }
        const cplx iu{0.0, 1.0};
        const cplx target = std::polar(1.0, omega_ * x);
        Eval out;
        out.r = pv / qv;
        out.e = out.r - target;
        out.de = iu * (dp * qv - pv * dq) / (qv * qv) - iu * omega_ * target;
        if (with_jac) {
            out.jac.resize(size());
            for (int k = 0; k <= n_; ++k) {
                out.jac(k) = pw[k] / qv;
                out.jac(n_ + 1 + k) = iu * pw[k] / qv;
            }
            for (int k = 1; k <= n_; ++k) {
                out.jac(2 * n_ + 1 + k) = -out.r * pw[k] / qv;
                out.jac(3 * n_ + 1 + k) = -iu * out.r * pw[k] / qv;
            }
        }
        return out;
    }

    [[nodiscard]] double phi(const Eigen::VectorXd& theta, double x) const { return std::norm(eval(theta, x, false).e); }

    [[nodiscard]] Eigen::VectorXd grad(const Eigen::VectorXd& theta, double x) const {
        const auto v = eval(theta, x);
        return 2.0 * (std::conj(v.e) * v.jac).real();
    }

    [[nodiscard]] double dphi_dx(const Eigen::VectorXd& theta, double x) const {
        const auto v = eval(theta, x, false);
        return 2.0 * (std::conj(v.e) * v.de).real();
    }

    /// Least-squares fit of P - r (Q - 1) = r on Chebyshev points of [-1, 1].
    template <class R>
    [[nodiscard]] Eigen::VectorXd fit(const R& r) const {
        const auto xs = chebyshev_lobatto(400);
        const auto count = static_cast<Eigen::Index>(xs.size());
        Eigen::MatrixXd a(2 * count, size());
        Eigen::VectorXd rhs(2 * count);
        const cplx iu{0.0, 1.0};
        for (Eigen::Index i = 0; i < count; ++i) {
            const cplx z{0.0, xs[i]};
            const cplx rv = r(xs[i]);
            cplx up{1.0, 0.0};
            for (int k = 0; k <= n_; ++k) {
                const cplx cols[] = {up, iu * up, -rv * up, -iu * rv * up};
                for (int part = 0; part < 4; ++part) {
                    if (part >= 2 && k == 0) continue;
                    const Eigen::Index col = part < 2 ? part * (n_ + 1) + k : 2 * (n_ + 1) + (part - 2) * n_ + k - 1;
                    a(i, col) = cols[part].real();
                    a(count + i, col) = cols[part].imag();
                }
                up *= z;
            }
            rhs(i) = rv.real();
            rhs(count + i) = rv.imag();
        }
        return a.colPivHouseholderQr().solve(rhs);
    }

    /// Barycentric form on n+1 Chebyshev points of i[-1, 1].
    [[nodiscard]] std::optional<BarycentricRational> to_barycentric(const Eigen::VectorXd& theta) const {
        std::vector<cplx> zs;
        for (int j = 0; j <= n_; ++j) zs.emplace_back(0.0, -std::cos(kPi * (j + 0.5) / (n_ + 1)));
        std::vector<cplx> values;
        std::vector<cplx> weights;
        for (int j = 0; j <= n_; ++j) {
            cplx pv{}, qv{1.0, 0.0}, up{1.0, 0.0};
            for (int k = 0; k <= n_; ++k) {
                pv += p_coeff(theta, k) * up;
                if (k >= 1) qv += q_coeff(theta, k) * up;
                up *= zs[j];
            }
            cplx lprime{1.0, 0.0};
            for (int k = 0; k <= n_; ++k) {
                if (k != j) lprime *= zs[j] - zs[k];
            }
            if (qv == cplx{}) return std::nullopt;
            values.push_back(pv / qv);
            weights.push_back(qv / lprime);
        }
        double scale = 0.0;
        for (const cplx& w : weights) scale = std::max(scale, std::abs(w));
        if (!(scale > 0.0) || !std::isfinite(scale)) return std::nullopt;
        for (cplx& w : weights) w /= scale;
        return BarycentricRational(std::move(zs), std::move(values), std::move(weights));
    }

private:
    [[nodiscard]] cplx p_coeff(const Eigen::VectorXd& theta, int k) const { return {theta(k), theta(n_ + 1 + k)}; }
    [[nodiscard]] cplx q_coeff(const Eigen::VectorXd& theta, int k) const {
        return {theta(2 * n_ + k + 1), theta(3 * n_ + k + 1)};
    }

    int n_;
    double omega_;
};

std::vector<double> grid_error(const FullFamily& fam, const Eigen::VectorXd& theta, std::span<const double> grid) {
    std::vector<double> a(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) a[k] = std::sqrt(fam.phi(theta, grid[k]));
    return a;
}

double max_or_inf(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, v);
    }
    return m;
}

/// Indices of grid-curve local maxima with value >= level.
std::vector<std::size_t> peaks_above(std::span<const double> a, double level) {
    std::vector<std::size_t> out;
    const std::size_t last = a.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const bool left_ok = k == 0 || a[k] >= a[k - 1];
        const bool right_ok = k == last || a[k] >= a[k + 1];
        if (left_ok && right_ok && a[k] >= level) out.push_back(k);
    }
    return out;
}

struct Local {
    Eigen::VectorXd theta;
    double error = std::numeric_limits<double>::infinity();
};

/// Trust-region descent for min_theta max_k |e(x_k)| near the error peaks.
/// Each step minimizes max_k |e_k + J_k d| over the box |d| <= radius; the
/// discs are replaced by supporting half-planes, added where the current LP
/// solution leaves a disc, until the model is met to a relative 1e-10.
Local descend(const FullFamily& fam, Eigen::VectorXd theta, std::span<const double> grid, int max_iter) {
    const int size = fam.size();
    auto a = grid_error(fam, theta, grid);
    double err = max_or_inf(a);
    if (!std::isfinite(err)) return {};
    double radius = 0.1;
    for (int it = 0; it < max_iter && radius > 1e-12; ++it) {
        std::vector<std::size_t> rows;
        for (std::size_t k : peaks_above(a, 0.5 * err)) {
            const std::size_t lo = k >= 2 ? k - 2 : 0;
            const std::size_t hi = std::min(grid.size() - 1, k + 2);
            for (std::size_t j = lo; j <= hi; ++j) {
                if (rows.empty() || rows.back() < j) rows.push_back(j);
            }
        }
        std::vector<cplx> e;
        std::vector<Eigen::VectorXcd> jac;
        struct Cut {
            std::size_t row;
            cplx u;
        };
        std::vector<Cut> cuts;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto v = fam.eval(theta, grid[rows[i]]);
            const double mod = std::abs(v.e);
            cuts.push_back({i, mod > 0.0 ? v.e / mod : cplx{1.0, 0.0}});
            e.push_back(v.e);
            jac.push_back(std::move(v.jac));
        }
        auto linear = [&](std::size_t i, const Eigen::VectorXd& d) {
            return e[i] + (jac[i].array() * d.cast<cplx>().array()).sum();
        };
        auto model = [&](const Eigen::VectorXd& d) {
            double m = 0.0;
            for (std::size_t i = 0; i < e.size(); ++i) m = std::max(m, std::abs(linear(i, d)));
            return m;
        };

        std::optional<Eigen::VectorXd> step;
        for (int round = 0; round < 12; ++round) {
            const auto nc = static_cast<Eigen::Index>(cuts.size());
            Eigen::MatrixXd lp = Eigen::MatrixXd::Zero(nc + 2 * size, size + 1);
            Eigen::VectorXd rhs(nc + 2 * size);
            for (Eigen::Index i = 0; i < nc; ++i) {
                const auto& cut = cuts[i];
                lp.row(i).head(size) = (std::conj(cut.u) * jac[cut.row]).real().transpose();
                lp(i, size) = -1.0;
                rhs(i) = -(std::conj(cut.u) * e[cut.row]).real();
            }
            for (int j = 0; j < size; ++j) {
                lp(nc + 2 * j, j) = 1.0;
                lp(nc + 2 * j + 1, j) = -1.0;
                rhs(nc + 2 * j) = radius;
                rhs(nc + 2 * j + 1) = radius;
            }
            Eigen::VectorXd c = Eigen::VectorXd::Zero(size + 1);
            c(size) = 1.0;
            const auto sol = solve_lp(c, lp, rhs);
            if (!sol) break;
            const double level = (*sol)(size);
            step = sol->head(size);
            bool added = false;
            for (std::size_t i = 0; i < e.size(); ++i) {
                const cplx z = linear(i, *step);
                if (std::abs(z) > level + 1e-7 * std::abs(level)) {
                    cuts.push_back({i, z / std::abs(z)});
                    added = true;
                }
            }
            if (!added) break;
        }
        if (!step) {
            radius *= 0.25;
            continue;
        }
        const double predicted = err - model(*step);
        if (!(predicted > 1e-15 * err)) break;
        const Eigen::VectorXd trial = theta + *step;
        auto at = grid_error(fam, trial, grid);
        const double trial_err = max_or_inf(at);
        const double rho = (err - trial_err) / predicted;
        if (rho > 0.01) {
            theta = trial;
            a = std::move(at);
            err = trial_err;
        }
        if (rho > 0.75) {
            radius = std::min(2.0 * radius, 10.0);
        } else if (rho < 0.25) {
            radius *= 0.25;
        }
    }
    return {theta, err};
}

/// Newton solve of the optimality conditions with the given active points:
///   phi(x_k) = E^2,  phi'(x_k) = 0 (interior),  sum_k lambda_k grad phi(x_k) = 0,  sum_k lambda_k = 1.
std::optional<Eigen::VectorXd> kkt_newton(const FullFamily& fam, const Eigen::VectorXd& theta0,
                                          std::span<const double> active) {
    const int nt = fam.size();
    const auto m = static_cast<int>(active.size());
    if (m < 1 || m > nt + 1) return std::nullopt;
    std::vector<int> interior;
    for (int k = 0; k < m; ++k) {
        if (std::abs(active[k]) < 1.0) interior.push_back(k);
    }
    const auto mi = static_cast<int>(interior.size());
    const int size = nt + mi + m + 1;

    Eigen::VectorXd v(size);
    v.head(nt) = theta0;
    for (int j = 0; j < mi; ++j) v(nt + j) = active[interior[j]];
    {
        Eigen::MatrixXd g(nt + 1, m);
        g.row(nt).setOnes();
        for (int k = 0; k < m; ++k) g.col(k).head(nt) = fam.grad(theta0, active[k]);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nt + 1);
        rhs(nt) = 1.0;
        v.segment(nt + mi, m) = g.colPivHouseholderQr().solve(rhs);
    }
    double e2 = 0.0;
    for (double x : active) e2 = std::max(e2, fam.phi(theta0, x));
    v(size - 1) = e2;

    auto points = [&](const Eigen::VectorXd& u) {
        std::vector<double> xs(active.begin(), active.end());
        for (int j = 0; j < mi; ++j) xs[interior[j]] = u(nt + j);
        return xs;
    };
    auto residual = [&](const Eigen::VectorXd& u) {
        const Eigen::VectorXd th = u.head(nt);
        const auto xs = points(u);
        Eigen::VectorXd f(size);
        Eigen::VectorXd stationarity = Eigen::VectorXd::Zero(nt);
        for (int k = 0; k < m; ++k) {
            f(k) = fam.phi(th, xs[k]) - u(size - 1);
            stationarity += u(nt + mi + k) * fam.grad(th, xs[k]);
        }
        for (int j = 0; j < mi; ++j) f(m + j) = fam.dphi_dx(th, xs[interior[j]]);
        f.segment(m + mi, nt) = stationarity;
        f(size - 1) = u.segment(nt + mi, m).sum() - 1.0;
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
        for (double x : points(v)) {
            if (!(std::abs(x) <= 1.0)) return std::nullopt;
        }
        if ((t * d).lpNorm<Eigen::Infinity>() < 1e-15) break;
    }
    if (!v.allFinite() || (v.segment(nt + mi, m).array() < 0.0).any()) return std::nullopt;
    return Eigen::VectorXd(v.head(nt));
}

}  // namespace

std::vector<FullFamilyPoint> full_family_search(const Target& target, const BarycentricRational& start,
                                                std::span<const double> grid) {
    const FullFamily fam(target.degree(), target.omega());
    const int size = fam.size();
    std::vector<FullFamilyPoint> out;
    const Eigen::VectorXd theta0 = fam.fit(start);
    if (!theta0.allFinite()) return out;

    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    auto noise = [&](double scale) {
        Eigen::VectorXd v(size);
        for (int i = 0; i < size; ++i) v(i) = scale * normal(rng);
        return v;
    };
    std::vector<Eigen::VectorXd> starts;
    for (double scale : {1e-3, 1e-2, 1e-1}) starts.push_back(theta0 + noise(scale));
    for (double psi : {0.15, 0.4, 0.8, 1.2}) {
        const cplx rot = std::polar(1.0, psi);
        const auto rotated = fam.fit([&](double x) { return start.at(rot * cplx{0.0, x}); });
        if (rotated.allFinite()) starts.push_back(rotated);
    }
    for (int k = 0; k < 4; ++k) starts.push_back(noise(0.5));

    std::vector<Local> screened;
    for (const auto& s : starts) screened.push_back(descend(fam, s, grid, 40));
    std::sort(screened.begin(), screened.end(), [](const Local& a, const Local& b) { return a.error < b.error; });
    Local best;
    for (std::size_t i = 0; i < std::min<std::size_t>(2, screened.size()); ++i) {
        auto local = descend(fam, screened[i].theta, grid, 400);
        if (local.error < best.error) best = std::move(local);
    }
    if (!std::isfinite(best.error)) return out;
    if (auto r = fam.to_barycentric(best.theta)) out.push_back({std::move(*r), false});

    const auto a = grid_error(fam, best.theta, grid);
    for (double rel : {1e-6, 1e-4, 1e-2}) {
        std::vector<double> active;
        for (std::size_t k : peaks_above(a, best.error * (1.0 - rel))) active.push_back(grid[k]);
        std::sort(active.begin(), active.end());
        if (const auto theta = kkt_newton(fam, best.theta, active)) {
            if (auto r = fam.to_barycentric(*theta)) out.push_back({std::move(*r), true});
        }
    }
    return out;
}

}  // namespace unirat::detail
