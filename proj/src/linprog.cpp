#include "unirat/detail/linprog.hpp"

#include <algorithm>
#include <cmath>

namespace unirat::detail {

namespace {

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
    double alpha = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
    }
    return alpha;
}

}  // namespace

std::optional<Eigen::VectorXd> solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                        double tol, int max_iter) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (c.size() != n || b.size() != m || m == 0) return std::nullopt;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd s = (b - a * x).cwiseMax(1.0);
    Eigen::VectorXd y = Eigen::VectorXd::Ones(m);
    const double bscale = 1.0 + b.lpNorm<Eigen::Infinity>();
    const double cscale = 1.0 + c.lpNorm<Eigen::Infinity>();

    for (int it = 0; it < max_iter; ++it) {
        const Eigen::VectorXd rd = c + a.transpose() * y;
        const Eigen::VectorXd rp = a * x + s - b;
        const double mu = s.dot(y) / static_cast<double>(m);
        const double gap = s.dot(y);
        if (rp.lpNorm<Eigen::Infinity>() <= tol * bscale && rd.lpNorm<Eigen::Infinity>() <= std::sqrt(tol) * cscale &&
            gap <= tol * (1.0 + std::abs(c.dot(x)))) {
            return x;
        }

        const Eigen::VectorXd ratio = y.cwiseQuotient(s);
        Eigen::MatrixXd normal = a.transpose() * ratio.asDiagonal() * a;
        normal.diagonal().array() += 1e-14 * (1.0 + normal.diagonal().cwiseAbs().maxCoeff());
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
        if (ldlt.info() != Eigen::Success) return std::nullopt;

        auto direction = [&](const Eigen::VectorXd& rc, Eigen::VectorXd& dx, Eigen::VectorXd& ds,
                             Eigen::VectorXd& dy) {
            const Eigen::VectorXd t = (-rc + y.cwiseProduct(rp)).cwiseQuotient(s);
            dx = ldlt.solve(-rd - a.transpose() * t);
            ds = -rp - a * dx;
            dy = (-rc - y.cwiseProduct(ds)).cwiseQuotient(s);
        };

        Eigen::VectorXd dx, ds, dy;
        direction(s.cwiseProduct(y), dx, ds, dy);
        const double ap = max_step(s, ds);
        const double ad = max_step(y, dy);
        const double mu_aff = (s + ap * ds).dot(y + ad * dy) / static_cast<double>(m);
        const double sigma = std::pow(mu_aff / mu, 3);

        const Eigen::VectorXd rc = s.cwiseProduct(y) + ds.cwiseProduct(dy) - Eigen::VectorXd::Constant(m, sigma * mu);
        direction(rc, dx, ds, dy);
        const double sp = std::min(1.0, 0.99 * max_step(s, ds));
        const double sd = std::min(1.0, 0.99 * max_step(y, dy));
        x += sp * dx;
        s += sp * ds;
        y += sd * dy;
        if (!x.allFinite() || !y.allFinite()) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace unirat::detail
