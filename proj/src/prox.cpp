#include "jsr/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace jsr {

double piecewise_g(double t, const Eigen::VectorXd& u, double lambda_bar) {
    return (u.array().abs() - t).max(0.0).sum() - lambda_bar;
}

double solve_t_star(const Eigen::VectorXd& u, double lambda_bar) {
    if (!(lambda_bar >= 0.0))
        throw std::invalid_argument("solve_t_star: lambda_bar must be >= 0");

    const double u_inf = u.size() > 0 ? u.lpNorm<Eigen::Infinity>() : 0.0;
    if (u_inf == 0.0) return 0.0;

    const double u_one = u.lpNorm<1>();
    // g(u_inf) = -lambda_bar, so a sign change exists iff g(0) > 0 > -lambda_bar.
    if ((u_one - lambda_bar) * -lambda_bar >= 0.0) return 0.0;

    const double residual_tol = 1e-12 * std::max(1.0, u_one);
    const double width_tol = 1e-14 * u_inf;
    double lo = 0.0, hi = u_inf;
    for (int it = 0; it < 200 && hi - lo > width_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g = piecewise_g(mid, u, lambda_bar);
        if (std::abs(g) <= residual_tol) return mid;
        if (g > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Eigen::VectorXd solve_row(const Eigen::VectorXd& u, double lambda_bar) {
    if (!(lambda_bar >= 0.0))
        throw std::invalid_argument("solve_row: lambda_bar must be >= 0");
    if (lambda_bar == 0.0) return u;

    const double t_star = solve_t_star(u, lambda_bar);
    Eigen::VectorXd s(u.size());
    for (int i = 0; i < u.size(); ++i) {
        const double a = std::abs(u(i));
        // Ties |u_p| == t_star take the clamped branch.
        if (a >= t_star) {
            const double sign = u(i) > 0.0 ? 1.0 : (u(i) < 0.0 ? -1.0 : 0.0);
            s(i) = sign * t_star;
        } else {
            s(i) = u(i);
        }
    }
    return s;
}

Eigen::VectorXd solve_row(const ProxRowProblem& prob) {
    return solve_row(prob.u, prob.lambda_bar);
}

Eigen::MatrixXd prox_matrix(const Eigen::MatrixXd& t, const Eigen::MatrixXd& grad,
                            double l_f, double lambda_hat) {
    if (t.rows() != grad.rows() || t.cols() != grad.cols())
        throw std::invalid_argument("prox_matrix: iterate and gradient shapes differ");
    if (!(l_f > 0.0))
        throw std::invalid_argument("prox_matrix: l_f must be > 0");
    if (!(lambda_hat >= 0.0))
        throw std::invalid_argument("prox_matrix: lambda_hat must be >= 0");

    const Eigen::MatrixXd u = t - (1.0 / l_f) * grad;
    if (lambda_hat == 0.0) return u;  // pure gradient step

    const double lambda_bar = lambda_hat / l_f;
    Eigen::MatrixXd out(u.rows(), u.cols());
    for (int i = 0; i < u.rows(); ++i)
        out.row(i) = solve_row(u.row(i).transpose(), lambda_bar).transpose();
    return out;
}

}  // namespace jsr
