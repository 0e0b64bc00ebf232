#include "jsr/solver.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "jsr/prox.hpp"

namespace jsr {

ExtractionMode ExtractionMode::known_k(int k) {
    if (k < 1)
        throw std::invalid_argument("ExtractionMode: k must be >= 1");
    return ExtractionMode(Kind::KnownK, k, 0.0);
}

ExtractionMode ExtractionMode::threshold(double tau) {
    if (!(tau > 0.0) || !(tau < 1.0))
        throw std::invalid_argument("ExtractionMode: tau must be in (0,1)");
    return ExtractionMode(Kind::Threshold, 0, tau);
}

double l1_inf_norm(const Eigen::MatrixXd& s) {
    if (s.size() == 0) return 0.0;
    return s.cwiseAbs().rowwise().maxCoeff().sum();
}

double objective(const Eigen::MatrixXd& s, const LikelihoodContext& ctx,
                 double lambda_hat) {
    return nll(s, ctx) + lambda_hat * l1_inf_norm(s);
}

double lambda_max(const LikelihoodContext& ctx) {
    const Eigen::MatrixXd g0 = grad_s(Eigen::MatrixXd::Zero(ctx.n(), ctx.p()), ctx);
    // The dual of the l1,inf norm is the max row-wise l1 norm, so S = 0 is
    // stationary exactly when that norm of the zero-point gradient is <= lambda.
    return g0.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {

Eigen::MatrixXd initial_iterate(const LikelihoodContext& ctx, InitMode mode) {
    if (mode == InitMode::Zero)
        return Eigen::MatrixXd::Zero(ctx.n(), ctx.p());
    const Eigen::MatrixXd recentered =
        2.0 * ctx.z.data.cast<double>().array() - 1.0;
    return ctx.phi.data.completeOrthogonalDecomposition().solve(recentered);
}

}  // namespace

SolverResult solve(const LikelihoodContext& ctx, const SolverConfig& cfg) {
    if (!(cfg.alpha > 0.0) || !(cfg.alpha < 1.0))
        throw std::invalid_argument("solve: alpha must be in (0,1)");
    if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("solve: epsilon must be > 0");
    if (cfg.max_inner_iters < 1 || cfg.max_total_iters < 1)
        throw std::invalid_argument("solve: iteration caps must be >= 1");

    SolverResult res;
    res.l_f = cfg.l_f_override ? *cfg.l_f_override
                               : lipschitz_constant(ctx.phi, ctx.sigma_v);
    if (!(res.l_f > 0.0))
        throw std::invalid_argument("solve: step constant must be > 0");

    res.lambda_start = cfg.lambda_tilde ? *cfg.lambda_tilde : lambda_max(ctx);
    res.lambda_target = cfg.lambda ? *cfg.lambda : 0.01 * res.lambda_start;
    if (!(res.lambda_target > 0.0) || !(res.lambda_start > res.lambda_target))
        throw std::invalid_argument("solve: need lambda_tilde > lambda > 0");

    Eigen::MatrixXd s = initial_iterate(ctx, cfg.init);
    if (!s.allFinite())
        throw std::runtime_error("solve: non-finite initial iterate");

    constexpr int kMaxDoublings = 60;
    int doublings = 0;
    bool abort = false;

    double lam_hat = res.lambda_start;
    while (lam_hat > res.lambda_target && !abort) {
        lam_hat *= cfg.alpha;
        ++res.phases;
        res.lambda_hat_final = lam_hat;
        res.phase_starts.push_back(static_cast<int>(res.objective_trace.size()));

        double obj_prev = objective(s, ctx, lam_hat);
        int inner = 0;
        while (true) {
            if (res.inner_iterations >= cfg.max_total_iters) {
                res.converged = false;
                abort = true;
                break;
            }
            const Eigen::MatrixXd g = grad_s(s, ctx);
            Eigen::MatrixXd s_next = prox_matrix(s, g, res.l_f, lam_hat);
            if (!s_next.allFinite())
                throw std::runtime_error("solve: non-finite iterate");
            const double obj_next = objective(s_next, ctx, lam_hat);
            if (std::isnan(obj_next))
                throw std::runtime_error("solve: non-finite objective");

            if (obj_next > obj_prev + 1e-12 * std::abs(obj_prev)) {
                // Step overshot the curvature bound; halve it and retry.
                res.l_f *= 2.0;
                if (++doublings > kMaxDoublings) {
                    res.converged = false;
                    abort = true;
                    break;
                }
                continue;
            }

            const double diff = (s_next - s).norm();
            const double prev_norm = s.norm();
            // Relative to the previous iterate; from a zero start the first
            // accepted step is measured against itself instead.
            const double denom = prev_norm > 0.0 ? prev_norm : s_next.norm();
            s.swap(s_next);
            obj_prev = obj_next;
            ++inner;
            ++res.inner_iterations;
            res.objective_trace.push_back(obj_next);

            if (diff <= cfg.epsilon * denom) break;
            if (inner >= cfg.max_inner_iters) {
                res.converged = false;  // phase cap; continuation still proceeds
                break;
            }
        }
    }

    res.s_hat = std::move(s);
    return res;
}

SupportSet extract_support(const Eigen::MatrixXd& s_hat, const ExtractionMode& mode) {
    if (!s_hat.allFinite())
        throw std::invalid_argument("extract_support: non-finite entries");
    const int n = static_cast<int>(s_hat.rows());
    const Eigen::VectorXd row_max =
        s_hat.size() > 0 ? Eigen::VectorXd(s_hat.cwiseAbs().rowwise().maxCoeff())
                         : Eigen::VectorXd::Zero(n);

    if (mode.kind() == ExtractionMode::Kind::KnownK) {
        if (mode.k() > n)
            throw std::invalid_argument("extract_support: k exceeds row count");
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return row_max(a) > row_max(b); });
        std::vector<int> picked(order.begin(), order.begin() + mode.k());
        return SupportSet(std::move(picked));
    }

    const double global = n > 0 ? row_max.maxCoeff() : 0.0;
    std::vector<int> picked;
    if (global > 0.0)
        for (int i = 0; i < n; ++i)
            if (row_max(i) > mode.tau() * global) picked.push_back(i);
    return SupportSet(std::move(picked));
}

}  // namespace jsr
