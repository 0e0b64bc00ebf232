#include "jsr/likelihood.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace jsr {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kHalfLog2Pi = 0.9189385332046727418;  // log(2*pi)/2

double log_normal_pdf(double t) { return -0.5 * t * t - kHalfLog2Pi; }

// Ratio pdf(t)/cdf(t) of the standard normal, computed in log space so the
// left tail (where both factors underflow) stays finite. Approaches -t as
// t -> -inf and 0 as t -> +inf.
double cdf_ratio(double t) {
    if (t < -1e8) return -t;  // limit value; avoids inf - inf below
    return std::exp(log_normal_pdf(t) - log_normal_cdf(t));
}

}  // namespace

double log_normal_cdf(double t) {
    if (std::isnan(t))
        throw std::invalid_argument("log_normal_cdf: NaN input");
    if (t >= 0.0)
        return std::log1p(-0.5 * std::erfc(t * kInvSqrt2));
    if (t >= -8.0)
        return std::log(0.5 * std::erfc(-t * kInvSqrt2));
    // Far tail: Phi(t) = pdf(t)/(-t) * (1 - 1/t^2 + 3/t^4 - 15/t^6 + O(t^-8)).
    const double t2 = t * t;
    const double series = 1.0 - 1.0 / t2 + 3.0 / (t2 * t2) - 15.0 / (t2 * t2 * t2);
    return -0.5 * t2 - std::log(-t) - kHalfLog2Pi + std::log(series);
}

LikelihoodContext::LikelihoodContext(MeasurementMatrix phi_in, BitMatrix z_in,
                                     double sigma)
    : phi(std::move(phi_in)), z(std::move(z_in)), sigma_v(sigma) {
    if (phi.m() != z.m())
        throw std::invalid_argument("LikelihoodContext: phi rows != z rows");
    if (!(sigma_v > 0.0))
        throw std::invalid_argument("LikelihoodContext: sigma_v must be > 0");
    if (!phi.data.allFinite())
        throw std::invalid_argument("LikelihoodContext: phi has non-finite entries");
    if (((z.data.array() != 0) && (z.data.array() != 1)).any())
        throw std::invalid_argument("LikelihoodContext: bits must be 0 or 1");
}

double nll(const Eigen::MatrixXd& s, const LikelihoodContext& ctx) {
    if (s.rows() != ctx.n() || s.cols() != ctx.p())
        throw std::invalid_argument("nll: signal matrix must be N x P");

    const Eigen::MatrixXd x = ctx.phi.data * s;
    const double inv_sigma = 1.0 / ctx.sigma_v;
    double acc = 0.0;
    for (int j = 0; j < x.cols(); ++j)
        for (int i = 0; i < x.rows(); ++i) {
            const double xt = x(i, j) * inv_sigma;
            acc -= ctx.z.data(i, j) == 1 ? log_normal_cdf(xt) : log_normal_cdf(-xt);
        }
    return acc;
}

Eigen::MatrixXd grad_x(const Eigen::MatrixXd& x, const LikelihoodContext& ctx) {
    if (x.rows() != ctx.m() || x.cols() != ctx.p())
        throw std::invalid_argument("grad_x: projection matrix must be M x P");

    const double inv_sigma = 1.0 / ctx.sigma_v;
    Eigen::MatrixXd g(x.rows(), x.cols());
    for (int j = 0; j < x.cols(); ++j)
        for (int i = 0; i < x.rows(); ++i) {
            const double xt = x(i, j) * inv_sigma;
            g(i, j) = ctx.z.data(i, j) == 1 ? -cdf_ratio(xt) * inv_sigma
                                            : cdf_ratio(-xt) * inv_sigma;
        }
    return g;
}

Eigen::MatrixXd grad_s(const Eigen::MatrixXd& s, const LikelihoodContext& ctx) {
    if (s.rows() != ctx.n() || s.cols() != ctx.p())
        throw std::invalid_argument("grad_s: signal matrix must be N x P");
    return ctx.phi.data.transpose() * grad_x(ctx.phi.data * s, ctx);
}

double lipschitz_constant(const MeasurementMatrix& phi, double sigma_v) {
    if (!(sigma_v > 0.0))
        throw std::invalid_argument("lipschitz_constant: sigma_v must be > 0");

    const Eigen::MatrixXd& a = phi.data;

    // Power iteration on A^T A. The start vector comes from a fixed-seed
    // engine so the estimate is a pure function of phi.
    std::mt19937_64 eng(0x6a09e667f3bcc908ULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd v(a.cols());
    for (int i = 0; i < v.size(); ++i) v(i) = unit(eng);
    v.normalize();

    double sigma_prev = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd w = a.transpose() * (a * v);
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;  // zero matrix
        const double sigma = std::sqrt(norm);  // v is unit, so |A^T A v| -> sigma_max^2
        v = w / norm;
        if (std::abs(sigma - sigma_prev) <= 1e-6 * sigma) {
            sigma_prev = sigma;
            break;
        }
        sigma_prev = sigma;
    }
    return sigma_prev * sigma_prev / (sigma_v * sigma_v);
}

}  // namespace jsr
