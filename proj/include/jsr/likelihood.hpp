#pragma once

#include "jsr/types.hpp"

namespace jsr {

// Everything the probit likelihood of the bit matrix needs: the sensing
// matrix, the observed bits, and the noise level.
struct LikelihoodContext {
    MeasurementMatrix phi;
    BitMatrix z;
    double sigma_v;

    LikelihoodContext(MeasurementMatrix phi_in, BitMatrix z_in, double sigma);

    int m() const { return phi.m(); }
    int n() const { return phi.n(); }
    int p() const { return z.p(); }
};

// log of the standard normal CDF, stable over the whole double range: the
// complementary error function carries t >= -8, a four-term asymptotic
// expansion carries the far left tail where erfc underflows.
double log_normal_cdf(double t);

// Negative log-likelihood of the observed bits given a candidate signal
// matrix s (N x P). Nonnegative and finite for all finite s.
double nll(const Eigen::MatrixXd& s, const LikelihoodContext& ctx);

// Gradient of nll with respect to the projected matrix X = Phi*S, evaluated
// at x (M x P). Entries are negative where z = 1 and positive where z = 0.
Eigen::MatrixXd grad_x(const Eigen::MatrixXd& x, const LikelihoodContext& ctx);

// Gradient of nll with respect to s: Phi^T * grad_x(Phi*s).
Eigen::MatrixXd grad_s(const Eigen::MatrixXd& s, const LikelihoodContext& ctx);

// Upper bound on the curvature of nll as a function of S: the squared top
// singular value of Phi (power iteration, relative tolerance 1e-6) divided
// by sigma_v^2. The second derivative of t -> -log Phi(t) never exceeds 1,
// so this dominates the Hessian.
double lipschitz_constant(const MeasurementMatrix& phi, double sigma_v);

}  // namespace jsr
