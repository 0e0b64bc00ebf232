#pragma once

#include <optional>
#include <vector>

#include "jsr/likelihood.hpp"
#include "jsr/types.hpp"

namespace jsr {

enum class InitMode {
    Zero,           // S_0 = 0
    PseudoInverse,  // S_0 = pinv(Phi) * (2Z - 1); bits recentered to carry sign
};

struct SolverConfig {
    // Penalties left unset are derived from the data: lambda_tilde defaults to
    // lambda_max (the smallest penalty keeping S = 0 stationary) and lambda to
    // 0.01 * lambda_tilde. When set, lambda_tilde > lambda > 0 must hold.
    std::optional<double> lambda;
    std::optional<double> lambda_tilde;
    double alpha = 0.5;    // continuation factor, in (0,1)
    double epsilon = 1e-4; // relative Frobenius stopping tolerance
    int max_inner_iters = 500;
    int max_total_iters = 20000;
    InitMode init = InitMode::Zero;
    std::optional<double> l_f_override;  // bypass the power-iteration estimate
};

struct SolverResult {
    Eigen::MatrixXd s_hat;
    std::vector<double> objective_trace;  // objective after each accepted step
    std::vector<int> phase_starts;        // trace index where each phase begins
    int inner_iterations = 0;
    int phases = 0;                       // count of lambda_hat values visited
    bool converged = true;
    double lambda_start = 0.0;      // resolved lambda_tilde
    double lambda_target = 0.0;     // resolved lambda
    double lambda_hat_final = 0.0;  // penalty of the last executed phase
    double l_f = 0.0;               // step constant after safeguard doublings
};

// How to turn the recovered matrix into a support estimate.
class ExtractionMode {
public:
    enum class Kind { KnownK, Threshold };

    // The k rows with the largest max-abs value; ties favor the lower index.
    static ExtractionMode known_k(int k);
    // All rows whose max-abs exceeds tau times the largest row max-abs.
    static ExtractionMode threshold(double tau);

    Kind kind() const { return kind_; }
    int k() const { return k_; }
    double tau() const { return tau_; }

private:
    ExtractionMode(Kind kind, int k, double tau) : kind_(kind), k_(k), tau_(tau) {}
    Kind kind_;
    int k_;
    double tau_;
};

// Sum over rows of the largest absolute entry.
double l1_inf_norm(const Eigen::MatrixXd& s);

// nll(s) + lambda_hat * |s|_{1,inf}
double objective(const Eigen::MatrixXd& s, const LikelihoodContext& ctx,
                 double lambda_hat);

// Smallest penalty for which the zero matrix is stationary: the largest
// row-wise l1 norm of grad_s at S = 0.
double lambda_max(const LikelihoodContext& ctx);

// Proximal gradient descent with geometric continuation: lambda_hat sweeps
// from lambda_tilde down toward lambda by factors of alpha; each phase
// iterates S <- prox_matrix(S, grad_s(S), L_f, lambda_hat) until the
// relative Frobenius change drops below epsilon. A monotonicity safeguard
// doubles L_f and retries whenever a step would increase the objective.
// Iteration caps flag the result non-converged instead of throwing.
SolverResult solve(const LikelihoodContext& ctx, const SolverConfig& cfg);

SupportSet extract_support(const Eigen::MatrixXd& s_hat, const ExtractionMode& mode);

}  // namespace jsr
