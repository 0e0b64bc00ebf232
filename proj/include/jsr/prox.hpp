#pragma once

#include "jsr/types.hpp"

namespace jsr {

// One row subproblem of the l1,inf proximal step:
//   minimize  lambda_bar * |s|_inf + 1/2 * |s - u|_2^2
// where u is the gradient-shifted row and lambda_bar = lambda_hat / L_f.
struct ProxRowProblem {
    Eigen::VectorXd u;
    double lambda_bar = 0.0;
};

// The piecewise-linear, non-increasing function whose root is the optimal
// row threshold: sum_p (|u_p| - t)_+ - lambda_bar.
double piecewise_g(double t, const Eigen::VectorXd& u, double lambda_bar);

// Root of piecewise_g on [0, |u|_inf] by bisection; 0 when no sign change
// exists on the interval (the penalty-dominated and lambda_bar = 0 cases).
double solve_t_star(const Eigen::VectorXd& u, double lambda_bar);

// Minimizer of the row subproblem: entries at or above the threshold are
// clamped to sgn(u_p) * t_star, the rest pass through unchanged.
Eigen::VectorXd solve_row(const Eigen::VectorXd& u, double lambda_bar);
Eigen::VectorXd solve_row(const ProxRowProblem& prob);

// Full proximal-gradient step: forms U = T - (1/l_f) * grad and applies
// solve_row to each of the N rows with lambda_bar = lambda_hat / l_f.
// Rows are independent subproblems.
Eigen::MatrixXd prox_matrix(const Eigen::MatrixXd& t, const Eigen::MatrixXd& grad,
                            double l_f, double lambda_hat);

}  // namespace jsr
