#include "jsr/model.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace jsr {

std::pair<SignalMatrix, SupportSet> generate_signal_matrix(int n, int p, int k,
                                                           RngEngine& rng) {
    if (n < 1 || p < 1)
        throw std::invalid_argument("generate_signal_matrix: n and p must be >= 1");
    if (k < 1 || k > n)
        throw std::invalid_argument("generate_signal_matrix: need 1 <= k <= n");

    // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<int> chosen(idx.begin(), idx.begin() + k);
    SupportSet support(std::move(chosen));

    SignalMatrix sig{Eigen::MatrixXd::Zero(n, p)};
    std::bernoulli_distribution coin(0.5);
    for (int row : support.indices())
        for (int j = 0; j < p; ++j)
            sig.data(row, j) = coin(rng) ? 1.0 : -1.0;
    return {std::move(sig), std::move(support)};
}

MeasurementMatrix generate_measurement_matrix(int m, int n, double variance,
                                              RngEngine& rng) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("generate_measurement_matrix: m and n must be >= 1");
    if (!(variance > 0.0))
        throw std::invalid_argument("generate_measurement_matrix: variance must be > 0");
    if (m >= n)
        std::cerr << "warning: m >= n (" << m << " >= " << n
                  << "), measurements are not compressive\n";

    std::normal_distribution<double> gauss(0.0, std::sqrt(variance));
    MeasurementMatrix phi{Eigen::MatrixXd(m, n)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            phi.data(i, j) = gauss(rng);
    return phi;
}

Eigen::MatrixXd sense(const MeasurementMatrix& phi, const SignalMatrix& s,
                      const NoiseModel& noise, RngEngine& rng) {
    if (phi.n() != s.n())
        throw std::invalid_argument("sense: phi columns must match signal dimension");

    Eigen::MatrixXd y = phi.data * s.data;
    std::normal_distribution<double> gauss(0.0, noise.sigma_v);
    for (int j = 0; j < y.cols(); ++j)
        for (int i = 0; i < y.rows(); ++i)
            y(i, j) += gauss(rng);
    return y;
}

BitMatrix quantize(const Eigen::MatrixXd& y) {
    if (y.hasNaN())
        throw std::invalid_argument("quantize: NaN measurement");
    // The boundary y == 0 maps to bit 1.
    return BitMatrix{(y.array() >= 0.0).cast<int>()};
}

double compute_snr(int k, double phi_variance, double sigma_v) {
    if (k < 1 || !(phi_variance > 0.0) || !(sigma_v > 0.0))
        throw std::invalid_argument("compute_snr: all arguments must be positive");
    return 10.0 * std::log10(static_cast<double>(k) * phi_variance / (sigma_v * sigma_v));
}

}  // namespace jsr
