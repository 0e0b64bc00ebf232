#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jsr {

// N x P signal matrix; columns are per-sensor signals sharing one row support.
struct SignalMatrix {
    Eigen::MatrixXd data;

    int n() const { return static_cast<int>(data.rows()); }
    int p() const { return static_cast<int>(data.cols()); }
};

// M x N sensing matrix shared by all sensors.
struct MeasurementMatrix {
    Eigen::MatrixXd data;

    int m() const { return static_cast<int>(data.rows()); }
    int n() const { return static_cast<int>(data.cols()); }
};

// I.i.d. zero-mean Gaussian measurement noise.
struct NoiseModel {
    double sigma_v;

    explicit NoiseModel(double sigma) : sigma_v(sigma) {
        if (!(sigma > 0.0))
            throw std::invalid_argument("NoiseModel: sigma_v must be > 0");
    }
};

// M x P matrix of one-bit measurements; entries are exactly 0 or 1.
struct BitMatrix {
    Eigen::MatrixXi data;

    int m() const { return static_cast<int>(data.rows()); }
    int p() const { return static_cast<int>(data.cols()); }
};

// Strictly increasing set of row indices. Indices are 0-based.
class SupportSet {
public:
    SupportSet() = default;

    explicit SupportSet(std::vector<int> indices) : indices_(std::move(indices)) {
        std::sort(indices_.begin(), indices_.end());
        if (!indices_.empty() && indices_.front() < 0)
            throw std::invalid_argument("SupportSet: negative index");
        if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
            throw std::invalid_argument("SupportSet: duplicate index");
    }

    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    bool empty() const { return indices_.empty(); }

    bool contains(int i) const {
        return std::binary_search(indices_.begin(), indices_.end(), i);
    }

    friend bool operator==(const SupportSet& a, const SupportSet& b) = default;

private:
    std::vector<int> indices_;
};

}  // namespace jsr
