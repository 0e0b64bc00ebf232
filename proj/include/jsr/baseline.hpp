#pragma once

#include <vector>

#include "jsr/solver.hpp"
#include "jsr/types.hpp"

namespace jsr {

// Vote-count rule for combining per-sensor support estimates.
struct FusionRule {
    int threshold;  // minimum vote count for inclusion, in [1, P]
};

// Recovers one sensor's support by running the solver on its bit column
// alone (the P = 1 instance). When `converged` is non-null it receives the
// solver's convergence flag.
SupportSet solve_single(const BitMatrix& z_col, const MeasurementMatrix& phi,
                        double sigma_v, const SolverConfig& cfg,
                        const ExtractionMode& mode, bool* converged = nullptr);

// Indices appearing in at least rule.threshold of the input sets.
SupportSet fuse_supports(const std::vector<SupportSet>& supports, FusionRule rule);

// Strict majority: indices appearing in more than p/2 of the p input sets.
// Ties at exactly p/2 are excluded.
SupportSet majority_fuse(const std::vector<SupportSet>& supports, int p);

}  // namespace jsr
