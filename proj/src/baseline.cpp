#include "jsr/baseline.hpp"

#include <map>
#include <stdexcept>

namespace jsr {

SupportSet solve_single(const BitMatrix& z_col, const MeasurementMatrix& phi,
                        double sigma_v, const SolverConfig& cfg,
                        const ExtractionMode& mode, bool* converged) {
    if (z_col.p() != 1)
        throw std::invalid_argument("solve_single: expected a single-column bit matrix");
    LikelihoodContext ctx(phi, z_col, sigma_v);
    const SolverResult res = solve(ctx, cfg);
    if (converged) *converged = res.converged;
    return extract_support(res.s_hat, mode);
}

SupportSet fuse_supports(const std::vector<SupportSet>& supports, FusionRule rule) {
    if (supports.empty())
        throw std::invalid_argument("fuse_supports: empty support list");
    if (rule.threshold < 1 || rule.threshold > static_cast<int>(supports.size()))
        throw std::invalid_argument("fuse_supports: threshold out of range");

    std::map<int, int> votes;
    for (const SupportSet& s : supports)
        for (int idx : s.indices()) ++votes[idx];

    std::vector<int> fused;
    for (const auto& [idx, count] : votes)
        if (count >= rule.threshold) fused.push_back(idx);
    return SupportSet(std::move(fused));
}

SupportSet majority_fuse(const std::vector<SupportSet>& supports, int p) {
    if (p < 1 || static_cast<int>(supports.size()) != p)
        throw std::invalid_argument("majority_fuse: list length must equal p >= 1");
    return fuse_supports(supports, FusionRule{p / 2 + 1});
}

}  // namespace jsr
