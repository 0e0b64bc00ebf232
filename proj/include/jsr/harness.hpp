#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jsr/solver.hpp"
#include "jsr/types.hpp"

namespace jsr {

enum class Method { Joint, Baseline };

struct ExperimentConfig {
    int n = 100;
    int k = 5;
    double phi_variance = 0.004;
    double sigma_v_sq = 1e-4;
    std::vector<int> m_values;
    std::vector<int> p_values;
    int trials = 1000;
    std::uint64_t seed = 0;
    Method method = Method::Joint;
    SolverConfig solver;
    // Defaults to known_k(k) when unset.
    std::optional<ExtractionMode> extraction;
    int workers = 1;
};

// Aggregated results for one (m, p) grid cell.
struct MetricsCell {
    int m = 0;
    int p = 0;
    double pct_support_recovered = 0.0;  // mean per-trial recall, in [0, 100]
    double prob_exact_support = 0.0;     // fraction of trials with est == truth
    int non_converged = 0;
    int trials = 0;
};

// Per-trial score: recall percentage 100 * |est & truth| / |truth| and
// whether the estimate matches the truth exactly as a set.
std::pair<double, bool> score_trial(const SupportSet& estimated,
                                    const SupportSet& truth);

// Runs trials * |m_values| * |p_values| independent seeded trials. Each
// trial draws a fresh signal, sensing matrix and noise from a sub-stream
// keyed by (seed, m, p, trial), so results are byte-identical regardless of
// worker count or grid iteration order. Numerical failures inside a trial
// are tallied as non-converged, not rethrown.
std::vector<MetricsCell> run_sweep(const ExperimentConfig& cfg);

// CSV with header m,p,pct_support_recovered,prob_exact_support,
// non_converged,trials; one row per cell sorted by (m, p); reals printed
// with 6 significant digits.
void emit_csv(const std::vector<MetricsCell>& cells, std::ostream& out);
void emit_csv(const std::vector<MetricsCell>& cells, const std::string& path);

// Grid axis syntax: "8" -> {8}; "4:12" -> {4..12}; "10:50:10" ->
// {10,20,30,40,50}; comma-separated terms concatenate.
std::vector<int> parse_int_range(const std::string& text);

}  // namespace jsr
