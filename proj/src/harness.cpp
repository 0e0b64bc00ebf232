#include "jsr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "jsr/baseline.hpp"
#include "jsr/model.hpp"
#include "jsr/rng.hpp"

namespace jsr {

std::pair<double, bool> score_trial(const SupportSet& estimated,
                                    const SupportSet& truth) {
    if (truth.empty())
        throw std::invalid_argument("score_trial: empty truth support");

    const auto& a = estimated.indices();
    const auto& b = truth.indices();
    std::size_t i = 0, j = 0, hits = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else
            ++hits, ++i, ++j;
    }
    const double pct = 100.0 * static_cast<double>(hits) / truth.size();
    return {pct, estimated == truth};
}

namespace {

struct TrialOutcome {
    double pct = 0.0;
    bool exact = false;
    bool non_converged = false;
};

TrialOutcome run_one_trial(const ExperimentConfig& cfg, int m, int p, int trial,
                           const ExtractionMode& mode, double sigma_v) {
    RngEngine eng = make_stream(cfg.seed, static_cast<std::uint64_t>(m),
                                static_cast<std::uint64_t>(p),
                                static_cast<std::uint64_t>(trial));
    auto [sig, truth] = generate_signal_matrix(cfg.n, p, cfg.k, eng);
    const MeasurementMatrix phi =
        generate_measurement_matrix(m, cfg.n, cfg.phi_variance, eng);
    const Eigen::MatrixXd y = sense(phi, sig, NoiseModel(sigma_v), eng);
    const BitMatrix z = quantize(y);

    TrialOutcome out;
    try {
        SupportSet est;
        if (cfg.method == Method::Joint) {
            const LikelihoodContext ctx(phi, z, sigma_v);
            const SolverResult res = solve(ctx, cfg.solver);
            out.non_converged = !res.converged;
            est = extract_support(res.s_hat, mode);
        } else {
            std::vector<SupportSet> per_sensor;
            per_sensor.reserve(p);
            for (int col = 0; col < p; ++col) {
                const BitMatrix z_col{z.data.col(col)};
                bool conv = true;
                per_sensor.push_back(
                    solve_single(z_col, phi, sigma_v, cfg.solver, mode, &conv));
                out.non_converged = out.non_converged || !conv;
            }
            est = majority_fuse(per_sensor, p);
        }
        auto [pct, exact] = score_trial(est, truth);
        out.pct = pct;
        out.exact = exact;
    } catch (const std::runtime_error&) {
        // Numerical failure in one trial is tallied, not fatal to the sweep.
        out.non_converged = true;
    }
    return out;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.n < 1 || cfg.k < 1 || cfg.k > cfg.n)
        throw std::invalid_argument("run_sweep: need 1 <= k <= n");
    if (!(cfg.phi_variance > 0.0) || !(cfg.sigma_v_sq > 0.0))
        throw std::invalid_argument("run_sweep: variances must be > 0");
    if (cfg.m_values.empty() || cfg.p_values.empty())
        throw std::invalid_argument("run_sweep: m and p grids must be non-empty");
    for (int m : cfg.m_values)
        if (m < 1) throw std::invalid_argument("run_sweep: m values must be >= 1");
    for (int p : cfg.p_values)
        if (p < 1) throw std::invalid_argument("run_sweep: p values must be >= 1");
    if (cfg.trials < 1)
        throw std::invalid_argument("run_sweep: trials must be >= 1");
    if (cfg.workers < 1)
        throw std::invalid_argument("run_sweep: workers must be >= 1");
}

}  // namespace

std::vector<MetricsCell> run_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    const ExtractionMode mode =
        cfg.extraction ? *cfg.extraction : ExtractionMode::known_k(cfg.k);
    const double sigma_v = std::sqrt(cfg.sigma_v_sq);

    struct Cell {
        int m, p;
    };
    std::vector<Cell> grid;
    for (int m : cfg.m_values)
        for (int p : cfg.p_values) grid.push_back({m, p});

    // One slot per (cell, trial); workers fill slots, the reduction below
    // runs in deterministic trial order regardless of worker count.
    std::vector<std::vector<TrialOutcome>> outcomes(
        grid.size(), std::vector<TrialOutcome>(cfg.trials));

    const long total = static_cast<long>(grid.size()) * cfg.trials;
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&] {
        try {
            while (true) {
                const long idx = next.fetch_add(1);
                if (idx >= total) break;
                const auto cell = static_cast<std::size_t>(idx / cfg.trials);
                const int trial = static_cast<int>(idx % cfg.trials);
                outcomes[cell][trial] = run_one_trial(cfg, grid[cell].m, grid[cell].p,
                                                      trial, mode, sigma_v);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (cfg.workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(cfg.workers);
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<MetricsCell> cells;
    cells.reserve(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        MetricsCell cell;
        cell.m = grid[c].m;
        cell.p = grid[c].p;
        cell.trials = cfg.trials;
        double pct_sum = 0.0;
        int exact = 0;
        for (const TrialOutcome& t : outcomes[c]) {
            pct_sum += t.pct;
            exact += t.exact ? 1 : 0;
            cell.non_converged += t.non_converged ? 1 : 0;
        }
        cell.pct_support_recovered = pct_sum / cfg.trials;
        cell.prob_exact_support = static_cast<double>(exact) / cfg.trials;
        cells.push_back(cell);
    }
    return cells;
}

namespace {

std::string format_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%#.6g", v);
    return buf;
}

}  // namespace

void emit_csv(const std::vector<MetricsCell>& cells, std::ostream& out) {
    out << "m,p,pct_support_recovered,prob_exact_support,non_converged,trials\n";
    std::vector<MetricsCell> sorted = cells;
    std::sort(sorted.begin(), sorted.end(), [](const MetricsCell& a, const MetricsCell& b) {
        return a.m != b.m ? a.m < b.m : a.p < b.p;
    });
    for (const MetricsCell& c : sorted)
        out << c.m << ',' << c.p << ',' << format_real(c.pct_support_recovered) << ','
            << format_real(c.prob_exact_support) << ',' << c.non_converged << ','
            << c.trials << '\n';
}

void emit_csv(const std::vector<MetricsCell>& cells, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open " + path);
    emit_csv(cells, out);
    out.flush();
    if (!out.good())
        throw std::runtime_error("emit_csv: write failed for " + path);
}

std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> values;
    std::size_t pos = 0;
    if (text.empty())
        throw std::invalid_argument("parse_int_range: empty specification");
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string term =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (term.empty())
            throw std::invalid_argument("parse_int_range: empty term in '" + text + "'");

        int parts[3] = {0, 0, 1};
        int count = 0;
        std::size_t tpos = 0;
        while (true) {
            const std::size_t colon = term.find(':', tpos);
            const std::string tok =
                term.substr(tpos, colon == std::string::npos ? std::string::npos : colon - tpos);
            std::size_t used = 0;
            int v;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("parse_int_range: bad integer '" + tok + "'");
            }
            if (used != tok.size())
                throw std::invalid_argument("parse_int_range: bad integer '" + tok + "'");
            if (count == 3)
                throw std::invalid_argument("parse_int_range: too many fields in '" + term +
                                            "'");
            parts[count++] = v;
            if (colon == std::string::npos) break;
            tpos = colon + 1;
        }
        if (count == 1) {
            values.push_back(parts[0]);
        } else {
            const int start = parts[0], stop = parts[1];
            const int step = count == 3 ? parts[2] : 1;
            if (step < 1)
                throw std::invalid_argument("parse_int_range: step must be >= 1");
            if (stop < start)
                throw std::invalid_argument("parse_int_range: stop < start");
            for (int v = start; v <= stop; v += step) values.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return values;
}

}  // namespace jsr
