// Command-line front end for Monte Carlo support-recovery sweeps.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include "jsr/harness.hpp"
#include "jsr/model.hpp"

namespace {

void print_config(const jsr::ExperimentConfig& cfg, const std::string& out_path) {
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    std::cout << "n = " << cfg.n << '\n'
              << "k = " << cfg.k << '\n'
              << "phi_variance = " << cfg.phi_variance << '\n'
              << "sigma_v_sq = " << cfg.sigma_v_sq << '\n'
              << "snr_db = "
              << jsr::compute_snr(cfg.k, cfg.phi_variance, std::sqrt(cfg.sigma_v_sq))
              << '\n'
              << "m_values = " << join(cfg.m_values) << '\n'
              << "p_values = " << join(cfg.p_values) << '\n'
              << "trials = " << cfg.trials << '\n'
              << "seed = " << cfg.seed << '\n'
              << "method = " << (cfg.method == jsr::Method::Joint ? "joint" : "baseline")
              << '\n'
              << "lambda = "
              << (cfg.solver.lambda ? std::to_string(*cfg.solver.lambda)
                                    : std::string("auto (0.01 * lambda_max per trial)"))
              << '\n'
              << "lambda_tilde = "
              << (cfg.solver.lambda_tilde ? std::to_string(*cfg.solver.lambda_tilde)
                                          : std::string("auto (lambda_max per trial)"))
              << '\n'
              << "alpha = " << cfg.solver.alpha << '\n'
              << "epsilon = " << cfg.solver.epsilon << '\n'
              << "max_inner_iters = " << cfg.solver.max_inner_iters << '\n'
              << "max_total_iters = " << cfg.solver.max_total_iters << '\n'
              << "init = "
              << (cfg.solver.init == jsr::InitMode::Zero ? "zero" : "pinv") << '\n';
    const jsr::ExtractionMode mode =
        cfg.extraction ? *cfg.extraction : jsr::ExtractionMode::known_k(cfg.k);
    if (mode.kind() == jsr::ExtractionMode::Kind::KnownK)
        std::cout << "extraction = knownk(" << mode.k() << ")\n";
    else
        std::cout << "extraction = threshold(" << mode.tau() << ")\n";
    std::cout << "workers = " << cfg.workers << '\n'
              << "out = " << (out_path.empty() ? "(none)" : out_path) << '\n'
              << "indexing = 0-based row indices\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Joint sparse support recovery from 1-bit compressive measurements:\n"
        "seeded Monte Carlo sweeps over the (M, P) grid, CSV output."};

    int n = 100, k = 5, trials = 100, workers = 0;
    double phi_variance = 0.004, sigma_v_sq = 1e-4, tau = 0.05;
    double alpha = 0.5, epsilon = 1e-4;
    int max_inner = 500, max_total = 20000;
    std::uint64_t seed = 0;
    std::string m_spec, p_spec, out_path;
    std::string method = "joint", extraction = "knownk", init = "zero";
    double lambda = 0.0, lambda_tilde = 0.0;
    bool want_config = false;

    app.add_option("--n", n, "Signal dimension N")->capture_default_str();
    app.add_option("--k", k, "Row sparsity K")->capture_default_str();
    app.add_option("--m", m_spec,
                   "Measurements per sensor; range syntax start:stop:step "
                   "(e.g. 10:100:10) or comma list")
        ->required();
    app.add_option("--p", p_spec, "Sensor counts; same range syntax as --m")->required();
    app.add_option("--phi-variance", phi_variance, "Variance of sensing matrix entries")
        ->capture_default_str();
    app.add_option("--sigma-v-sq", sigma_v_sq, "Measurement noise variance")
        ->capture_default_str();
    app.add_option("--trials", trials, "Monte Carlo trials per grid cell")
        ->capture_default_str();
    app.add_option("--seed", seed, "Master seed for the trial sub-streams")
        ->capture_default_str();
    app.add_option("--method", method, "Recovery method")
        ->check(CLI::IsMember({"joint", "baseline"}))
        ->capture_default_str();
    app.add_option("--lambda", lambda,
                   "Target penalty; omit to derive 0.01 * lambda_max per trial");
    app.add_option("--lambda-tilde", lambda_tilde,
                   "Start penalty; omit to derive lambda_max per trial");
    app.add_option("--alpha", alpha, "Continuation factor in (0,1)")->capture_default_str();
    app.add_option("--epsilon", epsilon, "Relative stopping tolerance")
        ->capture_default_str();
    app.add_option("--max-inner-iters", max_inner, "Iteration cap per penalty phase")
        ->capture_default_str();
    app.add_option("--max-total-iters", max_total, "Total iteration cap per solve")
        ->capture_default_str();
    app.add_option("--init", init, "Solver initialization")
        ->check(CLI::IsMember({"zero", "pinv"}))
        ->capture_default_str();
    app.add_option("--extraction", extraction, "Support extraction rule")
        ->check(CLI::IsMember({"knownk", "threshold"}))
        ->capture_default_str();
    app.add_option("--tau", tau, "Relative threshold for --extraction threshold")
        ->capture_default_str();
    app.add_option("--workers", workers, "Worker threads; 0 = hardware concurrency")
        ->capture_default_str();
    app.add_option("--out", out_path, "Output CSV path");
    app.add_flag("--print-config", want_config,
                 "Echo the fully resolved configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        jsr::ExperimentConfig cfg;
        cfg.n = n;
        cfg.k = k;
        cfg.phi_variance = phi_variance;
        cfg.sigma_v_sq = sigma_v_sq;
        cfg.m_values = jsr::parse_int_range(m_spec);
        cfg.p_values = jsr::parse_int_range(p_spec);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.method = method == "joint" ? jsr::Method::Joint : jsr::Method::Baseline;
        if (lambda > 0.0) cfg.solver.lambda = lambda;
        if (lambda_tilde > 0.0) cfg.solver.lambda_tilde = lambda_tilde;
        cfg.solver.alpha = alpha;
        cfg.solver.epsilon = epsilon;
        cfg.solver.max_inner_iters = max_inner;
        cfg.solver.max_total_iters = max_total;
        cfg.solver.init = init == "zero" ? jsr::InitMode::Zero : jsr::InitMode::PseudoInverse;
        cfg.extraction = extraction == "knownk" ? jsr::ExtractionMode::known_k(k)
                                                : jsr::ExtractionMode::threshold(tau);
        if (workers == 0) {
            const unsigned hw = std::thread::hardware_concurrency();
            cfg.workers = hw > 0 ? static_cast<int>(hw) : 1;
        } else {
            cfg.workers = workers;
        }

        if (want_config) print_config(cfg, out_path);
        if (out_path.empty()) {
            if (want_config) return 0;
            std::cerr << "error: either --out or --print-config is required\n";
            return 1;
        }

        const std::vector<jsr::MetricsCell> cells = jsr::run_sweep(cfg);
        jsr::emit_csv(cells, out_path);
        std::cerr << "wrote " << cells.size() << " grid cells to " << out_path << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
