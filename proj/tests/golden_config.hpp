// The fixed configuration behind tests/golden/sweep_2x2_seed7.csv. Shared by
// the unit suite and the acceptance runner so both check the same bytes.
#pragma once

#include "jsr/harness.hpp"

inline jsr::ExperimentConfig golden_sweep_config() {
    jsr::ExperimentConfig cfg;
    cfg.n = 20;
    cfg.k = 3;
    cfg.phi_variance = 0.004;
    cfg.sigma_v_sq = 1e-4;
    cfg.m_values = {12, 16};
    cfg.p_values = {2, 4};
    cfg.trials = 5;
    cfg.seed = 7;
    cfg.method = jsr::Method::Joint;
    cfg.workers = 1;
    return cfg;
}
