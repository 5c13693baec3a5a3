#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aerocap/scenario.hpp"

namespace aerocap {

// Uncertainty bands are stored as 3-sigma values (as published) and divided by
// three at sampling time.
struct AtmoDispersionSpec {
    double bias_three_sigma = 0.15;
    int n_waves = 2;
    double wave_amplitude_three_sigma = 0.075;
    double wavelength_lo = 1.0e5;  // m
    double wavelength_hi = 3.0e5;  // m
};

struct DispersionSpec {
    double efpa_mean_deg = -10.79;       // inertial
    double efpa_three_sigma_deg = 0.622;
    double k_CL_three_sigma = 0.02;
    double k_CD_three_sigma = 0.03;
    AtmoDispersionSpec atmosphere;
    StateNoiseSpec state_noise;
    std::uint64_t master_seed = 0;
};

struct DispersedInputs {
    double efpa_deg = 0.0;
    double k_CL = 1.0;
    double k_CD = 1.0;
    AtmoPerturbation atmo;
    std::uint64_t run_seed = 0;
    std::uint64_t noise_seed = 0;
};

// Deterministic function of (master_seed, run_index).
DispersedInputs sample_run(const DispersionSpec& spec, std::uint64_t run_index);

enum class RunOutcome : int { Exited = 0, Crashed = 1, Timeout = 2, Errored = 3 };

struct MonteCarloRecord {
    std::uint64_t run_id = 0;
    std::uint64_t seed = 0;
    double efpa_deg = 0.0;
    double k_CL = 1.0;
    double k_CD = 1.0;
    double atmo_bias = 1.0;
    RunOutcome outcome = RunOutcome::Errored;
    double exit_time = 0.0;
    double exit_V_inertial = 0.0;
    double exit_gamma_inertial_deg = 0.0;
    double delta_v = 0.0;  // m/s; 0 when undefined
    double period_s = 0.0;
    bool pass = false;
    std::string error;  // diagnostic for errored runs
};

struct CampaignStats {
    int n_runs = 0;
    int n_pass = 0;
    int n_fail = 0;     // completed but not captured
    int n_errored = 0;  // reported separately
    double pass_pct = 0.0;
    bool dv_defined = false;
    double dv_mean = 0.0;
    double dv_3sigma = 0.0;  // 3 x sample standard deviation
    double dv_p99 = 0.0;     // nearest-rank 99th percentile
    bool corridor_defined = false;
    double corridor_lo_deg = 0.0;  // 0.15th percentile of passing EFPAs
    double corridor_hi_deg = 0.0;  // 99.85th percentile
    double corridor_width_deg = 0.0;
};

// Runs n_runs dispersed trajectories. Records are ordered by run id and are
// identical for any parallelism degree; per-run exceptions are caught and
// recorded as Errored with the diagnostic.
std::vector<MonteCarloRecord> run_campaign(const Scenario& base, const DispersionSpec& spec,
                                           int n_runs, int parallelism);

// Statistics over passing runs only, per the campaign reporting convention.
CampaignStats compute_stats(const std::vector<MonteCarloRecord>& records);

}  // namespace aerocap
