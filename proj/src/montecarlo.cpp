#include "aerocap/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "aerocap/rng.hpp"

namespace aerocap {

DispersedInputs sample_run(const DispersionSpec& spec, std::uint64_t run_index) {
    DispersedInputs in;
    in.run_seed = splitmix64(spec.master_seed ^ splitmix64(run_index + 1));
    RandomStream rng(in.run_seed);

    in.efpa_deg = rng.normal(spec.efpa_mean_deg, spec.efpa_three_sigma_deg / 3.0);
    in.k_CL = std::max(0.5, rng.normal(1.0, spec.k_CL_three_sigma / 3.0));
    in.k_CD = std::max(0.5, rng.normal(1.0, spec.k_CD_three_sigma / 3.0));

    in.atmo.bias = std::max(0.2, rng.normal(1.0, spec.atmosphere.bias_three_sigma / 3.0));
    for (int w = 0; w < spec.atmosphere.n_waves; ++w) {
        AtmoPerturbation::Wave wave;
        wave.amplitude =
            std::abs(rng.normal(0.0, spec.atmosphere.wave_amplitude_three_sigma / 3.0));
        wave.wavelength = rng.uniform(spec.atmosphere.wavelength_lo, spec.atmosphere.wavelength_hi);
        wave.phase = rng.uniform(0.0, 2.0 * M_PI);
        in.atmo.waves.push_back(wave);
    }
    in.noise_seed = splitmix64(in.run_seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    return in;
}

namespace {

MonteCarloRecord execute_run(const Scenario& base, const DispersionSpec& spec,
                             std::uint64_t run_index) {
    const DispersedInputs in = sample_run(spec, run_index);

    MonteCarloRecord rec;
    rec.run_id = run_index;
    rec.seed = in.run_seed;
    rec.efpa_deg = in.efpa_deg;
    rec.k_CL = in.k_CL;
    rec.k_CD = in.k_CD;
    rec.atmo_bias = in.atmo.bias;

    try {
        Scenario s = base;
        s.mission.entry.efpa_inertial = in.efpa_deg * kDegToRad;
        s.planet_truth.atmosphere.perturbation = in.atmo;
        s.aero_truth.k_CL = in.k_CL;
        s.aero_truth.k_CD = in.k_CD;
        s.guidance.state_noise = spec.state_noise;
        s.guidance.noise_seed = in.noise_seed;

        const RunSummary sum = run_single(s).summary;
        rec.outcome = sum.outcome == Outcome::Exited    ? RunOutcome::Exited
                      : sum.outcome == Outcome::Crashed ? RunOutcome::Crashed
                                                        : RunOutcome::Timeout;
        rec.exit_time = sum.flight_time;
        rec.exit_V_inertial = sum.V_exit_inertial;
        rec.exit_gamma_inertial_deg = sum.gamma_exit_inertial * kRadToDeg;
        rec.delta_v = sum.dv_defined ? sum.delta_v : 0.0;
        rec.period_s = sum.period_s;
        rec.pass = sum.pass;
    } catch (const std::exception& e) {
        rec.outcome = RunOutcome::Errored;
        rec.pass = false;
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

std::vector<MonteCarloRecord> run_campaign(const Scenario& base, const DispersionSpec& spec,
                                           int n_runs, int parallelism) {
    std::vector<MonteCarloRecord> records(static_cast<std::size_t>(n_runs));
    if (parallelism < 1) parallelism = 1;
    parallelism = std::min<int>(parallelism, n_runs);

    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n_runs) break;
            records[static_cast<std::size_t>(i)] =
                execute_run(base, spec, static_cast<std::uint64_t>(i));
        }
    };

    if (parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(parallelism));
        for (int k = 0; k < parallelism; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return records;
}

namespace {

// Nearest-rank percentile on a sorted sample: value at rank ceil(p * n).
double nearest_rank(const std::vector<double>& sorted, double p) {
    const auto n = static_cast<double>(sorted.size());
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * n));
    if (rank < 1) rank = 1;
    if (rank > sorted.size()) rank = sorted.size();
    return sorted[rank - 1];
}

}  // namespace

CampaignStats compute_stats(const std::vector<MonteCarloRecord>& records) {
    CampaignStats st;
    st.n_runs = static_cast<int>(records.size());

    std::vector<double> dv;
    std::vector<double> efpa;
    for (const auto& r : records) {
        if (r.outcome == RunOutcome::Errored) {
            ++st.n_errored;
            continue;
        }
        if (r.pass) {
            ++st.n_pass;
            dv.push_back(r.delta_v);
            efpa.push_back(r.efpa_deg);
        } else {
            ++st.n_fail;
        }
    }
    if (st.n_runs > 0) {
        st.pass_pct = 100.0 * static_cast<double>(st.n_pass) / static_cast<double>(st.n_runs);
    }
    if (dv.empty()) {
        return st;  // stats undefined with zero passing runs
    }

    // Sorted accumulation keeps the statistics bitwise permutation-invariant.
    std::sort(dv.begin(), dv.end());
    double mean = 0.0;
    for (double x : dv) mean += x;
    mean /= static_cast<double>(dv.size());
    double var = 0.0;
    if (dv.size() > 1) {
        for (double x : dv) var += (x - mean) * (x - mean);
        var /= static_cast<double>(dv.size() - 1);
    }
    st.dv_defined = true;
    st.dv_mean = mean;
    st.dv_3sigma = 3.0 * std::sqrt(var);
    st.dv_p99 = nearest_rank(dv, 0.99);

    std::sort(efpa.begin(), efpa.end());
    st.corridor_defined = true;
    st.corridor_lo_deg = nearest_rank(efpa, 0.0015);
    st.corridor_hi_deg = nearest_rank(efpa, 0.9985);
    st.corridor_width_deg = st.corridor_hi_deg - st.corridor_lo_deg;
    return st;
}

}  // namespace aerocap
