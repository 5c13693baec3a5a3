#include "aerocap/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

namespace aerocap {

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    return out;
}

const char* outcome_name(RunOutcome o) {
    switch (o) {
        case RunOutcome::Exited: return "exited";
        case RunOutcome::Crashed: return "crashed";
        case RunOutcome::Timeout: return "timeout";
        default: return "errored";
    }
}

}  // namespace

void write_trace_csv(const std::string& path, const std::vector<TraceSample>& trace) {
    std::ofstream out = open_or_throw(path);
    out << "t,h,V,gamma_deg,alpha_deg,sigma_deg,rho,L,D,phase\n";
    for (const auto& s : trace) {
        out << format_g9(s.t) << ',' << format_g9(s.h) << ',' << format_g9(s.V) << ','
            << format_g9(s.gamma_deg) << ',' << format_g9(s.alpha_deg) << ','
            << format_g9(s.sigma_deg) << ',' << format_g9(s.rho) << ',' << format_g9(s.L) << ','
            << format_g9(s.D) << ',' << s.phase << '\n';
    }
}

void write_guidance_log_csv(const std::string& path, const std::vector<GuidanceLogRow>& log) {
    std::ofstream out = open_or_throw(path);
    out << "t,phase,ts1,ts2,ts3,alpha_cmd,sigma_cmd,V_pred,residual,density_ratio_estimate\n";
    for (const auto& r : log) {
        out << format_g9(r.t) << ',' << r.phase << ',' << format_g9(r.ts1) << ','
            << format_g9(r.ts2) << ',' << format_g9(r.ts3) << ',' << format_g9(r.alpha_cmd)
            << ',' << format_g9(r.sigma_cmd) << ',' << format_g9(r.V_pred) << ','
            << format_g9(r.residual) << ',' << format_g9(r.density_ratio) << '\n';
    }
}

void write_records_csv(const std::string& path, const std::vector<MonteCarloRecord>& records) {
    std::ofstream out = open_or_throw(path);
    out << "run_id,seed,efpa_deg,k_CL,k_CD,atmo_bias,outcome,exit_time,"
           "exit_V_inertial,exit_gamma_inertial_deg,delta_v,period_s,pass\n";
    for (const auto& r : records) {
        out << r.run_id << ',' << r.seed << ',' << format_g9(r.efpa_deg) << ','
            << format_g9(r.k_CL) << ',' << format_g9(r.k_CD) << ',' << format_g9(r.atmo_bias)
            << ',' << outcome_name(r.outcome) << ',' << format_g9(r.exit_time) << ','
            << format_g9(r.exit_V_inertial) << ',' << format_g9(r.exit_gamma_inertial_deg)
            << ',' << format_g9(r.delta_v) << ',' << format_g9(r.period_s) << ','
            << (r.pass ? 1 : 0) << '\n';
    }
}

void write_stats_json(const std::string& path, const CampaignStats& st,
                      const std::string& algorithm, const std::string& entry_set,
                      std::uint64_t master_seed) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["algorithm"] = algorithm;
    j["entry_set"] = entry_set;
    j["master_seed"] = master_seed;
    j["n_runs"] = st.n_runs;
    j["n_pass"] = st.n_pass;
    j["n_fail"] = st.n_fail;
    j["n_errored"] = st.n_errored;
    j["pass_pct"] = st.pass_pct;
    if (st.dv_defined) {
        j["dv_mean"] = st.dv_mean;
        j["dv_3sigma"] = st.dv_3sigma;
        j["dv_p99"] = st.dv_p99;
    } else {
        j["dv_mean"] = nullptr;
        j["dv_3sigma"] = nullptr;
        j["dv_p99"] = nullptr;
    }
    if (st.corridor_defined) {
        j["corridor_lo_deg"] = st.corridor_lo_deg;
        j["corridor_hi_deg"] = st.corridor_hi_deg;
        j["corridor_width_deg"] = st.corridor_width_deg;
    } else {
        j["corridor_lo_deg"] = nullptr;
        j["corridor_hi_deg"] = nullptr;
        j["corridor_width_deg"] = nullptr;
    }
    std::ofstream out = open_or_throw(path);
    out << j.dump(2) << '\n';
}

void write_summary_json(const std::string& path, const RunSummary& s,
                        const std::string& algorithm) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["algorithm"] = algorithm;
    j["outcome"] = s.outcome == Outcome::Exited    ? "exited"
                   : s.outcome == Outcome::Crashed ? "crashed"
                                                   : "timeout";
    j["pass"] = s.pass;
    j["flight_time_s"] = s.flight_time;
    j["V_exit_inertial"] = s.V_exit_inertial;
    j["V_exit_target"] = s.V_exit_target;
    j["V_exit_error"] = s.V_exit_inertial - s.V_exit_target;
    j["gamma_exit_inertial_deg"] = s.gamma_exit_inertial * kRadToDeg;
    j["apoapsis_m"] = s.apoapsis;
    j["delta_v"] = s.dv_defined ? nlohmann::json(s.delta_v) : nlohmann::json(nullptr);
    j["period_days"] = s.period_s / 86400.0;
    j["eccentricity"] = s.eccentricity;
    j["peak_load_g"] = s.peak_load_g;
    j["exit_state"] = {{"t", s.exit_state.t},
                       {"r", s.exit_state.r},
                       {"theta_deg", s.exit_state.theta * kRadToDeg},
                       {"phi_deg", s.exit_state.phi * kRadToDeg},
                       {"V_rel", s.exit_state.V},
                       {"gamma_rel_deg", s.exit_state.gamma * kRadToDeg},
                       {"psi_rel_deg", s.exit_state.psi * kRadToDeg}};
    std::ofstream out = open_or_throw(path);
    out << j.dump(2) << '\n';
}

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("AEROCAP_LOG");
        if (!env) return 1;
        const std::string v(env);
        if (v == "quiet" || v == "0") return 0;
        if (v == "debug" || v == "2") return 2;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[aerocap] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[aerocap:debug] " << msg << '\n';
}

}  // namespace aerocap
