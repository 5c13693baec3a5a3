#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aerocap/config.hpp"
#include "aerocap/io.hpp"
#include "aerocap/montecarlo.hpp"
#include "aerocap/scenario.hpp"

namespace fs = std::filesystem;
using namespace aerocap;

namespace {

GuidanceAlgorithm algo_from_name(const std::string& name) {
    if (name == "abamguid_plus") return GuidanceAlgorithm::AbamguidPlus;
    if (name == "abamguid") return GuidanceAlgorithm::Abamguid;
    if (name == "fnpag") return GuidanceAlgorithm::Fnpag;
    if (name == "casm_only") return GuidanceAlgorithm::CasmOnly;
    throw CLI::ValidationError("--algo", "unknown algorithm: " + name);
}

std::string algo_name(GuidanceAlgorithm a) {
    switch (a) {
        case GuidanceAlgorithm::AbamguidPlus: return "abamguid_plus";
        case GuidanceAlgorithm::Abamguid: return "abamguid";
        case GuidanceAlgorithm::Fnpag: return "fnpag";
        default: return "casm_only";
    }
}

int cmd_single(const std::string& config_dir, const std::string& out_dir,
               const std::string& algo, double efpa_override_deg, bool has_efpa_override) {
    Scenario scenario = load_scenario(config_dir);
    if (!algo.empty()) {
        scenario.guidance.algorithm = algo_from_name(algo);
    }
    if (has_efpa_override) {
        scenario.mission.entry.efpa_inertial = efpa_override_deg * kDegToRad;
    }
    fs::create_directories(out_dir);

    log_info("running single trajectory with " + algo_name(scenario.guidance.algorithm));
    const RunArtifacts run = run_single(scenario, /*trace_stride=*/10);

    write_trace_csv(out_dir + "/trace.csv", run.trace);
    write_guidance_log_csv(out_dir + "/guidance_log.csv", run.guidance_log);
    write_summary_json(out_dir + "/summary.json", run.summary,
                       algo_name(scenario.guidance.algorithm));

    const RunSummary& s = run.summary;
    std::cout << "outcome: "
              << (s.outcome == Outcome::Exited    ? "exited"
                  : s.outcome == Outcome::Crashed ? "crashed"
                                                  : "timeout")
              << "  pass: " << (s.pass ? "yes" : "no") << '\n';
    if (s.outcome == Outcome::Exited) {
        std::cout << "V_exit_inertial: " << format_g9(s.V_exit_inertial)
                  << " m/s (target " << format_g9(s.V_exit_target) << ", error "
                  << format_g9(s.V_exit_inertial - s.V_exit_target) << ")\n"
                  << "period: " << format_g9(s.period_s / 86400.0) << " days"
                  << "  delta_v: " << (s.dv_defined ? format_g9(s.delta_v) : "n/a")
                  << " m/s\n";
    }
    return s.pass ? 0 : 2;
}

int cmd_campaign(const std::string& config_dir, const std::string& out_dir,
                 const std::string& algo, const std::string& entry_set, int n_runs, int jobs,
                 std::uint64_t seed, bool has_seed) {
    Scenario scenario = load_scenario(config_dir);
    if (!algo.empty()) {
        scenario.guidance.algorithm = algo_from_name(algo);
    }
    DispersionSpec spec = load_dispersion(config_dir, entry_set);
    if (has_seed) {
        spec.master_seed = seed;
    }
    fs::create_directories(out_dir);

    log_info("campaign: " + std::to_string(n_runs) + " runs of " +
             algo_name(scenario.guidance.algorithm) + " (" + entry_set + " entry set)");
    const auto records = run_campaign(scenario, spec, n_runs, jobs);
    const CampaignStats stats = compute_stats(records);

    write_records_csv(out_dir + "/records.csv", records);
    write_stats_json(out_dir + "/stats.json", stats, algo_name(scenario.guidance.algorithm),
                     entry_set, spec.master_seed);

    std::cout << "runs: " << stats.n_runs << "  pass: " << stats.n_pass << " ("
              << format_g9(stats.pass_pct) << "%)  fail: " << stats.n_fail
              << "  errored: " << stats.n_errored << '\n';
    if (stats.dv_defined) {
        std::cout << "dv mean/3sigma/p99: " << format_g9(stats.dv_mean) << " / "
                  << format_g9(stats.dv_3sigma) << " / " << format_g9(stats.dv_p99)
                  << " m/s\n";
    }
    if (stats.corridor_defined) {
        std::cout << "corridor: [" << format_g9(stats.corridor_lo_deg) << ", "
                  << format_g9(stats.corridor_hi_deg) << "] width "
                  << format_g9(stats.corridor_width_deg) << " deg\n";
    }
    return 0;
}

int cmd_verify_switching(const std::string& config_dir, const std::string& out_dir,
                         const std::string& csv_path) {
    const auto rows = read_switching_csv(csv_path);
    const AeroFitPair fits = load_aero_fits(config_dir);
    const Scenario scenario = load_scenario(config_dir);
    const SwitchingAnalysis analysis =
        analyze_switching(rows, fits.linear, fits.quadratic, scenario.vehicle);

    fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir + "/switching_curves.csv");
        out << "t,H_up,H_down,H_sigma,A_up,A_down,alpha_star_linear,alpha_star_quadratic,"
               "sigma_star,branch\n";
        for (const auto& c : analysis.curves) {
            out << format_g9(c.t) << ',' << format_g9(c.H_up) << ',' << format_g9(c.H_down)
                << ',' << format_g9(c.H_sigma) << ',' << format_g9(c.A_up) << ','
                << format_g9(c.A_down) << ',' << format_g9(c.alpha_star_linear) << ','
                << format_g9(c.alpha_star_quadratic) << ',' << format_g9(c.sigma_star) << ','
                << c.branch << '\n';
        }
    }
    {
        std::ofstream out(out_dir + "/switching_events.csv");
        out << "event,t,index\n";
        for (const auto& e : analysis.events) {
            out << e.type << ',' << format_g9(e.t) << ',' << e.index << '\n';
        }
    }
    for (const auto& e : analysis.events) {
        std::cout << e.type << " at t=" << format_g9(e.t) << " (sample " << e.index << ")\n";
    }
    if (analysis.events.empty()) {
        std::cout << "no control switches detected\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aerocap: atmospheric aerocapture guidance simulation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_dir = "configs";
    std::string out_dir = "out";
    std::string algo;
    std::string entry_set = "conservative";
    std::string costate_csv;
    int n_runs = 100;
    int jobs = 1;
    std::uint64_t seed = 0;
    double efpa_deg = 0.0;

    app.add_option("--config", config_dir, "Config directory")->capture_default_str();
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    auto* single = app.add_subcommand("single", "Run one closed-loop trajectory");
    single->add_option("--algo", algo,
                       "Guidance algorithm: abamguid_plus|abamguid|fnpag|casm_only");
    auto* efpa_opt =
        single->add_option("--efpa-deg", efpa_deg, "Override the inertial entry FPA [deg]");

    auto* campaign = app.add_subcommand("campaign", "Run a dispersed Monte Carlo campaign");
    campaign->add_option("--algo", algo,
                         "Guidance algorithm: abamguid_plus|abamguid|fnpag|casm_only");
    campaign->add_option("-n,--n", n_runs, "Number of runs")->capture_default_str();
    campaign->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    auto* seed_opt = campaign->add_option("--seed", seed, "Master seed override");
    campaign->add_option("--entry-set", entry_set, "baseline|conservative")
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify-switching",
                                      "Evaluate analytic switching curves on a supplied "
                                      "state/costate trajectory CSV");
    verify->add_option("csv", costate_csv, "Trajectory CSV "
                       "(t,r,V,gamma,lambda_r,lambda_V,lambda_gamma,alpha,u1)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!fs::exists(config_dir)) {
            std::cerr << "error: config directory not found: " << config_dir << '\n';
            return 1;
        }
        if (single->parsed()) {
            return cmd_single(config_dir, out_dir, algo, efpa_deg, efpa_opt->count() > 0);
        }
        if (campaign->parsed()) {
            return cmd_campaign(config_dir, out_dir, algo, entry_set, n_runs, jobs, seed,
                                seed_opt->count() > 0);
        }
        if (verify->parsed()) {
            return cmd_verify_switching(config_dir, out_dir, costate_csv);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
