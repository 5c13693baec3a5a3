#include "aerocap/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace aerocap {

namespace {

using nlohmann::json;

json load_json_if_present(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        return json::object();
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("failed to parse " + path + ": " + e.what());
    }
    return j;
}

double get_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

AeroModel parse_aero(const json& j, const AeroModel& fallback) {
    if (j.empty()) return fallback;
    AeroModel m = fallback;
    const std::string kind = j.value("kind", std::string("quadratic"));
    if (kind == "linear") {
        m.kind = AeroModel::Kind::Linear;
    } else if (kind == "quadratic") {
        m.kind = AeroModel::Kind::Quadratic;
    } else if (kind == "table") {
        m.kind = AeroModel::Kind::Table;
    } else {
        throw std::runtime_error("unknown aero kind: " + kind);
    }
    m.CD0 = get_or(j, "CD0", m.CD0);
    m.CDa = get_or(j, "CDa", m.CDa);
    m.CDa2 = get_or(j, "CDa2", m.CDa2);
    m.CL0 = get_or(j, "CL0", m.CL0);
    m.CLa = get_or(j, "CLa", m.CLa);
    m.CLa2 = get_or(j, "CLa2", m.CLa2);
    if (m.kind == AeroModel::Kind::Table) {
        if (j.contains("table")) {
            m.table.clear();
            for (const auto& row : j.at("table")) {
                m.table.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                                   row.at(2).get<double>()});
            }
        }
        if (m.table.empty()) {
            throw std::runtime_error("aero kind 'table' requires a non-empty 'table' array");
        }
    }
    return m;
}

}  // namespace

Scenario load_scenario(const std::string& config_dir) {
    Scenario s;

    // --- planet ---
    {
        const json j = load_json_if_present(config_dir + "/planet.json");
        PlanetModel p = uranus_defaults();
        p.mu = get_or(j, "mu", p.mu);
        p.R0 = get_or(j, "R0", p.R0);
        p.J2 = get_or(j, "J2", p.J2);
        p.Omega = get_or(j, "Omega", p.Omega);
        if (j.contains("atmosphere")) {
            const json& a = j.at("atmosphere");
            const std::string kind = a.value("kind", std::string("exponential"));
            if (kind == "exponential") {
                p.atmosphere.kind = AtmosphereModel::Kind::Exponential;
                p.atmosphere.rho0 = get_or(a, "rho0", p.atmosphere.rho0);
                p.atmosphere.scale_height = get_or(a, "scale_height", p.atmosphere.scale_height);
            } else if (kind == "log_poly") {
                p.atmosphere.kind = AtmosphereModel::Kind::LogPolynomial;
                p.atmosphere.segments.clear();
                for (const auto& seg : a.at("segments")) {
                    AtmosphereModel::Segment segment;
                    segment.h_base = seg.at("h_base").get<double>();
                    for (const auto& c : seg.at("coeffs")) {
                        segment.coeffs.push_back(c.get<double>());
                    }
                    p.atmosphere.segments.push_back(segment);
                }
                if (p.atmosphere.segments.empty()) {
                    throw std::runtime_error("log_poly atmosphere requires segments");
                }
            } else {
                throw std::runtime_error("unknown atmosphere kind: " + kind);
            }
            p.atmosphere.h_ceiling = get_or(a, "h_ceiling", p.atmosphere.h_ceiling);
        }
        s.planet_truth = p;
        s.planet_onboard = p;
        s.planet_onboard.atmosphere.perturbation = AtmoPerturbation{};
    }

    // --- vehicle + aero ---
    {
        const json j = load_json_if_present(config_dir + "/vehicle.json");
        VehicleModel v = VehicleModel::uop_defaults();
        v.mass = get_or(j, "mass", v.mass);
        v.S = get_or(j, "S", v.S);
        if (j.contains("alpha_limits_deg")) {
            v.alpha_min_deg = j.at("alpha_limits_deg").at(0).get<double>();
            v.alpha_max_deg = j.at("alpha_limits_deg").at(1).get<double>();
        }
        if (j.contains("sigma_limits_deg")) {
            v.sigma_min_deg = j.at("sigma_limits_deg").at(0).get<double>();
            v.sigma_max_deg = j.at("sigma_limits_deg").at(1).get<double>();
        }
        v.alpha_rate_deg_s = get_or(j, "alpha_rate_limit_deg_s", v.alpha_rate_deg_s);
        v.sigma_rate_deg_s = get_or(j, "sigma_rate_limit_deg_s", v.sigma_rate_deg_s);
        s.vehicle = v;

        const AeroModel nominal = AeroModel::quadratic_nominal();
        s.aero_truth = parse_aero(j.contains("aero") ? j.at("aero") : json(), nominal);
        s.aero_onboard = s.aero_truth;
        s.aero_onboard.k_CL = 1.0;
        s.aero_onboard.k_CD = 1.0;
    }

    // --- mission ---
    {
        const json j = load_json_if_present(config_dir + "/mission.json");
        MissionSpec m;
        const json e = j.contains("entry") ? j.at("entry") : json::object();
        m.entry.h0 = get_or(e, "altitude", 1.0e6);
        m.entry.V0_inertial = get_or(e, "V_inertial", 23780.0);
        m.entry.efpa_inertial = get_or(e, "efpa_deg", -10.79) * kDegToRad;
        m.entry.theta0 = get_or(e, "longitude_deg", 262.12) * kDegToRad;
        m.entry.phi0 = get_or(e, "latitude_deg", -16.02) * kDegToRad;
        m.entry.psi0_inertial = get_or(e, "azimuth_deg", 117.45) * kDegToRad;

        const json t = j.contains("target") ? j.at("target") : json::object();
        const double R0 = s.planet_truth.R0;
        m.target.ra_target = R0 + get_or(t, "apoapsis_altitude", 2.0e9);
        m.target.rp_target = R0 + get_or(t, "periapsis_altitude", 4.0e6);
        m.target.r_exit = R0 + get_or(t, "exit_altitude", 1.0e6);

        if (j.contains("success_period_days")) {
            m.success_period_lo_s = j.at("success_period_days").at(0).get<double>() * 86400.0;
            m.success_period_hi_s = j.at("success_period_days").at(1).get<double>() * 86400.0;
        }
        const json sim = j.contains("sim") ? j.at("sim") : json::object();
        m.plant_dt = get_or(sim, "plant_dt", m.plant_dt);
        m.crash_altitude = get_or(sim, "crash_altitude", m.crash_altitude);
        m.t_max = get_or(sim, "t_max", m.t_max);
        s.mission = m;
    }

    // --- guidance ---
    {
        const json j = load_json_if_present(config_dir + "/guidance.json");
        GuidanceConfig g;
        const std::string algo = j.value("algorithm", std::string("abamguid_plus"));
        if (algo == "abamguid_plus") {
            g.algorithm = GuidanceAlgorithm::AbamguidPlus;
        } else if (algo == "abamguid") {
            g.algorithm = GuidanceAlgorithm::Abamguid;
        } else if (algo == "fnpag") {
            g.algorithm = GuidanceAlgorithm::Fnpag;
        } else if (algo == "casm_only") {
            g.algorithm = GuidanceAlgorithm::CasmOnly;
        } else {
            throw std::runtime_error("unknown guidance algorithm: " + algo);
        }
        g.rate_hz = get_or(j, "rate_hz", g.rate_hz);
        g.load_trigger_g = get_or(j, "load_trigger_g", g.load_trigger_g);
        g.predictor_dt = get_or(j, "predictor_dt", g.predictor_dt);
        g.predictor_t_max = get_or(j, "predictor_t_max", g.predictor_t_max);
        g.initial_alpha_deg = get_or(j, "initial_alpha_deg", g.initial_alpha_deg);
        g.initial_sigma_deg = get_or(j, "initial_sigma_deg", g.initial_sigma_deg);
        if (j.contains("ts_guess_offsets")) {
            g.ts_guess_offset_1 = j.at("ts_guess_offsets").at(0).get<double>();
            g.ts_guess_offset_2 = j.at("ts_guess_offsets").at(1).get<double>();
            g.ts_guess_offset_3 = j.at("ts_guess_offsets").at(2).get<double>();
        }
        g.phase3_alpha_min = j.value("phase3_alpha", std::string("max")) == "min";
        if (j.contains("nelder_mead")) {
            const json& n = j.at("nelder_mead");
            g.nm.initial_step = get_or(n, "initial_step", g.nm.initial_step);
            g.nm.eps = get_or(n, "eps", g.nm.eps);
            g.nm.max_iters = static_cast<int>(get_or(n, "max_iters", g.nm.max_iters));
            g.nm.penalty = get_or(n, "penalty", g.nm.penalty);
        }
        if (j.contains("secant")) {
            const json& n = j.at("secant");
            g.secant_eps = get_or(n, "eps", g.secant_eps);
            g.secant_max_iters = static_cast<int>(get_or(n, "max_iters", g.secant_max_iters));
            g.secant_seed_step = get_or(n, "seed_step", g.secant_seed_step);
        }
        if (j.contains("brent")) {
            const json& n = j.at("brent");
            g.brent_f_tol = get_or(n, "f_tol", g.brent_f_tol);
            g.brent_x_tol = get_or(n, "x_tol", g.brent_x_tol);
            g.brent_max_iters = static_cast<int>(get_or(n, "max_iters", g.brent_max_iters));
        }
        g.filter_gain = get_or(j, "filter_gain", g.filter_gain);
        if (j.contains("state_noise")) {
            const json& n = j.at("state_noise");
            g.state_noise.sigma_r = get_or(n, "sigma_r", 0.0);
            g.state_noise.sigma_V = get_or(n, "sigma_V", 0.0);
            g.state_noise.sigma_gamma = get_or(n, "sigma_gamma_deg", 0.0) * kDegToRad;
        }
        s.guidance = g;
        s.guidance.target = s.mission.target;
    }

    return s;
}

DispersionSpec load_dispersion(const std::string& config_dir, const std::string& entry_set) {
    const json j = load_json_if_present(config_dir + "/dispersion.json");
    DispersionSpec d;
    if (j.contains("efpa_deg")) {
        const json& e = j.at("efpa_deg");
        d.efpa_mean_deg = get_or(e, "mean", d.efpa_mean_deg);
        const double baseline = get_or(e, "three_sigma_baseline", 0.189);
        const double conservative = get_or(e, "three_sigma_conservative", 0.622);
        d.efpa_three_sigma_deg = entry_set == "baseline" ? baseline : conservative;
    } else {
        d.efpa_three_sigma_deg = entry_set == "baseline" ? 0.189 : 0.622;
    }
    d.k_CL_three_sigma = get_or(j, "k_CL_three_sigma", d.k_CL_three_sigma);
    d.k_CD_three_sigma = get_or(j, "k_CD_three_sigma", d.k_CD_three_sigma);
    if (j.contains("atmosphere")) {
        const json& a = j.at("atmosphere");
        d.atmosphere.bias_three_sigma = get_or(a, "bias_three_sigma", d.atmosphere.bias_three_sigma);
        d.atmosphere.n_waves = static_cast<int>(get_or(a, "n_waves", d.atmosphere.n_waves));
        d.atmosphere.wave_amplitude_three_sigma =
            get_or(a, "wave_amplitude_three_sigma", d.atmosphere.wave_amplitude_three_sigma);
        if (a.contains("wavelength_range")) {
            d.atmosphere.wavelength_lo = a.at("wavelength_range").at(0).get<double>();
            d.atmosphere.wavelength_hi = a.at("wavelength_range").at(1).get<double>();
        }
    }
    if (j.contains("state_noise")) {
        const json& n = j.at("state_noise");
        d.state_noise.sigma_r = get_or(n, "sigma_r", 0.0);
        d.state_noise.sigma_V = get_or(n, "sigma_V", 0.0);
        d.state_noise.sigma_gamma = get_or(n, "sigma_gamma_deg", 0.0) * kDegToRad;
    }
    if (j.contains("master_seed")) {
        d.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    return d;
}

AeroFitPair load_aero_fits(const std::string& config_dir) {
    const json j = load_json_if_present(config_dir + "/aero_fits.json");
    AeroFitPair fits{AeroModel::linear_nominal(), AeroModel::quadratic_nominal()};
    if (j.contains("linear")) {
        fits.linear = parse_aero(j.at("linear"), fits.linear);
    }
    if (j.contains("quadratic")) {
        fits.quadratic = parse_aero(j.at("quadratic"), fits.quadratic);
    }
    return fits;
}

}  // namespace aerocap
