#include "aerocap/optimal_control.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aerocap {

double h_alpha_up(const Costate& cs, double V, const AeroModel& aero) {
    return -cs.lambda_V * aero.CDa + cs.lambda_gamma * aero.CLa / V;
}

double h_alpha_down(const Costate& cs, double V, const AeroModel& aero) {
    return -cs.lambda_V * aero.CDa - cs.lambda_gamma * aero.CLa / V;
}

double optimal_alpha_linear(double h_value, double alpha_min_deg, double alpha_max_deg,
                            double previous_alpha_deg) {
    if (h_value > 0.0) return alpha_min_deg;
    if (h_value < 0.0) return alpha_max_deg;
    return previous_alpha_deg;
}

double h_alpha_sq(const Costate& cs, double V, const AeroModel& aero, LiftBranch branch) {
    const double sign = branch == LiftBranch::Up ? 1.0 : -1.0;
    return -cs.lambda_V * aero.CDa2 + sign * cs.lambda_gamma * aero.CLa2 / V;
}

std::optional<double> calligraphic_A(const Costate& cs, double V, const AeroModel& aero,
                                     LiftBranch branch, double eps_singular) {
    const double sign = branch == LiftBranch::Up ? 1.0 : -1.0;
    const double h1 = -cs.lambda_V * aero.CDa + sign * cs.lambda_gamma * aero.CLa / V;
    const double h2 = h_alpha_sq(cs, V, aero, branch);
    if (std::abs(h2) < eps_singular) {
        return std::nullopt;
    }
    return -h1 / (2.0 * h2);
}

double optimal_alpha_quadratic(double A_value, double alpha_min_deg, double alpha_max_deg) {
    return std::clamp(A_value, alpha_min_deg, alpha_max_deg);
}

double sigma_switch_indicator(const Costate& cs) {
    return cs.lambda_gamma;
}

BangBangProfile BangBangProfile::from_vehicle(const VehicleModel& v, bool phase3_alpha_min) {
    BangBangProfile p;
    p.phase1 = {v.alpha_min_deg, v.sigma_min_deg};
    p.phase2 = {v.alpha_max_deg, v.sigma_min_deg};
    p.phase3 = {phase3_alpha_min ? v.alpha_min_deg : v.alpha_max_deg, v.sigma_max_deg};
    p.phase4_hold = {v.alpha_min_deg, v.sigma_max_deg};
    return p;
}

std::pair<double, double> profile_control(const BangBangProfile& profile, double t) {
    if (t < profile.ts1) return profile.phase1;
    if (t < profile.ts2) return profile.phase2;
    if (t < profile.ts3) return profile.phase3;
    return profile.phase4_hold;
}

std::pair<double, double> profile_control_average(const BangBangProfile& profile, double t0,
                                                  double t1) {
    if (t1 <= t0) {
        return profile_control(profile, t0);
    }
    double alpha_acc = 0.0;
    double sigma_acc = 0.0;
    double prev = t0;
    for (double knot : {profile.ts1, profile.ts2, profile.ts3, t1}) {
        const double k = std::min(knot, t1);
        if (k > prev) {
            const auto [a, s] = profile_control(profile, prev);
            alpha_acc += a * (k - prev);
            sigma_acc += s * (k - prev);
            prev = k;
        }
    }
    if (prev < t1) {
        const auto [a, s] = profile_control(profile, prev);
        alpha_acc += a * (t1 - prev);
        sigma_acc += s * (t1 - prev);
    }
    const double span = t1 - t0;
    return {alpha_acc / span, sigma_acc / span};
}

std::vector<SwitchingTrajectoryRow> read_switching_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open trajectory file: " + path);
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("empty trajectory file: " + path);
    }
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const std::string expected = "t,r,V,gamma,lambda_r,lambda_V,lambda_gamma,alpha,u1";
    if (header != expected) {
        throw std::runtime_error("trajectory header mismatch; expected '" + expected + "'");
    }
    std::vector<SwitchingTrajectoryRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        SwitchingTrajectoryRow row{};
        char comma;
        ss >> row.t >> comma >> row.r >> comma >> row.V >> comma >> row.gamma >> comma >>
            row.lambda_r >> comma >> row.lambda_V >> comma >> row.lambda_gamma >> comma >>
            row.alpha >> comma >> row.u1;
        if (ss.fail()) {
            throw std::runtime_error("malformed trajectory row: " + line);
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw std::runtime_error("trajectory file has no data rows: " + path);
    }
    return rows;
}

namespace {

// Sign-change indices of a series, treating exact zeros as crossings when the
// surrounding samples have opposite signs. Returns the index of the first
// sample at or past the crossing.
std::vector<std::size_t> sign_changes(const std::vector<double>& v) {
    std::vector<std::size_t> out;
    std::size_t i = 1;
    while (i < v.size()) {
        if (v[i] == 0.0 && v[i - 1] != 0.0) {
            std::size_t j = i;
            while (j < v.size() && v[j] == 0.0) ++j;
            if (j < v.size() && (v[j] > 0.0) != (v[i - 1] > 0.0)) {
                out.push_back(i);
            }
            i = j + 1;
        } else if (v[i - 1] * v[i] < 0.0) {
            out.push_back(i);
            ++i;
        } else {
            ++i;
        }
    }
    return out;
}

}  // namespace

SwitchingAnalysis analyze_switching(const std::vector<SwitchingTrajectoryRow>& rows,
                                    const AeroModel& linear, const AeroModel& quadratic,
                                    const VehicleModel& vehicle) {
    SwitchingAnalysis out;
    out.curves.reserve(rows.size());

    std::vector<double> lambda_gamma_series;
    std::vector<double> active_h_series;
    lambda_gamma_series.reserve(rows.size());
    active_h_series.reserve(rows.size());

    double prev_alpha = vehicle.alpha_min_deg;
    double prev_sigma = vehicle.sigma_min_deg;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    for (const auto& r : rows) {
        const Costate cs{r.lambda_r, r.lambda_V, r.lambda_gamma};
        SwitchingCurveRow c;
        c.t = r.t;
        c.H_up = h_alpha_up(cs, r.V, linear);
        c.H_down = h_alpha_down(cs, r.V, linear);
        c.H_sigma = sigma_switch_indicator(cs);
        c.branch = r.u1 >= 0.0 ? +1 : -1;
        const LiftBranch branch = c.branch > 0 ? LiftBranch::Up : LiftBranch::Down;

        const auto a_up = calligraphic_A(cs, r.V, quadratic, LiftBranch::Up);
        const auto a_down = calligraphic_A(cs, r.V, quadratic, LiftBranch::Down);
        c.A_up = a_up ? *a_up : nan;
        c.A_down = a_down ? *a_down : nan;

        const double h_active = branch == LiftBranch::Up ? c.H_up : c.H_down;
        c.alpha_star_linear = optimal_alpha_linear(h_active, vehicle.alpha_min_deg,
                                                   vehicle.alpha_max_deg, prev_alpha);
        prev_alpha = c.alpha_star_linear;

        const auto a_active = branch == LiftBranch::Up ? a_up : a_down;
        c.alpha_star_quadratic =
            a_active ? optimal_alpha_quadratic(*a_active, vehicle.alpha_min_deg,
                                               vehicle.alpha_max_deg)
                     : c.alpha_star_linear;

        if (c.H_sigma > 0.0) {
            c.sigma_star = vehicle.sigma_min_deg;
        } else if (c.H_sigma < 0.0) {
            c.sigma_star = vehicle.sigma_max_deg;
        } else {
            c.sigma_star = prev_sigma;
        }
        prev_sigma = c.sigma_star;

        lambda_gamma_series.push_back(c.H_sigma);
        active_h_series.push_back(h_active);
        out.curves.push_back(c);
    }

    for (std::size_t idx : sign_changes(lambda_gamma_series)) {
        out.events.push_back({"sigma_switch", rows[idx].t, idx});
    }
    for (std::size_t idx : sign_changes(active_h_series)) {
        out.events.push_back({"alpha_switch", rows[idx].t, idx});
    }
    return out;
}

}  // namespace aerocap
