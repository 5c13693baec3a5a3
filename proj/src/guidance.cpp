#include "aerocap/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aerocap {

namespace {

// Predicted crash / depletion sentinel, mapped onto the targeting residual as
// a large negative value (far more dissipation than any achievable target).
constexpr double kDepletedResidual = -1.0e6;

double sigma_sign_of(const GuidanceConfig& cfg) {
    return cfg.initial_sigma_deg < 0.0 ? -1.0 : 1.0;
}

struct OnboardExit {
    SimState state;
    bool exited = false;
};

SimState lerp_state(const SimState& a, const SimState& b, double w) {
    SimState out;
    out.t = a.t + w * (b.t - a.t);
    out.r = a.r + w * (b.r - a.r);
    out.theta = a.theta + w * (b.theta - a.theta);
    out.phi = a.phi + w * (b.phi - a.phi);
    out.V = a.V + w * (b.V - a.V);
    out.gamma = a.gamma + w * (b.gamma - a.gamma);
    out.psi = a.psi + w * (b.psi - a.psi);
    return out;
}

// Commanded levels are tracked through the vehicle slew-rate limits from the
// supplied actuator state. Each step is split at the command-switch knots and
// the dynamics see the path-averaged control, so the predicted exit speed is
// continuous in the switching times and free of first-order slew bias.
// control_at(t) is the instantaneous commanded level; next_switch_after(t) is
// the next command discontinuity (infinity for constant commands).
template <class ControlAt, class NextSwitch>
OnboardExit propagate_onboard(SimState s, double alpha_act, double sigma_act,
                              ControlAt&& control_at, NextSwitch&& next_switch_after,
                              const ModelBundle& m, const GuidanceConfig& cfg) {
    const double r_exit = cfg.target.r_exit;
    const double crash_radius = m.planet->R0;
    const double t_end = s.t + cfg.predictor_t_max;
    const VehicleModel& veh = *m.vehicle;
    const double dt = cfg.predictor_dt;
    while (true) {
        if (s.r <= crash_radius || s.t >= t_end || s.V < 50.0) {
            return {s, false};
        }
        const double t1 = s.t + dt;
        double cursor = s.t;
        double alpha_area = 0.0;
        double sigma_area = 0.0;
        while (cursor < t1) {
            const double knot = next_switch_after(cursor);
            const double sub_end = std::min(t1, knot > cursor ? knot : t1);
            const double sub = sub_end - cursor;
            const auto [alpha_cmd, sigma_cmd] = control_at(cursor);
            const double a_end = rate_limit_toward(alpha_act, alpha_cmd, veh.alpha_rate_deg_s, sub);
            const double s_end = rate_limit_toward(sigma_act, sigma_cmd, veh.sigma_rate_deg_s, sub);
            alpha_area += 0.5 * (alpha_act + a_end) * sub;
            sigma_area += 0.5 * (sigma_act + s_end) * sub;
            alpha_act = a_end;
            sigma_act = s_end;
            cursor = sub_end;
        }
        const double alpha_mid = alpha_area / dt;
        const double sigma_mid = sigma_area / dt;
        SimState next;
        try {
            next = rk4_step(s, alpha_mid, sigma_mid, dt, m);
        } catch (const std::domain_error&) {
            return {s, false};
        }
        if (!std::isfinite(next.V) || !std::isfinite(next.gamma) || next.V <= 0.0) {
            return {s, false};
        }
        if (next.r >= r_exit && next.r > s.r) {
            const double w = (r_exit - s.r) / (next.r - s.r);
            SimState exit_state = lerp_state(s, next, w);
            exit_state.r = r_exit;
            return {exit_state, true};
        }
        s = next;
    }
}

Prediction prediction_from(const OnboardExit& oe, const ModelBundle& m) {
    Prediction p;
    p.V_terminal = oe.state.V;
    if (!oe.exited) {
        p.depleted = true;
        return p;
    }
    p.V_exit = inertial_from_relative(oe.state, *m.planet).V;
    return p;
}

// Depleted predictions map to a large negative residual, graded by the speed
// still held at termination so the correctors see a slope toward the
// exit/crash boundary instead of a flat plateau.
double residual_of(const Prediction& p, const GuidanceConfig& cfg) {
    if (p.depleted) {
        return kDepletedResidual + p.V_terminal;
    }
    return p.V_exit - cfg.V_exit_target;
}

}  // namespace

bool load_trigger_check(double sensed_accel, double threshold_g, bool already_triggered) {
    return already_triggered || sensed_accel >= threshold_g * kStandardGravity;
}

double density_ratio_filter(const LiftDrag& sensed, const LiftDrag& modeled, double gain,
                            double previous_estimate) {
    constexpr double kMinModeledDrag = 1.0e-6;  // m/s^2
    if (modeled.D < kMinModeledDrag) {
        return previous_estimate;
    }
    const double est = (1.0 - gain) * previous_estimate + gain * (sensed.D / modeled.D);
    return std::clamp(est, 0.1, 10.0);
}

Prediction predict_exit_velocity(const SimState& current, const BangBangProfile& profile,
                                 const ModelBundle& onboard, const GuidanceConfig& cfg,
                                 const ControlCommand& actuator) {
    const double sign = sigma_sign_of(cfg);
    auto control_at = [&](double t) {
        const auto [alpha, sigma_mag] = profile_control(profile, t);
        return std::pair<double, double>{alpha, sign * sigma_mag};
    };
    auto next_switch = [&](double t) {
        if (t < profile.ts1) return profile.ts1;
        if (t < profile.ts2) return profile.ts2;
        if (t < profile.ts3) return profile.ts3;
        return std::numeric_limits<double>::infinity();
    };
    return prediction_from(propagate_onboard(current, actuator.alpha_actual,
                                             actuator.sigma_actual, control_at, next_switch,
                                             onboard, cfg),
                           onboard);
}

Prediction predict_exit_velocity(const SimState& current, const BangBangProfile& profile,
                                 const ModelBundle& onboard, const GuidanceConfig& cfg) {
    const double sign = sigma_sign_of(cfg);
    const auto [alpha0, sigma0] = profile_control(profile, current.t);
    ControlCommand tracked;
    tracked.alpha_actual = alpha0;
    tracked.sigma_actual = sign * sigma0;
    return predict_exit_velocity(current, profile, onboard, cfg, tracked);
}

Prediction predict_exit_velocity_const(const SimState& current, double alpha_deg,
                                       double sigma_deg, const ModelBundle& onboard,
                                       const GuidanceConfig& cfg,
                                       const ControlCommand& actuator) {
    auto control_at = [&](double) { return std::pair<double, double>{alpha_deg, sigma_deg}; };
    auto next_switch = [](double) { return std::numeric_limits<double>::infinity(); };
    return prediction_from(propagate_onboard(current, actuator.alpha_actual,
                                             actuator.sigma_actual, control_at, next_switch,
                                             onboard, cfg),
                           onboard);
}

Prediction predict_exit_velocity_const(const SimState& current, double alpha_deg,
                                       double sigma_deg, const ModelBundle& onboard,
                                       const GuidanceConfig& cfg) {
    ControlCommand tracked;
    tracked.alpha_actual = alpha_deg;
    tracked.sigma_actual = sigma_deg;
    return predict_exit_velocity_const(current, alpha_deg, sigma_deg, onboard, cfg, tracked);
}

CasmResult casm(const SimState& estimate, double prev_alpha_deg, double prev_sigma_mag_deg,
                const ModelBundle& onboard, const GuidanceConfig& cfg) {
    ControlCommand tracked;
    tracked.alpha_actual = prev_alpha_deg;
    tracked.sigma_actual = sigma_sign_of(cfg) * prev_sigma_mag_deg;
    return casm(estimate, prev_alpha_deg, prev_sigma_mag_deg, onboard, cfg, tracked);
}

CasmResult casm(const SimState& estimate, double prev_alpha_deg, double prev_sigma_mag_deg,
                const ModelBundle& onboard, const GuidanceConfig& cfg,
                const ControlCommand& actuator) {
    const double sign = sigma_sign_of(cfg);
    auto eval = [&](double alpha, double sigma_mag) {
        const Prediction p = predict_exit_velocity_const(estimate, alpha, sign * sigma_mag,
                                                         onboard, cfg, actuator);
        return residual_of(p, cfg);
    };
    return casm_search(eval, *onboard.vehicle, prev_alpha_deg, prev_sigma_mag_deg,
                       cfg.brent_f_tol, cfg.brent_x_tol, cfg.brent_max_iters);
}

CasmResult casm_search(const std::function<double(double, double)>& residual,
                       const VehicleModel& vehicle, double prev_alpha_deg,
                       double prev_sigma_mag_deg, double brent_f_tol, double brent_x_tol,
                       int brent_max_iters) {
    const VehicleModel& v = vehicle;
    auto eval = residual;

    struct Point {
        double alpha, sigma, f;
    };
    std::vector<Point> points;
    points.reserve(6);
    for (double s : {v.sigma_min_deg, v.sigma_max_deg}) {
        for (double a : {v.alpha_min_deg, v.alpha_max_deg}) {
            points.push_back({a, s, eval(a, s)});
        }
    }

    const double f_prev = eval(prev_alpha_deg, prev_sigma_mag_deg);
    if (f_prev == 0.0) {
        return {prev_alpha_deg, prev_sigma_mag_deg, 0.0, true};
    }

    // Same-alpha point saturated toward the sign needed to cross zero; gives a
    // bracket option that keeps alpha fixed (bank-only modulation).
    const double sixth_sigma = f_prev > 0.0 ? v.sigma_max_deg : v.sigma_min_deg;
    points.push_back({prev_alpha_deg, sixth_sigma, eval(prev_alpha_deg, sixth_sigma)});

    const Point prev_point{prev_alpha_deg, prev_sigma_mag_deg, f_prev};
    const Point* partner = nullptr;
    for (const Point& p : points) {
        if (p.f * f_prev < 0.0 && (!partner || std::abs(p.f) < std::abs(partner->f))) {
            partner = &p;
        }
    }

    CasmResult out;
    if (partner == nullptr) {
        const Point* best = &prev_point;
        for (const Point& p : points) {
            if (std::abs(p.f) < std::abs(best->f)) best = &p;
        }
        out.alpha_deg = best->alpha;
        out.sigma_deg = best->sigma;
        out.residual = best->f;
        out.bracketed = false;
        return out;
    }

    const Point& pa = f_prev < 0.0 ? prev_point : *partner;
    const Point& pb = f_prev < 0.0 ? *partner : prev_point;
    auto f_kappa = [&](double k) {
        return eval(pa.alpha + k * (pb.alpha - pa.alpha), pa.sigma + k * (pb.sigma - pa.sigma));
    };
    const BrentResult br = brent(f_kappa, 0.0, 1.0, brent_f_tol, brent_x_tol, brent_max_iters);
    out.alpha_deg = pa.alpha + br.x * (pb.alpha - pa.alpha);
    out.sigma_deg = pa.sigma + br.x * (pb.sigma - pa.sigma);
    out.residual = br.f;
    out.bracketed = true;
    return out;
}

Guidance::Guidance(const GuidanceConfig& cfg, ModelBundle onboard)
    : cfg_(cfg), onboard_(onboard) {
    if (cfg_.V_exit_target <= 0.0) {
        cfg_.V_exit_target = exit_velocity_target(cfg_.target, onboard_.planet->mu);
    }
    sigma_sign_ = sigma_sign_of(cfg_);
    latched_alpha_ = cfg_.initial_alpha_deg;
    latched_sigma_ = cfg_.initial_sigma_deg;
    state_.prev_alpha_deg = cfg_.initial_alpha_deg;
    state_.prev_sigma_deg = cfg_.initial_sigma_deg;
    onboard_.perturbed_atmosphere = false;
    onboard_.density_scale = 1.0;
    if (cfg_.state_noise.enabled()) {
        noise_rng_ = std::make_unique<RandomStream>(cfg_.noise_seed);
    }
}

ControlPolicy Guidance::as_policy() {
    return [this](double t, const SimState& truth, const LiftDrag& sensed,
                  const ControlCommand& actuator) { return update(t, truth, sensed, actuator); };
}

PolicyCommand Guidance::update(double t, const SimState& truth, const LiftDrag& sensed,
                               const ControlCommand& actuator) {
    if (t + 1.0e-9 >= next_call_t_) {
        next_call_t_ += 1.0 / cfg_.rate_hz;
        if (next_call_t_ <= t) {
            next_call_t_ = t + 1.0 / cfg_.rate_hz;
        }
        SimState est = truth;
        if (noise_rng_) {
            est.r += noise_rng_->normal(0.0, cfg_.state_noise.sigma_r);
            est.V += noise_rng_->normal(0.0, cfg_.state_noise.sigma_V);
            est.gamma += noise_rng_->normal(0.0, cfg_.state_noise.sigma_gamma);
        }
        guidance_call(t, est, sensed, actuator);
    }
    return {latched_alpha_, latched_sigma_, static_cast<int>(state_.phase)};
}

void Guidance::guidance_call(double t, const SimState& est, const LiftDrag& sensed,
                             const ControlCommand& actuator) {
    const double accel = std::sqrt(sensed.L * sensed.L + sensed.D * sensed.D);
    const bool was_triggered = state_.triggered;
    state_.triggered = load_trigger_check(accel, cfg_.load_trigger_g, state_.triggered);

    if (!state_.triggered) {
        latched_alpha_ = cfg_.initial_alpha_deg;
        latched_sigma_ = cfg_.initial_sigma_deg;
        log_.push_back({t, 0, state_.ts1, state_.ts2, state_.ts3, latched_alpha_, latched_sigma_,
                        0.0, 0.0, state_.density_ratio});
        return;
    }

    if (!was_triggered) {
        state_.trigger_time = t;
        state_.ts1 = t + cfg_.ts_guess_offset_1;
        state_.ts2 = t + cfg_.ts_guess_offset_2;
        state_.ts3 = t + cfg_.ts_guess_offset_3;
        state_.fnpag_tsig = t + cfg_.ts_guess_offset_2;
        state_.phase = cfg_.algorithm == GuidanceAlgorithm::CasmOnly ? GuidancePhase::Phase4
                                                                     : GuidancePhase::Phase1;
    }

    actuator_ = actuator;
    const double rho_nominal =
        density(*onboard_.planet, onboard_.planet->altitude_from_radius(est.r), false);
    const LiftDrag modeled =
        lift_drag(*onboard_.aero, *onboard_.vehicle, rho_nominal, est.V, actuator.alpha_actual);
    state_.density_ratio =
        density_ratio_filter(sensed, modeled, cfg_.filter_gain, state_.density_ratio);
    onboard_.density_scale = state_.density_ratio;

    if (cfg_.algorithm == GuidanceAlgorithm::Fnpag) {
        fnpag_call(t, est);
    } else {
        advance_phase(t);
        switch (state_.phase) {
            case GuidancePhase::Phase1:
                solve_phase1(t, est);
                break;
            case GuidancePhase::Phase2:
                solve_phase2(t, est);
                break;
            case GuidancePhase::Phase3:
                solve_phase3(t, est);
                break;
            default:
                solve_phase4(est);
                break;
        }
    }

    log_.push_back({t, static_cast<int>(state_.phase), state_.ts1, state_.ts2, state_.ts3,
                    latched_alpha_, latched_sigma_, last_V_pred_, last_residual_,
                    state_.density_ratio});
    state_.prev_alpha_deg = latched_alpha_;
    state_.prev_sigma_deg = latched_sigma_;
    state_.prev_residual = last_residual_;
}

void Guidance::advance_phase(double t) {
    // Commands are latched between guidance epochs, so a switch executes at
    // the epoch nearest the solved switching time rather than the first epoch
    // past it; this halves the worst-case timing error.
    const double half_epoch = 0.5 / cfg_.rate_hz;
    while (true) {
        if (state_.phase == GuidancePhase::Phase1 && t >= state_.ts1 - half_epoch) {
            state_.phase = GuidancePhase::Phase2;
        } else if (state_.phase == GuidancePhase::Phase2 && t >= state_.ts2 - half_epoch) {
            state_.phase = GuidancePhase::Phase3;
        } else if (state_.phase == GuidancePhase::Phase3 && t >= state_.ts3 - half_epoch) {
            state_.phase = GuidancePhase::Phase4;
        } else {
            break;
        }
    }
}

double Guidance::scan_then_secant(const std::function<double(double)>& z, double lo, double hi,
                                  double stored) {
    // Fast path while tracking: polish the stored solution with the secant
    // alone. Falls through to the sweep when the solution has drifted.
    const double z0 = z(stored);
    if (std::abs(z0) < 10.0) {
        const SecantResult quick = newton_secant(z, stored, std::min(stored + 2.0, hi),
                                                 cfg_.secant_eps, cfg_.secant_max_iters);
        if (quick.status == SecantStatus::Converged && std::abs(quick.f) <= std::abs(z0)) {
            return std::clamp(quick.x, lo, hi);
        }
        if (quick.status == SecantStatus::Stalled && std::abs(z0) < 1.0) {
            return std::clamp(stored, lo, hi);
        }
    }

    // Candidate sweep locates the root's neighborhood (the residual is flat
    // wherever the switch falls beyond the predicted exit, which stalls a
    // blindly seeded secant). The stored solution competes with the sweep.
    std::vector<double> xs{stored, lo, hi};
    for (double off : {30.0, 60.0, 120.0, 240.0, 480.0, 960.0}) {
        if (lo + off < hi) xs.push_back(lo + off);
    }

    // Ties broken toward the earliest switch so that once the residual goes
    // flat (no remaining authority in this switch) the phase hands over to the
    // closed-loop terminal logic instead of riding the horizon open loop.
    double best_x = stored;
    double best_abs = std::numeric_limits<double>::infinity();
    double neg_x = 0.0, neg_z = 0.0, pos_x = 0.0, pos_z = 0.0;
    bool has_neg = false, has_pos = false;
    constexpr double kFlatTol = 0.25;  // m/s
    for (double x : xs) {
        const double fx = z(x);
        const double a = std::abs(fx);
        if (a < best_abs - kFlatTol || (a < best_abs + kFlatTol && x < best_x)) {
            best_abs = std::min(a, best_abs);
            best_x = x;
        }
        if (fx < 0.0 && (!has_neg || std::abs(fx) < std::abs(neg_z))) {
            has_neg = true;
            neg_x = x;
            neg_z = fx;
        }
        if (fx > 0.0 && (!has_pos || std::abs(fx) < std::abs(pos_z))) {
            has_pos = true;
            pos_x = x;
            pos_z = fx;
        }
    }

    if (has_neg && has_pos) {
        const SecantResult r =
            newton_secant(z, neg_x, pos_x, cfg_.secant_eps, cfg_.secant_max_iters);
        if (r.status == SecantStatus::Converged && std::abs(r.f) <= best_abs) {
            return std::clamp(r.x, lo, hi);
        }
        // The residual can be near-exponential across the crash boundary,
        // which defeats the secant; fall back to the bracket-preserving solve.
        const BrentResult br = brent(z, std::min(neg_x, pos_x), std::max(neg_x, pos_x),
                                     cfg_.brent_f_tol, cfg_.brent_x_tol, cfg_.brent_max_iters);
        if (br.status == BrentStatus::Converged && std::abs(br.f) <= best_abs) {
            return std::clamp(br.x, lo, hi);
        }
    }
    return std::clamp(best_x, lo, hi);
}

BangBangProfile Guidance::profile_from_state() const {
    BangBangProfile p = BangBangProfile::from_vehicle(*onboard_.vehicle, cfg_.phase3_alpha_min);
    p.ts1 = state_.ts1;
    p.ts2 = state_.ts2;
    p.ts3 = state_.ts3;
    return p;
}

double Guidance::profile_residual(const SimState& est, const BangBangProfile& p,
                                  Prediction* out) {
    const Prediction pred = predict_exit_velocity(est, p, onboard_, cfg_, actuator_);
    if (out) *out = pred;
    return residual_of(pred, cfg_);
}

void Guidance::solve_phase1(double t, const SimState& est) {
    const BangBangProfile base = profile_from_state();
    auto objective = [&](const std::vector<double>& x) {
        BangBangProfile q = base;
        q.ts1 = x[0];
        q.ts2 = x[1];
        q.ts3 = x[2];
        const double f = profile_residual(est, q, nullptr);
        return 0.5 * f * f;
    };

    // The objective has two exit families (lift-up dominated and dig-to-exit)
    // separated by a predicted-crash plateau. Seed the simplex from the best
    // of the stored solution and a structured candidate sweep so the search
    // starts in the right basin; the sweep is skipped while the stored
    // solution is already tracking.
    std::vector<double> best{state_.ts1, state_.ts2, state_.ts3};
    double best_f = objective(best);
    if (best_f > 0.5 * 50.0 * 50.0) {
        const double H = cfg_.predictor_t_max;
        std::vector<std::vector<double>> candidates;
        for (double s1 : {20.0, 120.0, 300.0, 600.0}) {
            candidates.push_back({t + s1, t + s1 + 40.0, t + H});
        }
        candidates.push_back({t + cfg_.ts_guess_offset_1, t + cfg_.ts_guess_offset_2,
                              t + cfg_.ts_guess_offset_3});
        candidates.push_back({t + 900.0, t + 1200.0, t + 1500.0});
        for (const auto& cand : candidates) {
            const double f = objective(cand);
            if (f < best_f) {
                best_f = f;
                best = cand;
            }
        }
    }

    const NMResult r = nelder_mead(objective, best, cfg_.nm, true);
    if (r.f < cfg_.nm.penalty && r.f <= best_f) {
        state_.ts1 = r.x[0];
        state_.ts2 = std::max(r.x[1], state_.ts1);
        state_.ts3 = std::max(r.x[2], state_.ts2);
    } else if (best_f < cfg_.nm.penalty) {
        state_.ts1 = best[0];
        state_.ts2 = std::max(best[1], state_.ts1);
        state_.ts3 = std::max(best[2], state_.ts2);
    }

    Prediction pred;
    last_residual_ = profile_residual(est, profile_from_state(), &pred);
    last_V_pred_ = pred.depleted ? 0.0 : pred.V_exit;
    const BangBangProfile p = profile_from_state();
    latched_alpha_ = p.phase1.first;
    latched_sigma_ = sigma_sign_ * p.phase1.second;
}

void Guidance::solve_phase2(double t, const SimState& est) {
    const BangBangProfile base = profile_from_state();
    auto objective = [&](const std::vector<double>& x) {
        BangBangProfile q = base;
        q.ts2 = x[0];
        q.ts3 = x[1];
        const double f = profile_residual(est, q, nullptr);
        return 0.5 * f * f;
    };

    std::vector<double> best{state_.ts2, state_.ts3};
    double best_f = objective(best);
    if (best_f > 0.5 * 50.0 * 50.0) {
        const double H = cfg_.predictor_t_max;
        std::vector<std::vector<double>> candidates;
        for (double s2 : {20.0, 120.0, 300.0, 600.0}) {
            candidates.push_back({t + s2, t + H});
        }
        candidates.push_back({t + 900.0, t + 1200.0});
        for (const auto& cand : candidates) {
            const double f = objective(cand);
            if (f < best_f) {
                best_f = f;
                best = cand;
            }
        }
    }

    const NMResult r = nelder_mead(objective, best, cfg_.nm, true);
    if (r.f < cfg_.nm.penalty && r.f <= best_f) {
        state_.ts2 = std::max(r.x[0], state_.ts1);
        state_.ts3 = std::max(r.x[1], state_.ts2);
    } else if (best_f < cfg_.nm.penalty) {
        state_.ts2 = std::max(best[0], state_.ts1);
        state_.ts3 = std::max(best[1], state_.ts2);
    }

    Prediction pred;
    last_residual_ = profile_residual(est, profile_from_state(), &pred);
    last_V_pred_ = pred.depleted ? 0.0 : pred.V_exit;
    const BangBangProfile p = profile_from_state();
    latched_alpha_ = p.phase2.first;
    latched_sigma_ = sigma_sign_ * p.phase2.second;
}

void Guidance::solve_phase3(double t, const SimState& est) {
    const BangBangProfile base = profile_from_state();
    const double lo = std::max(state_.ts2, t);
    const double hi = t + cfg_.predictor_t_max;
    auto z = [&](double ts3) {
        BangBangProfile q = base;
        q.ts3 = std::clamp(ts3, lo, hi);
        return profile_residual(est, q, nullptr);
    };
    state_.ts3 = scan_then_secant(z, lo, hi, std::clamp(state_.ts3, lo, hi));

    Prediction pred;
    last_residual_ = profile_residual(est, profile_from_state(), &pred);
    last_V_pred_ = pred.depleted ? 0.0 : pred.V_exit;
    const BangBangProfile p = profile_from_state();
    latched_alpha_ = p.phase3.first;
    latched_sigma_ = sigma_sign_ * p.phase3.second;
}

void Guidance::solve_phase4(const SimState& est) {
    const VehicleModel& v = *onboard_.vehicle;
    if (cfg_.algorithm == GuidanceAlgorithm::Abamguid) {
        // Saturated angle of attack; bank-only modulation in the final phase.
        const BangBangProfile p = profile_from_state();
        const double alpha_hold = p.phase4_hold.first;
        auto f = [&](double sigma_mag) {
            const Prediction pr = predict_exit_velocity_const(
                est, alpha_hold, sigma_sign_ * sigma_mag, onboard_, cfg_, actuator_);
            return residual_of(pr, cfg_);
        };
        const double fa = f(v.sigma_min_deg);
        const double fb = f(v.sigma_max_deg);
        double sigma_mag;
        double res;
        if (fa * fb <= 0.0) {
            const BrentResult br = brent(f, v.sigma_min_deg, v.sigma_max_deg, cfg_.brent_f_tol,
                                         cfg_.brent_x_tol, cfg_.brent_max_iters);
            sigma_mag = br.x;
            res = br.f;
        } else {
            sigma_mag = std::abs(fa) < std::abs(fb) ? v.sigma_min_deg : v.sigma_max_deg;
            res = std::abs(fa) < std::abs(fb) ? fa : fb;
        }
        latched_alpha_ = alpha_hold;
        latched_sigma_ = sigma_sign_ * sigma_mag;
        last_residual_ = res;
        last_V_pred_ = res < 0.5 * kDepletedResidual ? 0.0 : cfg_.V_exit_target + res;
        return;
    }

    const CasmResult r = casm(est, state_.prev_alpha_deg, std::abs(state_.prev_sigma_deg),
                              onboard_, cfg_, actuator_);
    latched_alpha_ = r.alpha_deg;
    latched_sigma_ = sigma_sign_ * r.sigma_deg;
    last_residual_ = r.residual;
    last_V_pred_ = r.residual < 0.5 * kDepletedResidual ? 0.0 : cfg_.V_exit_target + r.residual;
}

void Guidance::fnpag_call(double t, const SimState& est) {
    const VehicleModel& v = *onboard_.vehicle;
    if (state_.phase == GuidancePhase::Phase1 &&
        t >= state_.fnpag_tsig - 0.5 / cfg_.rate_hz) {
        state_.phase = GuidancePhase::Phase2;
    }

    auto profile_for = [&](double tsig) {
        BangBangProfile p;
        p.ts1 = p.ts2 = p.ts3 = tsig;
        p.phase1 = {cfg_.initial_alpha_deg, v.sigma_min_deg};
        p.phase4_hold = {cfg_.initial_alpha_deg, v.sigma_max_deg};
        return p;
    };

    if (state_.phase == GuidancePhase::Phase1) {
        const double lo = t;
        const double hi = t + cfg_.predictor_t_max;
        auto z = [&](double tsig) {
            return profile_residual(est, profile_for(std::clamp(tsig, lo, hi)), nullptr);
        };
        state_.fnpag_tsig = scan_then_secant(z, lo, hi, std::clamp(state_.fnpag_tsig, lo, hi));
        Prediction pred;
        last_residual_ = profile_residual(est, profile_for(state_.fnpag_tsig), &pred);
        last_V_pred_ = pred.depleted ? 0.0 : pred.V_exit;
        state_.ts1 = state_.ts2 = state_.ts3 = state_.fnpag_tsig;
        latched_alpha_ = cfg_.initial_alpha_deg;
        latched_sigma_ = sigma_sign_ * v.sigma_min_deg;
    } else {
        auto f = [&](double sigma_mag) {
            const Prediction pr = predict_exit_velocity_const(
                est, cfg_.initial_alpha_deg, sigma_sign_ * sigma_mag, onboard_, cfg_, actuator_);
            return residual_of(pr, cfg_);
        };
        const double fa = f(v.sigma_min_deg);
        const double fb = f(v.sigma_max_deg);
        double sigma_mag;
        double res;
        if (fa * fb <= 0.0) {
            const BrentResult br = brent(f, v.sigma_min_deg, v.sigma_max_deg, cfg_.brent_f_tol,
                                         cfg_.brent_x_tol, cfg_.brent_max_iters);
            sigma_mag = br.x;
            res = br.f;
        } else {
            sigma_mag = std::abs(fa) < std::abs(fb) ? v.sigma_min_deg : v.sigma_max_deg;
            res = std::abs(fa) < std::abs(fb) ? fa : fb;
        }
        latched_alpha_ = cfg_.initial_alpha_deg;
        latched_sigma_ = sigma_sign_ * sigma_mag;
        last_residual_ = res;
        last_V_pred_ = res < 0.5 * kDepletedResidual ? 0.0 : cfg_.V_exit_target + res;
    }
}

}  // namespace aerocap
