#include "aerocap/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace aerocap {

namespace {

double density_for(const ModelBundle& m, double r) {
    const double h = m.planet->altitude_from_radius(r);
    return density(*m.planet, h, m.perturbed_atmosphere) * m.density_scale;
}

}  // namespace

SimState full_derivatives(const SimState& s, double alpha_deg, double sigma_deg,
                          const ModelBundle& m) {
    const double cg = std::cos(s.gamma);
    if (std::abs(cg) < 1.0e-9) {
        throw std::domain_error("heading equation singular at cos(gamma) = 0");
    }
    const double sg = std::sin(s.gamma);
    const double cp = std::cos(s.phi);
    const double sp = std::sin(s.phi);
    const double cpsi = std::cos(s.psi);
    const double spsi = std::sin(s.psi);
    const double sigma = sigma_deg * kDegToRad;
    const double u1 = std::cos(sigma);

    const double rho = density_for(m, s.r);
    const LiftDrag ld = lift_drag(*m.aero, *m.vehicle, rho, s.V, alpha_deg);
    const GravityAccel g = gravity(*m.planet, s.r, s.phi);
    const double Om = m.planet->Omega;
    const double Om2r = Om * Om * s.r;

    SimState d;
    d.t = 1.0;
    d.r = s.V * sg;
    d.theta = s.V * cg * spsi / (s.r * cp);
    d.phi = s.V * cg * cpsi / s.r;
    d.V = -ld.D - g.g_r * sg - g.g_phi * cg * cpsi +
          Om2r * cp * (sg * cp - cg * sp * cpsi);
    d.gamma = (1.0 / s.V) * (ld.L * u1 + (s.V * s.V / s.r - g.g_r) * cg +
                             g.g_phi * sg * cpsi + 2.0 * Om * s.V * cp * spsi +
                             Om2r * cp * (cg * cp + sg * cpsi * sp));
    d.psi = (1.0 / s.V) *
            (ld.L * std::sin(sigma) / cg + (s.V * s.V / s.r) * cg * spsi * std::tan(s.phi) +
             g.g_phi * spsi / cg - 2.0 * Om * s.V * (std::tan(s.gamma) * cpsi * cp - sp) +
             (Om2r / cg) * spsi * sp * cp);
    return d;
}

LonState lon_derivatives(const LonState& s, double u1, double alpha_deg,
                         const ModelBundle& m) {
    const double rho = density_for(m, s.r);
    const LiftDrag ld = lift_drag(*m.aero, *m.vehicle, rho, s.V, alpha_deg);
    const double mu = m.planet->mu;
    const double sg = std::sin(s.gamma);
    const double cg = std::cos(s.gamma);

    LonState d;
    d.r = s.V * sg;
    d.V = -ld.D - mu * sg / (s.r * s.r);
    d.gamma = (1.0 / s.V) * (ld.L * u1 + (s.V * s.V - mu / s.r) * cg / s.r);
    return d;
}

double rate_limit_toward(double current, double target, double rate_per_s, double dt) {
    const double max_delta = rate_per_s * dt;
    const double delta = target - current;
    if (delta > max_delta) return current + max_delta;
    if (delta < -max_delta) return current - max_delta;
    return target;
}

namespace {

SimState axpy(const SimState& s, double a, const SimState& d) {
    SimState out = s;
    out.t += a * d.t;
    out.r += a * d.r;
    out.theta += a * d.theta;
    out.phi += a * d.phi;
    out.V += a * d.V;
    out.gamma += a * d.gamma;
    out.psi += a * d.psi;
    return out;
}

}  // namespace

SimState rk4_step(const SimState& s, double alpha_deg, double sigma_deg, double dt,
                  const ModelBundle& m) {
    const SimState k1 = full_derivatives(s, alpha_deg, sigma_deg, m);
    const SimState k2 = full_derivatives(axpy(s, 0.5 * dt, k1), alpha_deg, sigma_deg, m);
    const SimState k3 = full_derivatives(axpy(s, 0.5 * dt, k2), alpha_deg, sigma_deg, m);
    const SimState k4 = full_derivatives(axpy(s, dt, k3), alpha_deg, sigma_deg, m);

    SimState out = s;
    out.t += dt;
    out.r += dt / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
    out.theta += dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
    out.phi += dt / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    out.V += dt / 6.0 * (k1.V + 2.0 * k2.V + 2.0 * k3.V + k4.V);
    out.gamma += dt / 6.0 * (k1.gamma + 2.0 * k2.gamma + 2.0 * k3.gamma + k4.gamma);
    out.psi += dt / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
    return out;
}

SimState step(const SimState& s, ControlCommand& cmd, double dt, const ModelBundle& m) {
    const VehicleModel& v = *m.vehicle;
    cmd.alpha_actual = rate_limit_toward(cmd.alpha_actual, cmd.alpha_cmd,
                                         v.alpha_rate_deg_s, dt);
    cmd.sigma_actual = rate_limit_toward(cmd.sigma_actual, cmd.sigma_cmd,
                                         v.sigma_rate_deg_s, dt);
    return rk4_step(s, cmd.alpha_actual, cmd.sigma_actual, dt, m);
}

PropagationResult propagate_to_exit(SimState state, ControlCommand command,
                                    const ControlPolicy& policy, const ModelBundle& models,
                                    const SimOptions& opts) {
    PropagationResult result;
    long step_index = 0;
    while (true) {
        if (state.r <= opts.crash_radius) {
            result.outcome = Outcome::Crashed;
            break;
        }
        if (state.t >= opts.t_max) {
            result.outcome = Outcome::Timeout;
            break;
        }

        const double rho = density(*models.planet, models.planet->altitude_from_radius(state.r),
                                   models.perturbed_atmosphere);
        const LiftDrag sensed =
            lift_drag(*models.aero, *models.vehicle, rho, state.V, command.alpha_actual);
        const double load_g =
            std::sqrt(sensed.L * sensed.L + sensed.D * sensed.D) / kStandardGravity;
        if (load_g > result.peak_load_g) {
            result.peak_load_g = load_g;
        }

        PolicyCommand pc{command.alpha_cmd, command.sigma_cmd, 0};
        if (policy) {
            pc = policy(state.t, state, sensed, command);
            command.alpha_cmd = pc.alpha_cmd;
            command.sigma_cmd = pc.sigma_cmd;
        }

        if (opts.trace_stride > 0 && step_index % opts.trace_stride == 0) {
            result.trace.push_back({state.t, models.planet->altitude_from_radius(state.r),
                                    state.V, state.gamma * kRadToDeg, command.alpha_actual,
                                    command.sigma_actual, rho, sensed.L, sensed.D, pc.phase});
        }

        const double prev_r = state.r;
        try {
            state = step(state, command, opts.dt, models);
        } catch (const std::domain_error&) {
            // Heading singularity at cos(gamma) = 0: a vertical dive, which
            // only arises on trajectories that are coming down.
            result.outcome = Outcome::Crashed;
            break;
        }
        ++step_index;

        if (state.r >= opts.r_exit && state.r > prev_r) {
            result.outcome = Outcome::Exited;
            break;
        }
    }
    result.final_state = state;
    result.final_command = command;
    return result;
}

}  // namespace aerocap
