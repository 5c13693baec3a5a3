#include "aerocap/scenario.hpp"

namespace aerocap {

SimState entry_sim_state(const EntryState& entry, const PlanetModel& planet) {
    SimState s;
    s.t = 0.0;
    s.r = planet.radius_from_altitude(entry.h0);
    s.theta = entry.theta0;
    s.phi = entry.phi0;
    const InertialTrack rel = relative_from_inertial(
        s.r, s.phi, entry.V0_inertial, entry.efpa_inertial, entry.psi0_inertial, planet);
    s.V = rel.V;
    s.gamma = rel.gamma;
    s.psi = rel.psi;
    return s;
}

RunArtifacts run_single(const Scenario& scenario, int trace_stride) {
    RunArtifacts out;

    ModelBundle truth;
    truth.planet = &scenario.planet_truth;
    truth.aero = &scenario.aero_truth;
    truth.vehicle = &scenario.vehicle;
    truth.perturbed_atmosphere = true;

    ModelBundle onboard;
    onboard.planet = &scenario.planet_onboard;
    onboard.aero = &scenario.aero_onboard;
    onboard.vehicle = &scenario.vehicle;
    onboard.perturbed_atmosphere = false;

    GuidanceConfig gcfg = scenario.guidance;
    gcfg.target = scenario.mission.target;

    Guidance guidance(gcfg, onboard);

    SimState s0 = entry_sim_state(scenario.mission.entry, scenario.planet_truth);
    ControlCommand cmd;
    cmd.alpha_cmd = cmd.alpha_actual = gcfg.initial_alpha_deg;
    cmd.sigma_cmd = cmd.sigma_actual = gcfg.initial_sigma_deg;

    SimOptions opts;
    opts.dt = scenario.mission.plant_dt;
    opts.r_exit = scenario.mission.target.r_exit;
    opts.crash_radius = scenario.planet_truth.radius_from_altitude(scenario.mission.crash_altitude);
    opts.t_max = scenario.mission.t_max;
    opts.trace_stride = trace_stride;

    PropagationResult prop = propagate_to_exit(s0, cmd, guidance.as_policy(), truth, opts);

    RunSummary& sum = out.summary;
    sum.outcome = prop.outcome;
    sum.exit_state = prop.final_state;
    sum.peak_load_g = prop.peak_load_g;
    sum.flight_time = prop.final_state.t;

    const double mu = scenario.planet_truth.mu;
    sum.V_exit_target = exit_velocity_target(scenario.mission.target, mu);

    if (prop.outcome == Outcome::Exited) {
        const InertialTrack inertial =
            inertial_from_relative(prop.final_state, scenario.planet_truth);
        sum.V_exit_inertial = inertial.V;
        sum.gamma_exit_inertial = inertial.gamma;

        const PeriodClassification pc = period_and_classify(
            prop.final_state.r, inertial.V, inertial.gamma, mu,
            scenario.mission.success_period_lo_s, scenario.mission.success_period_hi_s);
        sum.period_s = pc.period_s;
        sum.eccentricity = pc.eccentricity;
        sum.pass = pc.pass;

        if (auto ra = apoapsis(prop.final_state.r, inertial.V, inertial.gamma, mu)) {
            sum.apoapsis = *ra;
            const double a = semi_major_axis(prop.final_state.r, inertial.V, mu);
            if (auto dv = delta_v(*ra, a, scenario.mission.target, mu)) {
                sum.dv_defined = true;
                sum.delta_v = *dv;
            }
        }
    }

    out.trace = std::move(prop.trace);
    out.guidance_log = guidance.log();
    return out;
}

}  // namespace aerocap
