#pragma once

#include <vector>

#include "aerocap/dynamics.hpp"
#include "aerocap/guidance.hpp"
#include "aerocap/orbits.hpp"

namespace aerocap {

// Inertial entry interface conditions (angles in radians internally).
struct EntryState {
    double h0 = 1.0e6;              // m
    double V0_inertial = 23780.0;   // m/s
    double efpa_inertial = 0.0;     // rad, negative descending
    double theta0 = 0.0;            // rad
    double phi0 = 0.0;              // rad
    double psi0_inertial = 0.0;     // rad
};

struct MissionSpec {
    EntryState entry;
    TargetOrbit target;
    double success_period_lo_s = 10.0 * 86400.0;
    double success_period_hi_s = 2.5 * 365.25 * 86400.0;
    double plant_dt = 0.01;       // s
    double crash_altitude = 0.0;  // m
    double t_max = 5000.0;        // s
};

// Complete description of one closed-loop trajectory. Truth and onboard
// models are separate objects so dispersions touch only the truth side.
struct Scenario {
    PlanetModel planet_truth;
    PlanetModel planet_onboard;
    AeroModel aero_truth;
    AeroModel aero_onboard;
    VehicleModel vehicle;
    MissionSpec mission;
    GuidanceConfig guidance;
};

struct RunSummary {
    Outcome outcome = Outcome::Timeout;
    SimState exit_state;  // relative frame; final state for crash/timeout
    double V_exit_inertial = 0.0;
    double gamma_exit_inertial = 0.0;  // rad
    double V_exit_target = 0.0;
    double apoapsis = 0.0;  // m; 0 when undefined
    bool dv_defined = false;
    double delta_v = 0.0;  // m/s
    double period_s = 0.0;
    double eccentricity = 0.0;
    bool pass = false;
    double peak_load_g = 0.0;
    double flight_time = 0.0;  // s
};

struct RunArtifacts {
    RunSummary summary;
    std::vector<TraceSample> trace;
    std::vector<GuidanceLogRow> guidance_log;
};

// Relative-frame simulation state at the entry interface.
SimState entry_sim_state(const EntryState& entry, const PlanetModel& planet);

// One closed-loop trajectory under the configured guidance algorithm.
RunArtifacts run_single(const Scenario& scenario, int trace_stride = 0);

}  // namespace aerocap
