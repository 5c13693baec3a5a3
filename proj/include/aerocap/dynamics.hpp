#pragma once

#include <functional>
#include <vector>

#include "aerocap/aero.hpp"
#include "aerocap/planet.hpp"
#include "aerocap/state.hpp"

namespace aerocap {

// Shared, read-only model set for one trajectory. The truth plant sets
// perturbed_atmosphere; the onboard predictor instead scales the nominal
// profile by its density-ratio estimate.
struct ModelBundle {
    const PlanetModel* planet = nullptr;
    const AeroModel* aero = nullptr;
    const VehicleModel* vehicle = nullptr;
    bool perturbed_atmosphere = false;
    double density_scale = 1.0;
};

// Full rotating-planet 3-DoF equations of motion. Derivatives are returned in
// SimState fields (with t' = 1). Throws std::domain_error when cos(gamma) is
// too small for the heading equation; entry trajectories stay far from that.
SimState full_derivatives(const SimState& state, double alpha_deg, double sigma_deg,
                          const ModelBundle& models);

// Simplified longitudinal dynamics: spherical gravity, no rotation terms,
// u1 = cos(sigma).
LonState lon_derivatives(const LonState& state, double u1, double alpha_deg,
                         const ModelBundle& models);

double rate_limit_toward(double current, double target, double rate_per_s, double dt);

// Fixed RK4 advance with controls held over the step.
SimState rk4_step(const SimState& state, double alpha_deg, double sigma_deg, double dt,
                  const ModelBundle& models);

// One plant step: actuator states move toward the commanded values under the
// vehicle rate limits, then the state advances by one fixed RK4 step with
// controls held.
SimState step(const SimState& state, ControlCommand& command, double dt,
              const ModelBundle& models);

enum class Outcome { Exited, Crashed, Timeout };

struct TraceSample {
    double t = 0.0;
    double h = 0.0;
    double V = 0.0;
    double gamma_deg = 0.0;
    double alpha_deg = 0.0;
    double sigma_deg = 0.0;
    double rho = 0.0;
    double L = 0.0;
    double D = 0.0;
    int phase = 0;
};

struct PolicyCommand {
    double alpha_cmd = 0.0;  // deg
    double sigma_cmd = 0.0;  // deg, signed
    int phase = 0;           // recorded in the trace
};

// Called once per plant step with the current time, truth state, sensed
// aerodynamic accelerations and the actuator positions; returns the latched
// commands.
using ControlPolicy = std::function<PolicyCommand(
    double t, const SimState& state, const LiftDrag& sensed, const ControlCommand& actuator)>;

struct SimOptions {
    double dt = 0.01;            // s
    double r_exit = 0.0;         // m
    double crash_radius = 0.0;   // m
    double t_max = 5000.0;       // s
    int trace_stride = 0;        // samples every N steps; 0 disables the trace
};

struct PropagationResult {
    SimState final_state;
    Outcome outcome = Outcome::Timeout;
    ControlCommand final_command;
    double peak_load_g = 0.0;
    std::vector<TraceSample> trace;
};

// Integrates until the vehicle ascends through r_exit, falls to the crash
// floor, or times out. A non-Exited outcome is a normal result, not an error.
PropagationResult propagate_to_exit(SimState state, ControlCommand command,
                                    const ControlPolicy& policy, const ModelBundle& models,
                                    const SimOptions& opts);

}  // namespace aerocap
