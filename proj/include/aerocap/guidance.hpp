#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "aerocap/dynamics.hpp"
#include "aerocap/optimal_control.hpp"
#include "aerocap/orbits.hpp"
#include "aerocap/rng.hpp"
#include "aerocap/rootfind.hpp"

namespace aerocap {

enum class GuidanceAlgorithm { AbamguidPlus, Abamguid, Fnpag, CasmOnly };

// Additive Gaussian noise applied to the guidance state estimate each call.
struct StateNoiseSpec {
    double sigma_r = 0.0;      // m
    double sigma_V = 0.0;      // m/s
    double sigma_gamma = 0.0;  // rad
    bool enabled() const { return sigma_r > 0.0 || sigma_V > 0.0 || sigma_gamma > 0.0; }
};

struct GuidanceConfig {
    GuidanceAlgorithm algorithm = GuidanceAlgorithm::AbamguidPlus;
    double rate_hz = 2.0;
    double load_trigger_g = 0.1;

    TargetOrbit target;
    double V_exit_target = 0.0;  // m/s, inertial; derived from target if 0

    double predictor_dt = 1.0;       // s
    double predictor_t_max = 2500.0; // s of prediction horizon

    double initial_alpha_deg = -17.0;
    double initial_sigma_deg = -165.0;  // sign fixed for the whole run

    double ts_guess_offset_1 = 20.0;   // s past trigger
    double ts_guess_offset_2 = 60.0;
    double ts_guess_offset_3 = 120.0;

    bool phase3_alpha_min = false;  // prose variant of the Alg.-1 phase-3 level

    NMConfig nm{10.0, 1.0, 40, 1.0e12};
    double secant_eps = 1.0e-2;
    int secant_max_iters = 20;
    double secant_seed_step = 5.0;  // s between the two secant seeds
    double brent_f_tol = 1.0e-3;    // m/s on the velocity residual
    double brent_x_tol = 1.0e-6;
    int brent_max_iters = 60;

    double filter_gain = 0.1;
    StateNoiseSpec state_noise;
    std::uint64_t noise_seed = 0;
};

enum class GuidancePhase : int { PreTrigger = 0, Phase1 = 1, Phase2 = 2, Phase3 = 3, Phase4 = 4 };

struct GuidanceState {
    GuidancePhase phase = GuidancePhase::PreTrigger;
    double ts1 = 0.0, ts2 = 0.0, ts3 = 0.0;  // s, absolute
    double prev_alpha_deg = 0.0;             // previous commanded solution
    double prev_sigma_deg = 0.0;             // signed
    double prev_residual = 0.0;              // m/s
    double density_ratio = 1.0;
    bool triggered = false;
    double trigger_time = 0.0;
    double fnpag_tsig = 0.0;  // single switching time of the bank-only baseline
};

struct GuidanceLogRow {
    double t = 0.0;
    int phase = 0;
    double ts1 = 0.0, ts2 = 0.0, ts3 = 0.0;
    double alpha_cmd = 0.0, sigma_cmd = 0.0;
    double V_pred = 0.0;
    double residual = 0.0;
    double density_ratio = 1.0;
};

struct Prediction {
    double V_exit = 0.0;       // inertial, m/s (exit predictions only)
    bool depleted = false;     // prediction crashed, stalled or timed out
    double V_terminal = 0.0;   // relative speed when the prediction ended
};

// Latching load trigger: true once the sensed aerodynamic acceleration
// magnitude reaches threshold_g standard gravities.
bool load_trigger_check(double sensed_accel, double threshold_g, bool already_triggered);

// First-order low-pass on the sensed/modeled drag ratio, clamped to [0.1, 10].
// Holds the previous estimate when the modeled drag is negligible.
double density_ratio_filter(const LiftDrag& sensed, const LiftDrag& modeled, double gain,
                            double previous_estimate);

// Onboard prediction: propagates the onboard model from the current estimated
// state flying the candidate profile until atmospheric exit, then converts the
// exit velocity to the inertial frame. Predicted crash / depletion maps to a
// large negative targeting residual via `depleted`.
Prediction predict_exit_velocity(const SimState& current, const BangBangProfile& profile,
                                 const ModelBundle& onboard, const GuidanceConfig& cfg);
Prediction predict_exit_velocity(const SimState& current, const BangBangProfile& profile,
                                 const ModelBundle& onboard, const GuidanceConfig& cfg,
                                 const ControlCommand& actuator);

// Same with a constant (alpha, sigma) command held to exit.
Prediction predict_exit_velocity_const(const SimState& current, double alpha_deg,
                                       double sigma_deg, const ModelBundle& onboard,
                                       const GuidanceConfig& cfg);
Prediction predict_exit_velocity_const(const SimState& current, double alpha_deg,
                                       double sigma_deg, const ModelBundle& onboard,
                                       const GuidanceConfig& cfg,
                                       const ControlCommand& actuator);

struct CasmResult {
    double alpha_deg = 0.0;
    double sigma_deg = 0.0;  // magnitude
    double residual = 0.0;   // m/s at the returned command
    bool bracketed = false;
};

// CASM search over an arbitrary residual evaluator f(alpha, sigma_magnitude).
// Exposed separately so the bracketing/line-search contract is testable
// against synthetic residual functions.
CasmResult casm_search(const std::function<double(double, double)>& residual,
                       const VehicleModel& vehicle, double prev_alpha_deg,
                       double prev_sigma_mag_deg, double brent_f_tol, double brent_x_tol,
                       int brent_max_iters);

// Continuous alpha-sigma modulation. Evaluates the targeting residual at the
// four control-space corners, the previous solution, and a same-alpha
// sigma-saturated point; brackets the root with the previous solution on one
// side; solves the 1-D line search with Brent. With no sign-changing pair,
// falls back to the evaluated point of smallest |f|.
CasmResult casm(const SimState& estimate, double prev_alpha_deg, double prev_sigma_mag_deg,
                const ModelBundle& onboard, const GuidanceConfig& cfg);
CasmResult casm(const SimState& estimate, double prev_alpha_deg, double prev_sigma_mag_deg,
                const ModelBundle& onboard, const GuidanceConfig& cfg,
                const ControlCommand& actuator);

// Closed-loop guidance driver: owns the phase state machine and emits latched
// commands at the configured guidance rate when used as a ControlPolicy.
class Guidance {
  public:
    Guidance(const GuidanceConfig& cfg, ModelBundle onboard);

    // Call at plant rate; recomputes at the guidance rate and latches between.
    PolicyCommand update(double t, const SimState& truth, const LiftDrag& sensed,
                         const ControlCommand& actuator);

    const GuidanceState& state() const { return state_; }
    const std::vector<GuidanceLogRow>& log() const { return log_; }
    ControlPolicy as_policy();

  private:
    void guidance_call(double t, const SimState& estimate, const LiftDrag& sensed,
                       const ControlCommand& actuator);
    void advance_phase(double t);
    void solve_phase1(double t, const SimState& est);
    void solve_phase2(double t, const SimState& est);
    void solve_phase3(double t, const SimState& est);
    void solve_phase4(const SimState& est);
    void fnpag_call(double t, const SimState& est);
    double scan_then_secant(const std::function<double(double)>& z, double lo, double hi,
                            double stored);
    BangBangProfile profile_from_state() const;
    double profile_residual(const SimState& est, const BangBangProfile& p, Prediction* out);

    GuidanceConfig cfg_;
    ModelBundle onboard_;
    GuidanceState state_;
    double sigma_sign_ = -1.0;
    double latched_alpha_ = 0.0;
    double latched_sigma_ = 0.0;
    double next_call_t_ = 0.0;
    double last_V_pred_ = 0.0;
    double last_residual_ = 0.0;
    ControlCommand actuator_;
    std::unique_ptr<RandomStream> noise_rng_;
    std::vector<GuidanceLogRow> log_;
};

}  // namespace aerocap
