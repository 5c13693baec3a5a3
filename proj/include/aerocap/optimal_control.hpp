#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aerocap/aero.hpp"

namespace aerocap {

// Adjoint variables of the longitudinal states (r, V, gamma).
struct Costate {
    double lambda_r = 0.0;
    double lambda_V = 0.0;
    double lambda_gamma = 0.0;
};

enum class LiftBranch { Up, Down };

// Bang-bang switching curve for alpha during lift-up flight:
// -lambda_V CDa + lambda_gamma CLa / V   (linear aero slopes)
double h_alpha_up(const Costate& cs, double V, const AeroModel& aero);

// Lift-down counterpart with the lambda_gamma term negated.
double h_alpha_down(const Costate& cs, double V, const AeroModel& aero);

// Bang-bang alpha from the switching-curve sign; h = 0 is a measure-zero tie
// resolved by holding the previous command.
double optimal_alpha_linear(double h_value, double alpha_min_deg, double alpha_max_deg,
                            double previous_alpha_deg);

// Quadratic-model functions associated with alpha^2.
double h_alpha_sq(const Costate& cs, double V, const AeroModel& aero, LiftBranch branch);

// Unconstrained optimal alpha for the quadratic model:
// A = -H_alpha / (2 H_alpha^2). Empty when the denominator is within
// eps_singular of zero.
std::optional<double> calligraphic_A(const Costate& cs, double V, const AeroModel& aero,
                                     LiftBranch branch, double eps_singular = 1.0e-12);

// Interval clamp of the unconstrained solution.
double optimal_alpha_quadratic(double A_value, double alpha_min_deg, double alpha_max_deg);

// Bank switching indicator; the zero crossing of lambda_gamma marks the
// sigma switch.
double sigma_switch_indicator(const Costate& cs);

// Piecewise-constant four-phase control profile parameterized by the three
// switching times. Phases 1-3 are the bang-bang structure; phase 4 either
// holds the saturated terminal level or is tagged for closed-loop modulation.
struct BangBangProfile {
    enum class Phase4Policy { HoldSaturated, Casm };

    double ts1 = 0.0;
    double ts2 = 0.0;
    double ts3 = 0.0;

    // (alpha, sigma) magnitude levels per phase, degrees.
    std::pair<double, double> phase1{-25.0, 15.0};
    std::pair<double, double> phase2{-10.0, 15.0};
    std::pair<double, double> phase3{-10.0, 165.0};
    std::pair<double, double> phase4_hold{-25.0, 165.0};
    Phase4Policy phase4 = Phase4Policy::HoldSaturated;

    bool ordered() const { return ts1 <= ts2 && ts2 <= ts3; }

    static BangBangProfile from_vehicle(const VehicleModel& v, bool phase3_alpha_min);
};

// Control level at time t. For t >= ts3 returns the hold-saturated level; the
// Casm tag is for callers that substitute their own terminal solution.
std::pair<double, double> profile_control(const BangBangProfile& profile, double t);

// Time-average of the commanded levels over [t0, t1]. Predictors stepping at
// a finite dt sample this instead of the instantaneous level so their output
// stays continuous in the switching times rather than quantized to the step
// grid.
std::pair<double, double> profile_control_average(const BangBangProfile& profile, double t0,
                                                  double t1);

// ---------------------------------------------------------------------------
// Switching-curve evaluation on an externally supplied state/costate
// trajectory (the verification workflow for the analytic control laws).
// ---------------------------------------------------------------------------

struct SwitchingTrajectoryRow {
    double t, r, V, gamma, lambda_r, lambda_V, lambda_gamma, alpha, u1;
};

struct SwitchingCurveRow {
    double t = 0.0;
    double H_up = 0.0;
    double H_down = 0.0;
    double H_sigma = 0.0;
    double A_up = 0.0;    // NaN when singular
    double A_down = 0.0;  // NaN when singular
    double alpha_star_linear = 0.0;
    double alpha_star_quadratic = 0.0;
    double sigma_star = 0.0;
    int branch = +1;  // +1 lift-up, -1 lift-down (from the sign of u1)
};

struct SwitchingEvent {
    std::string type;  // "sigma_switch" | "alpha_switch"
    double t = 0.0;
    std::size_t index = 0;
};

struct SwitchingAnalysis {
    std::vector<SwitchingCurveRow> curves;
    std::vector<SwitchingEvent> events;
};

// Throws std::runtime_error on schema mismatch or an empty file. Expected
// header: t,r,V,gamma,lambda_r,lambda_V,lambda_gamma,alpha,u1
std::vector<SwitchingTrajectoryRow> read_switching_csv(const std::string& path);

// Evaluates both switching-curve families along the trajectory and locates
// the sigma switch (lambda_gamma zero crossing) and alpha switches (sign
// changes of the active-branch switching curve).
SwitchingAnalysis analyze_switching(const std::vector<SwitchingTrajectoryRow>& rows,
                                    const AeroModel& linear, const AeroModel& quadratic,
                                    const VehicleModel& vehicle);

}  // namespace aerocap
