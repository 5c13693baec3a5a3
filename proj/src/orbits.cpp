#include "aerocap/orbits.hpp"

#include <cmath>

namespace aerocap {

double semi_major_axis(double r, double V, double mu) {
    return mu / (2.0 * mu / r - V * V);
}

std::optional<double> apoapsis(double r, double V, double gamma, double mu) {
    if (V * V >= 2.0 * mu / r) {
        return std::nullopt;  // parabolic or hyperbolic: apoapsis undefined
    }
    const double a = semi_major_axis(r, V, mu);
    const double h = V * r * std::cos(gamma);
    double under = 1.0 - h * h / (mu * a);
    if (under < 0.0) under = 0.0;  // circular orbit round-off
    return a * (1.0 + std::sqrt(under));
}

std::optional<double> delta_v(double ra_achieved, double a_achieved,
                              const TargetOrbit& target, double mu) {
    if (a_achieved <= 0.0 || ra_achieved <= 0.0) {
        return std::nullopt;
    }
    const double ra = ra_achieved;
    const double rp_t = target.rp_target;
    const double ra_t = target.ra_target;
    const double periapsis_raise =
        std::abs(std::sqrt(1.0 / ra - 1.0 / (ra + rp_t)) -
                 std::sqrt(1.0 / ra - 1.0 / (2.0 * a_achieved)));
    const double apoapsis_correction =
        std::abs(std::sqrt(1.0 / rp_t - 1.0 / (ra_t + rp_t)) -
                 std::sqrt(1.0 / rp_t - 1.0 / (ra + rp_t)));
    return std::sqrt(2.0 * mu) * (periapsis_raise + apoapsis_correction);
}

double exit_velocity_target(const TargetOrbit& target, double mu) {
    const double a_star = 0.5 * (target.ra_target + target.rp_target);
    return std::sqrt(2.0 * mu * (1.0 / target.r_exit - 1.0 / (2.0 * a_star)));
}

PeriodClassification period_and_classify(double r, double V, double gamma, double mu,
                                         double window_lo_s, double window_hi_s) {
    PeriodClassification out;
    const double a = semi_major_axis(r, V, mu);
    if (a <= 0.0) {
        // Hyperbolic (or parabolic) exit: not captured.
        const double h = V * r * std::cos(gamma);
        out.eccentricity = std::sqrt(std::max(0.0, 1.0 - h * h / (mu * a)));
        return out;
    }
    const double h = V * r * std::cos(gamma);
    out.eccentricity = std::sqrt(std::max(0.0, 1.0 - h * h / (mu * a)));
    out.period_s = 2.0 * M_PI * std::sqrt(a * a * a / mu);
    out.pass = out.period_s >= window_lo_s && out.period_s <= window_hi_s;
    return out;
}

namespace {

struct LocalVelocity {
    double up, east, north;
};

LocalVelocity components(double V, double gamma, double psi) {
    return {V * std::sin(gamma), V * std::cos(gamma) * std::sin(psi),
            V * std::cos(gamma) * std::cos(psi)};
}

InertialTrack track_from_components(const LocalVelocity& v) {
    InertialTrack t;
    t.V = std::sqrt(v.up * v.up + v.east * v.east + v.north * v.north);
    t.gamma = std::asin(v.up / t.V);
    t.psi = std::atan2(v.east, v.north);
    return t;
}

}  // namespace

InertialTrack inertial_from_relative(const SimState& state, const PlanetModel& planet) {
    LocalVelocity v = components(state.V, state.gamma, state.psi);
    v.east += planet.Omega * state.r * std::cos(state.phi);
    return track_from_components(v);
}

InertialTrack relative_from_inertial(double r, double phi, double V_inertial,
                                     double gamma_inertial, double psi_inertial,
                                     const PlanetModel& planet) {
    LocalVelocity v = components(V_inertial, gamma_inertial, psi_inertial);
    v.east -= planet.Omega * r * std::cos(phi);
    return track_from_components(v);
}

}  // namespace aerocap
