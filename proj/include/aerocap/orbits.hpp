#pragma once

#include <optional>

#include "aerocap/planet.hpp"
#include "aerocap/state.hpp"

namespace aerocap {

struct TargetOrbit {
    double ra_target = 0.0;  // apoapsis radius, m
    double rp_target = 0.0;  // periapsis radius, m
    double r_exit = 0.0;     // atmospheric exit interface radius, m
};

// Semi-major axis from the energy relation; negative for hyperbolic orbits.
double semi_major_axis(double r, double V, double mu);

// Keplerian apoapsis radius from inertial (r, V, gamma). Empty for parabolic
// or hyperbolic input, where the apoapsis is undefined.
std::optional<double> apoapsis(double r, double V, double gamma, double mu);

// Two-impulse correction cost: periapsis raise at the achieved apoapsis plus
// apoapsis correction at the target periapsis. Empty for non-elliptical input.
std::optional<double> delta_v(double ra_achieved, double a_achieved,
                              const TargetOrbit& target, double mu);

// Exit speed that puts the vehicle on the target orbital energy:
// V* = sqrt(2 mu (1/r_exit - 1/(2 a*))), a* = (ra_target + rp_target)/2.
double exit_velocity_target(const TargetOrbit& target, double mu);

struct PeriodClassification {
    double period_s = 0.0;      // 0 for non-elliptical input
    double eccentricity = 0.0;
    bool pass = false;
};

// Orbital period from inertial exit conditions, checked against the capture
// success window. Hyperbolic/parabolic exits never pass.
PeriodClassification period_and_classify(double r, double V, double gamma, double mu,
                                         double window_lo_s, double window_hi_s);

struct InertialTrack {
    double V = 0.0;      // m/s
    double gamma = 0.0;  // rad
    double psi = 0.0;    // rad
};

// Adds the planet-rotation velocity Omega x r to the relative velocity vector
// and recomputes speed, flight path angle and heading.
InertialTrack inertial_from_relative(const SimState& state, const PlanetModel& planet);

// Inverse bridge, used to initialize the relative-frame simulation from
// inertial entry conditions.
InertialTrack relative_from_inertial(double r, double phi, double V_inertial,
                                     double gamma_inertial, double psi_inertial,
                                     const PlanetModel& planet);

}  // namespace aerocap
