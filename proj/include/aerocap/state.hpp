#pragma once

namespace aerocap {

constexpr double kDegToRad = 0.017453292519943295;
constexpr double kRadToDeg = 57.29577951308232;
constexpr double kStandardGravity = 9.80665;  // m/s^2, defines "g" for load factors

// Planet-relative vehicle state in rotating spherical coordinates.
struct SimState {
    double t = 0.0;      // s
    double r = 0.0;      // radius from planet center, m
    double theta = 0.0;  // longitude, rad
    double phi = 0.0;    // latitude, rad
    double V = 0.0;      // planet-relative speed, m/s
    double gamma = 0.0;  // flight path angle, rad (negative = descending)
    double psi = 0.0;    // heading, rad clockwise from north
};

// Longitudinal channel only.
struct LonState {
    double r = 0.0;      // m
    double V = 0.0;      // m/s
    double gamma = 0.0;  // rad
};

// Commanded and actuator-tracked control angles, in degrees.
// sigma is signed; the longitudinal channel consumes |sigma| through cos(sigma).
struct ControlCommand {
    double alpha_cmd = 0.0;
    double sigma_cmd = 0.0;
    double alpha_actual = 0.0;
    double sigma_actual = 0.0;
};

}  // namespace aerocap
