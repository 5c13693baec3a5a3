#pragma once

#include <vector>

namespace aerocap {

// Multiplicative density perturbation: bias x (1 + sum of vertical sinusoids).
// Stands in for sampled GRAM-style profile variability; factor is a function of
// altitude only and stays strictly positive as long as the wave amplitudes sum
// below 1.
struct AtmoPerturbation {
    struct Wave {
        double amplitude = 0.0;   // relative, -
        double wavelength = 1.0;  // vertical wavelength, m
        double phase = 0.0;       // rad
    };
    double bias = 1.0;
    std::vector<Wave> waves;

    double factor(double h) const;
};

struct AtmosphereModel {
    enum class Kind { Exponential, LogPolynomial };

    Kind kind = Kind::Exponential;

    // Exponential: rho(h) = rho0 * exp(-h / scale_height)
    double rho0 = 1.0;          // kg/m^3 at h = 0
    double scale_height = 1.0;  // m

    // Piecewise polynomial of ln(rho) in altitude, valid from each segment's
    // base altitude up to the next one: ln rho = sum_k c_k (h - h_base)^k.
    struct Segment {
        double h_base = 0.0;
        std::vector<double> coeffs;
    };
    std::vector<Segment> segments;  // sorted by h_base ascending

    double h_ceiling = 1.0e6;  // m; vacuum above the entry interface

    AtmoPerturbation perturbation;
};

struct PlanetModel {
    double mu = 0.0;     // gravitational parameter, m^3/s^2
    double R0 = 0.0;     // reference equatorial radius, m
    double J2 = 0.0;     // zonal harmonic, -
    double Omega = 0.0;  // rotation rate, rad/s
    AtmosphereModel atmosphere;

    double radius_from_altitude(double h) const { return R0 + h; }
    double altitude_from_radius(double r) const { return r - R0; }
};

struct GravityAccel {
    double g_r = 0.0;    // radial component, m/s^2 (positive toward planet center)
    double g_phi = 0.0;  // latitudinal component, m/s^2
};

// Zonal-harmonic gravity field through J2.
GravityAccel gravity(const PlanetModel& planet, double r, double phi);

// Atmospheric density at altitude h; returns 0 above the model ceiling.
// perturbed = true applies the multiplicative AtmoPerturbation factor.
double density(const PlanetModel& planet, double h, bool perturbed);

// Standard Uranus constants with a flight-envelope exponential atmosphere fit.
// These are library defaults, not values from any flight database; configs
// override every field.
PlanetModel uranus_defaults();

}  // namespace aerocap
