#include "aerocap/planet.hpp"

#include <cmath>

namespace aerocap {

double AtmoPerturbation::factor(double h) const {
    double wave_sum = 0.0;
    for (const Wave& w : waves) {
        wave_sum += w.amplitude * std::sin(2.0 * M_PI * h / w.wavelength + w.phase);
    }
    double f = bias * (1.0 + wave_sum);
    // Keep the multiplier strictly positive even for pathological wave sets.
    return f > 1.0e-3 ? f : 1.0e-3;
}

GravityAccel gravity(const PlanetModel& planet, double r, double phi) {
    const double mu_r2 = planet.mu / (r * r);
    const double ratio2 = (planet.R0 / r) * (planet.R0 / r);
    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    GravityAccel g;
    g.g_r = mu_r2 * (1.0 + planet.J2 * ratio2 * (1.5 - 4.5 * sp * sp));
    g.g_phi = mu_r2 * planet.J2 * ratio2 * 3.0 * sp * cp;
    return g;
}

namespace {

double log_density_piecewise(const AtmosphereModel& atm, double h) {
    // Segment whose base is the largest h_base <= h; below the first base,
    // extrapolate with the first segment.
    const AtmosphereModel::Segment* seg = &atm.segments.front();
    for (const auto& s : atm.segments) {
        if (s.h_base <= h) {
            seg = &s;
        } else {
            break;
        }
    }
    const double x = h - seg->h_base;
    double ln_rho = 0.0;
    double xk = 1.0;
    for (double c : seg->coeffs) {
        ln_rho += c * xk;
        xk *= x;
    }
    return ln_rho;
}

}  // namespace

double density(const PlanetModel& planet, double h, bool perturbed) {
    const AtmosphereModel& atm = planet.atmosphere;
    if (h >= atm.h_ceiling) {
        return 0.0;  // vacuum above the entry interface by convention
    }
    double rho;
    switch (atm.kind) {
        case AtmosphereModel::Kind::Exponential:
            rho = atm.rho0 * std::exp(-h / atm.scale_height);
            break;
        case AtmosphereModel::Kind::LogPolynomial:
            rho = std::exp(log_density_piecewise(atm, h));
            break;
        default:
            rho = 0.0;
            break;
    }
    if (perturbed) {
        rho *= atm.perturbation.factor(h);
    }
    return rho;
}

PlanetModel uranus_defaults() {
    PlanetModel p;
    p.mu = 5.7939e15;
    p.R0 = 2.5559e7;
    p.J2 = 3.34343e-3;
    p.Omega = 1.012e-4;
    // Two-segment log-linear profile: 60 km scale height over the guidance
    // envelope, 30 km below 200 km so deep lift-down passes decelerate and
    // climb out instead of cratering. Anchored to 2.854e-5 kg/m^3 at 200 km,
    // which puts peak deceleration for the nominal entry at a few g.
    p.atmosphere.kind = AtmosphereModel::Kind::LogPolynomial;
    p.atmosphere.segments = {
        {0.0, {-3.7975654969630126, -1.0 / 3.0e4}},
        {2.0e5, {-10.46423216362968, -1.0 / 6.0e4}},
    };
    p.atmosphere.rho0 = 8.0e-4;  // equivalent exponential fit, kept for reference
    p.atmosphere.scale_height = 6.0e4;
    p.atmosphere.h_ceiling = 1.0e6;
    return p;
}

}  // namespace aerocap
