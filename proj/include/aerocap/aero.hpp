#pragma once

#include <vector>

namespace aerocap {

struct AeroCoefficients {
    double CL = 0.0;
    double CD = 0.0;
};

// Aerodynamic coefficient model. Alpha is carried in degrees throughout this
// module because the fit slopes are per-degree.
struct AeroModel {
    enum class Kind { Linear, Quadratic, Table };

    Kind kind = Kind::Quadratic;

    // C(alpha) = Ca2 * alpha^2 + Ca * alpha + C0 (Ca2 unused by the linear model)
    double CD0 = 0.0, CDa = 0.0, CDa2 = 0.0;
    double CL0 = 0.0, CLa = 0.0, CLa2 = 0.0;

    struct TableRow {
        double alpha_deg = 0.0;
        double CL = 0.0;
        double CD = 0.0;
    };
    std::vector<TableRow> table;  // sorted by alpha_deg ascending

    // Multiplicative dispersion factors applied to CL and CD.
    double k_CL = 1.0;
    double k_CD = 1.0;

    static AeroModel linear_nominal();
    static AeroModel quadratic_nominal();
};

struct VehicleModel {
    double mass = 0.0;              // kg
    double S = 0.0;                 // reference area, m^2
    double alpha_min_deg = -25.0;   // deg
    double alpha_max_deg = -10.0;   // deg
    double sigma_min_deg = 15.0;    // deg, magnitude
    double sigma_max_deg = 165.0;   // deg, magnitude
    double alpha_rate_deg_s = 5.0;  // deg/s
    double sigma_rate_deg_s = 15.0; // deg/s

    static VehicleModel uop_defaults();
};

// Lift and drag coefficients at alpha [deg]; dispersion factors applied.
// Table models interpolate piecewise-linearly and throw std::out_of_range for
// alpha outside the tabulated range.
AeroCoefficients coefficients(const AeroModel& model, double alpha_deg);

struct LiftDrag {
    double L = 0.0;  // lift acceleration, m/s^2
    double D = 0.0;  // drag acceleration, m/s^2
};

// L = rho V^2 S CL / (2 m), D = rho V^2 S CD / (2 m)
LiftDrag lift_drag(const AeroModel& model, const VehicleModel& vehicle,
                   double rho, double V, double alpha_deg);

}  // namespace aerocap
